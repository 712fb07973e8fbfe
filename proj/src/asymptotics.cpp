#include "regfree/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "regfree/error.hpp"

namespace regfree {

TransferMatrix::TransferMatrix(const ReducedAutomaton& a) : automaton_(normalize(a)) {
  const int letters = automaton_.alphabet().letter_count();
  successors_.resize(automaton_.state_count());
  for (State s = 0; s < static_cast<State>(automaton_.state_count()); ++s)
    for (int c = 0; c < letters; ++c)
      if (State t = automaton_.next(s, Letter(c)); t != kNoState) successors_[s].push_back(t);
}

IntegerMatrix TransferMatrix::matrix() const {
  IntegerMatrix m(size(), size());
  for (std::size_t s = 0; s < size(); ++s)
    for (auto t : successors_[s]) m(s, t) += 1;
  return m;
}

RationalMatrix TransferMatrix::rational_matrix() const {
  RationalMatrix m(size(), size());
  for (std::size_t s = 0; s < size(); ++s)
    for (auto t : successors_[s]) m(s, t) += 1;
  return m;
}

std::vector<Integer> TransferMatrix::counts(std::size_t max_k) const {
  std::vector<Integer> row(size(), 0), out;
  row[start()] = 1;
  for (std::size_t k = 0;; ++k) {
    Integer n = 0;
    for (std::size_t s = 0; s < size(); ++s)
      if (automaton_.accepting(static_cast<State>(s))) n += row[s];
    out.push_back(n);
    if (k == max_k) break;
    std::vector<Integer> next(size(), 0);
    for (std::size_t s = 0; s < size(); ++s) {
      if (row[s] == 0) continue;
      for (auto t : successors_[s]) next[t] += row[s];
    }
    row = std::move(next);
  }
  return out;
}

Frequency count_fk(const ReducedAutomaton& a, std::size_t k) {
  Integer n = TransferMatrix(a).count(k);
  Rational f(n, sphere_size(k, a.alphabet()));
  f.canonicalize();
  return {n, f};
}

std::vector<Rational> frequencies(const ReducedAutomaton& a, std::size_t max_k) {
  auto counts = TransferMatrix(a).counts(max_k);
  std::vector<Rational> f;
  for (std::size_t k = 0; k <= max_k; ++k) {
    Rational q(counts[k], sphere_size(k, a.alphabet()));
    q.canonicalize();
    f.push_back(q);
  }
  return f;
}

RationalSeries growth_series(const ReducedAutomaton& a) {
  TransferMatrix tm(a);
  // n_k satisfies the characteristic recurrence of M, of order size().
  auto counts = tm.counts(2 * tm.size() + 1);
  std::vector<Rational> terms(counts.begin(), counts.end());
  return RationalSeries::from_terms(terms);
}

Rational growth_value(const ReducedAutomaton& a, const Rational& t) {
  TransferMatrix tm(a);
  const std::size_t n = tm.size();
  RationalMatrix system = tm.rational_matrix();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) system(i, j) = (i == j ? Rational(1) : Rational(0)) - t * system(i, j);
  std::vector<Rational> accept(n);
  for (std::size_t s = 0; s < n; ++s) accept[s] = tm.automaton().accepting(static_cast<State>(s)) ? 1 : 0;
  auto x = solve(system, accept);
  if (!x) throw DomainError("growth series has a pole at t = " + to_string(t));
  return (*x)[tm.start()];
}

namespace {

Rational word_fraction(const Alphabet& alphabet) {
  Rational c(alphabet.letter_count() - 1, alphabet.letter_count());
  c.canonicalize();
  return c;
}

bool contains_identity(const ReducedAutomaton& a) { return a.accepts(Word(a.alphabet())); }

}  // namespace

Rational mu_s(const ReducedAutomaton& a, const Rational& s) {
  if (s <= 0 || s > 1) throw InputError("mu_s needs 0 < s <= 1, got " + to_string(s));
  const int m2 = a.alphabet().letter_count() - 1;
  Rational t = (1 - s) / m2;
  Rational n0 = contains_identity(a) ? 1 : 0;
  return s * n0 + s * word_fraction(a.alphabet()) * (growth_value(a, t) - n0);
}

RationalFunction mu_function(const ReducedAutomaton& a) {
  RationalSeries g = growth_series(a);
  const int m2 = a.alphabet().letter_count() - 1;
  Rational a0(1, m2), b0(-1, m2);
  Polynomial p = g.numerator().compose_linear(a0, b0);
  Polynomial q = g.denominator().compose_linear(a0, b0);
  Rational n0 = contains_identity(a) ? 1 : 0;
  Polynomial s = Polynomial::linear(0, 1);
  Polynomial numerator = s * (n0 * q + word_fraction(a.alphabet()) * (p - n0 * q));
  return RationalFunction::reduced(numerator, q);
}

MuLimits mu0_mu1(const ReducedAutomaton& a) {
  RationalFunction f = mu_function(a);
  MuLimits out;
  if (f.is_pole(0)) return out;
  out.mu0 = f.evaluate(0);
  if (*out.mu0 == 0) {
    RationalFunction d = f.derivative();
    if (!d.is_pole(0)) out.mu1 = d.evaluate(0);
  }
  return out;
}

namespace {

// Some strongly connected part where every state keeps all 2m-1 reduced
// continuations inside the part: then f_k does not tend to 0.
bool has_complete_component(const ReducedAutomaton& a) {
  const std::size_t n = a.state_count();
  const int letters = a.alphabet().letter_count();
  std::vector<std::vector<std::size_t>> succ(n);
  for (State s = 0; s < static_cast<State>(n); ++s)
    for (int c = 0; c < letters; ++c)
      if (State t = a.next(s, Letter(c)); t != kNoState) succ[s].push_back(t);
  std::vector<int> component(n, -1);
  auto components = strongly_connected_components(succ);
  for (std::size_t i = 0; i < components.size(); ++i)
    for (auto s : components[i]) component[s] = static_cast<int>(i);
  for (std::size_t i = 0; i < components.size(); ++i) {
    bool complete = true;
    for (auto s : components[i]) {
      std::size_t inside = 0;
      for (auto t : succ[s])
        if (component[t] == static_cast<int>(i)) ++inside;
      if (inside != static_cast<std::size_t>(letters - 1)) complete = false;
    }
    if (complete) return true;
  }
  return false;
}

}  // namespace

std::optional<Rational> lambda_measure(const ReducedAutomaton& a_in) {
  ReducedAutomaton a = normalize(a_in);
  if (has_complete_component(a)) return std::nullopt;
  const int m2 = a.alphabet().letter_count() - 1;
  Rational n0 = contains_identity(a) ? 1 : 0;
  return n0 + word_fraction(a.alphabet()) * (growth_value(a, Rational(1, m2)) - n0);
}

Rational lambda_word(const Word& w) {
  if (w.empty()) return 1;
  const Alphabet alphabet = w.alphabet();
  return 1 / Rational(sphere_size(w.size(), alphabet));
}

std::string to_string(Verdict v) { return v == Verdict::Thick ? "thick" : "exp-negligible"; }

std::string to_string(Taxonomy t) {
  switch (t) {
    case Taxonomy::Thick: return "thick";
    case Taxonomy::Sparse: return "sparse";
    case Taxonomy::ExponentiallyNegligible: return "exp-negligible";
    case Taxonomy::IntermediateDensity: return "intermediate-density";
    case Taxonomy::Singular: return "singular";
  }
  return "?";
}

std::string to_string(RelativeVerdict v) {
  return v == RelativeVerdict::NonSmallCone ? "non-small-L-cone" : "exp-lambda-L-measurable";
}

std::optional<Rational> uniform_rate(const std::vector<Rational>& values, std::size_t k0,
                                     const GeometricBound& tail, std::size_t horizon) {
  if (values.size() <= horizon) throw InputError("uniform_rate: too few values");
  k0 = std::max<std::size_t>(k0, 1);
  double guess = 0;
  for (std::size_t k = k0; k <= horizon; ++k)
    if (values[k] > 0) guess = std::max(guess, std::exp(std::log(values[k].get_d()) / static_cast<double>(k)));
  Rational c = std::max(tail.constant, Rational(1));
  double tail_guess = tail.ratio.get_d() * std::exp(std::log(c.get_d()) / static_cast<double>(horizon + 1));
  guess = std::max(guess, tail_guess);
  const Integer grid = Integer(1) << 30;
  Integer numerator = Integer(std::floor(guess * std::ldexp(1.0, 30))) + 1;
  Rational tail_power = pow(tail.ratio, horizon + 1) * c;
  for (Integer step = 1;; step *= 2) {
    Rational delta(numerator, grid);
    delta.canonicalize();
    if (delta >= 1) return std::nullopt;
    bool ok = pow(delta, horizon + 1) >= tail_power;
    Rational power = pow(delta, k0);
    for (std::size_t k = k0; ok && k <= horizon; ++k, power *= delta)
      if (values[k] > power) ok = false;
    if (ok) return delta;
    numerator += step;
  }
}

ClassificationReport classify(const ReducedAutomaton& a_in, const ClassifyOptions& options) {
  ReducedAutomaton a = normalize(a_in);
  ClassificationReport report;
  if (is_empty(a)) {
    report.delta = 0;
    report.nilpotent = true;
    report.taxonomy = {Taxonomy::ExponentiallyNegligible, Taxonomy::Sparse};
    report.lambda = 0;
    return report;
  }
  ReducedAutomaton closure = prefix_closure(a);
  TransferMatrix tc(closure);
  SpectralEnclosure sigma = spectral_radius(tc.rational_matrix());
  report.sigma_lower = sigma.lower;
  report.sigma_upper = sigma.upper;
  report.nilpotent = sigma.nilpotent;
  if (auto u = contains_cone(closure)) {
    report.verdict = Verdict::Thick;
    report.witness = u;
    report.taxonomy = {Taxonomy::Thick};
    return report;
  }
  report.verdict = Verdict::ExponentiallyNegligible;
  report.lambda = lambda_measure(a);
  // A regular set without a cone in its closure is exponentially negligible,
  // hence sparse; the other branches cannot occur.
  if (!report.lambda) throw Error("classify: negligible set with infinite frequency measure");
  report.taxonomy = {Taxonomy::ExponentiallyNegligible, Taxonomy::Sparse};
  if (sigma.nilpotent) {
    // n_k(closure) = 0 from the nilpotency index on.
    report.delta = 0;
    report.k0 = sigma.nilpotency_index;
    return report;
  }
  const int m2 = a.alphabet().letter_count() - 1;
  Rational theta = sigma.upper / m2;
  if (theta >= 1) throw Error("classify: spectral bound not below 2m-1 for a cone-free closure");
  Rational min_x = *std::min_element(sigma.certificate.begin(), sigma.certificate.end());
  Rational constant = sigma.certificate[tc.start()] * m2 / (a.alphabet().letter_count() * min_x);
  report.envelope = GeometricBound{constant, theta};
  report.k0 = options.k0;
  for (std::size_t horizon = options.horizon; horizon <= 16 * options.horizon; horizon *= 2) {
    auto f = frequencies(a, horizon);
    if (auto delta = uniform_rate(f, options.k0, *report.envelope, horizon)) {
      report.delta = delta;
      return report;
    }
  }
  throw Error("classify: no rate bound below 1 found");
}

std::optional<Rational> fk_relative(const ReducedAutomaton& r, const ReducedAutomaton& l, std::size_t k) {
  Integer nl = TransferMatrix(l).count(k);
  if (nl == 0) return std::nullopt;
  Rational q(TransferMatrix(intersection(r, l)).count(k), nl);
  q.canonicalize();
  return q;
}

std::optional<RelativeEnvelope> relative_envelope(const ReducedAutomaton& r, const ReducedAutomaton& l) {
  auto u = contains_cone(l);
  if (!u) return std::nullopt;
  ClassificationReport report = classify(r);
  if (report.verdict == Verdict::Thick) return std::nullopt;
  std::size_t min_k = std::max<std::size_t>(u->size(), 1);
  if (!report.envelope) return RelativeEnvelope{{0, 0}, std::max(min_k, report.k0)};
  return RelativeEnvelope{{report.envelope->constant / lambda_word(*u), report.envelope->ratio}, min_k};
}

Rational lambda_L_word(const Word& w, const ReducedAutomaton& l) {
  ReducedAutomaton a = normalize(l);
  if (!is_prefix_closed(a)) throw InputError("ambient language is not prefix-closed");
  if (!a.accepts(w)) throw InputError(w.to_string() + " is not in L");
  Rational value = 1;
  State s = a.initial();
  for (Letter x : w) {
    value /= static_cast<unsigned long>(a.out_degree(s));
    s = a.next(s, x);
  }
  return value;
}

RationalMatrix walk_matrix(const PrototypedAutomaton& p, const ReducedAutomaton& ambient) {
  const ReducedAutomaton& a = p.automaton;
  const std::size_t n = a.state_count();
  RationalMatrix m(n, n);
  for (State s = 0; s < static_cast<State>(n); ++s) {
    std::size_t v = nu(ambient, p.prototype[s]);
    for (int c = 0; c < a.alphabet().letter_count(); ++c)
      if (State t = a.next(s, Letter(c)); t != kNoState) m(s, t) += Rational(1, static_cast<unsigned long>(v));
  }
  return m;
}

std::vector<Rational> fk_prime(const ReducedAutomaton& r, const ReducedAutomaton& l, std::size_t max_k) {
  if (is_empty(r)) return std::vector<Rational>(max_k + 1, Rational(0));
  ConsistentForm form = make_consistent(r, l);
  RationalMatrix p = walk_matrix(form.typed, form.ambient);
  const ReducedAutomaton& b = form.typed.automaton;
  std::vector<Rational> row(b.state_count(), 0), out;
  row[b.initial()] = 1;
  for (std::size_t k = 0;; ++k) {
    Rational f = 0;
    for (std::size_t s = 0; s < row.size(); ++s)
      if (b.accepting(static_cast<State>(s))) f += row[s];
    out.push_back(f);
    if (k == max_k) break;
    row = multiply(row, p);
  }
  return out;
}

std::optional<SurvivalCertificate> survival_certificate(const RationalMatrix& p, std::size_t start) {
  const std::size_t n = p.rows();
  RationalMatrix system(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) system(i, j) = (i == j ? Rational(1) : Rational(0)) - p(i, j);
  auto x = solve(system, std::vector<Rational>(n, Rational(1)));
  if (!x) return std::nullopt;
  Rational max_x = 1;
  for (const auto& v : *x) {
    // x = 1 + P x with x >= 1 is a valid Collatz-Wielandt certificate.
    if (v < 1) return std::nullopt;
    max_x = std::max(max_x, v);
  }
  return SurvivalCertificate{{(*x)[start], 1 - 1 / max_x}, (*x)[start]};
}

RationalMatrix AbsorbingChain::full() const {
  const std::size_t n = transient + 2;
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < transient; ++i) {
    for (std::size_t j = 0; j < transient; ++j) m(i, j) = q(i, j);
    m(i, transient) = to_z2[i];
    m(i, transient + 1) = to_d[i];
  }
  m(transient, transient) = 1;
  m(transient + 1, transient + 1) = 1;
  return m;
}

AbsorbingChain absorbing_chain(const Decomposition& d, const ReducedAutomaton& ambient) {
  const ReducedAutomaton& b3 = d.b3.automaton;
  const std::size_t n = b3.state_count();
  if (static_cast<std::size_t>(d.z2) != n - 1) throw Error("absorbing_chain: Z2 must be the last state");
  AbsorbingChain chain;
  chain.transient = n - 1;
  chain.q = RationalMatrix(n - 1, n - 1);
  chain.to_z2.assign(n - 1, 0);
  chain.to_d.assign(n - 1, 0);
  for (State s = 0; s < static_cast<State>(n - 1); ++s) {
    std::size_t v = nu(ambient, d.b3.prototype[s]);
    if (v == 0) {
      chain.to_d[s] = 1;
      continue;
    }
    Rational step(1, static_cast<unsigned long>(v));
    std::size_t arrows = 0;
    for (int c = 0; c < b3.alphabet().letter_count(); ++c) {
      State t = b3.next(s, Letter(c));
      if (t == kNoState) continue;
      ++arrows;
      if (t == d.z2) chain.to_z2[s] += step;
      else chain.q(s, t) += step;
    }
    chain.to_d[s] = Rational(static_cast<unsigned long>(v - arrows), static_cast<unsigned long>(v));
    chain.to_d[s].canonicalize();
  }
  return chain;
}

Absorption absorption_probabilities(const AbsorbingChain& chain) {
  const std::size_t n = chain.transient;
  RationalMatrix system(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) system(i, j) = (i == j ? Rational(1) : Rational(0)) - chain.q(i, j);
  auto x = solve(system, chain.to_z2);
  auto y = solve(system, chain.to_d);
  if (!x || !y) throw Error("absorbing chain has a closed transient class");
  return {(*x)[0], (*y)[0]};
}

TruncatedAbsorption truncated_absorption(const AbsorbingChain& chain, std::size_t steps) {
  std::vector<Rational> row(chain.transient, 0);
  row[0] = 1;
  TruncatedAbsorption out{0, 0, 0};
  for (std::size_t k = 0; k < steps; ++k) {
    for (std::size_t i = 0; i < chain.transient; ++i) {
      if (row[i] == 0) continue;
      out.p_z2 += row[i] * chain.to_z2[i];
      out.p_d += row[i] * chain.to_d[i];
    }
    row = multiply(row, chain.q);
  }
  for (const auto& v : row) out.tail += v;
  return out;
}

namespace {

Word shortest_path_to(const ReducedAutomaton& a, State target) {
  std::vector<std::optional<Word>> words(a.state_count());
  words[a.initial()] = Word(a.alphabet());
  std::deque<State> queue{a.initial()};
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    if (s == target) return *words[s];
    for (int c = 0; c < a.alphabet().letter_count(); ++c) {
      State t = a.next(s, Letter(c));
      if (t == kNoState || words[t]) continue;
      Word w = *words[s];
      w.push_back(Letter(c));
      words[t] = std::move(w);
      queue.push_back(t);
    }
  }
  throw Error("state not reachable");
}

Rational expected_accepting_mass(const PrototypedAutomaton& p, const ReducedAutomaton& ambient) {
  RationalMatrix m = walk_matrix(p, ambient);
  const std::size_t n = m.rows();
  RationalMatrix system(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) system(i, j) = (i == j ? Rational(1) : Rational(0)) - m(i, j);
  std::vector<Rational> accept(n);
  for (std::size_t s = 0; s < n; ++s) accept[s] = p.automaton.accepting(static_cast<State>(s)) ? 1 : 0;
  auto x = solve(system, accept);
  if (!x) throw Error("λ_L of a measurable set: singular system");
  return (*x)[p.automaton.initial()];
}

}  // namespace

RelativeReport classify_relative(const ReducedAutomaton& r_in, const ReducedAutomaton& l) {
  ReducedAutomaton a = normalize(l);
  if (!is_prefix_closed(a)) throw InputError("ambient language is not prefix-closed");
  ReducedAutomaton r = normalize(r_in);
  if (!is_subset(r, a)) throw InputError("R is not contained in L");
  RelativeReport report;
  if (is_empty(r)) {
    report.empty = true;
    report.closure_bound = GeometricBound{0, 0};
    report.lambda_L = 0;
    return report;
  }
  ReducedAutomaton closure = mn_quotient(prefix_closure(r), a);
  ConsistentForm form = make_consistent(closure, a);
  if (auto w = relative_contains_cone(form)) {
    report.verdict = RelativeVerdict::NonSmallCone;
    report.witness = w;
    return report;
  }
  report.verdict = RelativeVerdict::ExponentiallyMeasurable;
  auto cert = survival_certificate(walk_matrix(form.typed, form.ambient), form.typed.automaton.initial());
  if (!cert) throw Error("classify_relative: closed walk class without a non-small cone");
  report.closure_bound = cert->bound;
  report.lambda_L = expected_accepting_mass(make_consistent(r, a).typed, a);
  for (const ConsistentAutomaton& part : form.parts) {
    Decomposition d = split_b1_b2_b3(part);
    AbsorbingChain chain = absorbing_chain(d, form.ambient);
    PartReport pr{shortest_path_to(part.automaton, part.accept), absorption_probabilities(chain), {}, {}};
    if (pr.absorption.p_z2 < 1) pr.lambda_r2 = pr.absorption.p_z2 / (1 - pr.absorption.p_z2);
    if (auto c = survival_certificate(chain.q, 0)) pr.r3_bound = c->bound;
    report.parts.push_back(std::move(pr));
  }
  return report;
}

namespace {

std::optional<SurvivalCertificate> walk_certificate(const ReducedAutomaton& r, const ReducedAutomaton& l) {
  ConsistentForm form = make_consistent(r, l);
  return survival_certificate(walk_matrix(form.typed, form.ambient), form.typed.automaton.initial());
}

}  // namespace

StarCertificate star_closure_measure(const ReducedAutomaton& t, const ReducedAutomaton& l, std::size_t horizon) {
  StarCertificate out;
  ReducedAutomaton a = normalize(l);
  if (is_empty(t)) {
    out.accepted = true;
    out.reason = "empty set";
    out.q = 0;
    out.q1 = 0;
    return out;
  }
  auto t_cert = walk_certificate(t, a);
  if (!t_cert) {
    out.reason = "T is not exponentially lambda_L-measurable";
    return out;
  }
  auto q = uniform_rate(fk_prime(t, a, horizon), 1, t_cert->bound, horizon);
  if (!q) {
    out.reason = "no q < 1 bounds f'_k(T, L) by q^k for every k >= 1";
    return out;
  }
  out.q = *q;
  ReducedAutomaton star = star_no_cancel(t);
  out.star_bound = walk_certificate(star, a);
  if (!out.star_bound) {
    out.reason = "walk on the star closure has a closed class";
    return out;
  }
  auto q1 = uniform_rate(fk_prime(star, a, horizon), 1, out.star_bound->bound, horizon);
  if (!q1) {
    out.reason = "no q1 < 1 bounds f'_k of the star closure";
    return out;
  }
  if (*q1 <= out.q) *q1 = out.q + (1 - out.q) / Rational(Integer(1) << 30);
  out.q1 = *q1;
  out.accepted = true;
  return out;
}

nlohmann::json to_json(const GeometricBound& b) {
  return {{"constant", to_string(b.constant)}, {"ratio", to_string(b.ratio)}};
}

nlohmann::json to_json(const ClassificationReport& r) {
  nlohmann::json j;
  j["verdict"] = to_string(r.verdict);
  if (r.witness) j["witness"] = r.witness->to_string();
  if (r.delta) j["delta"] = to_string(*r.delta);
  j["k0"] = r.k0;
  if (r.envelope) j["envelope"] = to_json(*r.envelope);
  j["sigma"] = {{"lower", to_string(r.sigma_lower)}, {"upper", to_string(r.sigma_upper)}, {"nilpotent", r.nilpotent}};
  auto taxonomy = nlohmann::json::array();
  for (auto t : r.taxonomy) taxonomy.push_back(to_string(t));
  j["taxonomy"] = taxonomy;
  j["lambda"] = r.lambda ? to_string(*r.lambda) : std::string("infinite");
  return j;
}

nlohmann::json to_json(const RelativeReport& r) {
  nlohmann::json j;
  j["verdict"] = to_string(r.verdict);
  j["empty"] = r.empty;
  if (r.witness) j["witness"] = r.witness->to_string();
  if (r.closure_bound) j["closure_bound"] = to_json(*r.closure_bound);
  if (r.lambda_L) j["lambdaL"] = to_string(*r.lambda_L);
  auto parts = nlohmann::json::array();
  for (const auto& p : r.parts) {
    nlohmann::json pj;
    pj["accept_word"] = p.accept_word.to_string();
    pj["absorption"] = {{"P_Z2", to_string(p.absorption.p_z2)}, {"P_D", to_string(p.absorption.p_d)}};
    if (p.lambda_r2) pj["lambdaL_R2"] = to_string(*p.lambda_r2);
    if (p.r3_bound) pj["R3_bound"] = to_json(*p.r3_bound);
    parts.push_back(pj);
  }
  j["parts"] = parts;
  return j;
}

nlohmann::json to_json(const StarCertificate& c) {
  nlohmann::json j;
  j["accepted"] = c.accepted;
  if (!c.reason.empty()) j["reason"] = c.reason;
  if (c.accepted) {
    j["q"] = to_string(c.q);
    j["q1"] = to_string(c.q1);
  }
  if (c.star_bound) j["star_bound"] = to_json(c.star_bound->bound);
  return j;
}

}  // namespace regfree
