// One line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "../corpus.hpp"
#include "../oracles.hpp"
#include "../samples.hpp"
#include "regfree/asymptotics.hpp"
#include "regfree/consistent.hpp"
#include "regfree/job.hpp"
#include "regfree/sampler.hpp"
#include "regfree/stallings.hpp"
#include "regfree/transversal.hpp"

using namespace regfree;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
};

Rational q(long p, long r) {
  Rational x(p, r);
  x.canonicalize();
  return x;
}

std::vector<Word> words_of(const Alphabet& a, const std::vector<std::string>& texts) {
  std::vector<Word> out;
  for (const auto& t : texts) out.push_back(Word::parse(a, t));
  return out;
}

// 30 regular sets over ranks 2 and 3, built from a fixed seed.
struct Generated {
  int rank;
  std::string expression;
};

std::vector<Generated> generated_sets() {
  const std::vector<std::string> rank2{
      "F",           "cone:a",          "cone:bA",           "cone:aab",          "subgroup:abA",
      "subgroup:ab+ba", "subgroup:aa+bb+abab", "subgroup:aa+b+abA", "coset:aab+bAb/b", "lcoset:ab/abA",
      "dcoset:a/b/ab",  "transversal:abA", "transversal:ab+ba@1", "unstable:aa+bb+abab", "singular:ab+ba",
      "words:1+ab+BA+aab", "normalizer:abA", "star(words:ab+ba)", "prefix(words:abab+BAA)", "complement(cone:a)"};
  const std::vector<std::string> rank3{"F",          "cone:c",        "cone:aC",        "subgroup:abc",
                                       "subgroup:ab+bc", "transversal:abA", "unstable:ab+c", "words:1+cab",
                                       "coset:abc/c", "star(words:ab+c)"};
  std::mt19937 rng(20240531);
  auto pick = [&](const std::vector<std::string>& pool) { return pool[rng() % pool.size()]; };
  std::vector<Generated> out;
  for (int i = 0; i < 30; ++i) {
    int rank = i % 4 == 3 ? 3 : 2;
    const auto& pool = rank == 2 ? rank2 : rank3;
    std::string a = pick(pool), b = pick(pool), e;
    switch (rng() % 7) {
      case 0: e = a; break;
      case 1: e = "union(" + a + ", " + b + ")"; break;
      case 2: e = "inter(" + a + ", " + b + ")"; break;
      case 3: e = "diff(" + a + ", " + b + ")"; break;
      case 4: e = "prefix(" + a + ")"; break;
      case 5: e = "concat(" + a + ", " + b + ")"; break;
      default: e = "inverse(" + a + ")"; break;
    }
    out.push_back({rank, e});
  }
  return out;
}

void c1_counting(Outcome& o) {
  Alphabet f2(2);
  std::size_t sets = 0, checks = 0;
  for (const auto& entry : counting_corpus()) {
    ReducedAutomaton a = parse_set_expression(f2, entry.expression);
    auto counts = TransferMatrix(a).counts(12);
    for (std::size_t k = 0; k <= 12; ++k) {
      std::size_t expected = 0;
      for (const auto& c : oracle::sphere(2, k))
        if (entry.member ? entry.member(c) : a.accepts(oracle::word(2, c))) ++expected;
      ++checks;
      if (counts[k] != Integer(static_cast<unsigned long>(expected)))
        o.fail(entry.expression + " at k=" + std::to_string(k));
    }
    ++sets;
  }
  o.detail << sets << " sets, " << checks << " exact comparisons for k<=12";
}

void c2_normalization(Outcome& o) {
  for (int rank : {2, 3}) {
    Alphabet a(rank);
    for (auto s : {q(1, 10), q(1, 3), q(1, 2), q(9, 10)}) {
      if (mu_s(all_words(a), s) != 1) o.fail("mu_s(F) != 1 at s=" + s.get_str());
      if (mu_s(from_words(a, {Word(a)}), s) != s) o.fail("mu_s({1}) != s at s=" + s.get_str());
    }
  }
  o.detail << "mu_s(F)=1 and mu_s({1})=s for s in {1/10,1/3,1/2,9/10}, ranks 2 and 3";
}

void c3_closed_forms(Outcome& o) {
  std::mt19937 rng(7);
  std::size_t count = 0;
  for (int i = 0; i < 100; ++i) {
    int rank = 2 + i % 2;
    Alphabet a(rank);
    Word w(a);
    std::size_t len = rng() % 9;
    while (w.size() < len) {
      Letter l(static_cast<int>(rng() % static_cast<unsigned>(2 * rank)));
      if (!w.empty() && l == w.back().inverse()) continue;
      w.push_back(l);
    }
    Rational lambda = 1;
    if (!w.empty()) lambda = 1 / (2 * rank * pow(Rational(2 * rank - 1), w.size() - 1));
    if (lambda_word(w) != lambda) o.fail("lambda(" + w.to_string() + ")");
    if (lambda_L_word(w, all_words(a)) != lambda) o.fail("lambda_F(" + w.to_string() + ")");
    for (auto s : {q(1, 3), q(1, 2), q(4, 5)})
      if (mu_s(from_words(a, {w}), s) != s * pow(1 - s, w.size()) * lambda) o.fail("mu_s(" + w.to_string() + ")");
    ++count;
  }
  o.detail << count << " random words, exact";
}

void c4_dichotomy(Outcome& o, const std::vector<Generated>& sets) {
  std::size_t thick = 0, negligible = 0;
  for (const auto& g : sets) {
    Alphabet alphabet(g.rank);
    ReducedAutomaton a = parse_set_expression(alphabet, g.expression);
    ClassificationReport r = classify(a);
    auto fk = frequencies(a, 14);
    if (r.verdict == Verdict::Thick) {
      ++thick;
      if (!r.witness) {
        o.fail(g.expression + ": thick without witness");
        continue;
      }
      // C(w) ⊆ prefix closure, so f_k(prefix closure) >= λ(w) for k >= |w|
      auto closure = frequencies(prefix_closure(a), 14);
      Rational floor = lambda_word(*r.witness);
      for (std::size_t k = std::max<std::size_t>(5, r.witness->size()); k <= 14; ++k)
        if (closure[k] < floor) o.fail(g.expression + ": closure frequency below witness bound");
      // R itself: limsup positive, seen as every two-step window being nonzero
      for (std::size_t k = 5; k < 14; ++k)
        if (fk[k] == 0 && fk[k + 1] == 0) o.fail(g.expression + ": thick but f_k vanishes at k=" + std::to_string(k));
    } else {
      ++negligible;
      if (!r.delta || *r.delta >= 1) {
        o.fail(g.expression + ": negligible without delta < 1");
        continue;
      }
      for (std::size_t k = std::max<std::size_t>(5, r.k0); k <= 14; ++k)
        if (fk[k] > pow(*r.delta, k)) o.fail(g.expression + ": f_k > delta^k at k=" + std::to_string(k));
    }
  }
  o.detail << sets.size() << " generated sets: " << thick << " thick, " << negligible << " exp-negligible";
}

void c5_schreier(Outcome& o) {
  Alphabet f2(2);
  for (const auto& sample : sample_subgroups()) {
    StallingsGraph g = build_subgroup_graph(f2, words_of(f2, sample.generators));
    oracle::FoldedGraph naive(2, oracle::parse_all(sample.generators));
    SchreierTransversal t = geodesic_transversal(g);
    std::map<std::pair<std::size_t, oracle::Codes>, bool> seen;
    std::size_t internal = 0;
    for_each_word(t.automaton(), 8, [&](const Word& s) {
      auto key = naive.coset_key(oracle::codes(s));
      if (!seen.emplace(key, true).second) o.fail(sample.name + ": two representatives for one coset");
      if (key.second.empty()) ++internal;
    });
    if (internal != g.vertex_count()) o.fail(sample.name + ": |S_int| != |V|");
    for_each_word(t.automaton(), 10, [&](const Word& s) {
      if (!s.empty() && !t.contains(s.prefix(s.size() - 1))) o.fail(sample.name + ": not prefix-closed");
    });
    if (g.vertex_count() > 6) o.fail(sample.name + ": graph too large for exhaustive trees");
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : g.edges()) edges.emplace_back(e.source, e.target);
    auto exhaustive = oracle::count_trees_exhaustively(g.vertex_count(), edges);
    auto trees = spanning_trees(g);
    if (count_spanning_trees(g) != Integer(static_cast<unsigned long>(exhaustive)) || trees.size() != exhaustive)
      o.fail(sample.name + ": tree count");
    std::vector<ReducedAutomaton> all;
    for (const auto& tree : trees) all.push_back(SchreierTransversal(g, tree).automaton());
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j)
        if (equivalent(all[i], all[j])) o.fail(sample.name + ": two trees give one transversal");
    o.detail << sample.name << " |V|=" << g.vertex_count() << " trees=" << trees.size() << "; ";
  }
}

// Maxima over consecutive blocks of length 3 from k = 5 strictly decrease
// (nonzero ones; an all-zero block may follow anything). Pointwise and
// two-step window comparisons fail on period-3 sets such as <aab, bAb>.
bool blocks_decrease(const std::vector<Rational>& f) {
  Rational previous = -1;
  for (std::size_t start = 5; start <= 14; start += 3) {
    Rational m = 0;
    for (std::size_t k = start; k <= std::min<std::size_t>(start + 2, 14); ++k) m = std::max(m, f[k]);
    if (previous >= 0 && m != 0 && m >= previous) return false;
    if (m != 0 || previous < 0) previous = m;
  }
  return true;
}

void c6_negligibility(Outcome& o) {
  Alphabet f2(2);
  std::size_t families = 0;
  for (const auto& sample : sample_subgroups()) {
    StallingsGraph g = build_subgroup_graph(f2, words_of(f2, sample.generators));
    if (is_finite_index(g)) continue;  // the statements are about infinite index
    std::string gens;
    for (const auto& x : sample.generators) gens += (gens.empty() ? "" : "+") + x;
    for (const std::string& e : {"subgroup:" + gens, "coset:" + gens + "/b", "coset:" + gens + "/aB",
                                 "dcoset:" + gens + "/b/" + gens, "dcoset:a/ab/" + gens}) {
      ReducedAutomaton a = parse_set_expression(f2, e);
      ClassificationReport r = classify(a);
      auto f = frequencies(a, 14);
      if (r.verdict != Verdict::ExponentiallyNegligible) o.fail(e + ": not negligible");
      if (!blocks_decrease(f)) o.fail(e + ": f_k block maxima do not decrease");
      if (r.envelope)
        for (std::size_t k = 5; k <= 14; ++k)
          if (f[k] > r.envelope->constant * pow(r.envelope->ratio, k)) o.fail(e + ": above envelope");
      if (r.delta)
        for (std::size_t k = 5; k <= 14; ++k)
          if (f[k] > pow(*r.delta, k)) o.fail(e + ": above delta^k");
      ++families;
    }
    ReducedAutomaton s = parse_set_expression(f2, "transversal:" + gens);
    for (const std::string& e : {"unstable:" + gens, "singular:" + gens}) {
      ReducedAutomaton a = parse_set_expression(f2, e);
      std::vector<Rational> f(15, 0);
      for (std::size_t k = 0; k <= 14; ++k) f[k] = fk_relative(a, s, k).value_or(0);
      if (!blocks_decrease(f)) o.fail(e + ": relative block maxima do not decrease");
      auto env = relative_envelope(a, s);
      if (!env) {
        o.fail(e + ": no relative envelope");
      } else {
        for (std::size_t k = std::max<std::size_t>(5, env->min_k); k <= 14; ++k)
          if (f[k] > env->bound.constant * pow(env->bound.ratio, k)) o.fail(e + ": above relative envelope");
      }
      ++families;
    }
  }
  o.detail << families << " families on the infinite-index samples, k in [5,14]";
}

void c7_absorption(Outcome& o) {
  Alphabet f2(2);
  std::size_t chains = 0, trivial = 0;
  std::ostringstream z;
  for (auto [r, l] : std::vector<std::pair<const char*, const char*>>{
           {"subgroup:abA", "F"},
           {"subgroup:ab+ba", "F"},
           {"star(words:ab+ba)", "F"},
           {"coset:aa+bb+abab/b", "F"},
           {"inter(transversal:abA, subgroup:abA)", "transversal:abA"},
           {"unstable:aa+bb+abab", "transversal:aa+bb+abab"}}) {
    // the chains of the prefix closure, one per state
    ConsistentForm form = make_consistent(prefix_closure(parse_set_expression(f2, r)), parse_set_expression(f2, l));
    for (const auto& part : form.parts) {
      AbsorbingChain chain = absorbing_chain(split_b1_b2_b3(part), form.ambient);
      Absorption a = absorption_probabilities(chain);
      if (a.p_z2 + a.p_d != 1) o.fail(std::string(r) + ": P(Z2)+P(D) != 1");
      TruncatedAbsorption t = truncated_absorption(chain, 200);
      Rational gap = a.p_z2 - t.p_z2;
      if (gap < 0 || gap > t.tail) o.fail(std::string(r) + ": truncated sum outside tail bound");
      ChainSample mc = simulate_absorption(chain, 1000000, 2024 + chains);
      if (a.p_z2 == 0 || a.p_z2 == 1) {
        // degenerate chain: every walk must end the same way
        std::size_t expected = a.p_z2 == 1 ? mc.walks : 0;
        if (mc.hits_z2 != expected) o.fail(std::string(r) + ": degenerate chain sampled both ways");
        ++trivial;
      } else {
        double score = z_score(mc.hits_z2, mc.walks, a.p_z2.get_d());
        if (!(std::abs(score) < 4)) o.fail(std::string(r) + ": Monte-Carlo z=" + std::to_string(score));
        z << std::fixed << std::setprecision(2) << score << " ";
      }
      ++chains;
    }
  }
  // engineered dead state: after ab the ambient offers three letters, the star only a or b
  ConsistentForm form = make_consistent(parse_set_expression(f2, "star(words:ab+ba)"), all_words(f2));
  Absorption dead = absorption_probabilities(absorbing_chain(split_b1_b2_b3(form.parts.at(0)), form.ambient));
  if (!(dead.p_z2 < 1)) o.fail("dead-state chain has P(Z2) = 1");
  ConsistentForm form2 = make_consistent(parse_set_expression(f2, "subgroup:ab+ba"), all_words(f2));
  for (const auto& part : form2.parts)
    if (!(absorption_probabilities(absorbing_chain(split_b1_b2_b3(part), form2.ambient)).p_z2 < 1))
      o.fail("subgroup chain has P(Z2) = 1");
  o.detail << chains << " chains (" << trivial << " degenerate), 10^6 walks each; z = " << z.str()
           << "; dead-state P(Z2)=" << dead.p_z2.get_str();
}

void c8_relative(Outcome& o, const std::vector<Generated>& sets) {
  for (const auto& g : sets) {
    Alphabet alphabet(g.rank);
    ReducedAutomaton a = parse_set_expression(alphabet, g.expression);
    RelativeReport rel = classify_relative(a, all_words(alphabet));
    bool thick = classify(a).verdict == Verdict::Thick;
    if ((rel.verdict == RelativeVerdict::NonSmallCone) != thick) o.fail(g.expression + ": verdicts differ");
  }
  std::size_t self = 0;
  Alphabet f2(2);
  for (const char* l : {"F", "transversal:abA", "transversal:ab+ba", "transversal:aab+bAb", "complement(cone:a)",
                        "prefix(cone:bA)"}) {
    ReducedAutomaton a = parse_set_expression(f2, l);
    RelativeReport rel = classify_relative(a, a);
    if (rel.verdict != RelativeVerdict::NonSmallCone || rel.witness != std::optional<Word>(Word(f2)))
      o.fail(std::string(l) + ": R = L without the empty cone witness");
    ++self;
  }
  o.detail << sets.size() << " sets agree with the absolute classifier; " << self << " sets with R = L give witness 1";
}

void c9_sampler(Outcome& o) {
  Alphabet f2(2);
  const std::size_t n = 100000;
  for (double s : {0.1, 0.5}) {
    WalkSample sample = sample_Ws_many(f2, s, n, 99);
    double worst = 0;
    for (std::size_t k = 0; k <= 20; ++k) {
      double p = s * std::pow(1 - s, static_cast<double>(k));
      auto it = sample.lengths.find(k);
      double z = z_score(it == sample.lengths.end() ? 0 : it->second, n, p);
      worst = std::max(worst, std::abs(z));
    }
    if (!(worst < 4)) o.fail("length marginal at s=" + std::to_string(s));
    double mean = sample.length_sum / static_cast<double>(n);
    double se = std::sqrt((1 - s) / (s * s) / static_cast<double>(n));
    double zm = (mean - (1 / s - 1)) / se;
    if (!(std::abs(zm) < 4)) o.fail("mean length at s=" + std::to_string(s));
    o.detail << "s=" << s << " max|z| lengths=" << std::setprecision(3) << worst << " mean z=" << zm << "; ";
  }
}

nlohmann::json full_suite() {
  nlohmann::json out = nlohmann::json::array();
  std::vector<JobSpec> jobs{
      {.command = "stallings", .generators = {"abA"}},
      {.command = "transversal", .generators = {"aa", "bb", "abab"}},
      {.command = "classify", .set = "dcoset:a/b/ab"},
      {.command = "classify", .set = "unstable:abA", .ambient = "transversal:abA"},
      {.command = "measure", .set = "subgroup:ab+ba", .which = "fk"},
      {.command = "measure", .set = "subgroup:abA", .which = "mu", .s_values = {"1/2", "1/10"}},
      {.command = "measure", .set = "coset:abA/b", .which = "lambda"},
      {.command = "measure", .set = "cone:a", .which = "mu01"},
      {.command = "measure", .set = "unstable:abA", .ambient = "transversal:abA", .which = "lambdaL"},
      {.command = "measure", .set = "words:aa", .which = "star"},
      {.command = "sample", .which = "ws", .s_values = {"0.1", "0.5"}, .seed = 5, .samples = 20000},
      {.command = "sample", .which = "w0", .seed = 6, .samples = 20000},
  };
  for (const auto& job : jobs) out.push_back(run_job(job));
  return out;
}

void c10_determinism(Outcome& o) {
  std::string first = full_suite().dump(), second = full_suite().dump();
  if (first != second) o.fail("JSON differs between runs");
  o.detail << "12 jobs, " << first.size() << " bytes, identical";
}

}  // namespace

int main() {
  auto sets = generated_sets();
  std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"C1 exact counting", c1_counting},
      {"C2 probability normalization", c2_normalization},
      {"C3 closed forms", c3_closed_forms},
      {"C4 thick/negligible dichotomy", [&](Outcome& o) { c4_dichotomy(o, sets); }},
      {"C5 Schreier structure", c5_schreier},
      {"C6 negligibility at desk scale", c6_negligibility},
      {"C7 absorbing chain exactness", c7_absorption},
      {"C8 relative classifier consistency", [&](Outcome& o) { c8_relative(o, sets); }},
      {"C9 sampler fidelity", c9_sampler},
      {"C10 determinism", c10_determinism},
  };
  int failures = 0;
  for (auto& [name, run] : criteria) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " (" << std::fixed << std::setprecision(1) << secs
              << "s): " << o.detail.str() << std::endl;
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
