#include "regfree/job.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "regfree/asymptotics.hpp"
#include "regfree/error.hpp"
#include "regfree/sampler.hpp"
#include "regfree/stallings.hpp"
#include "regfree/transversal.hpp"

namespace regfree {

nlohmann::json to_json(const JobSpec& job) {
  nlohmann::json j;
  j["command"] = job.command;
  j["rank"] = job.rank;
  j["generators"] = job.generators;
  j["set"] = job.set;
  j["ambient"] = job.ambient;
  j["which"] = job.which;
  j["k_range"] = {job.k_min, job.k_max};
  j["s"] = job.s_values;
  j["seed"] = job.seed;
  j["samples"] = job.samples;
  j["max_len"] = job.max_len;
  j["limit"] = job.limit;
  j["tree_index"] = job.tree_index ? nlohmann::json(*job.tree_index) : nlohmann::json(nullptr);
  j["dot"] = job.dot;
  return j;
}

JobSpec job_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("job file must hold a JSON object");
  JobSpec job;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "command") job.command = value.get<std::string>();
      else if (key == "rank") job.rank = value.get<int>();
      else if (key == "generators") job.generators = value.get<std::vector<std::string>>();
      else if (key == "set") job.set = value.get<std::string>();
      else if (key == "ambient") job.ambient = value.get<std::string>();
      else if (key == "which") job.which = value.get<std::string>();
      else if (key == "k_range") {
        if (value.is_string()) std::tie(job.k_min, job.k_max) = parse_k_range(value.get<std::string>());
        else std::tie(job.k_min, job.k_max) = value.get<std::pair<std::size_t, std::size_t>>();
      } else if (key == "s") {
        job.s_values.clear();
        for (const auto& s : value) job.s_values.push_back(s.is_string() ? s.get<std::string>() : s.dump());
      } else if (key == "seed") job.seed = value.get<std::uint64_t>();
      else if (key == "samples") job.samples = value.get<std::size_t>();
      else if (key == "max_len") job.max_len = value.get<std::size_t>();
      else if (key == "limit") job.limit = value.get<std::size_t>();
      else if (key == "tree_index") {
        if (value.is_null()) job.tree_index.reset();
        else job.tree_index = value.get<std::size_t>();
      } else if (key == "dot") job.dot = value.get<std::string>();
      else if (key == "version") continue;
      else throw InputError("unknown job key '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
      throw InputError("job key '" + key + "': " + e.what());
    }
  }
  return job;
}

std::pair<std::size_t, std::size_t> parse_k_range(std::string_view text) {
  auto number = [&](std::string_view part, std::size_t offset) {
    if (part.empty()) throw ParseError("expected a number in k-range", offset);
    std::size_t value = 0;
    for (std::size_t i = 0; i < part.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) throw ParseError("expected a digit in k-range", offset + i);
      value = value * 10 + static_cast<std::size_t>(part[i] - '0');
    }
    return value;
  };
  auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    std::size_t k = number(text, 0);
    return {k, k};
  }
  std::size_t a = number(text.substr(0, dots), 0), b = number(text.substr(dots + 2), dots + 2);
  if (a > b) throw InputError("empty k-range " + std::string(text));
  return {a, b};
}

namespace {

Word parse_word_at(const Alphabet& alphabet, std::string_view text, std::size_t offset) {
  try {
    return Word::parse(alphabet, text);
  } catch (const ParseError& e) {
    throw ParseError("malformed word '" + std::string(text) + "'", offset + e.position());
  } catch (const InputError& e) {
    throw ParseError(std::string(e.what()), offset);
  }
}

std::vector<Word> parse_generators_at(const Alphabet& alphabet, std::string_view text, std::size_t offset) {
  std::vector<Word> out;
  std::size_t start = 0;
  while (true) {
    auto plus = text.find('+', start);
    auto part = text.substr(start, plus == std::string_view::npos ? std::string_view::npos : plus - start);
    if (!part.empty()) out.push_back(parse_word_at(alphabet, part, offset + start));
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return out;
}

SchreierTransversal make_transversal(const StallingsGraph& graph, std::optional<std::size_t> index) {
  if (!index) return geodesic_transversal(graph);
  auto trees = spanning_trees(graph);
  if (*index >= trees.size())
    throw InputError("tree index " + std::to_string(*index) + " out of range (" + std::to_string(trees.size()) +
                     " spanning trees)");
  return SchreierTransversal(graph, trees[*index]);
}

ReducedAutomaton read_automaton_file(const Alphabet& alphabet, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), e.byte);
  }
  return automaton_from_json(alphabet, j);
}

class ExpressionParser {
 public:
  ExpressionParser(const Alphabet& alphabet, std::string_view text) : alphabet_(alphabet), text_(text) {}

  ReducedAutomaton parse() {
    ReducedAutomaton a = expression();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
    return a;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  ReducedAutomaton expression() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])))) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (name.empty()) throw ParseError("expected a set expression", start);
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      std::vector<ReducedAutomaton> args{expression()};
      skip_space();
      while (pos_ < text_.size() && text_[pos_] == ',') {
        ++pos_;
        args.push_back(expression());
        skip_space();
      }
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError("expected ')'", pos_);
      ++pos_;
      return combine(name, args, start);
    }
    std::string_view argument;
    std::size_t arg_pos = pos_;
    if (pos_ < text_.size() && text_[pos_] == ':') {
      arg_pos = ++pos_;
      while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')') ++pos_;
      argument = text_.substr(arg_pos, pos_ - arg_pos);
      while (!argument.empty() && std::isspace(static_cast<unsigned char>(argument.back())))
        argument.remove_suffix(1);
    }
    return primitive(name, argument, start, arg_pos);
  }

  ReducedAutomaton combine(const std::string& name, std::vector<ReducedAutomaton>& args, std::size_t at) {
    auto arity = [&](std::size_t lo, std::size_t hi) {
      if (args.size() < lo || args.size() > hi) throw ParseError("wrong number of arguments to " + name, at);
    };
    if (name == "union" || name == "inter" || name == "concat" || name == "product") {
      arity(2, SIZE_MAX);
      ReducedAutomaton acc = args[0];
      for (std::size_t i = 1; i < args.size(); ++i)
        acc = name == "union"   ? union_of(acc, args[i])
              : name == "inter" ? intersection(acc, args[i])
              : name == "concat" ? concat_no_cancel(acc, args[i])
                                 : reduced_product(acc, args[i]);
      return acc;
    }
    if (name == "diff") {
      arity(2, 2);
      return difference(args[0], args[1]);
    }
    arity(1, 1);
    if (name == "prefix") return prefix_closure(args[0]);
    if (name == "star") return star_no_cancel(args[0]);
    if (name == "inverse") return inverse_set(args[0]);
    if (name == "complement") return complement(args[0]);
    throw ParseError("unknown combinator '" + name + "'", at);
  }

  ReducedAutomaton primitive(const std::string& name, std::string_view arg, std::size_t at, std::size_t arg_pos) {
    if (name == "F" || name == "all") return all_words(alphabet_);
    if (name == "empty") return empty_language(alphabet_);
    if (name == "word") return from_words(alphabet_, {parse_word_at(alphabet_, arg, arg_pos)});
    if (name == "words") return from_words(alphabet_, parse_generators_at(alphabet_, arg, arg_pos));
    if (name == "cone") return from_cone(parse_word_at(alphabet_, arg, arg_pos));
    if (name == "subgroup") return from_subgroup(graph(arg, arg_pos));
    if (name == "coset" || name == "lcoset") {
      auto slash = arg.find('/');
      if (slash == std::string_view::npos) throw ParseError("expected '/' in " + name, arg_pos);
      if (name == "coset")
        return right_coset(graph(arg.substr(0, slash), arg_pos),
                           parse_word_at(alphabet_, arg.substr(slash + 1), arg_pos + slash + 1));
      return left_coset(graph(arg.substr(slash + 1), arg_pos + slash + 1),
                        parse_word_at(alphabet_, arg.substr(0, slash), arg_pos));
    }
    if (name == "dcoset") {
      auto s1 = arg.find('/');
      auto s2 = s1 == std::string_view::npos ? s1 : arg.find('/', s1 + 1);
      if (s2 == std::string_view::npos) throw ParseError("expected A/w/B in dcoset", arg_pos);
      return double_coset(alphabet_, parse_generators_at(alphabet_, arg.substr(0, s1), arg_pos),
                          parse_word_at(alphabet_, arg.substr(s1 + 1, s2 - s1 - 1), arg_pos + s1 + 1),
                          parse_generators_at(alphabet_, arg.substr(s2 + 1), arg_pos + s2 + 1));
    }
    if (name == "transversal" || name == "unstable" || name == "singular") {
      auto atsign = arg.find('@');
      std::optional<std::size_t> index;
      if (atsign != std::string_view::npos) index = parse_k_range(arg.substr(atsign + 1)).first;
      SchreierTransversal t = make_transversal(graph(arg.substr(0, atsign), arg_pos), index);
      if (name == "transversal") return t.automaton();
      if (name == "unstable") return unstable_automaton(t);
      return singular_automaton(t);
    }
    if (name == "normalizer") return normalizer_automaton(geodesic_transversal(graph(arg, arg_pos)));
    if (name == "file") return read_automaton_file(alphabet_, std::string(arg));
    throw ParseError("unknown set primitive '" + name + "'", at);
  }

  StallingsGraph graph(std::string_view gens, std::size_t offset) {
    return build_subgroup_graph(alphabet_, parse_generators_at(alphabet_, gens, offset));
  }

  Alphabet alphabet_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::vector<Word> parse_generator_list(const Alphabet& alphabet, const std::vector<std::string>& gens) {
  std::vector<Word> out;
  for (const auto& g : gens) out.push_back(Word::parse(alphabet, g));
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << content;
}

nlohmann::json rationals(const std::vector<Rational>& values) {
  auto j = nlohmann::json::array();
  for (const auto& v : values) j.push_back(to_string(v));
  return j;
}

nlohmann::json counts_json(const ReducedAutomaton& a, const JobSpec& job) {
  auto counts = TransferMatrix(a).counts(job.k_max);
  auto n = nlohmann::json::array(), f = nlohmann::json::array();
  for (std::size_t k = job.k_min; k <= job.k_max; ++k) {
    n.push_back(to_string(counts[k]));
    Rational q(counts[k], sphere_size(k, a.alphabet()));
    q.canonicalize();
    f.push_back(to_string(q));
  }
  return {{"n_k", n}, {"f_k", f}};
}

nlohmann::json relative_counts_json(const ReducedAutomaton& r, const ReducedAutomaton& l, const JobSpec& job) {
  auto rel = nlohmann::json::array();
  for (std::size_t k = job.k_min; k <= job.k_max; ++k) {
    auto v = fk_relative(r, l, k);
    rel.push_back(v ? to_string(*v) : std::string("undefined"));
  }
  auto prime = fk_prime(r, l, job.k_max);
  return {{"f_k_relative", rel},
          {"f_prime_k", rationals(std::vector<Rational>(prime.begin() + static_cast<long>(job.k_min), prime.end()))}};
}

nlohmann::json cmd_stallings(const JobSpec& job, const Alphabet& alphabet) {
  StallingsGraph g = build_subgroup_graph(alphabet, parse_generator_list(alphabet, job.generators));
  nlohmann::json r;
  r["graph"] = to_json(g);
  r["vertices"] = g.vertex_count();
  r["rank"] = rank(g);
  auto index = finite_index(g);
  r["finite_index"] = index.has_value();
  r["index"] = index ? nlohmann::json(*index) : nlohmann::json(nullptr);
  auto fr = nlohmann::json::array();
  for (const auto& d : frontier(g)) fr.push_back({d.boundary_vertex, std::string(1, d.missing_direction.to_char())});
  r["frontier"] = fr;
  r["spanning_trees"] = to_string(count_spanning_trees(g));
  r["geodesic_tree"] = geodesic_spanning_tree(g).edges;
  if (!job.dot.empty()) write_file(job.dot, to_dot(g, "Gamma"));
  return r;
}

nlohmann::json cmd_transversal(const JobSpec& job, const Alphabet& alphabet) {
  StallingsGraph g = build_subgroup_graph(alphabet, parse_generator_list(alphabet, job.generators));
  SchreierTransversal t = make_transversal(g, job.tree_index);
  nlohmann::json r;
  r["tree"] = {{"edges", t.tree().edges}, {"geodesic", t.tree().geodesic}};
  auto reps = nlohmann::json::array();
  bool truncated = false;
  enumerate_transversal(t, job.max_len, [&](const Word& w, const RepClassification& c) {
    if (reps.size() >= job.limit) {
      truncated = true;
      return;
    }
    nlohmann::json e = to_json(c);
    e["word"] = w.to_string();
    reps.push_back(e);
  });
  r["representatives"] = reps;
  r["truncated"] = truncated;
  auto words = [](const std::vector<Word>& ws) {
    auto j = nlohmann::json::array();
    for (const auto& w : ws) j.push_back(w.to_string());
    return j;
  };
  auto pairs = [](const std::vector<std::pair<Word, Word>>& ps) {
    auto j = nlohmann::json::array();
    for (const auto& [a, b] : ps) j.push_back({a.to_string(), b.to_string()});
    return j;
  };
  r["free_basis"] = words(free_basis(t));
  r["unstable_cosets"] = pairs(unstable_cosets(t));
  r["normalizer_double_cosets"] = pairs(generalized_normalizer(t).pairs);
  if (!job.dot.empty()) write_file(job.dot, to_dot(t.automaton(), "S"));
  return r;
}

nlohmann::json cmd_classify(const JobSpec& job, const Alphabet& alphabet) {
  ReducedAutomaton r = parse_set_expression(alphabet, job.set);
  if (!job.dot.empty()) write_file(job.dot, to_dot(normalize(r), "R"));
  nlohmann::json out;
  if (job.ambient.empty()) {
    out = to_json(classify(r));
    out.update(counts_json(r, job));
  } else {
    ReducedAutomaton l = parse_set_expression(alphabet, job.ambient);
    out = to_json(classify_relative(r, l));
    out.update(counts_json(r, job));
    out.update(relative_counts_json(r, l, job));
  }
  out["set"] = job.set;
  out["k_range"] = {job.k_min, job.k_max};
  return out;
}

nlohmann::json cmd_measure(const JobSpec& job, const Alphabet& alphabet) {
  ReducedAutomaton r = parse_set_expression(alphabet, job.set);
  if (!job.dot.empty()) write_file(job.dot, to_dot(normalize(r), "R"));
  nlohmann::json out;
  out["set"] = job.set;
  out["which"] = job.which;
  std::optional<ReducedAutomaton> l;
  if (!job.ambient.empty()) l = parse_set_expression(alphabet, job.ambient);
  if (job.which == "fk") {
    out.update(counts_json(r, job));
    if (l) out.update(relative_counts_json(r, *l, job));
    out["k_range"] = {job.k_min, job.k_max};
  } else if (job.which == "mu") {
    if (job.s_values.empty()) throw InputError("measure mu needs --s");
    auto values = nlohmann::json::array();
    for (const auto& text : job.s_values) {
      Rational s = parse_rational(text);
      values.push_back({{"s", to_string(s)}, {"mu", to_string(mu_s(r, s))}});
    }
    out["mu_s"] = values;
    RationalFunction f = mu_function(r);
    out["mu_function"] = {{"numerator", f.numerator.to_string("s")}, {"denominator", f.denominator.to_string("s")}};
  } else if (job.which == "lambda") {
    auto lambda = lambda_measure(r);
    out["lambda"] = lambda ? to_string(*lambda) : std::string("infinite");
  } else if (job.which == "mu01") {
    MuLimits m = mu0_mu1(r);
    out["mu0"] = m.mu0 ? to_string(*m.mu0) : std::string("divergent");
    out["mu1"] = m.mu1 ? to_string(*m.mu1) : std::string("undefined");
  } else if (job.which == "lambdaL" || job.which == "star") {
    ReducedAutomaton ambient = l ? *l : all_words(alphabet);
    if (job.which == "lambdaL") {
      RelativeReport rep = classify_relative(r, ambient);
      out["verdict"] = to_string(rep.verdict);
      out["lambdaL"] = rep.lambda_L ? to_string(*rep.lambda_L) : std::string("infinite");
      // one chain per state of the prefix closure, keyed by its shortest word
      out["absorption"] = nlohmann::json::array();
      for (const auto& part : rep.parts)
        out["absorption"].push_back({{"accept_word", part.accept_word.to_string()},
                                     {"P_Z2", to_string(part.absorption.p_z2)},
                                     {"P_D", to_string(part.absorption.p_d)}});
    } else {
      out["star"] = to_json(star_closure_measure(r, ambient));
    }
  } else {
    throw InputError("measure: unknown quantity '" + job.which + "' (fk|mu|lambda|mu01|lambdaL|star)");
  }
  return out;
}

nlohmann::json cmd_sample(const JobSpec& job, const Alphabet& alphabet) {
  nlohmann::json out;
  out["walk"] = job.which;
  if (job.which == "ws") {
    if (job.s_values.empty()) throw InputError("sample ws needs --s");
    auto runs = nlohmann::json::array();
    for (const auto& text : job.s_values) {
      Rational exact = parse_rational(text);
      if (exact <= 0 || exact > 1) throw InputError("stopping probability must lie in (0, 1]");
      double s = exact.get_d();
      WalkSample sample = sample_Ws_many(alphabet, s, job.samples, job.seed);
      nlohmann::json run = to_json(sample);
      run["s"] = to_string(exact);
      auto fit = nlohmann::json::array();
      for (std::size_t k = 0; k <= 10; ++k) {
        double p = s * std::pow(1 - s, static_cast<double>(k));
        auto it = sample.lengths.find(k);
        std::size_t c = it == sample.lengths.end() ? 0 : it->second;
        fit.push_back({{"k", k}, {"observed", c}, {"expected", p}, {"z", z_score(c, sample.n, p)}});
      }
      run["length_fit"] = fit;
      double n = static_cast<double>(sample.n);
      double mean = sample.length_sum / n, sd = std::sqrt(1 - s) / s;
      run["mean_fit"] = {{"observed", mean}, {"expected", 1 / s - 1}, {"z", (mean - (1 / s - 1)) / (sd / std::sqrt(n))}};
      auto words = nlohmann::json::array();
      std::size_t shown = 0;
      for_each_in_ball(alphabet, 2, [&](const Word& w) {
        if (shown++ >= 10) return;
        Rational mu = lambda_word(w) * pow(1 - exact, w.size()) * exact;
        auto it = sample.words.find(w);
        std::size_t c = it == sample.words.end() ? 0 : it->second;
        words.push_back({{"word", w.to_string()}, {"observed", c}, {"expected", to_string(mu)},
                         {"z", z_score(c, sample.n, mu.get_d())}});
      });
      run["word_fit"] = words;
      runs.push_back(run);
    }
    out["runs"] = runs;
  } else if (job.which == "w0") {
    WalkSample sample = sample_W0_many(alphabet, job.max_len, job.samples, job.seed);
    out["run"] = to_json(sample);
    if (job.max_len > 0) {
      std::vector<std::size_t> first(alphabet.letter_count(), 0);
      for (const auto& [w, c] : sample.words) first[w.front().code()] += c;
      auto fit = nlohmann::json::array();
      double p = 1.0 / alphabet.letter_count();
      for (int c = 0; c < alphabet.letter_count(); ++c)
        fit.push_back({{"letter", std::string(1, Letter(c).to_char())}, {"observed", first[c]}, {"expected", p},
                       {"z", z_score(first[c], sample.n, p)}});
      out["first_letter_fit"] = fit;
    }
  } else {
    throw InputError("sample: unknown walk '" + job.which + "' (ws|w0)");
  }
  return out;
}

}  // namespace

ReducedAutomaton parse_set_expression(const Alphabet& alphabet, std::string_view text) {
  return ExpressionParser(alphabet, text).parse();
}

nlohmann::json run_job(const JobSpec& job) {
  if (job.k_min > job.k_max) throw InputError("empty k-range");
  Alphabet alphabet(job.rank);
  nlohmann::json result;
  if (job.command == "stallings") result = cmd_stallings(job, alphabet);
  else if (job.command == "transversal") result = cmd_transversal(job, alphabet);
  else if (job.command == "classify") result = cmd_classify(job, alphabet);
  else if (job.command == "measure") result = cmd_measure(job, alphabet);
  else if (job.command == "sample") result = cmd_sample(job, alphabet);
  else throw InputError("unknown command '" + job.command + "'");
  return {{"version", kVersion}, {"job", to_json(job)}, {"result", result}};
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return 2;
  if (dynamic_cast<const InputError*>(&e) || dynamic_cast<const DomainError*>(&e)) return 3;
  if (dynamic_cast<const ResourceError*>(&e)) return 4;
  return 1;
}

std::string to_dot(const ReducedAutomaton& a, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=LR;\n";
  for (State s = 0; s < static_cast<State>(a.state_count()); ++s)
    out << "  " << s << " [shape=" << (a.accepting(s) ? "doublecircle" : "circle")
        << (s == a.initial() ? ", style=bold" : "") << "];\n";
  for (State s = 0; s < static_cast<State>(a.state_count()); ++s)
    for (int c = 0; c < a.alphabet().letter_count(); ++c)
      if (State t = a.next(s, Letter(c)); t != kNoState)
        out << "  " << s << " -> " << t << " [label=\"" << Letter(c).to_char() << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace regfree
