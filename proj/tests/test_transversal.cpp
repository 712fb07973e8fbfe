#include <doctest.h>

#include <map>

#include "oracles.hpp"
#include "regfree/asymptotics.hpp"
#include "regfree/error.hpp"
#include "regfree/transversal.hpp"
#include "samples.hpp"

using namespace regfree;

namespace {
Alphabet F2(2);
Word w(const char* text) { return Word::parse(F2, text); }
StallingsGraph graph_of(const std::vector<std::string>& gens) {
  std::vector<Word> words;
  for (const auto& g : gens) words.push_back(Word::parse(F2, g));
  return build_subgroup_graph(F2, words);
}

std::vector<Word> members_of_S(const SchreierTransversal& t, std::size_t len) {
  std::vector<Word> out;
  for_each_word(t.automaton(), len, [&](const Word& s) { out.push_back(s); });
  return out;
}
}  // namespace

TEST_CASE("representatives for <abA>") {
  SchreierTransversal t = geodesic_transversal(graph_of({"abA"}));
  CHECK(t.representative(w("ab")) == w("a"));
  CHECK(t.representative(w("abA")) == w("1"));
  CHECK(t.representative(w("abbA")) == w("1"));
  for (const Word& s : members_of_S(t, 5)) CHECK(t.representative(s) == s);
  CHECK(t.tree().edges == std::vector<std::size_t>{0});
  CHECK(t.internal_vertex(w("a")) == std::optional<Vertex>(1));
  CHECK_FALSE(t.internal_vertex(w("b")));
  std::vector<std::string> short_reps;
  enumerate_transversal(t, 1, [&](const Word& s, const RepClassification& c) {
    short_reps.push_back(s.to_string());
    if (s == w("1") || s == w("a")) CHECK(c.internal);
  });
  CHECK(short_reps == std::vector<std::string>{"1", "a", "A", "b", "B"});
  std::size_t zero = 0;
  enumerate_transversal(t, 0, [&](const Word&, const RepClassification&) { ++zero; });
  CHECK(zero == 1);
}

TEST_CASE("Schreier structure on the sample subgroups") {
  for (const auto& sample : sample_subgroups()) {
    CAPTURE(sample.name);
    StallingsGraph g = graph_of(sample.generators);
    oracle::FoldedGraph naive(2, oracle::parse_all(sample.generators));
    SchreierTransversal t = geodesic_transversal(g);

    // one representative per coset among words of length <= 8
    std::map<std::pair<std::size_t, oracle::Codes>, Word> seen;
    std::size_t internal = 0;
    for (const Word& s : members_of_S(t, 8)) {
      auto key = naive.coset_key(oracle::codes(s));
      auto [it, fresh] = seen.emplace(key, s);
      CHECK_MESSAGE(fresh, s.to_string() << " shares a coset with " << it->second.to_string());
      if (key.second.empty()) ++internal;
      if (!s.empty()) CHECK(t.contains(s.prefix(s.size() - 1)));
    }
    CHECK(internal == g.vertex_count());

    for (std::size_t k = 0; k <= 6; ++k)
      for (const auto& c : oracle::sphere(2, k)) {
        Word x = oracle::word(2, c);
        Word r = t.representative(x);
        CHECK(t.contains(r));
        CHECK(naive.contains(oracle::codes(multiply(r, x.inverse()))));
      }

    for_each_word(t.automaton(), 10, [&](const Word& s) {
      if (!s.empty()) CHECK(t.contains(s.prefix(s.size() - 1)));
    });

    // one transversal per spanning tree
    auto trees = spanning_trees(g);
    CHECK(Integer(static_cast<unsigned long>(trees.size())) == count_spanning_trees(g));
    std::vector<ReducedAutomaton> all;
    for (const auto& tree : trees) all.push_back(SchreierTransversal(g, tree).automaton());
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j) CHECK_FALSE(equivalent(all[i], all[j]));
  }
}

TEST_CASE("geodesic representatives") {
  for (const auto& sample : sample_subgroups()) {
    StallingsGraph g = graph_of(sample.generators);
    SchreierTransversal t = geodesic_transversal(g);
    auto dist = distances_from_basepoint(g);
    for (const Word& s : members_of_S(t, 5)) {
      CHECK(is_geodesic(s, t));
      if (auto v = t.internal_vertex(s)) CHECK(s.size() == dist[*v]);
    }
    for (const auto& tree : spanning_trees(g)) {
      SchreierTransversal other(g, tree);
      bool all_geodesic = true;
      for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
        all_geodesic = all_geodesic && other.tree_path(v).size() == dist[v];
      CHECK(tree.geodesic == all_geodesic);
    }
  }
  CHECK_THROWS_AS(is_geodesic(w("abA"), geodesic_transversal(graph_of({"abA"}))), InputError);
}

TEST_CASE("stability") {
  for (const auto& sample : sample_subgroups()) {
    CAPTURE(sample.name);
    StallingsGraph g = graph_of(sample.generators);
    oracle::FoldedGraph naive(2, oracle::parse_all(sample.generators));
    SchreierTransversal t = geodesic_transversal(g);
    CHECK_FALSE(is_stable(w("1"), t));
    std::vector<Word> elements;
    for (std::size_t k = 1; k <= 9; ++k)
      for (const auto& c : oracle::sphere(2, k))
        if (naive.contains(c)) elements.push_back(oracle::word(2, c));
    ReducedAutomaton uns = unstable_automaton(t);
    for (const Word& s : members_of_S(t, 4)) {
      bool stable = is_stable(s, t);
      CHECK(uns.accepts(s) == !stable);
      bool witnessed_unstable = false;
      for (const Word& c : elements) {
        Word sc = multiply(s, c);
        if (!t.contains(sc)) witnessed_unstable = true;
      }
      if (stable) CHECK_FALSE(witnessed_unstable);
    }
    CHECK(is_subset(uns, t.automaton()));
  }
  // b against <abA>
  SchreierTransversal t = geodesic_transversal(graph_of({"abA"}));
  CHECK(is_stable(w("b"), t) == t.contains(w("babA")));
}

TEST_CASE("singularity") {
  StallingsGraph pic = graph_of({"abA"});
  CHECK(is_singular(w("abA"), pic));
  CHECK_FALSE(is_singular(w("a"), pic));
  CHECK_FALSE(is_singular(w("b"), pic));
  for (const auto& sample : sample_subgroups()) {
    CAPTURE(sample.name);
    StallingsGraph g = graph_of(sample.generators);
    oracle::FoldedGraph naive(2, oracle::parse_all(sample.generators));
    std::vector<oracle::Codes> elements;
    for (std::size_t k = 1; k <= 8; ++k)
      for (const auto& c : oracle::sphere(2, k))
        if (naive.contains(c)) elements.push_back(c);
    SchreierTransversal t = geodesic_transversal(g);
    ReducedAutomaton sin = singular_automaton(t), uns = unstable_automaton(t);
    CHECK(is_subset(sin, uns));
    for (const Word& s : members_of_S(t, 4)) {
      bool singular = is_singular(s, g);
      CHECK(sin.accepts(s) == singular);
      auto sc = oracle::codes(s);
      bool witnessed = false;
      for (const auto& c : elements)
        if (naive.contains(oracle::concat(oracle::concat(oracle::inverse(sc), c), sc))) witnessed = true;
      if (witnessed) CHECK(singular);
    }
  }
  // ⟨x1x2x1⁻¹⟩ is malnormal, so N* = C and S_sin = {ε}
  SchreierTransversal tp = geodesic_transversal(pic);
  CHECK(equivalent(singular_automaton(tp), from_words(F2, {w("1")})));
  CHECK(equivalent(normalizer_automaton(tp), from_subgroup(pic)));
}

TEST_CASE("families of cosets") {
  SchreierTransversal trivial = geodesic_transversal(StallingsGraph(F2));
  CHECK(generalized_normalizer(trivial).pairs.empty());
  CHECK(unstable_cosets(trivial).empty());
  CHECK(equivalent(trivial.automaton(), all_words(F2)));

  for (const auto& sample : sample_subgroups()) {
    CAPTURE(sample.name);
    StallingsGraph g = graph_of(sample.generators);
    SchreierTransversal t = geodesic_transversal(g);
    auto cosets = unstable_cosets(t);
    for (const Word& s : members_of_S(t, 8)) {
      if (is_stable(s, t)) continue;
      bool covered = false;
      for (const auto& [a, b] : cosets) covered = covered || membership(multiply(multiply(a, b.inverse()).inverse(), s), g);
      CHECK_MESSAGE(covered, s.to_string());
    }
    if (!is_finite_index(g))
      for (const auto& [a, b] : cosets)
        CHECK(classify(left_coset(g, multiply(a, b.inverse()))).verdict == Verdict::ExponentiallyNegligible);

    auto family = generalized_normalizer(t);
    for (const auto& [a, b] : family.pairs) CHECK(is_singular(multiply(a, b.inverse()), g));
    ReducedAutomaton n = normalizer_automaton(t);
    for (std::size_t k = 0; k <= 6; ++k)
      for (const auto& c : oracle::sphere(2, k)) {
        Word x = oracle::word(2, c);
        CHECK(n.accepts(x) == is_singular(x, g));
      }

    auto basis = free_basis(t);
    CHECK(static_cast<long>(basis.size()) == rank(g));
    CHECK(build_subgroup_graph(F2, basis) == g);
  }
}

TEST_CASE("classifier and json") {
  SchreierTransversal t = geodesic_transversal(graph_of({"aa", "bb", "abab"}));
  RepresentativeClassifier classifier(t);
  for (const Word& s : members_of_S(t, 5)) {
    RepClassification c = classifier.classify(s);
    CHECK(c.internal == t.internal_vertex(s).has_value());
    CHECK(c.stable == is_stable(s, t));
    CHECK(c.singular == is_singular(s, t.graph()));
    CHECK(c.geodesic == is_geodesic(s, t));
    if (c.singular) CHECK_FALSE(c.stable);
  }
  auto j = to_json(RepClassification{true, true, false, true});
  CHECK(j["internal"] == true);
  CHECK(j["stable"] == false);
}
