#include <doctest.h>

#include <tuple>

#include "corpus.hpp"
#include "regfree/automaton.hpp"
#include "regfree/error.hpp"
#include "regfree/job.hpp"

using namespace regfree;

namespace {
Alphabet F2(2);
Word w(const char* text) { return Word::parse(F2, text); }
ReducedAutomaton set(const char* expr) { return parse_set_expression(F2, expr); }

void check_normalized(const ReducedAutomaton& a) {
  const auto n = static_cast<State>(a.state_count());
  CHECK(a.initial() == 0);
  std::vector<std::optional<Letter>> incoming(n);
  for (State s = 0; s < n; ++s)
    for (int c = 0; c < 4; ++c) {
      State t = a.next(s, Letter(c));
      if (t == kNoState) continue;
      CHECK(t != a.initial());
      if (incoming[t]) CHECK(*incoming[t] == Letter(c));
      incoming[t] = Letter(c);
    }
  for (State s = 1; s < n; ++s) {
    REQUIRE(incoming[s]);
    CHECK(a.type(s) == incoming[s]);
    CHECK(a.next(s, incoming[s]->inverse()) == kNoState);
  }
}

std::size_t count_words(const ReducedAutomaton& a, std::size_t k) {
  std::size_t n = 0;
  for_each_word(a, k, [&](const Word& x) { n += x.size() == k; });
  return n;
}
}  // namespace

TEST_CASE("corpus automata match their predicates") {
  for (const auto& entry : counting_corpus()) {
    CAPTURE(entry.expression);
    ReducedAutomaton a = set(entry.expression.c_str());
    check_normalized(a);
    if (!entry.member) continue;
    for (std::size_t k = 0; k <= 7; ++k)
      for (const auto& c : oracle::sphere(2, k)) CHECK(a.accepts(oracle::word(2, c)) == entry.member(c));
  }
}

TEST_CASE("cones") {
  ReducedAutomaton c = from_cone(w("a"));
  for (std::size_t k = 1; k <= 7; ++k) CHECK(count_words(c, k) == static_cast<std::size_t>(std::pow(3, k - 1)));
  CHECK(equivalent(from_cone(w("1")), all_words(F2)));
}

TEST_CASE("boolean operations") {
  ReducedAutomaton a = set("union(cone:ab, subgroup:abA)");
  CHECK(equivalent(union_of(a, complement(a)), all_words(F2)));
  CHECK(is_empty(intersection(from_cone(w("a")), from_cone(w("b")))));
  ReducedAutomaton b = set("coset:ab+ba/a");
  ReducedAutomaton u = union_of(a, b), i = intersection(a, b);
  for (std::size_t k = 0; k <= 8; ++k) CHECK(count_words(u, k) + count_words(i, k) == count_words(a, k) + count_words(b, k));
  CHECK(equivalent(difference(a, b), intersection(a, complement(b))));
  CHECK(is_subset(i, a));
  CHECK_FALSE(is_subset(a, i));
}

TEST_CASE("prefix closure") {
  CHECK(equivalent(prefix_closure(from_words(F2, {w("ab")})), from_words(F2, {w("1"), w("a"), w("ab")})));
  ReducedAutomaton cone_closure = prefix_closure(from_cone(w("abA")));
  CHECK(equivalent(cone_closure, union_of(from_cone(w("abA")), from_words(F2, {w("1"), w("a"), w("ab")}))));
  ReducedAutomaton p = prefix_closure(set("subgroup:abA"));
  CHECK(equivalent(prefix_closure(p), p));
  CHECK(is_prefix_closed(p));
  CHECK_FALSE(is_prefix_closed(set("subgroup:abA")));
}

TEST_CASE("concatenation without cancellation") {
  CHECK(equivalent(concat_no_cancel(from_words(F2, {w("a")}), from_words(F2, {w("b")})), from_words(F2, {w("ab")})));
  CHECK(is_empty(concat_no_cancel(from_words(F2, {w("a")}), from_words(F2, {w("Ab")}))));
  ReducedAutomaton t = from_words(F2, {w("aa")});
  ReducedAutomaton s = star_no_cancel(t);
  for (std::size_t k = 0; k <= 10; ++k) CHECK(count_words(s, k) == (k > 0 && k % 2 == 0 ? 1u : 0u));
  CHECK(is_empty(star_no_cancel(empty_language(F2))));
}

TEST_CASE("products in F") {
  std::vector<Word> left{w("1"), w("ab"), w("aB"), w("BA")}, right{w("b"), w("Ba"), w("BBa"), w("1")};
  std::vector<Word> expected;
  for (const Word& u : left)
    for (const Word& v : right) expected.push_back(multiply(u, v));
  CHECK(equivalent(reduced_product(from_words(F2, left), from_words(F2, right)), from_words(F2, expected)));

  // a ∈ A·g·B iff A·a meets g·B
  for (auto [gens_a, g, gens_b] : std::vector<std::tuple<const char*, const char*, const char*>>{
           {"a", "b", "a"}, {"aa+bb+abab", "a", "aa+bb+abab"}, {"abA", "b", "ab+ba"}, {"ab+ba", "1", "ab+ba"}}) {
    CAPTURE(g);
    auto ga = build_subgroup_graph(F2, {}), gb = ga;
    std::vector<Word> wa, wb;
    for (auto* list : {&wa, &wb}) {
      std::string text = list == &wa ? gens_a : gens_b;
      std::size_t start = 0;
      while (start <= text.size()) {
        auto plus = text.find('+', start);
        list->push_back(Word::parse(F2, text.substr(start, plus == std::string::npos ? std::string::npos : plus - start)));
        if (plus == std::string::npos) break;
        start = plus + 1;
      }
    }
    ga = build_subgroup_graph(F2, wa);
    gb = build_subgroup_graph(F2, wb);
    ReducedAutomaton d = double_coset(F2, wa, w(g), wb);
    for (std::size_t k = 0; k <= 6; ++k)
      for (const auto& c : oracle::sphere(2, k)) {
        Word x = oracle::word(2, c);
        bool member = !is_empty(intersection(right_coset(ga, x), left_coset(gb, w(g))));
        CHECK(d.accepts(x) == member);
      }
  }
}

TEST_CASE("inverse and cosets") {
  ReducedAutomaton c = set("subgroup:abA+bb");
  CHECK(equivalent(inverse_set(c), c));
  CHECK(equivalent(set("lcoset:a/abA"), inverse_set(set("coset:abA/A"))));
  CHECK(set("coset:abA/b").accepts(w("abAb")));
}

TEST_CASE("minimization and mn quotient") {
  for (const char* expr : {"union(cone:ab, subgroup:abA)", "star(words:ab+ba)", "transversal:abA", "coset:aa+b+abA/a"}) {
    ReducedAutomaton a = set(expr);
    ReducedAutomaton m = minimize(a);
    CHECK(m.state_count() <= a.state_count());
    CHECK(equivalent(m, a));
  }
  ReducedAutomaton q = mn_quotient(from_cone(w("a")), all_words(F2));
  CHECK(equivalent(q, from_cone(w("a"))));
  ReducedAutomaton s = set("transversal:abA");
  for (const char* expr : {"inter(transversal:abA, cone:b)", "unstable:abA", "prefix(inter(transversal:abA, words:abb+B))"}) {
    ReducedAutomaton r = set(expr);
    CHECK(equivalent(mn_quotient(r, s), r));
  }
  ReducedAutomaton self = mn_quotient(s, s);
  CHECK(self.state_count() <= minimize(s).state_count());
  CHECK_THROWS_AS(mn_quotient(all_words(F2), s), InputError);
}

TEST_CASE("cones inside automata") {
  CHECK(contains_cone(all_words(F2)) == std::optional<Word>(w("1")));
  CHECK(contains_cone(set("transversal:abA")).has_value());
  CHECK_FALSE(contains_cone(set("subgroup:abA")).has_value());
  auto u = contains_cone(set("union(cone:bA, subgroup:abA)"));
  REQUIRE(u);
  CHECK(*u == w("bA"));
}

TEST_CASE("queries and serialization") {
  CHECK(shortest_word(set("coset:abA/bb")) == std::optional<Word>(w("bb")));
  CHECK_FALSE(shortest_word(empty_language(F2)));
  for (const auto& entry : counting_corpus()) {
    ReducedAutomaton a = set(entry.expression.c_str());
    CHECK(equivalent(automaton_from_json(F2, to_json(a)), a));
  }
  std::vector<Word> listed;
  for_each_word(set("words:b+a+aa+1"), 3, [&](const Word& x) { listed.push_back(x); });
  CHECK(listed == std::vector<Word>{w("1"), w("a"), w("b"), w("aa")});
}
