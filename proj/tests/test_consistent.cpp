#include <doctest.h>

#include "corpus.hpp"
#include "regfree/consistent.hpp"
#include "regfree/error.hpp"
#include "regfree/job.hpp"

using namespace regfree;

namespace {
Alphabet F2(2);
Word w(const char* text) { return Word::parse(F2, text); }
ReducedAutomaton set(const char* expr) { return parse_set_expression(F2, expr); }

void check_consistent(const ConsistentAutomaton& bc, const ReducedAutomaton& ambient) {
  const ReducedAutomaton& a = bc.automaton;
  const auto n = static_cast<State>(a.state_count());
  const int letters = a.alphabet().letter_count();
  std::vector<std::vector<State>> preds(n);
  for (State s = 0; s < n; ++s) {
    CHECK(a.accepting(s) == (s == bc.accept));
    for (int c = 0; c < letters; ++c) {
      State t = a.next(s, Letter(c));
      if (t == kNoState) continue;
      CHECK(t != a.initial());
      CHECK(a.type(t) == std::optional<Letter>(Letter(c)));
      CHECK(ambient.next(bc.prototype[s], Letter(c)) == bc.prototype[t]);
      preds[t].push_back(s);
    }
  }
  CHECK(bc.prototype[a.initial()] == ambient.initial());
  std::vector<bool> reach(n, false);
  std::vector<State> stack{bc.accept};
  reach[bc.accept] = true;
  while (!stack.empty()) {
    State s = stack.back();
    stack.pop_back();
    for (State p : preds[s])
      if (!reach[p]) reach[p] = true, stack.push_back(p);
  }
  for (State s = 0; s < n; ++s) CHECK(reach[s]);
}

ReducedAutomaton union_of_parts(const ConsistentForm& form) {
  ReducedAutomaton acc = empty_language(form.ambient.alphabet());
  for (const auto& p : form.parts) acc = union_of(acc, p.automaton);
  return acc;
}
}  // namespace

TEST_CASE("consistent form over F and over a transversal") {
  ReducedAutomaton s = set("transversal:abA");
  for (auto [r, l] : std::vector<std::pair<const char*, const char*>>{
           {"subgroup:abA", "F"},
           {"star(words:ab+ba)", "F"},
           {"union(cone:ab, words:b+BB)", "F"},
           {"unstable:abA", "transversal:abA"},
           {"inter(transversal:abA, cone:b)", "transversal:abA"},
           {"singular:aa+bb+abab", "transversal:aa+bb+abab"}}) {
    CAPTURE(r);
    ReducedAutomaton rr = set(r), ll = set(l);
    ConsistentForm form = make_consistent(rr, ll);
    CHECK(equivalent(form.typed.automaton, rr));
    CHECK(equivalent(union_of_parts(form), rr));
    for (std::size_t i = 0; i < form.parts.size(); ++i) {
      check_consistent(form.parts[i], form.ambient);
      for (std::size_t j = i + 1; j < form.parts.size(); ++j)
        CHECK(is_empty(intersection(form.parts[i].automaton, form.parts[j].automaton)));
    }
  }
}

TEST_CASE("state with mixed incoming labels is split") {
  Alphabet f4(4);
  ReducedAutomaton raw(f4, 4, 0);
  raw.set_transition(0, Letter(2), 2);  // b
  raw.set_transition(0, Letter(0), 1);  // a
  raw.set_transition(1, Letter(0), 2);  // a
  raw.set_transition(2, Letter(4), 3);  // c
  raw.set_transition(2, Letter(6), 3);  // d
  raw.set_accepting(3);
  ConsistentForm form = make_consistent(raw, all_words(f4));
  const ReducedAutomaton& t = form.typed.automaton;
  State via_b = t.run(Word::parse(f4, "b")), via_aa = t.run(Word::parse(f4, "aa"));
  CHECK(via_b != via_aa);
  for (State s : {via_b, via_aa}) {
    CHECK(t.out_degree(s) == 2);
    CHECK(t.next(s, Letter(4)) != kNoState);
    CHECK(t.next(s, Letter(6)) != kNoState);
  }
  CHECK(equivalent(t, raw));
}

TEST_CASE("decomposition R = R1 R2 and R2 = star of R3") {
  for (auto [r, l] : std::vector<std::pair<const char*, const char*>>{
           {"subgroup:abA", "F"},
           {"coset:ab+ba/a", "F"},
           {"star(words:ab+bA)", "F"},
           {"unstable:abA", "transversal:abA"},
           {"inter(transversal:aa+bb+abab, cone:ab)", "transversal:aa+bb+abab"}}) {
    CAPTURE(r);
    ConsistentForm form = make_consistent(set(r), set(l));
    for (const auto& part : form.parts) {
      Decomposition d = split_b1_b2_b3(part);
      ReducedAutomaton r1 = d.b1.automaton, r2 = d.b2.automaton, r3 = d.b3.automaton;
      CHECK(equivalent(concat_no_cancel(r1, r2), part.automaton));
      CHECK(equivalent(r2, union_of(from_words(F2, {w("1")}), star_no_cancel(r3))));
      CHECK(r3.out_degree(d.z2) == 0);
      CHECK(r3.accepting(d.z2));
      for (State s = 0; s < static_cast<State>(r3.state_count()); ++s) {
        CHECK(r3.accepting(s) == (s == d.z2));
        for (int c = 0; c < 4; ++c) CHECK(r3.next(s, Letter(c)) != d.z1);
      }
      CHECK(d.b3.prototype[d.z2] == d.b3.prototype[d.z1]);
    }
  }
}

TEST_CASE("relative cones") {
  ReducedAutomaton f = all_words(F2), s = set("transversal:abA");
  CHECK(relative_contains_cone(make_consistent(f, f)) == std::optional<Word>(w("1")));
  CHECK(relative_contains_cone(make_consistent(s, s)) == std::optional<Word>(w("1")));
  for (const char* expr : {"prefix(subgroup:abA)", "transversal:abA", "prefix(cone:ab)", "prefix(star(words:ab+ba))",
                           "prefix(union(subgroup:ab+ba, cone:BB))"}) {
    CAPTURE(expr);
    ReducedAutomaton r = set(expr);
    CHECK(relative_contains_cone(make_consistent(r, f)) == contains_cone(r));
  }
  CHECK_FALSE(relative_contains_cone(make_consistent(set("prefix(unstable:abA)"), s)));
  CHECK_THROWS_AS(make_consistent(f, s), InputError);
  CHECK_THROWS_AS(make_consistent(s, set("subgroup:abA")), InputError);
  CHECK_THROWS_AS(make_consistent(empty_language(F2), f), InputError);
}

TEST_CASE("json carries prototypes") {
  ConsistentForm form = make_consistent(set("subgroup:abA"), all_words(F2));
  auto j = to_json(form.parts.at(0));
  CHECK(j.contains("prototype"));
  CHECK(j["prototype"].size() == form.parts[0].automaton.state_count());
}
