#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include <json.hpp>

#include "regfree/stallings.hpp"
#include "regfree/word.hpp"

namespace regfree {

using State = int;
inline constexpr State kNoState = -1;

// Deterministic automaton over X ∪ X⁻¹ whose language is a set of reduced
// words. Transitions are a partial map (state, letter) -> state.
//
// Automata returned by the constructions below are *normalized*: accessible,
// co-accessible (except that the initial state always exists), numbered in BFS
// order from the initial state, and typed: every non-initial state has all its
// incoming arrows labeled by one letter x (its type) and no outgoing arrow
// labeled x⁻¹; no arrow enters the initial state. mn_quotient is the one
// exception: minimization can merge states of different types, so its output
// carries no type annotation.
class ReducedAutomaton {
 public:
  ReducedAutomaton(const Alphabet& alphabet, std::size_t state_count, State initial = 0);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t state_count() const { return accepting_.size(); }
  State initial() const { return initial_; }
  bool accepting(State s) const { return accepting_[s]; }
  State next(State s, Letter l) const { return transitions_[s][l.code()]; }
  // Incoming-arrow label, if annotated.
  std::optional<Letter> type(State s) const;
  bool typed() const { return typed_; }

  State add_state(bool accepting = false);
  void set_accepting(State s, bool accepting = true) { accepting_[s] = accepting; }
  void set_transition(State from, Letter l, State to);
  void set_type(State s, std::optional<Letter> type);
  void clear_types();

  // End state of the path labeled w from `from`, or kNoState.
  State run(const Word& w, State from) const;
  State run(const Word& w) const { return run(w, initial_); }
  bool accepts(const Word& w) const;
  std::size_t out_degree(State s) const;

  friend bool operator==(const ReducedAutomaton&, const ReducedAutomaton&) = default;

 private:
  Alphabet alphabet_;
  State initial_;
  std::vector<bool> accepting_;
  std::vector<std::vector<State>> transitions_;
  std::vector<int> types_;
  bool typed_ = false;
};

// Nondeterministic automaton used as an intermediate for reversal and
// concatenation; determinize() turns it back into a ReducedAutomaton.
struct Nfa {
  explicit Nfa(const Alphabet& alphabet) : alphabet(alphabet) {}
  State add_state(bool accept = false);
  void add_transition(State from, Letter l, State to);

  Alphabet alphabet;
  std::vector<std::vector<std::vector<State>>> transitions;
  std::vector<bool> accepting;
  std::vector<State> initial;
};
ReducedAutomaton determinize(const Nfa& nfa);

// Intersects with the reduced-word tracker, trims, types and renumbers.
ReducedAutomaton normalize(const ReducedAutomaton& a);

ReducedAutomaton all_words(const Alphabet& alphabet);
ReducedAutomaton empty_language(const Alphabet& alphabet);
ReducedAutomaton from_words(const Alphabet& alphabet, const std::vector<Word>& words);
// C(u): all reduced words with prefix u.
ReducedAutomaton from_cone(const Word& u);
// Reduced labels of paths in `graph` from `start` ending in `accept`.
ReducedAutomaton from_graph(const StallingsGraph& graph, Vertex start, const std::vector<Vertex>& accept);
// The subgroup C itself.
ReducedAutomaton from_subgroup(const StallingsGraph& graph);
// Right coset C·w, read off the coset graph Γ*.
ReducedAutomaton right_coset(const StallingsGraph& graph, const Word& w);
// Left coset w·C.
ReducedAutomaton left_coset(const StallingsGraph& graph, const Word& w);
// {uv : u ∈ A, v ∈ B} with the product taken in F (cancellation allowed).
ReducedAutomaton reduced_product(const ReducedAutomaton& a, const ReducedAutomaton& b);
// A·w·B.
ReducedAutomaton double_coset(const Alphabet& alphabet, const std::vector<Word>& left, const Word& w,
                              const std::vector<Word>& right);

ReducedAutomaton union_of(const ReducedAutomaton& a, const ReducedAutomaton& b);
ReducedAutomaton intersection(const ReducedAutomaton& a, const ReducedAutomaton& b);
ReducedAutomaton difference(const ReducedAutomaton& a, const ReducedAutomaton& b);
// Complement inside F (the reduced words), never inside the free monoid.
ReducedAutomaton complement(const ReducedAutomaton& a);
ReducedAutomaton prefix_closure(const ReducedAutomaton& a);
// {a∘b : a ∈ A, b ∈ B, c(a, b) = 0}
ReducedAutomaton concat_no_cancel(const ReducedAutomaton& a, const ReducedAutomaton& b);
// T°∞ = T ∪ T∘T ∪ T∘T∘T ∪ ...
ReducedAutomaton star_no_cancel(const ReducedAutomaton& t);
// {w⁻¹ : w ∈ A}
ReducedAutomaton inverse_set(const ReducedAutomaton& a);

// Minimal automaton of the language (untyped, trimmed).
ReducedAutomaton minimize(const ReducedAutomaton& a);
// Quotient by w1 ~ w2 iff the no-cancellation futures of w1, w2 in R agree,
// over the prefix-closed ambient L. Throws InputError unless R ⊆ L.
ReducedAutomaton mn_quotient(const ReducedAutomaton& r, const ReducedAutomaton& l);

bool is_empty(const ReducedAutomaton& a);
bool is_subset(const ReducedAutomaton& a, const ReducedAutomaton& b);
bool equivalent(const ReducedAutomaton& a, const ReducedAutomaton& b);
bool is_prefix_closed(const ReducedAutomaton& a);
// Some accepted word of minimal length (shortlex-least), if any.
std::optional<Word> shortest_word(const ReducedAutomaton& a);

// u with C(u) ⊆ L(A), shortest under BFS order, or nullopt. A state
// qualifies only if every state reachable from it is accepting and carries
// all reduced continuations.
std::optional<Word> contains_cone(const ReducedAutomaton& a);

// Accepted words of length <= max_length in shortlex order.
void for_each_word(const ReducedAutomaton& a, std::size_t max_length,
                   const std::function<void(const Word&)>& visit);

nlohmann::json to_json(const ReducedAutomaton& a);
ReducedAutomaton automaton_from_json(const Alphabet& alphabet, const nlohmann::json& j);

}  // namespace regfree
