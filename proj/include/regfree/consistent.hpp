#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "regfree/automaton.hpp"

namespace regfree {

// Automaton whose states carry a prototype: a state of the ambient automaton
// reached by the same words.
struct PrototypedAutomaton {
  ReducedAutomaton automaton;
  std::vector<State> prototype;
};

// Single initial state I (no incoming arrows), single accepting state Z,
// every non-initial state typed, every state reaches Z.
struct ConsistentAutomaton {
  ReducedAutomaton automaton;
  State accept;
  std::vector<State> prototype;
};

// `typed` is the product of B with the ambient automaton and the last-letter
// tracker (all conditions except the single accepting state). `parts` has one
// consistent automaton per accepting state of `typed`; their languages are
// disjoint and their union is L(B).
struct ConsistentForm {
  ReducedAutomaton ambient;
  PrototypedAutomaton typed;
  std::vector<ConsistentAutomaton> parts;
};

// Throws InputError when L(A) is not prefix-closed, when L(B) ⊄ L(A) or when
// L(B) is empty.
ConsistentForm make_consistent(const ReducedAutomaton& b, const ReducedAutomaton& a);

// B1: arrows leaving Z removed (R1). B2: states reachable from Z, Z initial and
// accepting (R2). B3: Z split into a source Z1 and a sink Z2 (R3).
struct Decomposition {
  PrototypedAutomaton b1;
  PrototypedAutomaton b2;
  PrototypedAutomaton b3;
  State z1;
  State z2;
};
Decomposition split_b1_b2_b3(const ConsistentAutomaton& bc);

// Number of arrows leaving an ambient state.
std::size_t nu(const ReducedAutomaton& ambient, State prototype);

// w such that C_L(w) ⊆ L(typed) and C_L(w) is not L-small: the state of w
// agrees with its prototype on outgoing labels, so does every state reachable
// from it, and the prototype reaches a part of the ambient automaton with no
// reachable dead end. Shortest such w in BFS order. Meaningful for
// prefix-closed R.
std::optional<Word> relative_contains_cone(const ConsistentForm& form);

nlohmann::json to_json(const ConsistentAutomaton& bc);
nlohmann::json to_json(const PrototypedAutomaton& p);

}  // namespace regfree
