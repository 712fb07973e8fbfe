#pragma once

#include <functional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "regfree/automaton.hpp"
#include "regfree/stallings.hpp"

namespace regfree {

// Right Schreier transversal S = S_{T*} determined by a spanning tree T of Γ.
// Internal representatives are the tree paths p_v (one per vertex); external
// ones are p_v ∘ x ∘ tail for a frontier pair (v, x).
class SchreierTransversal {
 public:
  SchreierTransversal(StallingsGraph graph, SpanningTree tree);

  const StallingsGraph& graph() const { return graph_; }
  const SpanningTree& tree() const { return tree_; }
  const std::vector<FrontierDescriptor>& frontier() const { return frontier_; }
  // S as a prefix-closed automaton.
  const ReducedAutomaton& automaton() const { return automaton_; }

  bool contains(const Word& s) const { return automaton_.accepts(s); }
  // The s ∈ S with Cs = Cw.
  Word representative(const Word& w) const;
  // p_v
  const Word& tree_path(Vertex v) const { return paths_[v]; }
  bool is_tree_edge(Vertex v, Letter direction) const;
  // The vertex v with s = p_v, if s is internal.
  std::optional<Vertex> internal_vertex(const Word& s) const;

 private:
  StallingsGraph graph_;
  SpanningTree tree_;
  std::vector<FrontierDescriptor> frontier_;
  std::vector<Word> paths_;
  std::vector<std::vector<bool>> tree_direction_;
  ReducedAutomaton automaton_;
};

SchreierTransversal geodesic_transversal(const StallingsGraph& graph);

struct RepClassification {
  bool internal = false;
  bool geodesic = false;
  bool stable = false;
  bool singular = false;
  friend bool operator==(const RepClassification&, const RepClassification&) = default;
};

// The following throw InputError when s ∉ S.
bool is_geodesic(const Word& s, const SchreierTransversal& transversal);
// sC ⊆ S, by emptiness of sC ∖ S.
bool is_stable(const Word& s, const SchreierTransversal& transversal);

// s⁻¹Cs ∩ C ≠ 1, via the pullback of Γ(s⁻¹Cs) and Γ_C.
bool is_singular(const Word& s, const StallingsGraph& graph);

// Free basis of C read off the spanning tree: p_u x p_v⁻¹ per non-tree edge.
std::vector<Word> free_basis(const SchreierTransversal& transversal);

// S_uns as an automaton. s is unstable iff s = s′ ∘ t with s′ internal, t the
// label of a reduced Γ-path u → 1, and some reduced Γ-path d: u → 1 starting
// differently from t with s′ ∘ d reduced whose reading from v_{s′} crosses a
// non-tree Γ-edge before leaving Γ.
ReducedAutomaton unstable_automaton(const SchreierTransversal& transversal);

// Pairs (s1, s2) of internal representatives.
struct DoubleCosetFamily {
  std::vector<std::pair<Word, Word>> pairs;
};
// All internal pairs with s1 s2⁻¹ singular; N*(C) is the union of the double
// cosets C s1 s2⁻¹ C.
DoubleCosetFamily generalized_normalizer(const SchreierTransversal& transversal);
ReducedAutomaton normalizer_automaton(const SchreierTransversal& transversal);
// S ∩ N*(C)
ReducedAutomaton singular_automaton(const SchreierTransversal& transversal);

// Internal pairs with S_uns ⊆ ∪ s1 s2⁻¹ C; the containment is checked by
// automata before returning (Error if it fails).
std::vector<std::pair<Word, Word>> unstable_cosets(const SchreierTransversal& transversal);

// Precomputes the S_uns and S_sin automata once for bulk classification.
class RepresentativeClassifier {
 public:
  explicit RepresentativeClassifier(const SchreierTransversal& transversal);
  RepClassification classify(const Word& s) const;

 private:
  const SchreierTransversal& transversal_;
  ReducedAutomaton unstable_;
  ReducedAutomaton singular_;
  std::vector<std::size_t> distance_;
};

// All s ∈ S with |s| <= max_length in shortlex order, classified.
void enumerate_transversal(const SchreierTransversal& transversal, std::size_t max_length,
                           const std::function<void(const Word&, const RepClassification&)>& visit);

nlohmann::json to_json(const RepClassification& c);

}  // namespace regfree
