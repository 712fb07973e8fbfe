#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "regfree/exact.hpp"
#include "regfree/word.hpp"

namespace regfree {

using Vertex = int;
inline constexpr Vertex kNoVertex = -1;

// Edge source --x_generator--> target; generator is 1-based.
struct Edge {
  Vertex source;
  int generator;
  Vertex target;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// A (vertex, direction) pair of Γ with no incident edge in that direction.
// Each one opens a frontier vertex of the coset graph Γ* with a hanging
// Cayley tree behind it.
struct FrontierDescriptor {
  Vertex boundary_vertex;
  Letter missing_direction;
  friend auto operator<=>(const FrontierDescriptor&, const FrontierDescriptor&) = default;
};

// Finite folded X-labeled graph with a basepoint. Vertices are numbered in
// BFS order from the basepoint (which is 0), exploring directions x1, x1⁻¹,
// x2, x2⁻¹, ...; edges are sorted. Two graphs are isomorphic as based
// labeled graphs iff they compare equal.
class StallingsGraph {
 public:
  // The one-vertex graph (trivial subgroup).
  explicit StallingsGraph(const Alphabet& alphabet);
  // Folds, keeps `protected_vertex` (if any) during trimming, renumbers.
  // Used by the builders below; `edges` may be unfolded.
  StallingsGraph(const Alphabet& alphabet, std::size_t vertex_count, Vertex basepoint,
                 const std::vector<Edge>& edges, bool trim = true,
                 Vertex protected_vertex = kNoVertex, Vertex* protected_image = nullptr);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t vertex_count() const { return adjacency_.size(); }
  Vertex basepoint() const { return 0; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Neighbor of v in direction `letter` (against the edge for an inverse
  // letter), or kNoVertex.
  Vertex follow(Vertex v, Letter letter) const { return adjacency_[v][letter.code()]; }
  // End vertex of the w-labeled path from `from`, if it exists.
  std::optional<Vertex> read(Vertex from, const Word& w) const;
  // Number of incident edge ends (a loop counts twice).
  int degree(Vertex v) const;

  friend bool operator==(const StallingsGraph&, const StallingsGraph&) = default;

 private:
  Alphabet alphabet_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<Edge> edges_;
};

// Rooted spanning tree of Γ, as sorted indices into graph.edges().
struct SpanningTree {
  std::vector<std::size_t> edges;
  bool geodesic = false;
  friend bool operator==(const SpanningTree&, const SpanningTree&) = default;
};

// Γ_C for C = ⟨generators⟩: petals folded and trimmed to the core. Trivial
// generators are dropped.
StallingsGraph build_subgroup_graph(const Alphabet& alphabet, const std::vector<Word>& generators);

bool membership(const Word& w, const StallingsGraph& graph);
// |E| - |V| + 1
long rank(const StallingsGraph& graph);
// Index when every vertex carries all 2m directions, otherwise nullopt.
std::optional<std::size_t> finite_index(const StallingsGraph& graph);
inline bool is_finite_index(const StallingsGraph& graph) { return finite_index(graph).has_value(); }
// In (vertex, letter-code) order.
std::vector<FrontierDescriptor> frontier(const StallingsGraph& graph);

// Graph distances from the basepoint (edges usable in both directions).
std::vector<std::size_t> distances_from_basepoint(const StallingsGraph& graph);
// BFS tree with directions explored in code order, lower vertex first.
SpanningTree geodesic_spanning_tree(const StallingsGraph& graph);
// Matrix-tree theorem on the underlying multigraph (loops ignored).
Integer count_spanning_trees(const StallingsGraph& graph);
// Each spanning tree once (geodesic flag set), in lexicographic order of
// edge-index sets. Throws ResourceError when the graph has more than
// `edge_limit` edges.
void enumerate_spanning_trees(const StallingsGraph& graph,
                              const std::function<void(const SpanningTree&)>& visit,
                              std::size_t edge_limit = 40);
std::vector<SpanningTree> spanning_trees(const StallingsGraph& graph, std::size_t edge_limit = 40);
bool is_spanning_tree(const StallingsGraph& graph, const SpanningTree& tree);
// Tree distances from the basepoint equal graph distances.
bool is_geodesic_tree(const StallingsGraph& graph, const SpanningTree& tree);

// Stallings graph of the intersection of the two subgroups: the component of
// the product graph at the pair of basepoints, trimmed to its core.
StallingsGraph pullback(const StallingsGraph& a, const StallingsGraph& b);

nlohmann::json to_json(const StallingsGraph& graph);
StallingsGraph stallings_graph_from_json(const Alphabet& alphabet, const nlohmann::json& j);
std::string to_dot(const StallingsGraph& graph, const std::string& name = "G");

}  // namespace regfree
