#include "regfree/stallings.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "regfree/error.hpp"
#include "regfree/linalg.hpp"

namespace regfree {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  // Keeps the smaller representative.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::size_t checked_vertex(Vertex v, std::size_t n) {
  if (v < 0 || static_cast<std::size_t>(v) >= n) throw InputError("edge endpoint out of range");
  return static_cast<std::size_t>(v);
}

}  // namespace

StallingsGraph::StallingsGraph(const Alphabet& alphabet)
    : alphabet_(alphabet), adjacency_(1, std::vector<Vertex>(alphabet.letter_count(), kNoVertex)) {}

StallingsGraph::StallingsGraph(const Alphabet& alphabet, std::size_t vertex_count, Vertex basepoint,
                               const std::vector<Edge>& raw_edges, bool trim,
                               Vertex protected_vertex, Vertex* protected_image)
    : alphabet_(alphabet) {
  const std::size_t n = vertex_count;
  if (n == 0) throw InputError("graph needs at least one vertex");
  checked_vertex(basepoint, n);
  for (const auto& e : raw_edges) {
    checked_vertex(e.source, n);
    checked_vertex(e.target, n);
    if (e.generator < 1 || e.generator > alphabet.rank()) throw InputError("edge label outside alphabet");
  }

  // Folding: identify the far ends of any two edges that share a label at a
  // common end, until the graph is deterministic in both directions.
  DisjointSets sets(n);
  for (bool changed = true; changed;) {
    changed = false;
    std::map<std::pair<std::size_t, int>, std::size_t> seen;
    for (const auto& e : raw_edges) {
      std::size_t s = sets.find(e.source);
      std::size_t t = sets.find(e.target);
      auto out_key = std::make_pair(s, 2 * (e.generator - 1));
      auto in_key = std::make_pair(t, 2 * (e.generator - 1) + 1);
      if (auto [it, inserted] = seen.emplace(out_key, t); !inserted && sets.find(it->second) != t) {
        sets.unite(it->second, t);
        changed = true;
        break;
      }
      if (auto [it, inserted] = seen.emplace(in_key, s); !inserted && sets.find(it->second) != s) {
        sets.unite(it->second, s);
        changed = true;
        break;
      }
    }
  }
  std::set<Edge> folded;
  for (const auto& e : raw_edges) {
    folded.insert({static_cast<Vertex>(sets.find(e.source)), e.generator,
                   static_cast<Vertex>(sets.find(e.target))});
  }
  std::size_t root = sets.find(basepoint);
  std::size_t kept = protected_vertex == kNoVertex ? root : sets.find(checked_vertex(protected_vertex, n));

  // Trim: drop non-protected vertices of degree <= 1 until none remain.
  if (trim) {
    for (bool changed = true; changed;) {
      changed = false;
      std::map<std::size_t, int> degree;
      for (const auto& e : folded) {
        ++degree[e.source];
        ++degree[e.target];
      }
      for (auto it = folded.begin(); it != folded.end();) {
        auto bad = [&](std::size_t v) { return v != root && v != kept && degree[v] <= 1; };
        if (bad(it->source) || bad(it->target)) {
          it = folded.erase(it);
          changed = true;
        } else {
          ++it;
        }
      }
    }
  }

  // BFS renumbering from the basepoint.
  const int letters = alphabet.letter_count();
  std::map<std::size_t, std::vector<std::size_t>> raw_adj;
  for (const auto& e : folded) {
    auto& out = raw_adj[e.source];
    auto& in = raw_adj[e.target];
    out.resize(letters, n);
    in.resize(letters, n);
    out[2 * (e.generator - 1)] = e.target;
    in[2 * (e.generator - 1) + 1] = e.source;
  }
  std::map<std::size_t, Vertex> renumber;
  std::deque<std::size_t> queue{root};
  renumber[root] = 0;
  while (!queue.empty()) {
    std::size_t v = queue.front();
    queue.pop_front();
    auto it = raw_adj.find(v);
    if (it == raw_adj.end()) continue;
    for (int c = 0; c < letters; ++c) {
      std::size_t w = it->second[c];
      if (w == n || renumber.count(w)) continue;
      renumber[w] = static_cast<Vertex>(renumber.size());
      queue.push_back(w);
    }
  }
  adjacency_.assign(renumber.size(), std::vector<Vertex>(letters, kNoVertex));
  for (const auto& e : folded) {
    auto s = renumber.find(e.source), t = renumber.find(e.target);
    if (s == renumber.end() || t == renumber.end()) continue;
    edges_.push_back({s->second, e.generator, t->second});
    adjacency_[s->second][2 * (e.generator - 1)] = t->second;
    adjacency_[t->second][2 * (e.generator - 1) + 1] = s->second;
  }
  std::sort(edges_.begin(), edges_.end());
  if (protected_image) {
    auto it = renumber.find(kept);
    *protected_image = it == renumber.end() ? kNoVertex : it->second;
  }
}

std::optional<Vertex> StallingsGraph::read(Vertex from, const Word& w) const {
  Vertex v = from;
  for (Letter l : w) {
    v = follow(v, l);
    if (v == kNoVertex) return std::nullopt;
  }
  return v;
}

int StallingsGraph::degree(Vertex v) const {
  int d = 0;
  for (Vertex w : adjacency_[v]) d += w != kNoVertex;
  return d;
}

namespace {

// Petal construction: a closed path at vertex 0 for each generator.
void add_path(std::vector<Edge>& edges, std::size_t& vertex_count, Vertex from, const Word& w, Vertex to) {
  Vertex current = from;
  for (std::size_t i = 0; i < w.size(); ++i) {
    Vertex next = i + 1 == w.size() ? to : static_cast<Vertex>(vertex_count++);
    Letter l = w[i];
    if (l.sign() > 0) {
      edges.push_back({current, l.generator(), next});
    } else {
      edges.push_back({next, l.generator(), current});
    }
    current = next;
  }
}

}  // namespace

StallingsGraph build_subgroup_graph(const Alphabet& alphabet, const std::vector<Word>& generators) {
  std::vector<Edge> edges;
  std::size_t vertex_count = 1;
  for (const auto& g : generators) {
    if (g.alphabet() != alphabet) throw InputError("generator over a different alphabet");
    if (g.empty()) continue;
    add_path(edges, vertex_count, 0, g, 0);
  }
  if (edges.empty()) return StallingsGraph(alphabet);
  return StallingsGraph(alphabet, vertex_count, 0, edges);
}

bool membership(const Word& w, const StallingsGraph& graph) {
  auto end = graph.read(graph.basepoint(), w);
  return end && *end == graph.basepoint();
}

long rank(const StallingsGraph& graph) {
  return static_cast<long>(graph.edges().size()) - static_cast<long>(graph.vertex_count()) + 1;
}

std::optional<std::size_t> finite_index(const StallingsGraph& graph) {
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    if (graph.degree(static_cast<Vertex>(v)) != graph.alphabet().letter_count()) return std::nullopt;
  }
  return graph.vertex_count();
}

std::vector<FrontierDescriptor> frontier(const StallingsGraph& graph) {
  std::vector<FrontierDescriptor> out;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    for (int c = 0; c < graph.alphabet().letter_count(); ++c) {
      if (graph.follow(static_cast<Vertex>(v), Letter(c)) == kNoVertex) {
        out.push_back({static_cast<Vertex>(v), Letter(c)});
      }
    }
  }
  return out;
}

std::vector<std::size_t> distances_from_basepoint(const StallingsGraph& graph) {
  constexpr auto unreached = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(graph.vertex_count(), unreached);
  std::deque<Vertex> queue{graph.basepoint()};
  dist[graph.basepoint()] = 0;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (int c = 0; c < graph.alphabet().letter_count(); ++c) {
      Vertex w = graph.follow(v, Letter(c));
      if (w == kNoVertex || dist[w] != unreached) continue;
      dist[w] = dist[v] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

namespace {

// Index of the edge traversed when leaving v in direction `letter`.
std::size_t edge_index(const StallingsGraph& graph, Vertex v, Letter letter) {
  Vertex w = graph.follow(v, letter);
  Edge e = letter.sign() > 0 ? Edge{v, letter.generator(), w} : Edge{w, letter.generator(), v};
  auto it = std::lower_bound(graph.edges().begin(), graph.edges().end(), e);
  return static_cast<std::size_t>(it - graph.edges().begin());
}

}  // namespace

SpanningTree geodesic_spanning_tree(const StallingsGraph& graph) {
  SpanningTree tree;
  tree.geodesic = true;
  std::vector<bool> seen(graph.vertex_count(), false);
  std::deque<Vertex> queue{graph.basepoint()};
  seen[graph.basepoint()] = true;
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (int c = 0; c < graph.alphabet().letter_count(); ++c) {
      Vertex w = graph.follow(v, Letter(c));
      if (w == kNoVertex || seen[w]) continue;
      seen[w] = true;
      tree.edges.push_back(edge_index(graph, v, Letter(c)));
      queue.push_back(w);
    }
  }
  std::sort(tree.edges.begin(), tree.edges.end());
  return tree;
}

Integer count_spanning_trees(const StallingsGraph& graph) {
  const std::size_t n = graph.vertex_count();
  if (n == 1) return 1;
  // Reduced Laplacian: delete the basepoint's row and column.
  IntegerMatrix laplacian(n - 1, n - 1);
  auto slot = [&](Vertex v) { return static_cast<std::size_t>(v) - 1; };
  for (const auto& e : graph.edges()) {
    if (e.source == e.target) continue;
    if (e.source != 0) laplacian(slot(e.source), slot(e.source)) += 1;
    if (e.target != 0) laplacian(slot(e.target), slot(e.target)) += 1;
    if (e.source != 0 && e.target != 0) {
      laplacian(slot(e.source), slot(e.target)) -= 1;
      laplacian(slot(e.target), slot(e.source)) -= 1;
    }
  }
  return determinant(std::move(laplacian));
}

bool is_spanning_tree(const StallingsGraph& graph, const SpanningTree& tree) {
  if (tree.edges.size() + 1 != graph.vertex_count()) return false;
  DisjointSets sets(graph.vertex_count());
  for (auto i : tree.edges) {
    if (i >= graph.edges().size()) return false;
    const auto& e = graph.edges()[i];
    if (!sets.unite(e.source, e.target)) return false;
  }
  return true;
}

void enumerate_spanning_trees(const StallingsGraph& graph,
                              const std::function<void(const SpanningTree&)>& visit,
                              std::size_t edge_limit) {
  const auto& edges = graph.edges();
  if (edges.size() > edge_limit) {
    throw ResourceError("spanning tree enumeration limited to " + std::to_string(edge_limit) +
                        " edges, graph has " + std::to_string(edges.size()));
  }
  const std::size_t needed = graph.vertex_count() - 1;
  std::vector<std::size_t> chosen;
  std::function<void(std::size_t, DisjointSets)> recurse = [&](std::size_t i, DisjointSets sets) {
    if (chosen.size() == needed) {
      SpanningTree tree{chosen, false};
      tree.geodesic = is_geodesic_tree(graph, tree);
      visit(tree);
      return;
    }
    if (edges.size() - i < needed - chosen.size()) return;
    const auto& e = edges[i];
    if (e.source != e.target && sets.find(e.source) != sets.find(e.target)) {
      DisjointSets with = sets;
      with.unite(e.source, e.target);
      chosen.push_back(i);
      recurse(i + 1, std::move(with));
      chosen.pop_back();
    }
    recurse(i + 1, std::move(sets));
  };
  recurse(0, DisjointSets(graph.vertex_count()));
}

std::vector<SpanningTree> spanning_trees(const StallingsGraph& graph, std::size_t edge_limit) {
  std::vector<SpanningTree> out;
  enumerate_spanning_trees(graph, [&](const SpanningTree& t) { out.push_back(t); }, edge_limit);
  return out;
}

bool is_geodesic_tree(const StallingsGraph& graph, const SpanningTree& tree) {
  const std::size_t n = graph.vertex_count();
  std::vector<std::vector<Vertex>> adjacent(n);
  for (auto i : tree.edges) {
    const auto& e = graph.edges()[i];
    adjacent[e.source].push_back(e.target);
    adjacent[e.target].push_back(e.source);
  }
  std::vector<std::size_t> depth(n, n);
  depth[graph.basepoint()] = 0;
  std::deque<Vertex> queue{graph.basepoint()};
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : adjacent[v])
      if (depth[w] == n) {
        depth[w] = depth[v] + 1;
        queue.push_back(w);
      }
  }
  return depth == distances_from_basepoint(graph);
}

StallingsGraph pullback(const StallingsGraph& a, const StallingsGraph& b) {
  if (a.alphabet() != b.alphabet()) throw InputError("pullback of graphs over different alphabets");
  std::map<std::pair<Vertex, Vertex>, Vertex> ids;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::vector<Edge> edges;
  auto id_of = [&](std::pair<Vertex, Vertex> p) {
    auto [it, inserted] = ids.emplace(p, static_cast<Vertex>(pairs.size()));
    if (inserted) pairs.push_back(p);
    return it->second;
  };
  id_of({a.basepoint(), b.basepoint()});
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [u, v] = pairs[i];
    for (int c = 0; c < a.alphabet().letter_count(); ++c) {
      Vertex u2 = a.follow(u, Letter(c)), v2 = b.follow(v, Letter(c));
      if (u2 == kNoVertex || v2 == kNoVertex) continue;
      Vertex j = id_of({u2, v2});
      if (c % 2 == 0) edges.push_back({static_cast<Vertex>(i), c / 2 + 1, j});
    }
  }
  return StallingsGraph(a.alphabet(), pairs.size(), 0, edges);
}

nlohmann::json to_json(const StallingsGraph& graph) {
  nlohmann::json j;
  std::vector<int> vertices(graph.vertex_count());
  std::iota(vertices.begin(), vertices.end(), 0);
  j["vertices"] = vertices;
  j["basepoint"] = graph.basepoint();
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : graph.edges()) edges.push_back({e.source, e.generator, e.target});
  j["edges"] = edges;
  return j;
}

StallingsGraph stallings_graph_from_json(const Alphabet& alphabet, const nlohmann::json& j) {
  try {
    std::size_t n = j.at("vertices").size();
    Vertex base = j.at("basepoint").get<Vertex>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) edges.push_back({e.at(0).get<Vertex>(), e.at(1).get<int>(), e.at(2).get<Vertex>()});
    return StallingsGraph(alphabet, n, base, edges, false);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed graph JSON: ") + e.what(), 0);
  }
}

std::string to_dot(const StallingsGraph& graph, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    os << "  " << v << (v == 0 ? " [shape=doublecircle];\n" : " [shape=circle];\n");
  }
  for (const auto& e : graph.edges()) {
    os << "  " << e.source << " -> " << e.target << " [label=\""
       << Letter::from_generator(e.generator, 1).to_char() << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace regfree
