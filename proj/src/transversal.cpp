#include "regfree/transversal.hpp"

#include <deque>
#include <set>
#include <tuple>

#include "regfree/error.hpp"

namespace regfree {

namespace {

// Tree paths p_v for a spanning tree, plus the set of (vertex, direction)
// pairs that run along tree edges.
void tree_paths(const StallingsGraph& graph, const SpanningTree& tree, std::vector<Word>& paths,
                std::vector<std::vector<bool>>& along_tree) {
  const std::size_t n = graph.vertex_count();
  const int letters = graph.alphabet().letter_count();
  along_tree.assign(n, std::vector<bool>(letters, false));
  for (auto i : tree.edges) {
    const Edge& e = graph.edges()[i];
    Letter x = Letter::from_generator(e.generator, 1);
    along_tree[e.source][x.code()] = true;
    along_tree[e.target][x.inverse().code()] = true;
  }
  std::vector<std::optional<Word>> found(n);
  found[graph.basepoint()] = Word(graph.alphabet());
  std::deque<Vertex> queue{graph.basepoint()};
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (int c = 0; c < letters; ++c) {
      if (!along_tree[v][c]) continue;
      Vertex w = graph.follow(v, Letter(c));
      if (found[w]) continue;
      Word p = *found[v];
      p.push_back(Letter(c));
      found[w] = std::move(p);
      queue.push_back(w);
    }
  }
  paths.clear();
  for (auto& p : found) {
    if (!p) throw InputError("tree does not span the graph");
    paths.push_back(std::move(*p));
  }
}

std::vector<Word> basis_of(const StallingsGraph& graph, const SpanningTree& tree) {
  std::vector<Word> paths;
  std::vector<std::vector<bool>> along;
  tree_paths(graph, tree, paths, along);
  std::set<std::size_t> in_tree(tree.edges.begin(), tree.edges.end());
  std::vector<Word> basis;
  for (std::size_t i = 0; i < graph.edges().size(); ++i) {
    if (in_tree.count(i)) continue;
    const Edge& e = graph.edges()[i];
    Word x(graph.alphabet());
    x.push_back(Letter::from_generator(e.generator, 1));
    basis.push_back(multiply(multiply(paths[e.source], x), paths[e.target].inverse()));
  }
  return basis;
}

ReducedAutomaton transversal_automaton(const StallingsGraph& graph, const std::vector<std::vector<bool>>& along,
                                       const std::vector<FrontierDescriptor>& frontier) {
  const auto n = static_cast<State>(graph.vertex_count());
  const int letters = graph.alphabet().letter_count();
  // States 0..n-1: Γ vertices; n + y: free state entered by letter y.
  ReducedAutomaton a(graph.alphabet(), n + letters, graph.basepoint());
  for (State s = 0; s < n + letters; ++s) a.set_accepting(s);
  for (Vertex v = 0; v < n; ++v)
    for (int c = 0; c < letters; ++c)
      if (along[v][c]) a.set_transition(v, Letter(c), graph.follow(v, Letter(c)));
  for (const auto& f : frontier)
    a.set_transition(f.boundary_vertex, f.missing_direction, n + f.missing_direction.code());
  for (int y = 0; y < letters; ++y)
    for (int c = 0; c < letters; ++c)
      if (Letter(c) != Letter(y).inverse()) a.set_transition(n + y, Letter(c), n + c);
  return normalize(a);
}

void require_member(const Word& s, const SchreierTransversal& transversal) {
  if (!transversal.contains(s)) throw InputError(s.to_string() + " is not in the transversal");
}

}  // namespace

SchreierTransversal::SchreierTransversal(StallingsGraph graph, SpanningTree tree)
    : graph_(std::move(graph)), tree_(std::move(tree)), automaton_(graph_.alphabet(), 1) {
  if (!is_spanning_tree(graph_, tree_)) throw InputError("not a spanning tree of the graph");
  tree_.geodesic = is_geodesic_tree(graph_, tree_);
  frontier_ = regfree::frontier(graph_);
  tree_paths(graph_, tree_, paths_, tree_direction_);
  automaton_ = transversal_automaton(graph_, tree_direction_, frontier_);
}

bool SchreierTransversal::is_tree_edge(Vertex v, Letter direction) const {
  return tree_direction_[v][direction.code()];
}

Word SchreierTransversal::representative(const Word& w) const {
  Vertex v = graph_.basepoint();
  std::size_t i = 0;
  for (; i < w.size(); ++i) {
    Vertex t = graph_.follow(v, w[i]);
    if (t == kNoVertex) break;
    v = t;
  }
  Word rep = paths_[v];
  for (; i < w.size(); ++i) rep.push_back(w[i]);
  return rep;
}

std::optional<Vertex> SchreierTransversal::internal_vertex(const Word& s) const {
  Vertex v = graph_.basepoint();
  for (Letter l : s) {
    if (!is_tree_edge(v, l)) return std::nullopt;
    v = graph_.follow(v, l);
  }
  return v;
}

SchreierTransversal geodesic_transversal(const StallingsGraph& graph) {
  return SchreierTransversal(graph, geodesic_spanning_tree(graph));
}

namespace {

bool geodesic_given(const Word& s, const SchreierTransversal& transversal, const std::vector<std::size_t>& dist) {
  const StallingsGraph& g = transversal.graph();
  Vertex v = g.basepoint();
  std::size_t i = 0;
  for (; i < s.size() && transversal.is_tree_edge(v, s[i]); ++i) v = g.follow(v, s[i]);
  // Internal: |p_v| = d(v). External: the tail is forced, so only the tree
  // part can be too long.
  return i == dist[v];
}

}  // namespace

bool is_geodesic(const Word& s, const SchreierTransversal& transversal) {
  require_member(s, transversal);
  return geodesic_given(s, transversal, distances_from_basepoint(transversal.graph()));
}

bool is_stable(const Word& s, const SchreierTransversal& transversal) {
  require_member(s, transversal);
  return is_subset(left_coset(transversal.graph(), s), transversal.automaton());
}

bool is_singular(const Word& s, const StallingsGraph& graph) {
  std::vector<Word> basis = basis_of(graph, geodesic_spanning_tree(graph));
  if (basis.empty()) return false;
  std::vector<Word> conjugates;
  for (const Word& g : basis) conjugates.push_back(multiply(multiply(s.inverse(), g), s));
  StallingsGraph conjugate = build_subgroup_graph(graph.alphabet(), conjugates);
  return rank(pullback(conjugate, graph)) >= 1;
}

std::vector<Word> free_basis(const SchreierTransversal& transversal) {
  return basis_of(transversal.graph(), transversal.tree());
}

namespace {

constexpr int kNone = -1;

// Whether a reduced Γ-path d: u -> 1 exists with first letter not in
// {forbid_a, forbid_b}, whose reading from v crosses a non-tree Γ-edge before
// leaving Γ.
bool escape_exists(const SchreierTransversal& tr, Vertex v, Vertex u, int forbid_a, int forbid_b) {
  const StallingsGraph& g = tr.graph();
  const int letters = g.alphabet().letter_count();
  const auto n = static_cast<int>(g.vertex_count());
  const int out = n;  // second component has left Γ
  // (position from u, position from v or out, crossed, last letter)
  using Node = std::tuple<int, int, int, int>;
  std::set<Node> seen;
  std::deque<Node> queue;
  auto push = [&](Node node) {
    if (seen.insert(node).second) queue.push_back(node);
  };
  for (int c = 0; c < letters; ++c) {
    if (c == forbid_a || c == forbid_b) continue;
    Vertex a = g.follow(u, Letter(c));
    if (a == kNoVertex) continue;
    Vertex b = g.follow(v, Letter(c));
    if (b == kNoVertex) continue;  // leaves Γ before crossing anything
    push({a, b, tr.is_tree_edge(v, Letter(c)) ? 0 : 1, c});
  }
  while (!queue.empty()) {
    auto [a, b, crossed, last] = queue.front();
    queue.pop_front();
    if (a == g.basepoint() && crossed) return true;
    for (int c = 0; c < letters; ++c) {
      if (Letter(c) == Letter(last).inverse()) continue;
      Vertex a2 = g.follow(a, Letter(c));
      if (a2 == kNoVertex) continue;
      if (b == out) {
        push({a2, out, crossed, c});
        continue;
      }
      Vertex b2 = g.follow(b, Letter(c));
      if (b2 == kNoVertex) {
        if (crossed) push({a2, out, crossed, c});
        continue;
      }
      push({a2, b2, crossed || !tr.is_tree_edge(b, Letter(c)) ? 1 : 0, c});
    }
  }
  return false;
}

int last_code(const Word& w) { return w.empty() ? kNone : w.back().inverse().code(); }

}  // namespace

ReducedAutomaton unstable_automaton(const SchreierTransversal& tr) {
  const StallingsGraph& g = tr.graph();
  const auto n = static_cast<State>(g.vertex_count());
  const int letters = g.alphabet().letter_count();
  // NFA states 0..n-1: reading s′ along the tree; n + w: reading t inside Γ.
  Nfa nfa(g.alphabet());
  for (State s = 0; s < 2 * n; ++s) nfa.add_state(false);
  nfa.accepting[n + g.basepoint()] = true;
  for (Vertex v = 0; v < n; ++v) {
    int back = last_code(tr.tree_path(v));  // s′∘d reduced: d avoids this letter first
    if (escape_exists(tr, v, g.basepoint(), back, kNone)) nfa.accepting[v] = true;
    for (int c = 0; c < letters; ++c) {
      Letter y(c);
      if (tr.is_tree_edge(v, y)) nfa.add_transition(v, y, g.follow(v, y));
      if (c == back) continue;
      for (Vertex u = 0; u < n; ++u) {
        Vertex w = g.follow(u, y);
        if (w != kNoVertex && escape_exists(tr, v, u, back, c)) nfa.add_transition(v, y, n + w);
      }
    }
    for (int c = 0; c < letters; ++c)
      if (Vertex w = g.follow(v, Letter(c)); w != kNoVertex) nfa.add_transition(n + v, Letter(c), n + w);
  }
  nfa.initial = {g.basepoint()};
  return intersection(determinize(nfa), tr.automaton());
}

std::vector<std::pair<Word, Word>> unstable_cosets(const SchreierTransversal& tr) {
  const StallingsGraph& g = tr.graph();
  const auto n = static_cast<Vertex>(g.vertex_count());
  const int letters = g.alphabet().letter_count();
  std::vector<std::pair<Word, Word>> pairs;
  ReducedAutomaton cover = empty_language(g.alphabet());
  for (Vertex v = 0; v < n; ++v) {
    int back = last_code(tr.tree_path(v));
    for (Vertex u = 0; u < n; ++u) {
      bool used = u == g.basepoint() && escape_exists(tr, v, u, back, kNone);
      for (int c = 0; c < letters && !used; ++c)
        used = c != back && g.follow(u, Letter(c)) != kNoVertex && escape_exists(tr, v, u, back, c);
      if (!used) continue;
      pairs.emplace_back(tr.tree_path(v), tr.tree_path(u));
      cover = union_of(cover, left_coset(g, multiply(tr.tree_path(v), tr.tree_path(u).inverse())));
    }
  }
  if (!is_subset(unstable_automaton(tr), cover)) throw Error("unstable_cosets: covering check failed");
  return pairs;
}

DoubleCosetFamily generalized_normalizer(const SchreierTransversal& tr) {
  DoubleCosetFamily family;
  const auto n = static_cast<Vertex>(tr.graph().vertex_count());
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (is_singular(multiply(tr.tree_path(u), tr.tree_path(v).inverse()), tr.graph()))
        family.pairs.emplace_back(tr.tree_path(u), tr.tree_path(v));
  return family;
}

ReducedAutomaton normalizer_automaton(const SchreierTransversal& tr) {
  const Alphabet alphabet = tr.graph().alphabet();
  std::vector<Word> basis = free_basis(tr);
  ReducedAutomaton out = empty_language(alphabet);
  for (const auto& [s1, s2] : generalized_normalizer(tr).pairs) {
    Word f = multiply(s1, s2.inverse());
    if (out.accepts(f)) continue;  // its double coset is already covered
    out = union_of(out, double_coset(alphabet, basis, f, basis));
  }
  return out;
}

ReducedAutomaton singular_automaton(const SchreierTransversal& tr) {
  return intersection(tr.automaton(), normalizer_automaton(tr));
}

RepresentativeClassifier::RepresentativeClassifier(const SchreierTransversal& transversal)
    : transversal_(transversal),
      unstable_(unstable_automaton(transversal)),
      singular_(singular_automaton(transversal)),
      distance_(distances_from_basepoint(transversal.graph())) {}

RepClassification RepresentativeClassifier::classify(const Word& s) const {
  require_member(s, transversal_);
  RepClassification c;
  c.internal = transversal_.internal_vertex(s).has_value();
  c.geodesic = geodesic_given(s, transversal_, distance_);
  c.stable = !unstable_.accepts(s);
  c.singular = singular_.accepts(s);
  return c;
}

void enumerate_transversal(const SchreierTransversal& transversal, std::size_t max_length,
                           const std::function<void(const Word&, const RepClassification&)>& visit) {
  RepresentativeClassifier classifier(transversal);
  for_each_word(transversal.automaton(), max_length,
                [&](const Word& s) { visit(s, classifier.classify(s)); });
}

nlohmann::json to_json(const RepClassification& c) {
  return {{"internal", c.internal}, {"geodesic", c.geodesic}, {"stable", c.stable}, {"singular", c.singular}};
}

}  // namespace regfree
