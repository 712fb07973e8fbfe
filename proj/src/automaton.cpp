#include "regfree/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>

#include "regfree/error.hpp"

namespace regfree {

ReducedAutomaton::ReducedAutomaton(const Alphabet& alphabet, std::size_t state_count, State initial)
    : alphabet_(alphabet),
      initial_(initial),
      accepting_(state_count, false),
      transitions_(state_count, std::vector<State>(alphabet.letter_count(), kNoState)),
      types_(state_count, -1) {
  if (state_count == 0) throw InputError("automaton needs at least one state");
  if (initial < 0 || static_cast<std::size_t>(initial) >= state_count)
    throw InputError("initial state out of range");
}

std::optional<Letter> ReducedAutomaton::type(State s) const {
  if (!typed_ || types_[s] < 0) return std::nullopt;
  return Letter(types_[s]);
}

State ReducedAutomaton::add_state(bool accepting) {
  accepting_.push_back(accepting);
  transitions_.emplace_back(alphabet_.letter_count(), kNoState);
  types_.push_back(-1);
  return static_cast<State>(accepting_.size() - 1);
}

void ReducedAutomaton::set_transition(State from, Letter l, State to) {
  const auto n = static_cast<State>(state_count());
  if (from < 0 || from >= n || to < -1 || to >= n) throw InputError("state out of range");
  if (l.code() < 0 || l.code() >= alphabet_.letter_count()) throw InputError("letter outside alphabet");
  transitions_[from][l.code()] = to;
}

void ReducedAutomaton::set_type(State s, std::optional<Letter> type) {
  types_[s] = type ? type->code() : -1;
  typed_ = true;
}

void ReducedAutomaton::clear_types() {
  std::fill(types_.begin(), types_.end(), -1);
  typed_ = false;
}

State ReducedAutomaton::run(const Word& w, State from) const {
  State s = from;
  for (Letter l : w) {
    if (l.code() >= alphabet_.letter_count()) return kNoState;
    s = transitions_[s][l.code()];
    if (s == kNoState) return kNoState;
  }
  return s;
}

bool ReducedAutomaton::accepts(const Word& w) const {
  State s = run(w);
  return s != kNoState && accepting_[s];
}

std::size_t ReducedAutomaton::out_degree(State s) const {
  return static_cast<std::size_t>(std::count_if(transitions_[s].begin(), transitions_[s].end(),
                                                [](State t) { return t != kNoState; }));
}

State Nfa::add_state(bool accept) {
  accepting.push_back(accept);
  transitions.emplace_back(alphabet.letter_count());
  return static_cast<State>(accepting.size() - 1);
}

void Nfa::add_transition(State from, Letter l, State to) { transitions[from][l.code()].push_back(to); }

namespace {

using Key = std::vector<int>;

// Breadth-first construction of a DFA over keys; the last key component is
// the type (last letter read, -1 at the start). Letters cancelling the type
// are never explored, so only reduced words are accepted.
template <class Accept, class Step>
ReducedAutomaton explore(const Alphabet& alphabet, Key start, Accept accept, Step step) {
  std::map<Key, State> index;
  std::vector<Key> keys;
  index.emplace(start, 0);
  keys.push_back(start);
  std::vector<std::vector<State>> next;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    next.emplace_back(alphabet.letter_count(), kNoState);
    int tau = keys[i].back();
    for (int c = 0; c < alphabet.letter_count(); ++c) {
      Letter l(c);
      if (tau >= 0 && l == Letter(tau).inverse()) continue;
      std::optional<Key> k = step(keys[i], l);
      if (!k) continue;
      k->push_back(c);
      auto [it, inserted] = index.emplace(*k, static_cast<State>(keys.size()));
      if (inserted) keys.push_back(*k);
      next[i][c] = it->second;
    }
  }
  ReducedAutomaton a(alphabet, keys.size(), 0);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    a.set_accepting(static_cast<State>(i), accept(keys[i]));
    int tau = keys[i].back();
    a.set_type(static_cast<State>(i), tau < 0 ? std::nullopt : std::optional<Letter>(Letter(tau)));
    for (int c = 0; c < alphabet.letter_count(); ++c)
      if (next[i][c] != kNoState) a.set_transition(static_cast<State>(i), Letter(c), next[i][c]);
  }
  return a;
}

// Keeps co-accessible states (and the initial one), renumbers in BFS order.
ReducedAutomaton finalize(const ReducedAutomaton& a) {
  const std::size_t n = a.state_count();
  const int letters = a.alphabet().letter_count();
  std::vector<std::vector<State>> preds(n);
  for (std::size_t s = 0; s < n; ++s)
    for (int c = 0; c < letters; ++c) {
      State t = a.next(static_cast<State>(s), Letter(c));
      if (t != kNoState) preds[t].push_back(static_cast<State>(s));
    }
  std::vector<bool> useful(n, false);
  std::deque<State> queue;
  for (std::size_t s = 0; s < n; ++s)
    if (a.accepting(static_cast<State>(s))) {
      useful[s] = true;
      queue.push_back(static_cast<State>(s));
    }
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (State p : preds[s])
      if (!useful[p]) {
        useful[p] = true;
        queue.push_back(p);
      }
  }
  std::vector<State> renumber(n, kNoState);
  std::vector<State> order{a.initial()};
  renumber[a.initial()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int c = 0; c < letters; ++c) {
      State t = a.next(order[i], Letter(c));
      if (t != kNoState && useful[t] && renumber[t] == kNoState) {
        renumber[t] = static_cast<State>(order.size());
        order.push_back(t);
      }
    }
  ReducedAutomaton out(a.alphabet(), order.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    State s = order[i];
    auto si = static_cast<State>(i);
    out.set_accepting(si, a.accepting(s));
    if (a.typed()) out.set_type(si, a.type(s));
    for (int c = 0; c < letters; ++c) {
      State t = a.next(s, Letter(c));
      if (t != kNoState && renumber[t] != kNoState) out.set_transition(si, Letter(c), renumber[t]);
    }
  }
  return out;
}

void check_same_alphabet(const ReducedAutomaton& a, const ReducedAutomaton& b) {
  if (!(a.alphabet() == b.alphabet())) throw InputError("automata over different alphabets");
}

template <class Op>
ReducedAutomaton boolean_product(const ReducedAutomaton& a, const ReducedAutomaton& b, Op op) {
  check_same_alphabet(a, b);
  auto accept = [&](const Key& k) {
    bool in_a = k[0] != kNoState && a.accepting(k[0]);
    bool in_b = k[1] != kNoState && b.accepting(k[1]);
    return op(in_a, in_b);
  };
  auto step = [&](const Key& k, Letter l) -> std::optional<Key> {
    State x = k[0] == kNoState ? kNoState : a.next(k[0], l);
    State y = k[1] == kNoState ? kNoState : b.next(k[1], l);
    if (x == kNoState && y == kNoState) return std::nullopt;
    return Key{x, y};
  };
  return finalize(explore(a.alphabet(), Key{a.initial(), b.initial(), -1}, accept, step));
}

// Shortlex-least path word from the initial state to every state (BFS tree).
std::vector<std::optional<Word>> access_words(const ReducedAutomaton& a) {
  std::vector<std::optional<Word>> words(a.state_count());
  words[a.initial()] = Word(a.alphabet());
  std::deque<State> queue{a.initial()};
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (int c = 0; c < a.alphabet().letter_count(); ++c) {
      State t = a.next(s, Letter(c));
      if (t == kNoState || words[t]) continue;
      Word w = *words[s];
      w.push_back(Letter(c));
      words[t] = std::move(w);
      queue.push_back(t);
    }
  }
  return words;
}

}  // namespace

ReducedAutomaton determinize(const Nfa& nfa) {
  if (nfa.initial.empty()) return empty_language(nfa.alphabet);
  Key start(nfa.initial.begin(), nfa.initial.end());
  std::sort(start.begin(), start.end());
  start.erase(std::unique(start.begin(), start.end()), start.end());
  start.push_back(-1);
  auto accept = [&](const Key& k) {
    for (std::size_t i = 0; i + 1 < k.size(); ++i)
      if (nfa.accepting[k[i]]) return true;
    return false;
  };
  auto step = [&](const Key& k, Letter l) -> std::optional<Key> {
    std::set<int> targets;
    for (std::size_t i = 0; i + 1 < k.size(); ++i)
      for (State t : nfa.transitions[k[i]][l.code()]) targets.insert(t);
    if (targets.empty()) return std::nullopt;
    return Key(targets.begin(), targets.end());
  };
  return finalize(explore(nfa.alphabet, start, accept, step));
}

ReducedAutomaton normalize(const ReducedAutomaton& a) {
  auto accept = [&](const Key& k) { return a.accepting(k[0]); };
  auto step = [&](const Key& k, Letter l) -> std::optional<Key> {
    State t = a.next(k[0], l);
    if (t == kNoState) return std::nullopt;
    return Key{t};
  };
  return finalize(explore(a.alphabet(), Key{a.initial(), -1}, accept, step));
}

ReducedAutomaton all_words(const Alphabet& alphabet) {
  ReducedAutomaton a(alphabet, 1, 0);
  a.set_accepting(0);
  for (int c = 0; c < alphabet.letter_count(); ++c) a.set_transition(0, Letter(c), 0);
  return normalize(a);
}

ReducedAutomaton empty_language(const Alphabet& alphabet) {
  ReducedAutomaton a(alphabet, 1, 0);
  a.set_type(0, std::nullopt);
  return a;
}

ReducedAutomaton from_words(const Alphabet& alphabet, const std::vector<Word>& words) {
  ReducedAutomaton trie(alphabet, 1, 0);
  for (const Word& w : words) {
    if (!(w.alphabet() == alphabet)) throw InputError("word over a different alphabet");
    State s = 0;
    for (Letter l : w) {
      State t = trie.next(s, l);
      if (t == kNoState) {
        t = trie.add_state();
        trie.set_transition(s, l, t);
      }
      s = t;
    }
    trie.set_accepting(s);
  }
  return normalize(trie);
}

ReducedAutomaton from_cone(const Word& u) {
  Alphabet alphabet = u.alphabet();
  ReducedAutomaton a(alphabet, u.size() + 1, 0);
  for (std::size_t i = 0; i < u.size(); ++i)
    a.set_transition(static_cast<State>(i), u[i], static_cast<State>(i + 1));
  auto last = static_cast<State>(u.size());
  a.set_accepting(last);
  for (int c = 0; c < alphabet.letter_count(); ++c) a.set_transition(last, Letter(c), last);
  return normalize(a);
}

ReducedAutomaton from_graph(const StallingsGraph& graph, Vertex start, const std::vector<Vertex>& accept) {
  const std::size_t n = graph.vertex_count();
  ReducedAutomaton a(graph.alphabet(), n, start);
  for (Vertex v : accept) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) throw InputError("vertex out of range");
    a.set_accepting(v);
  }
  for (std::size_t v = 0; v < n; ++v)
    for (int c = 0; c < graph.alphabet().letter_count(); ++c) {
      Vertex t = graph.follow(static_cast<Vertex>(v), Letter(c));
      if (t != kNoVertex) a.set_transition(static_cast<State>(v), Letter(c), t);
    }
  return normalize(a);
}

ReducedAutomaton from_subgroup(const StallingsGraph& graph) {
  return from_graph(graph, graph.basepoint(), {graph.basepoint()});
}

ReducedAutomaton right_coset(const StallingsGraph& graph, const Word& w) {
  // Read w in Γ as far as possible; the rest hangs in a tree of Γ*.
  Vertex v = graph.basepoint();
  std::size_t i = 0;
  for (; i < w.size(); ++i) {
    Vertex t = graph.follow(v, w[i]);
    if (t == kNoVertex) break;
    v = t;
  }
  if (i == w.size()) return from_graph(graph, graph.basepoint(), {v});
  const std::size_t n = graph.vertex_count();
  ReducedAutomaton a(graph.alphabet(), n, graph.basepoint());
  for (std::size_t x = 0; x < n; ++x)
    for (int c = 0; c < graph.alphabet().letter_count(); ++c) {
      Vertex t = graph.follow(static_cast<Vertex>(x), Letter(c));
      if (t != kNoVertex) a.set_transition(static_cast<State>(x), Letter(c), t);
    }
  State s = v;
  for (; i < w.size(); ++i) {
    State t = a.add_state();
    a.set_transition(s, w[i], t);
    s = t;
  }
  a.set_accepting(s);
  return normalize(a);
}

ReducedAutomaton left_coset(const StallingsGraph& graph, const Word& w) {
  return inverse_set(right_coset(graph, w.inverse()));
}

ReducedAutomaton reduced_product(const ReducedAutomaton& a_in, const ReducedAutomaton& b_in) {
  check_same_alphabet(a_in, b_in);
  ReducedAutomaton a = normalize(a_in), b = normalize(b_in);
  const int letters = a.alphabet().letter_count();
  const auto na = static_cast<State>(a.state_count());
  const auto nb = static_cast<State>(b.state_count());

  // (q, p) such that some c leads from q to acceptance in A while c⁻¹ leads
  // from B's initial state to p: then u' at q and v' from p give uv = u'v'.
  std::vector<std::vector<std::pair<State, Letter>>> preds(na);
  for (State s = 0; s < na; ++s)
    for (int c = 0; c < letters; ++c)
      if (State t = a.next(s, Letter(c)); t != kNoState) preds[t].emplace_back(s, Letter(c));
  std::vector<std::vector<bool>> cancel(na, std::vector<bool>(nb, false));
  std::deque<std::pair<State, State>> queue;
  for (State f = 0; f < na; ++f)
    if (a.accepting(f)) {
      cancel[f][b.initial()] = true;
      queue.emplace_back(f, b.initial());
    }
  while (!queue.empty()) {
    auto [p1, p2] = queue.front();
    queue.pop_front();
    for (auto [q1, x] : preds[p1]) {
      State q2 = b.next(p2, x.inverse());
      if (q2 == kNoState || cancel[q1][q2]) continue;
      cancel[q1][q2] = true;
      queue.emplace_back(q1, q2);
    }
  }

  Nfa nfa(a.alphabet());
  for (State s = 0; s < na; ++s) nfa.add_state(false);
  for (State s = 0; s < nb; ++s) nfa.add_state(b.accepting(s));
  for (State s = 0; s < na; ++s)
    for (int c = 0; c < letters; ++c)
      if (State t = a.next(s, Letter(c)); t != kNoState) nfa.add_transition(s, Letter(c), t);
  for (State s = 0; s < nb; ++s)
    for (int c = 0; c < letters; ++c)
      if (State t = b.next(s, Letter(c)); t != kNoState) nfa.add_transition(na + s, Letter(c), na + t);
  for (State q1 = 0; q1 < na; ++q1) {
    auto tau = a.type(q1);
    for (State q2 = 0; q2 < nb; ++q2) {
      if (!cancel[q1][q2]) continue;
      if (b.accepting(q2)) nfa.accepting[q1] = true;
      for (int c = 0; c < letters; ++c) {
        if (tau && Letter(c) == tau->inverse()) continue;
        if (State t = b.next(q2, Letter(c)); t != kNoState) nfa.add_transition(q1, Letter(c), na + t);
      }
    }
  }
  nfa.initial = {a.initial()};
  return determinize(nfa);
}

ReducedAutomaton double_coset(const Alphabet& alphabet, const std::vector<Word>& left, const Word& w,
                              const std::vector<Word>& right) {
  ReducedAutomaton a = from_subgroup(build_subgroup_graph(alphabet, left));
  ReducedAutomaton b = from_subgroup(build_subgroup_graph(alphabet, right));
  return reduced_product(reduced_product(a, from_words(alphabet, {w})), b);
}

ReducedAutomaton union_of(const ReducedAutomaton& a, const ReducedAutomaton& b) {
  return boolean_product(a, b, [](bool x, bool y) { return x || y; });
}

ReducedAutomaton intersection(const ReducedAutomaton& a, const ReducedAutomaton& b) {
  return boolean_product(a, b, [](bool x, bool y) { return x && y; });
}

ReducedAutomaton difference(const ReducedAutomaton& a, const ReducedAutomaton& b) {
  return boolean_product(a, b, [](bool x, bool y) { return x && !y; });
}

ReducedAutomaton complement(const ReducedAutomaton& a) { return difference(all_words(a.alphabet()), a); }

ReducedAutomaton prefix_closure(const ReducedAutomaton& a) {
  ReducedAutomaton n = normalize(a);
  if (!shortest_word(n)) return n;
  for (std::size_t s = 0; s < n.state_count(); ++s) n.set_accepting(static_cast<State>(s));
  return normalize(n);
}

ReducedAutomaton concat_no_cancel(const ReducedAutomaton& a_in, const ReducedAutomaton& b_in) {
  check_same_alphabet(a_in, b_in);
  ReducedAutomaton a = normalize(a_in), b = normalize(b_in);
  const int letters = a.alphabet().letter_count();
  const auto na = static_cast<State>(a.state_count());
  Nfa nfa(a.alphabet());
  for (std::size_t s = 0; s < a.state_count(); ++s) nfa.add_state(false);
  for (std::size_t s = 0; s < b.state_count(); ++s) nfa.add_state(b.accepting(static_cast<State>(s)));
  for (State s = 0; s < na; ++s)
    for (int c = 0; c < letters; ++c)
      if (State t = a.next(s, Letter(c)); t != kNoState) nfa.add_transition(s, Letter(c), t);
  for (State s = 0; s < static_cast<State>(b.state_count()); ++s)
    for (int c = 0; c < letters; ++c)
      if (State t = b.next(s, Letter(c)); t != kNoState) nfa.add_transition(na + s, Letter(c), na + t);
  for (State q = 0; q < na; ++q) {
    if (!a.accepting(q)) continue;
    if (b.accepting(b.initial())) nfa.accepting[q] = true;
    auto tau = a.type(q);
    for (int c = 0; c < letters; ++c) {
      if (tau && Letter(c) == tau->inverse()) continue;
      if (State t = b.next(b.initial(), Letter(c)); t != kNoState) nfa.add_transition(q, Letter(c), na + t);
    }
  }
  nfa.initial = {a.initial()};
  return determinize(nfa);
}

ReducedAutomaton star_no_cancel(const ReducedAutomaton& t_in) {
  ReducedAutomaton t = normalize(t_in);
  const int letters = t.alphabet().letter_count();
  Nfa nfa(t.alphabet());
  for (std::size_t s = 0; s < t.state_count(); ++s) nfa.add_state(t.accepting(static_cast<State>(s)));
  for (State s = 0; s < static_cast<State>(t.state_count()); ++s) {
    for (int c = 0; c < letters; ++c)
      if (State u = t.next(s, Letter(c)); u != kNoState) nfa.add_transition(s, Letter(c), u);
    if (!t.accepting(s) || s == t.initial()) continue;
    auto tau = t.type(s);
    for (int c = 0; c < letters; ++c) {
      if (tau && Letter(c) == tau->inverse()) continue;
      if (State u = t.next(t.initial(), Letter(c)); u != kNoState) nfa.add_transition(s, Letter(c), u);
    }
  }
  nfa.initial = {t.initial()};
  return determinize(nfa);
}

ReducedAutomaton inverse_set(const ReducedAutomaton& a_in) {
  ReducedAutomaton a = normalize(a_in);
  Nfa nfa(a.alphabet());
  for (std::size_t s = 0; s < a.state_count(); ++s) nfa.add_state(static_cast<State>(s) == a.initial());
  for (State s = 0; s < static_cast<State>(a.state_count()); ++s) {
    for (int c = 0; c < a.alphabet().letter_count(); ++c)
      if (State t = a.next(s, Letter(c)); t != kNoState) nfa.add_transition(t, Letter(c).inverse(), s);
    if (a.accepting(s)) nfa.initial.push_back(s);
  }
  return determinize(nfa);
}

ReducedAutomaton minimize(const ReducedAutomaton& a_in) {
  ReducedAutomaton a = normalize(a_in);
  const std::size_t n = a.state_count();
  const int letters = a.alphabet().letter_count();
  // Moore refinement; every state of a normalized automaton has a nonempty
  // future except possibly the initial one, so a missing arrow is its own
  // class unless the language is empty.
  std::vector<int> cls(n);
  for (std::size_t s = 0; s < n; ++s) cls[s] = a.accepting(static_cast<State>(s)) ? 1 : 0;
  std::size_t classes = 0;
  for (;;) {
    std::map<std::vector<int>, int> signature;
    std::vector<int> refined(n);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<int> sig{cls[s]};
      for (int c = 0; c < letters; ++c) {
        State t = a.next(static_cast<State>(s), Letter(c));
        sig.push_back(t == kNoState ? -1 : cls[t]);
      }
      refined[s] = signature.emplace(sig, static_cast<int>(signature.size())).first->second;
    }
    cls = std::move(refined);
    if (signature.size() == classes) break;
    classes = signature.size();
  }
  std::vector<State> rep(classes, kNoState);
  for (std::size_t s = 0; s < n; ++s)
    if (rep[cls[s]] == kNoState) rep[cls[s]] = static_cast<State>(s);
  ReducedAutomaton q(a.alphabet(), classes, cls[a.initial()]);
  for (std::size_t k = 0; k < classes; ++k) {
    State s = rep[k];
    q.set_accepting(static_cast<State>(k), a.accepting(s));
    for (int c = 0; c < letters; ++c)
      if (State t = a.next(s, Letter(c)); t != kNoState) q.set_transition(static_cast<State>(k), Letter(c), cls[t]);
  }
  ReducedAutomaton out = finalize(q);
  out.clear_types();
  return out;
}

ReducedAutomaton mn_quotient(const ReducedAutomaton& r, const ReducedAutomaton& l) {
  check_same_alphabet(r, l);
  if (!is_subset(r, l)) throw InputError("mn_quotient: R is not contained in L");
  return minimize(r);
}

std::optional<Word> shortest_word(const ReducedAutomaton& a) {
  auto words = access_words(a);
  std::optional<Word> best;
  for (std::size_t s = 0; s < a.state_count(); ++s)
    if (a.accepting(static_cast<State>(s)) && words[s] && (!best || *words[s] < *best)) best = words[s];
  return best;
}

bool is_empty(const ReducedAutomaton& a) { return !shortest_word(normalize(a)).has_value(); }

bool is_subset(const ReducedAutomaton& a, const ReducedAutomaton& b) { return is_empty(difference(a, b)); }

bool equivalent(const ReducedAutomaton& a, const ReducedAutomaton& b) {
  return is_subset(a, b) && is_subset(b, a);
}

bool is_prefix_closed(const ReducedAutomaton& a) { return equivalent(a, prefix_closure(a)); }

std::optional<Word> contains_cone(const ReducedAutomaton& a_in) {
  ReducedAutomaton a = normalize(a_in);
  const std::size_t n = a.state_count();
  const int letters = a.alphabet().letter_count();
  std::vector<bool> bad(n, false);
  std::vector<std::vector<State>> preds(n);
  std::deque<State> queue;
  for (State s = 0; s < static_cast<State>(n); ++s) {
    auto tau = a.type(s);
    bool complete = a.accepting(s);
    for (int c = 0; c < letters; ++c) {
      State t = a.next(s, Letter(c));
      if (t != kNoState) preds[t].push_back(s);
      else if (!(tau && Letter(c) == tau->inverse())) complete = false;
    }
    if (!complete) {
      bad[s] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (State p : preds[s])
      if (!bad[p]) {
        bad[p] = true;
        queue.push_back(p);
      }
  }
  auto words = access_words(a);
  std::optional<Word> best;
  for (std::size_t s = 0; s < n; ++s)
    if (!bad[s] && words[s] && (!best || *words[s] < *best)) best = words[s];
  return best;
}

void for_each_word(const ReducedAutomaton& a_in, std::size_t max_length,
                   const std::function<void(const Word&)>& visit) {
  ReducedAutomaton a = normalize(a_in);
  const std::size_t n = a.state_count();
  const int letters = a.alphabet().letter_count();
  // reach[r][s]: some accepted continuation of length exactly r from s.
  std::vector<std::vector<char>> reach(max_length + 1, std::vector<char>(n, 0));
  for (std::size_t s = 0; s < n; ++s) reach[0][s] = a.accepting(static_cast<State>(s));
  for (std::size_t r = 1; r <= max_length; ++r)
    for (std::size_t s = 0; s < n; ++s)
      for (int c = 0; c < letters && !reach[r][s]; ++c)
        if (State t = a.next(static_cast<State>(s), Letter(c)); t != kNoState && reach[r - 1][t]) reach[r][s] = 1;
  Word w(a.alphabet());
  std::function<void(State, std::size_t)> walk = [&](State s, std::size_t remaining) {
    if (remaining == 0) {
      visit(w);
      return;
    }
    for (int c = 0; c < letters; ++c) {
      State t = a.next(s, Letter(c));
      if (t == kNoState || !reach[remaining - 1][t]) continue;
      w.push_back(Letter(c));
      walk(t, remaining - 1);
      w.pop_back();
    }
  };
  for (std::size_t k = 0; k <= max_length; ++k)
    if (reach[k][a.initial()]) walk(a.initial(), k);
}

nlohmann::json to_json(const ReducedAutomaton& a) {
  nlohmann::json j;
  j["states"] = a.state_count();
  j["initial"] = a.initial();
  auto accepting = nlohmann::json::array();
  auto transitions = nlohmann::json::array();
  for (State s = 0; s < static_cast<State>(a.state_count()); ++s) {
    if (a.accepting(s)) accepting.push_back(s);
    for (int c = 0; c < a.alphabet().letter_count(); ++c)
      if (State t = a.next(s, Letter(c)); t != kNoState)
        transitions.push_back({s, std::string(1, Letter(c).to_char()), t});
  }
  j["accepting"] = accepting;
  j["transitions"] = transitions;
  return j;
}

ReducedAutomaton automaton_from_json(const Alphabet& alphabet, const nlohmann::json& j) {
  try {
    std::size_t states = j.at("states").is_array() ? j.at("states").size() : j.at("states").get<std::size_t>();
    ReducedAutomaton a(alphabet, states, j.value("initial", 0));
    for (const auto& s : j.at("accepting")) {
      auto v = s.get<State>();
      if (v < 0 || static_cast<std::size_t>(v) >= states) throw InputError("accepting state out of range");
      a.set_accepting(v);
    }
    for (const auto& t : j.at("transitions")) {
      if (!t.is_array() || t.size() != 3) throw InputError("transition must be [state, letter, state]");
      Word letter = Word::parse(alphabet, t[1].get<std::string>());
      if (letter.size() != 1) throw InputError("transition label must be one letter");
      auto to = t[2].get<State>();
      if (to < 0) throw InputError("target state out of range");
      a.set_transition(t[0].get<State>(), letter[0], to);
    }
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed automaton JSON: ") + e.what());
  }
}

}  // namespace regfree
