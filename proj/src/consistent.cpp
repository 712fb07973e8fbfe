#include "regfree/consistent.hpp"

#include <deque>
#include <map>

#include "regfree/error.hpp"

namespace regfree {

namespace {

// BFS-ordered copy of `typed` restricted to states that reach `z`, with z the
// only accepting state.
ConsistentAutomaton restrict_to(const PrototypedAutomaton& typed, State z) {
  const ReducedAutomaton& a = typed.automaton;
  const std::size_t n = a.state_count();
  const int letters = a.alphabet().letter_count();
  std::vector<std::vector<State>> preds(n);
  for (State s = 0; s < static_cast<State>(n); ++s)
    for (int c = 0; c < letters; ++c)
      if (State t = a.next(s, Letter(c)); t != kNoState) preds[t].push_back(s);
  std::vector<bool> useful(n, false);
  useful[z] = true;
  std::deque<State> queue{z};
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (State p : preds[s])
      if (!useful[p]) {
        useful[p] = true;
        queue.push_back(p);
      }
  }
  std::vector<State> renumber(n, kNoState), order{a.initial()};
  renumber[a.initial()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int c = 0; c < letters; ++c) {
      State t = a.next(order[i], Letter(c));
      if (t != kNoState && useful[t] && renumber[t] == kNoState) {
        renumber[t] = static_cast<State>(order.size());
        order.push_back(t);
      }
    }
  ConsistentAutomaton out{ReducedAutomaton(a.alphabet(), order.size(), 0), renumber[z], {}};
  for (std::size_t i = 0; i < order.size(); ++i) {
    State s = order[i];
    auto si = static_cast<State>(i);
    out.automaton.set_type(si, a.type(s));
    out.prototype.push_back(typed.prototype[s]);
    for (int c = 0; c < letters; ++c)
      if (State t = a.next(s, Letter(c)); t != kNoState && renumber[t] != kNoState)
        out.automaton.set_transition(si, Letter(c), renumber[t]);
  }
  out.automaton.set_accepting(out.accept);
  return out;
}

}  // namespace

std::size_t nu(const ReducedAutomaton& ambient, State prototype) { return ambient.out_degree(prototype); }

ConsistentForm make_consistent(const ReducedAutomaton& b_in, const ReducedAutomaton& a_in) {
  if (!(b_in.alphabet() == a_in.alphabet())) throw InputError("automata over different alphabets");
  ReducedAutomaton a = normalize(a_in);
  if (!is_prefix_closed(a)) throw InputError("ambient language is not prefix-closed");
  ReducedAutomaton b = normalize(b_in);
  if (is_empty(b)) throw InputError("empty language has no consistent automaton");
  if (!is_subset(b, a)) throw InputError("R is not contained in L");

  // Product B × A; the tracker is already inside B's typing, so the type of
  // a product state is that of its B component.
  const Alphabet& alphabet = a.alphabet();
  const int letters = alphabet.letter_count();
  std::map<std::pair<State, State>, State> index;
  std::vector<std::pair<State, State>> pairs{{b.initial(), a.initial()}};
  index[pairs[0]] = 0;
  std::vector<std::vector<State>> next;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    next.emplace_back(letters, kNoState);
    auto [p, q] = pairs[i];
    for (int c = 0; c < letters; ++c) {
      State p2 = b.next(p, Letter(c));
      if (p2 == kNoState) continue;
      State q2 = a.next(q, Letter(c));
      // Co-accessible B paths stay inside L because L is prefix-closed.
      if (q2 == kNoState) throw Error("make_consistent: path leaves the ambient automaton");
      auto [it, inserted] = index.emplace(std::make_pair(p2, q2), static_cast<State>(pairs.size()));
      if (inserted) pairs.emplace_back(p2, q2);
      next[i][c] = it->second;
    }
  }
  ReducedAutomaton product(alphabet, pairs.size(), 0);
  std::vector<State> prototype;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto si = static_cast<State>(i);
    product.set_accepting(si, b.accepting(pairs[i].first));
    product.set_type(si, b.type(pairs[i].first));
    prototype.push_back(pairs[i].second);
    for (int c = 0; c < letters; ++c)
      if (next[i][c] != kNoState) product.set_transition(si, Letter(c), next[i][c]);
  }
  ConsistentForm form{a, {product, prototype}, {}};
  for (State z = 0; z < static_cast<State>(product.state_count()); ++z)
    if (product.accepting(z)) form.parts.push_back(restrict_to(form.typed, z));
  return form;
}

Decomposition split_b1_b2_b3(const ConsistentAutomaton& bc) {
  const ReducedAutomaton& a = bc.automaton;
  const int letters = a.alphabet().letter_count();
  const auto n = static_cast<State>(a.state_count());
  const State z = bc.accept;

  // B1: same states, no arrows out of Z.
  PrototypedAutomaton b1{ReducedAutomaton(a.alphabet(), a.state_count(), a.initial()), bc.prototype};
  for (State s = 0; s < n; ++s) {
    b1.automaton.set_type(s, a.type(s));
    if (s == z) continue;
    for (int c = 0; c < letters; ++c)
      if (State t = a.next(s, Letter(c)); t != kNoState) b1.automaton.set_transition(s, Letter(c), t);
  }
  b1.automaton.set_accepting(z);

  // B2: states reachable from Z, numbered in BFS order from Z.
  std::vector<State> renumber(n, kNoState), order{z};
  renumber[z] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int c = 0; c < letters; ++c) {
      State t = a.next(order[i], Letter(c));
      if (t != kNoState && renumber[t] == kNoState) {
        renumber[t] = static_cast<State>(order.size());
        order.push_back(t);
      }
    }
  PrototypedAutomaton b2{ReducedAutomaton(a.alphabet(), order.size(), 0), {}};
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto si = static_cast<State>(i);
    b2.automaton.set_type(si, a.type(order[i]));
    b2.prototype.push_back(bc.prototype[order[i]]);
    for (int c = 0; c < letters; ++c)
      if (State t = a.next(order[i], Letter(c)); t != kNoState) b2.automaton.set_transition(si, Letter(c), renumber[t]);
  }
  b2.automaton.set_accepting(0);

  // B3: Z1 = state 0 keeps the outgoing arrows, Z2 is a new sink.
  PrototypedAutomaton b3{ReducedAutomaton(a.alphabet(), order.size(), 0), b2.prototype};
  State z2 = b3.automaton.add_state(true);
  b3.prototype.push_back(b2.prototype[0]);
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto si = static_cast<State>(i);
    b3.automaton.set_type(si, b2.automaton.type(si));
    for (int c = 0; c < letters; ++c)
      if (State t = b2.automaton.next(si, Letter(c)); t != kNoState)
        b3.automaton.set_transition(si, Letter(c), t == 0 ? z2 : t);
  }
  b3.automaton.set_type(z2, b2.automaton.type(0));
  return {std::move(b1), std::move(b2), std::move(b3), 0, z2};
}

std::optional<Word> relative_contains_cone(const ConsistentForm& form) {
  const ReducedAutomaton& b = form.typed.automaton;
  const ReducedAutomaton& a = form.ambient;
  const int letters = b.alphabet().letter_count();

  // Ambient states with no reachable dead end.
  const auto na = static_cast<State>(a.state_count());
  std::vector<bool> dying(na, false);
  std::vector<std::vector<State>> apreds(na);
  std::deque<State> queue;
  for (State s = 0; s < na; ++s) {
    for (int c = 0; c < letters; ++c)
      if (State t = a.next(s, Letter(c)); t != kNoState) apreds[t].push_back(s);
    if (a.out_degree(s) == 0) {
      dying[s] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (State p : apreds[s])
      if (!dying[p]) {
        dying[p] = true;
        queue.push_back(p);
      }
  }
  // Ambient states that can reach a death-free state.
  std::vector<bool> lasting(na, false);
  for (State s = 0; s < na; ++s)
    if (!dying[s]) {
      lasting[s] = true;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (State p : apreds[s])
      if (!lasting[p]) {
        lasting[p] = true;
        queue.push_back(p);
      }
  }

  // B states that, or some successor of which, fail to match the prototype.
  const auto nb = static_cast<State>(b.state_count());
  std::vector<bool> bad(nb, false);
  std::vector<std::vector<State>> bpreds(nb);
  for (State s = 0; s < nb; ++s) {
    State p = form.typed.prototype[s];
    bool match = b.accepting(s);
    for (int c = 0; c < letters; ++c) {
      State t = b.next(s, Letter(c));
      if (t != kNoState) bpreds[t].push_back(s);
      if ((t != kNoState) != (a.next(p, Letter(c)) != kNoState)) match = false;
    }
    if (!match) {
      bad[s] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (State p : bpreds[s])
      if (!bad[p]) {
        bad[p] = true;
        queue.push_back(p);
      }
  }

  std::vector<std::optional<Word>> words(nb);
  words[b.initial()] = Word(b.alphabet());
  std::deque<State> bfs{b.initial()};
  while (!bfs.empty()) {
    State s = bfs.front();
    bfs.pop_front();
    if (!bad[s] && lasting[form.typed.prototype[s]]) return words[s];
    for (int c = 0; c < letters; ++c) {
      State t = b.next(s, Letter(c));
      if (t == kNoState || words[t]) continue;
      Word w = *words[s];
      w.push_back(Letter(c));
      words[t] = std::move(w);
      bfs.push_back(t);
    }
  }
  return std::nullopt;
}

nlohmann::json to_json(const PrototypedAutomaton& p) {
  nlohmann::json j = to_json(p.automaton);
  auto proto = nlohmann::json::array();
  for (std::size_t s = 0; s < p.prototype.size(); ++s) proto.push_back({s, p.prototype[s]});
  j["prototype"] = proto;
  return j;
}

nlohmann::json to_json(const ConsistentAutomaton& bc) { return to_json(PrototypedAutomaton{bc.automaton, bc.prototype}); }

}  // namespace regfree
