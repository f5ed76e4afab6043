#include "wagner/acceptor.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "wagner/loops.hpp"

namespace wagner {

void Automaton::validate() const {
  if (alphabet_size < 1) throw validation_error("alphabet_size must be positive");
  if (num_states < 1) throw validation_error("automaton needs at least one state");
  if (initial < 0 || initial >= num_states)
    throw validation_error("initial state out of range");
  if (static_cast<int>(delta.size()) != num_states)
    throw validation_error("delta must have one row per state");
  for (int q = 0; q < num_states; ++q) {
    if (static_cast<int>(delta[q].size()) != alphabet_size)
      throw validation_error("delta row " + std::to_string(q) +
                             " must have one entry per letter");
    for (State r : delta[q])
      if (r < 0 || r >= num_states)
        throw validation_error("delta target out of range in state " + std::to_string(q));
  }
}

void Lasso::validate(int alphabet_size) const {
  if (period.empty()) throw validation_error("lasso period must be nonempty");
  for (Letter x : prefix)
    if (x < 0 || x >= alphabet_size) throw validation_error("lasso prefix letter out of range");
  for (Letter x : period)
    if (x < 0 || x >= alphabet_size) throw validation_error("lasso period letter out of range");
}

static std::string loop_to_string(const Loop& loop) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < loop.size(); ++i) os << (i ? "," : "") << loop[i];
  os << '}';
  return os.str();
}

int MullerAcceptor::label_of(const Loop& loop) const {
  auto it = labels.find(loop);
  if (it == labels.end())
    throw validation_error("acceptor has no label for loop " + loop_to_string(loop));
  return it->second;
}

void MullerAcceptor::validate() const {
  automaton.validate();
  if (k < 2) throw validation_error("k must be at least 2");
  for (const auto& [loop, label] : labels) {
    if (label < 0 || label >= k)
      throw validation_error("label " + std::to_string(label) + " out of range for k=" +
                             std::to_string(k));
    if (loop.empty() || !std::is_sorted(loop.begin(), loop.end()) ||
        std::adjacent_find(loop.begin(), loop.end()) != loop.end())
      throw validation_error("loop " + loop_to_string(loop) + " is not a sorted state set");
  }
  std::vector<Loop> all = loops(automaton);
  if (all.size() != labels.size())
    throw validation_error("labels must cover exactly the reachable loops (" +
                           std::to_string(all.size()) + " loops, " +
                           std::to_string(labels.size()) + " labels)");
  for (const Loop& loop : all)
    if (!labels.count(loop))
      throw validation_error("missing label for loop " + loop_to_string(loop));
}

State run(const Automaton& a, State q, const Word& w) {
  if (q < 0 || q >= a.num_states) throw validation_error("run: state out of range");
  for (Letter x : w) {
    if (x < 0 || x >= a.alphabet_size) throw validation_error("run: letter out of range");
    q = a.delta[q][x];
  }
  return q;
}

std::vector<bool> reachable_states(const Automaton& a) {
  std::vector<bool> seen(a.num_states, false);
  std::vector<State> stack{a.initial};
  seen[a.initial] = true;
  while (!stack.empty()) {
    State q = stack.back();
    stack.pop_back();
    for (Letter x = 0; x < a.alphabet_size; ++x) {
      State r = a.delta[q][x];
      if (!seen[r]) {
        seen[r] = true;
        stack.push_back(r);
      }
    }
  }
  return seen;
}

Loop infinity_set(const Automaton& a, const Lasso& w) {
  w.validate(a.alphabet_size);
  State q = run(a, a.initial, w.prefix);
  // pigeonhole: among q·v^0 .. q·v^n some state repeats
  std::vector<int> seen_at(a.num_states, -1);
  std::vector<State> at_iter{q};
  int i = -1, j = -1;
  seen_at[q] = 0;
  for (int t = 1; t <= a.num_states; ++t) {
    q = run(a, q, w.period);
    if (seen_at[q] >= 0) {
      i = seen_at[q];
      j = t;
      break;
    }
    seen_at[q] = t;
    at_iter.push_back(q);
  }
  if (i < 0) throw internal_error("infinity_set: no repeat within |Q| period iterations");
  State s = at_iter[i];
  std::set<State> visited{s};
  State cur = s;
  for (int t = 0; t < j - i; ++t)
    for (Letter x : w.period) {
      cur = a.delta[cur][x];
      visited.insert(cur);
    }
  if (cur != s) throw internal_error("infinity_set: period walk did not close");
  return Loop(visited.begin(), visited.end());
}

Loop infinity_set(const MullerAcceptor& acc, const Lasso& w) {
  return infinity_set(acc.automaton, w);
}

int eval_lasso(const MullerAcceptor& acc, const Lasso& w) {
  return acc.label_of(infinity_set(acc, w));
}

MullerAcceptor product_k(const std::vector<AcceptorComponent>& components) {
  if (components.empty()) throw validation_error("product_k needs at least one component");
  const int m = components[0].automaton.alphabet_size;
  for (const auto& c : components) {
    c.automaton.validate();
    if (c.automaton.alphabet_size != m)
      throw validation_error("product_k components must share one alphabet");
  }
  const int k = static_cast<int>(components.size()) + 1;

  // accepting families as sets for projection lookup
  std::vector<std::set<Loop>> families(components.size());
  for (std::size_t l = 0; l < components.size(); ++l) {
    std::vector<Loop> comp_loops = loops(components[l].automaton);
    std::set<Loop> valid(comp_loops.begin(), comp_loops.end());
    for (const Loop& f : components[l].accepting) {
      if (!valid.count(f))
        throw validation_error("accepting set " + loop_to_string(f) +
                               " of component " + std::to_string(l) + " is not a loop");
      families[l].insert(f);
    }
  }

  // full product state space, row-major over component states
  std::vector<int> dims, strides(components.size(), 1);
  for (const auto& c : components) dims.push_back(c.automaton.num_states);
  for (int l = static_cast<int>(components.size()) - 2; l >= 0; --l)
    strides[l] = strides[l + 1] * dims[l + 1];
  int total = strides[0] * dims[0];

  Automaton prod;
  prod.alphabet_size = m;
  prod.num_states = total;
  prod.delta.assign(total, std::vector<State>(m, 0));
  for (int s = 0; s < total; ++s)
    for (Letter x = 0; x < m; ++x) {
      int t = 0;
      for (std::size_t l = 0; l < components.size(); ++l) {
        int ql = (s / strides[l]) % dims[l];
        t += components[l].automaton.delta[ql][x] * strides[l];
      }
      prod.delta[s][x] = t;
    }
  prod.initial = 0;
  for (std::size_t l = 0; l < components.size(); ++l)
    prod.initial += components[l].automaton.initial * strides[l];

  MullerAcceptor out;
  out.automaton = prod;
  out.k = k;
  for (const Loop& loop : loops(prod)) {
    int label = k - 1;
    for (std::size_t l = 0; l < components.size(); ++l) {
      std::set<State> proj;
      for (State s : loop) proj.insert((s / strides[l]) % dims[l]);
      Loop p(proj.begin(), proj.end());
      if (families[l].count(p)) {
        if (label != k - 1)
          throw validation_error("components are not disjoint: product loop " +
                                 loop_to_string(loop) + " projects into families " +
                                 std::to_string(label) + " and " + std::to_string(l));
        label = static_cast<int>(l);
      }
    }
    out.labels[loop] = label;
  }
  return out;
}

namespace {

// action on the reachable states only; the dedup key for monoid closure
std::vector<State> restrict_map(const std::vector<State>& full,
                                const std::vector<State>& reach_list) {
  std::vector<State> r;
  r.reserve(reach_list.size());
  for (State q : reach_list) r.push_back(full[q]);
  return r;
}

struct VecHash {
  std::size_t operator()(const std::vector<State>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (State x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

std::vector<TransitionMap> transition_monoid(const Automaton& a, std::size_t cap) {
  a.validate();
  std::vector<bool> reach = reachable_states(a);
  std::vector<State> reach_list;
  for (State q = 0; q < a.num_states; ++q)
    if (reach[q]) reach_list.push_back(q);

  std::vector<std::vector<State>> letter_action(a.alphabet_size);
  for (Letter x = 0; x < a.alphabet_size; ++x) {
    letter_action[x].resize(a.num_states);
    for (State q = 0; q < a.num_states; ++q) letter_action[x][q] = a.delta[q][x];
  }

  std::vector<TransitionMap> out;
  std::unordered_map<std::vector<State>, std::size_t, VecHash> seen;

  TransitionMap ident;
  ident.map.resize(a.num_states);
  for (State q = 0; q < a.num_states; ++q) ident.map[q] = q;
  seen.emplace(restrict_map(ident.map, reach_list), out.size());
  out.push_back(std::move(ident));

  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t idx = queue.front();
    queue.pop_front();
    for (Letter x = 0; x < a.alphabet_size; ++x) {
      TransitionMap next;
      next.map.resize(a.num_states);
      for (State q = 0; q < a.num_states; ++q)
        next.map[q] = letter_action[x][out[idx].map[q]];
      std::vector<State> key = restrict_map(next.map, reach_list);
      if (seen.count(key)) continue;
      next.witness = out[idx].witness;
      next.witness.push_back(x);
      if (out.size() >= cap)
        throw resource_error("transition monoid exceeds cap of " + std::to_string(cap));
      seen.emplace(std::move(key), out.size());
      queue.push_back(out.size());
      out.push_back(std::move(next));
    }
  }
  return out;
}

namespace {

// true iff f^(i+1) = f^i on `reach_list` for some i <= its size
bool power_stabilizes(const std::vector<State>& f, const std::vector<State>& reach_list) {
  std::vector<State> cur = f;
  for (std::size_t i = 0; i + 1 <= reach_list.size() + 1; ++i) {
    std::vector<State> next(cur.size());
    for (std::size_t q = 0; q < cur.size(); ++q) next[q] = f[cur[q]];
    bool same = true;
    for (State q : reach_list)
      if (next[q] != cur[q]) {
        same = false;
        break;
      }
    if (same) return true;
    cur = std::move(next);
  }
  return false;
}

// true iff q lies on a cycle of length > 1 in the functional graph of f
bool on_nontrivial_cycle(const std::vector<State>& f, State q) {
  if (f[q] == q) return false;
  State cur = f[q];
  for (std::size_t steps = 1; steps < f.size() + 1; ++steps) {
    if (cur == q) return true;
    cur = f[cur];
  }
  return false;
}

}  // namespace

bool is_aperiodic(const Automaton& a, std::size_t cap) {
  std::vector<bool> reach = reachable_states(a);
  std::vector<State> reach_list;
  for (State q = 0; q < a.num_states; ++q)
    if (reach[q]) reach_list.push_back(q);
  for (const TransitionMap& f : transition_monoid(a, cap))
    if (!power_stabilizes(f.map, reach_list)) return false;
  return true;
}

bool has_d_counting_pattern(const Automaton& a, int d, std::size_t cap) {
  if (d < 1) throw validation_error("d must be at least 1");
  a.validate();
  std::vector<bool> reach = reachable_states(a);
  std::vector<State> reach_list;
  for (State q = 0; q < a.num_states; ++q)
    if (reach[q]) reach_list.push_back(q);

  // closure of (word action, |word| mod d) over nonempty words
  using Key = std::vector<State>;  // restricted map with residue appended
  std::unordered_map<Key, bool, VecHash> seen;
  std::deque<std::pair<std::vector<State>, int>> queue;
  auto push = [&](std::vector<State> full, int residue) {
    Key key = restrict_map(full, reach_list);
    key.push_back(residue);
    if (seen.count(key)) return;
    if (seen.size() >= cap)
      throw resource_error("length-tracked monoid exceeds cap of " + std::to_string(cap));
    seen.emplace(std::move(key), true);
    queue.emplace_back(std::move(full), residue);
  };
  for (Letter x = 0; x < a.alphabet_size; ++x) {
    std::vector<State> act(a.num_states);
    for (State q = 0; q < a.num_states; ++q) act[q] = a.delta[q][x];
    push(std::move(act), 1 % d);
  }
  while (!queue.empty()) {
    auto [f, residue] = queue.front();
    queue.pop_front();
    if (residue == 0)
      for (State q : reach_list)
        if (on_nontrivial_cycle(f, q)) return true;
    for (Letter x = 0; x < a.alphabet_size; ++x) {
      std::vector<State> g(a.num_states);
      for (State q = 0; q < a.num_states; ++q) g[q] = a.delta[f[q]][x];
      push(std::move(g), (residue + 1) % d);
    }
  }
  return false;
}

bool has_balanced_counting_pattern(const Automaton& a, std::size_t cap) {
  a.validate();
  std::vector<bool> reach = reachable_states(a);
  std::vector<State> reach_list;
  for (State q = 0; q < a.num_states; ++q)
    if (reach[q]) reach_list.push_back(q);

  // closure of pairs (action(u), action(v)) over equal-length nonempty words
  using Key = std::vector<State>;
  std::unordered_map<Key, bool, VecHash> seen;
  std::deque<std::pair<std::vector<State>, std::vector<State>>> queue;
  auto push = [&](std::vector<State> u_act, std::vector<State> v_act) {
    Key key = restrict_map(u_act, reach_list);
    Key k2 = restrict_map(v_act, reach_list);
    key.insert(key.end(), k2.begin(), k2.end());
    if (seen.count(key)) return;
    if (seen.size() >= cap)
      throw resource_error("pair monoid exceeds cap of " + std::to_string(cap));
    seen.emplace(std::move(key), true);
    queue.emplace_back(std::move(u_act), std::move(v_act));
  };
  std::vector<std::vector<State>> letter_action(a.alphabet_size,
                                                std::vector<State>(a.num_states));
  for (Letter x = 0; x < a.alphabet_size; ++x)
    for (State q = 0; q < a.num_states; ++q) letter_action[x][q] = a.delta[q][x];
  for (Letter x = 0; x < a.alphabet_size; ++x)
    for (Letter y = 0; y < a.alphabet_size; ++y) push(letter_action[x], letter_action[y]);

  while (!queue.empty()) {
    auto [g, f] = queue.front();  // g = action(u), f = action(v)
    queue.pop_front();
    for (State q : reach_list) {
      if (!on_nontrivial_cycle(f, q)) continue;
      // u must fix the whole v-cycle through q, q itself included
      bool fixes = g[q] == q;
      State cur = f[q];
      while (fixes && cur != q) {
        fixes = g[cur] == cur;
        cur = f[cur];
      }
      if (fixes) return true;
    }
    for (Letter x = 0; x < a.alphabet_size; ++x)
      for (Letter y = 0; y < a.alphabet_size; ++y) {
        std::vector<State> g2(a.num_states), f2(a.num_states);
        for (State q = 0; q < a.num_states; ++q) {
          g2[q] = letter_action[x][g[q]];
          f2[q] = letter_action[y][f[q]];
        }
        push(std::move(g2), std::move(f2));
      }
  }
  return false;
}

}  // namespace wagner
