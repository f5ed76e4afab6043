#include "wagner/loops.hpp"

#include <algorithm>
#include <unordered_set>

namespace wagner {

namespace {

// subset of states as a fixed-width bitset
struct Bits {
  std::vector<std::uint64_t> w;

  explicit Bits(int nbits = 0) : w((nbits + 63) / 64, 0) {}
  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void clear(int i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  bool operator==(const Bits& o) const { return w == o.w; }
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    std::size_t h = 1469598103934665603ull;
    for (std::uint64_t x : b.w) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

Bits to_bits(const Loop& loop, int n) {
  Bits b(n);
  for (State q : loop) b.set(q);
  return b;
}

Loop to_loop(const Bits& b, int n) {
  Loop out;
  for (int q = 0; q < n; ++q)
    if (b.test(q)) out.push_back(q);
  return out;
}

// iterative Tarjan restricted to `members`; emits components through `sink`
template <typename Sink>
void tarjan(const Automaton& a, const Bits& members, Sink&& sink) {
  const int n = a.num_states;
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<State> stack;
  int counter = 0;

  struct Frame {
    State v;
    Letter next;
  };
  std::vector<Frame> call;

  for (int root = 0; root < n; ++root) {
    if (!members.test(root) || index[root] >= 0) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      bool descended = false;
      while (f.next < a.alphabet_size) {
        State w = a.delta[f.v][f.next++];
        if (!members.test(w)) continue;
        if (index[w] < 0) {
          call.push_back({w, 0});
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          descended = true;
          break;
        }
        if (on_stack[w]) low[f.v] = std::min(low[f.v], index[w]);
      }
      if (descended) continue;
      State v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<State> comp;
        while (true) {
          State w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
          if (w == v) break;
        }
        sink(std::move(comp));
      }
    }
  }
}

// a component is a loop iff it has an internal edge (singletons need a self-loop)
bool component_is_loop(const Automaton& a, const std::vector<State>& comp) {
  if (comp.size() > 1) return true;
  State q = comp[0];
  for (Letter x = 0; x < a.alphabet_size; ++x)
    if (a.delta[q][x] == q) return true;
  return false;
}

// all loops contained in `top`, by peeling one vertex at a time
void peel_loops(const Automaton& a, const Bits& top,
                std::unordered_set<Bits, BitsHash>& seen, std::size_t cap) {
  std::vector<Bits> work{top};
  while (!work.empty()) {
    Bits s = std::move(work.back());
    work.pop_back();
    for (int v = 0; v < a.num_states; ++v) {
      if (!s.test(v)) continue;
      Bits rest = s;
      rest.clear(v);
      tarjan(a, rest, [&](std::vector<State>&& comp) {
        if (!component_is_loop(a, comp)) return;
        Bits b = to_bits(Loop(comp.begin(), comp.end()), a.num_states);
        if (seen.count(b)) return;
        if (seen.size() >= cap)
          throw resource_error("loop count exceeds cap of " + std::to_string(cap) +
                               "; use a smaller automaton or raise the cap");
        seen.insert(b);
        work.push_back(std::move(b));
      });
    }
  }
}

}  // namespace

std::vector<std::vector<State>> scc_decomposition(const Automaton& a,
                                                  const std::vector<bool>& states) {
  Bits members(a.num_states);
  for (int q = 0; q < a.num_states; ++q)
    if (states.empty() || states[q]) members.set(q);
  std::vector<std::vector<State>> out;
  tarjan(a, members, [&](std::vector<State>&& comp) {
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  });
  return out;
}

std::vector<Loop> loops(const Automaton& a, std::size_t cap) {
  a.validate();
  std::vector<bool> reach = reachable_states(a);
  std::unordered_set<Bits, BitsHash> seen;
  for (const auto& comp : scc_decomposition(a, reach)) {
    if (!component_is_loop(a, comp)) continue;
    Bits b = to_bits(comp, a.num_states);
    if (seen.size() >= cap)
      throw resource_error("loop count exceeds cap of " + std::to_string(cap) +
                           "; use a smaller automaton or raise the cap");
    if (seen.insert(b).second) peel_loops(a, b, seen, cap);
  }
  std::vector<Loop> out;
  out.reserve(seen.size());
  for (const Bits& b : seen) out.push_back(to_loop(b, a.num_states));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Loop> maximal_proper_subloops(const Automaton& a, const Loop& loop) {
  Bits full = to_bits(loop, a.num_states);
  std::unordered_set<Bits, BitsHash> cands;
  for (State v : loop) {
    Bits rest = full;
    rest.clear(v);
    tarjan(a, rest, [&](std::vector<State>&& comp) {
      if (component_is_loop(a, comp)) cands.insert(to_bits(comp, a.num_states));
    });
  }
  std::vector<Loop> cand_loops;
  for (const Bits& b : cands) cand_loops.push_back(to_loop(b, a.num_states));
  std::vector<Loop> out;
  for (const Loop& c : cand_loops) {
    bool maximal = true;
    for (const Loop& d : cand_loops)
      if (c != d && std::includes(d.begin(), d.end(), c.begin(), c.end())) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

bool is_loop_set(const Automaton& a, const Loop& c) {
  if (c.empty()) return false;
  std::vector<bool> reach = reachable_states(a);
  for (State q : c)
    if (q < 0 || q >= a.num_states || !reach[q]) return false;
  Bits b = to_bits(c, a.num_states);
  int comps = 0;
  bool ok = true;
  std::size_t covered = 0;
  tarjan(a, b, [&](std::vector<State>&& comp) {
    ++comps;
    covered += comp.size();
    if (!component_is_loop(a, comp)) ok = false;
  });
  return ok && comps == 1 && covered == c.size();
}

}  // namespace

std::pair<bool, bool> cycle_order(const Loop& c, const Loop& d, const Automaton& a) {
  if (!is_loop_set(a, c) || !is_loop_set(a, d))
    throw validation_error("cycle_order arguments must be loops of the automaton");
  // leq0: d reachable from c (any representative works; loops are strongly connected)
  std::vector<bool> seen(a.num_states, false);
  std::vector<State> stack{c[0]};
  seen[c[0]] = true;
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
  bool leq0 = seen[d[0]];
  bool leq1 = std::includes(c.begin(), c.end(), d.begin(), d.end());
  return {leq0, leq1};
}

bool Cycle2Preorder::leq1(int i, int j) const {
  return std::includes(loops[i].begin(), loops[i].end(), loops[j].begin(), loops[j].end());
}

Cycle2Preorder build_cycle_preorder(const MullerAcceptor& acc, std::size_t cap) {
  const Automaton& a = acc.automaton;
  Cycle2Preorder pre;
  pre.k = acc.k;
  pre.loops = loops(a, cap);
  pre.labels.reserve(pre.loops.size());
  for (const Loop& loop : pre.loops) pre.labels.push_back(acc.label_of(loop));

  std::vector<bool> reach = reachable_states(a);
  std::vector<std::vector<State>> comps = scc_decomposition(a, reach);
  // deterministic class order: sort SCC state lists
  std::vector<std::vector<State>> loop_sccs;
  for (const auto& comp : comps)
    if (component_is_loop(a, comp)) loop_sccs.push_back(comp);
  std::sort(loop_sccs.begin(), loop_sccs.end());

  std::vector<int> scc_of_state(a.num_states, -1);
  for (std::size_t i = 0; i < loop_sccs.size(); ++i)
    for (State q : loop_sccs[i]) scc_of_state[q] = static_cast<int>(i);

  pre.class_members.assign(loop_sccs.size(), {});
  pre.class_of.resize(pre.loops.size());
  for (std::size_t i = 0; i < pre.loops.size(); ++i) {
    int cls = scc_of_state[pre.loops[i][0]];
    for (State q : pre.loops[i])
      if (scc_of_state[q] != cls)
        throw internal_error("loop spans multiple strongly connected components");
    pre.class_of[i] = cls;
    pre.class_members[cls].push_back(static_cast<int>(i));
  }

  // the ≤1-least element of each class is the full SCC loop
  pre.class_least.assign(loop_sccs.size(), -1);
  for (std::size_t c = 0; c < loop_sccs.size(); ++c) {
    Loop union_loop;
    for (int idx : pre.class_members[c])
      for (State q : pre.loops[idx]) union_loop.push_back(q);
    std::sort(union_loop.begin(), union_loop.end());
    union_loop.erase(std::unique(union_loop.begin(), union_loop.end()), union_loop.end());
    if (union_loop != loop_sccs[c])
      throw internal_error("union of class loops is not the full SCC");
    for (int idx : pre.class_members[c])
      if (pre.loops[idx] == union_loop) pre.class_least[c] = idx;
    if (pre.class_least[c] < 0)
      throw internal_error("class without a ≤1-least element");
  }

  // class-level reachability (reflexive-transitive ≤0)
  std::size_t nc = loop_sccs.size();
  pre.class_reach.assign(nc, std::vector<bool>(nc, false));
  for (std::size_t c = 0; c < nc; ++c) {
    std::vector<bool> seen(a.num_states, false);
    std::vector<State> stack{loop_sccs[c][0]};
    seen[loop_sccs[c][0]] = true;
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
    for (std::size_t d = 0; d < nc; ++d) pre.class_reach[c][d] = seen[loop_sccs[d][0]];
  }

  // loops of distinct classes are never ≤1-comparable; cheap to assert at desk scale
  if (pre.loops.size() <= 512) {
    for (std::size_t i = 0; i < pre.loops.size(); ++i)
      for (std::size_t j = 0; j < pre.loops.size(); ++j)
        if (pre.class_of[i] != pre.class_of[j] && pre.leq1(static_cast<int>(i), static_cast<int>(j)))
          throw internal_error("≤1-comparable loops in distinct classes");
  }
  return pre;
}

}  // namespace wagner
