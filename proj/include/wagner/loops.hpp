#ifndef WAGNER_LOOPS_HPP
#define WAGNER_LOOPS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "wagner/acceptor.hpp"

namespace wagner {

inline constexpr std::size_t kDefaultLoopCap = std::size_t{1} << 16;

/// All loops of the reachable part: the state sets whose induced digraph is strongly
/// connected and carries at least one edge. Sorted state lists, deterministic order.
std::vector<Loop> loops(const Automaton& a, std::size_t cap = kDefaultLoopCap);

/// (leq0, leq1) for loops c, d: reachability and reverse inclusion.
std::pair<bool, bool> cycle_order(const Loop& c, const Loop& d, const Automaton& a);

/// The loop set of one acceptor with both Wagner preorders and the labeling.
/// leq0 is stored per equivalence class (class = reachable SCC carrying loops);
/// leq1 is reverse inclusion, evaluated on sorted state lists.
struct Cycle2Preorder {
  int k = 2;
  std::vector<Loop> loops;                        // deterministic order
  std::vector<int> labels;                        // per loop
  std::vector<int> class_of;                      // per loop: its ≡0-class
  std::vector<std::vector<int>> class_members;    // per class: loop indices
  std::vector<int> class_least;                   // per class: the ≤1-least loop (full SCC loop)
  std::vector<std::vector<bool>> class_reach;     // class-level ≤0 (reflexive-transitive)

  std::size_t size() const { return loops.size(); }
  bool leq0(int i, int j) const { return class_reach[class_of[i]][class_of[j]]; }
  bool leq1(int i, int j) const;  // loops[i] ⊇ loops[j]
};

Cycle2Preorder build_cycle_preorder(const MullerAcceptor& acc,
                                    std::size_t cap = kDefaultLoopCap);

/// Maximal proper subloops of `loop` (its immediate ≤1-successors).
std::vector<Loop> maximal_proper_subloops(const Automaton& a, const Loop& loop);

/// Strongly connected components of the subgraph induced on `states`
/// (all states when empty), in reverse topological order.
std::vector<std::vector<State>> scc_decomposition(const Automaton& a,
                                                  const std::vector<bool>& states);

}  // namespace wagner

#endif
