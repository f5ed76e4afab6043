#ifndef WAGNER_FOREST_HPP
#define WAGNER_FOREST_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "wagner/errors.hpp"

namespace wagner {

/// Interned identity of an iterated labeled tree. Structurally equal trees share
/// one id (hash-consing), so equality of canonical forms is id equality and all
/// h-preorder queries memoize on id pairs.
using TreeId = std::uint32_t;

struct TreeData {
  std::int32_t base = -1;         // base label when >= 0
  TreeId nested = 0;              // nested label, one depth down, when base < 0
  std::vector<TreeId> children;   // canonically ordered
  int nodes = 1;                  // total nodes, nested label nodes included
};

/// Builders normalize: a nested label that is a single base-labeled node collapses
/// to the base label, and children are sorted by the canonical structural order.
TreeId make_tree(int base_label, std::vector<TreeId> children = {});
TreeId make_tree_nested(TreeId nested_label, std::vector<TreeId> children = {});

const TreeData& tree_data(TreeId id);
int tree_nodes(TreeId id);
/// Minimal depth index at which the tree is well-formed (1 + label nesting).
int tree_min_depth(TreeId id);
/// Structural total order used for canonical child ordering. Negative, zero, positive.
int tree_cmp(TreeId a, TreeId b);

/// A finite disjoint union of iterated k-labeled trees of a common depth index.
struct IForest {
  int k = 2;
  int depth = 1;
  std::vector<TreeId> trees;

  bool empty() const { return trees.empty(); }
  int node_total() const;
  void validate(bool allow_empty = false) const;
};

/// h-preorder: every tree of f admits a label-respecting monotone map into some
/// tree of g. Depth indices coerce to the larger one; k must match.
bool leq_h(const IForest& f, const IForest& g);
bool equiv_h(const IForest& f, const IForest& g);

/// Tree-into-tree embedding on interned trees (the single-tree case of leq_h).
bool tree_embeds(TreeId t, TreeId s);

inline constexpr int kMinimizeVerifyBound = 6;

/// Canonical minimal representative of the ≡h-class of f. Greedy reduction
/// (subtree deletion, node splicing, label minimization, absorption between trees)
/// to a fixpoint; below `verify_bound` total nodes the result is replaced by the
/// exhaustively smallest, canonically least equivalent forest.
IForest minimize(const IForest& f, int verify_bound = kMinimizeVerifyBound);

/// The pairwise incomparable trees of minimize(f), as singleton forests.
std::vector<IForest> canonical_decomposition(const IForest& f);

IForest join(const IForest& f, const IForest& g);

/// Adjoins a copy of g below every leaf of f; empty f yields g.
IForest dot_forest(const IForest& f, const IForest& g);

/// Singleton tree labeled by the given tree, one depth up.
TreeId s_wrap_tree(TreeId t);
IForest s_wrap(const IForest& single_tree);

/// All node labels of f collected as a forest one depth down.
IForest r_flatten(const IForest& f);

/// q_i at forest level: s(i . r(f)).
IForest qi_forest(int i, const IForest& f);

/// The finite set M(f) of trees covering everything not h-below f; members are
/// minimized and deduplicated up to ≡h. Input is minimized first.
std::vector<IForest> mset(const IForest& f);

inline constexpr std::size_t kDefaultEnumCap = 2000000;

/// Canonical representatives of all ≡h-classes of k-labeled forests of the given
/// depth with at most max_nodes total nodes, sorted by size then structure.
std::vector<IForest> enumerate_forests(int k, int depth, int max_nodes,
                                       std::size_t cap = kDefaultEnumCap);

/// DOT digraph of the quotient poset of enumerate_forests (covering edges only).
std::string hasse(int k, int depth, int max_nodes, std::size_t cap = kDefaultEnumCap);

/// Compact text syntax: `0`, `0(1,1)`, `<0(1)>(1)`, forest `[T1,T2]`.
/// Depth-2 forests print every label in angle brackets.
std::string to_text(const IForest& f);
std::string tree_to_text(TreeId t, int depth);

/// Parses the text syntax; k is max base label + 1 unless a larger k is forced.
IForest parse_forest_text(const std::string& text, int k = 0);

}  // namespace wagner

#endif
