#include "wagner/forest.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace wagner {

namespace {

struct NodeKey {
  std::int32_t base;
  TreeId nested;
  std::vector<TreeId> children;

  bool operator==(const NodeKey& o) const {
    return base == o.base && nested == o.nested && children == o.children;
  }
};

struct NodeKeyHash {
  std::size_t operator()(const NodeKey& k) const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t x) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(static_cast<std::uint64_t>(k.base) + 7);
    mix(k.nested);
    for (TreeId c : k.children) mix(c);
    return h;
  }
};

struct Interner {
  std::recursive_mutex mu;
  std::deque<TreeData> nodes;
  std::unordered_map<NodeKey, TreeId, NodeKeyHash> index;
  std::unordered_map<std::uint64_t, bool> embed_memo;
  std::unordered_map<std::uint64_t, bool> fit_memo;
};

Interner& interner() {
  static Interner* g = new Interner();
  return *g;
}

using Guard = std::lock_guard<std::recursive_mutex>;

TreeId intern(NodeKey key) {
  Interner& in = interner();
  auto it = in.index.find(key);
  if (it != in.index.end()) return it->second;
  TreeData data;
  data.base = key.base;
  data.nested = key.nested;
  data.children = key.children;
  data.nodes = 1 + (key.base >= 0 ? 0 : in.nodes[key.nested].nodes);
  for (TreeId c : key.children) data.nodes += in.nodes[c].nodes;
  TreeId id = static_cast<TreeId>(in.nodes.size());
  in.nodes.push_back(std::move(data));
  in.index.emplace(std::move(key), id);
  return id;
}

int cmp_impl(TreeId a, TreeId b) {
  if (a == b) return 0;
  const TreeData& da = interner().nodes[a];
  const TreeData& db = interner().nodes[b];
  if ((da.base >= 0) != (db.base >= 0)) return da.base >= 0 ? -1 : 1;
  if (da.base >= 0) {
    if (da.base != db.base) return da.base < db.base ? -1 : 1;
  } else if (int c = cmp_impl(da.nested, db.nested); c != 0) {
    return c;
  }
  std::size_t n = std::min(da.children.size(), db.children.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = cmp_impl(da.children[i], db.children[i]); c != 0) return c;
  if (da.children.size() != db.children.size())
    return da.children.size() < db.children.size() ? -1 : 1;
  return 0;
}

void sort_children(std::vector<TreeId>& children) {
  std::sort(children.begin(), children.end(),
            [](TreeId a, TreeId b) { return cmp_impl(a, b) < 0; });
}

}  // namespace

TreeId make_tree(int base_label, std::vector<TreeId> children) {
  if (base_label < 0) throw validation_error("base label must be nonnegative");
  Guard g(interner().mu);
  sort_children(children);
  return intern({base_label, 0, std::move(children)});
}

TreeId make_tree_nested(TreeId nested_label, std::vector<TreeId> children) {
  Guard g(interner().mu);
  const TreeData& lab = interner().nodes[nested_label];
  if (lab.base >= 0 && lab.children.empty())
    return make_tree(lab.base, std::move(children));  // s(i) label collapses to i
  sort_children(children);
  return intern({-1, nested_label, std::move(children)});
}

const TreeData& tree_data(TreeId id) {
  Guard g(interner().mu);
  return interner().nodes[id];
}

int tree_nodes(TreeId id) { return tree_data(id).nodes; }

int tree_min_depth(TreeId id) {
  Guard g(interner().mu);
  const TreeData& d = interner().nodes[id];
  int depth = d.base >= 0 ? 1 : 1 + tree_min_depth(d.nested);
  for (TreeId c : d.children) depth = std::max(depth, tree_min_depth(c));
  return depth;
}

int tree_cmp(TreeId a, TreeId b) {
  Guard g(interner().mu);
  return cmp_impl(a, b);
}

int IForest::node_total() const {
  int n = 0;
  for (TreeId t : trees) n += tree_nodes(t);
  return n;
}

namespace {

int max_base_label(TreeId id) {
  const TreeData& d = tree_data(id);
  int m = d.base >= 0 ? d.base : max_base_label(d.nested);
  for (TreeId c : d.children) m = std::max(m, max_base_label(c));
  return m;
}

}  // namespace

void IForest::validate(bool allow_empty) const {
  if (k < 2) throw validation_error("forest k must be at least 2");
  if (depth < 1) throw validation_error("forest depth must be at least 1");
  if (trees.empty() && !allow_empty) throw validation_error("empty forest");
  for (TreeId t : trees) {
    if (tree_min_depth(t) > depth)
      throw validation_error("tree labels nest deeper than the forest depth");
    if (max_base_label(t) >= k)
      throw validation_error("tree label out of range for k=" + std::to_string(k));
  }
}

// ---------------------------------------------------------------------------
// h-preorder

namespace {

bool embed_impl(TreeId t, TreeId s);

bool label_leq(const TreeData& dt, const TreeData& ds) {
  if (dt.base >= 0 && ds.base >= 0) return dt.base == ds.base;  // k̄ is an antichain
  TreeId lt = dt.base >= 0 ? make_tree(dt.base) : dt.nested;
  TreeId ls = ds.base >= 0 ? make_tree(ds.base) : ds.nested;
  return embed_impl(lt, ls);
}

std::uint64_t pair_key(TreeId a, TreeId b) {
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

// root of t maps onto the root of s, children of t anywhere into s
bool fit_impl(TreeId t, TreeId s) {
  Interner& in = interner();
  std::uint64_t key = pair_key(t, s);
  auto it = in.fit_memo.find(key);
  if (it != in.fit_memo.end()) return it->second;
  const TreeData& dt = in.nodes[t];
  const TreeData& ds = in.nodes[s];
  bool ok = label_leq(dt, ds);
  for (std::size_t i = 0; ok && i < dt.children.size(); ++i)
    ok = embed_impl(dt.children[i], s);
  in.fit_memo.emplace(key, ok);
  return ok;
}

bool embed_impl(TreeId t, TreeId s) {
  Interner& in = interner();
  std::uint64_t key = pair_key(t, s);
  auto it = in.embed_memo.find(key);
  if (it != in.embed_memo.end()) return it->second;
  bool ok = fit_impl(t, s);
  if (!ok)
    for (TreeId sc : in.nodes[s].children)
      if (embed_impl(t, sc)) {
        ok = true;
        break;
      }
  in.embed_memo.emplace(key, ok);
  return ok;
}

}  // namespace

bool tree_embeds(TreeId t, TreeId s) {
  Guard g(interner().mu);
  return embed_impl(t, s);
}

bool leq_h(const IForest& f, const IForest& g) {
  if (f.k != g.k) throw validation_error("leq_h requires equal k");
  Guard lock(interner().mu);
  for (TreeId t : f.trees) {
    bool found = false;
    for (TreeId s : g.trees)
      if (embed_impl(t, s)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

bool equiv_h(const IForest& f, const IForest& g) { return leq_h(f, g) && leq_h(g, f); }

// ---------------------------------------------------------------------------
// minimize

namespace {

IForest with_trees(const IForest& f, std::vector<TreeId> trees) {
  IForest out = f;
  out.trees = std::move(trees);
  return out;
}

void canonical_sort(std::vector<TreeId>& trees) {
  std::sort(trees.begin(), trees.end(),
            [](TreeId a, TreeId b) { return cmp_impl(a, b) < 0; });
}

int forest_cmp(const std::vector<TreeId>& a, const std::vector<TreeId>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (int c = cmp_impl(a[i], b[i]); c != 0) return c;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

IForest minimize_impl(const IForest& f, int verify_bound);

// all forests obtainable from `tree` by deleting one node (as a whole subtree or
// splicing its children up) or replacing one nested label by its minimal form
void tree_edits(TreeId tree, int k, int depth, std::vector<std::vector<TreeId>>& out) {
  const TreeData d = tree_data(tree);
  out.push_back({});           // drop the whole subtree
  out.push_back(d.children);   // splice this node
  if (d.base < 0) {
    IForest lab{k, depth - 1, {d.nested}};
    IForest min_lab = minimize_impl(lab, kMinimizeVerifyBound);
    if (min_lab.trees.size() == 1 && tree_nodes(min_lab.trees[0]) < tree_nodes(d.nested))
      out.push_back({make_tree_nested(min_lab.trees[0], d.children)});
  }
  for (std::size_t j = 0; j < d.children.size(); ++j) {
    std::vector<std::vector<TreeId>> child_edits;
    tree_edits(d.children[j], k, depth, child_edits);
    for (const auto& repl : child_edits) {
      std::vector<TreeId> ch;
      ch.reserve(d.children.size() + repl.size());
      for (std::size_t l = 0; l < d.children.size(); ++l) {
        if (l == j)
          ch.insert(ch.end(), repl.begin(), repl.end());
        else
          ch.push_back(d.children[l]);
      }
      out.push_back({d.base >= 0 ? make_tree(d.base, std::move(ch))
                                 : make_tree_nested(d.nested, std::move(ch))});
    }
  }
}

// structural enumeration helpers for the exhaustive minimality check

struct LabelChoice {
  bool is_base = true;
  int base = 0;
  TreeId nested = 0;
  int cost = 1;  // 1 for base, 1 + |nested| otherwise
};

void trees_of_size(int size, const std::vector<LabelChoice>& pool,
                   std::vector<std::vector<TreeId>>& by_size);

// multisets of trees with the given total size, each tree drawn in nondecreasing
// (size, structure) order to avoid duplicates
void forests_of_total(int total, int min_size, bool has_min, TreeId min_tree,
                      const std::vector<LabelChoice>& pool,
                      std::vector<std::vector<TreeId>>& by_size,
                      std::vector<TreeId>& acc, std::vector<std::vector<TreeId>>& out) {
  if (total == 0) {
    out.push_back(acc);
    return;
  }
  for (int s = min_size; s <= total; ++s) {
    for (TreeId t : by_size[s]) {
      if (s == min_size && has_min && cmp_impl(t, min_tree) < 0) continue;
      acc.push_back(t);
      forests_of_total(total - s, s, true, t, pool, by_size, acc, out);
      acc.pop_back();
    }
  }
}

void trees_of_size(int size, const std::vector<LabelChoice>& pool,
                   std::vector<std::vector<TreeId>>& by_size) {
  // assumes by_size filled for all smaller sizes
  for (const LabelChoice& lab : pool) {
    int rest = size - lab.cost;
    if (rest < 0) continue;
    std::vector<std::vector<TreeId>> child_sets;
    std::vector<TreeId> acc;
    forests_of_total(rest, 1, false, 0, pool, by_size, acc, child_sets);
    for (auto& ch : child_sets) {
      TreeId t = lab.is_base ? make_tree(lab.base, std::move(ch))
                             : make_tree_nested(lab.nested, std::move(ch));
      if (tree_nodes(t) == size) by_size[size].push_back(t);
    }
  }
  auto& v = by_size[size];
  canonical_sort(v);
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void collect_labels(TreeId t, std::vector<TreeId>& base_as_trees,
                    std::vector<TreeId>& nested) {
  const TreeData d = tree_data(t);
  if (d.base >= 0)
    base_as_trees.push_back(make_tree(d.base));
  else
    nested.push_back(d.nested);
  for (TreeId c : d.children) collect_labels(c, base_as_trees, nested);
}

// exhaustively smallest, canonically least forest equivalent to g
IForest exhaustive_canonical(const IForest& g) {
  int budget = g.node_total();
  std::vector<LabelChoice> pool;
  for (int i = 0; i < g.k; ++i) pool.push_back({true, i, 0, 1});
  if (g.depth >= 2) {
    // candidate nested labels live in the down-closure of g's labels
    std::vector<TreeId> own_base, own_nested;
    for (TreeId t : g.trees) collect_labels(t, own_base, own_nested);
    std::vector<LabelChoice> sub;
    for (int i = 0; i < g.k; ++i) sub.push_back({true, i, 0, 1});
    std::vector<std::vector<TreeId>> label_by_size(budget);
    for (int s = 1; s + 1 <= budget; ++s) {
      trees_of_size(s, sub, label_by_size);
      for (TreeId v : label_by_size[s]) {
        if (tree_nodes(v) == 1) continue;  // single-node labels normalize to base
        bool below = false;
        for (TreeId l : own_nested)
          if (embed_impl(v, l)) {
            below = true;
            break;
          }
        if (below) pool.push_back({false, 0, v, 1 + tree_nodes(v)});
      }
    }
  }
  std::vector<std::vector<TreeId>> by_size(budget + 1);
  for (int s = 1; s <= budget; ++s) trees_of_size(s, pool, by_size);
  for (int total = 1; total <= budget; ++total) {
    std::vector<std::vector<TreeId>> cands;
    std::vector<TreeId> acc;
    forests_of_total(total, 1, false, 0, pool, by_size, acc, cands);
    const std::vector<TreeId>* best = nullptr;
    for (const auto& cand : cands) {
      IForest cf = with_trees(g, cand);
      if (!leq_h(g, cf) || !leq_h(cf, g)) continue;
      if (!best || forest_cmp(cand, *best) < 0) best = &cand;
    }
    if (best) return with_trees(g, *best);
  }
  throw internal_error("exhaustive minimization found no equivalent forest");
}

std::map<std::pair<std::pair<int, int>, std::vector<TreeId>>, IForest>& minimize_memo() {
  static auto* memo =
      new std::map<std::pair<std::pair<int, int>, std::vector<TreeId>>, IForest>();
  return *memo;
}

IForest minimize_impl(const IForest& f, int verify_bound) {
  auto key = std::make_pair(std::make_pair(f.k, f.depth), f.trees);
  auto& memo = minimize_memo();
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  IForest cur = f;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < cur.trees.size() && !changed; ++i) {
      std::vector<std::vector<TreeId>> edits;
      tree_edits(cur.trees[i], cur.k, cur.depth, edits);
      for (const auto& repl : edits) {
        std::vector<TreeId> trees;
        trees.reserve(cur.trees.size() + repl.size());
        for (std::size_t l = 0; l < cur.trees.size(); ++l) {
          if (l == i)
            trees.insert(trees.end(), repl.begin(), repl.end());
          else
            trees.push_back(cur.trees[l]);
        }
        IForest next = with_trees(cur, std::move(trees));
        if (next.node_total() >= cur.node_total()) continue;
        if (leq_h(cur, next)) {
          cur = std::move(next);
          changed = true;
          break;
        }
      }
    }
  }
  if (!cur.trees.empty() && cur.depth <= 2 && cur.node_total() <= verify_bound) {
    cur = exhaustive_canonical(cur);
  }
  canonical_sort(cur.trees);
  memo.emplace(std::move(key), cur);
  return cur;
}

}  // namespace

IForest minimize(const IForest& f, int verify_bound) {
  Guard g(interner().mu);
  return minimize_impl(f, verify_bound);
}

std::vector<IForest> canonical_decomposition(const IForest& f) {
  IForest m = minimize(f);
  std::vector<IForest> out;
  for (TreeId t : m.trees) out.push_back(with_trees(m, {t}));
  return out;
}

// ---------------------------------------------------------------------------
// semilattice operations

namespace {

void check_compatible(const IForest& f, const IForest& g) {
  if (f.k != g.k) throw validation_error("forests must share one k");
}

}  // namespace

IForest join(const IForest& f, const IForest& g) {
  check_compatible(f, g);
  IForest out{f.k, std::max(f.depth, g.depth), f.trees};
  out.trees.insert(out.trees.end(), g.trees.begin(), g.trees.end());
  return out;
}

namespace {

TreeId dot_tree(TreeId t, const std::vector<TreeId>& below) {
  const TreeData d = tree_data(t);
  if (d.children.empty())
    return d.base >= 0 ? make_tree(d.base, below) : make_tree_nested(d.nested, below);
  std::vector<TreeId> ch;
  ch.reserve(d.children.size());
  for (TreeId c : d.children) ch.push_back(dot_tree(c, below));
  return d.base >= 0 ? make_tree(d.base, std::move(ch))
                     : make_tree_nested(d.nested, std::move(ch));
}

}  // namespace

IForest dot_forest(const IForest& f, const IForest& g) {
  check_compatible(f, g);
  if (f.empty()) return with_trees(g, g.trees);
  IForest out{f.k, std::max(f.depth, g.depth), {}};
  for (TreeId t : f.trees) out.trees.push_back(dot_tree(t, g.trees));
  return out;
}

TreeId s_wrap_tree(TreeId t) { return make_tree_nested(t, {}); }

IForest s_wrap(const IForest& f) {
  if (f.trees.size() != 1) throw validation_error("s_wrap takes a single tree");
  return IForest{f.k, f.depth + 1, {s_wrap_tree(f.trees[0])}};
}

namespace {

void collect_label_trees(TreeId t, std::vector<TreeId>& out) {
  const TreeData d = tree_data(t);
  out.push_back(d.base >= 0 ? make_tree(d.base) : d.nested);
  for (TreeId c : d.children) collect_label_trees(c, out);
}

}  // namespace

IForest r_flatten(const IForest& f) {
  if (f.depth < 2) throw validation_error("r_flatten needs depth at least 2");
  IForest out{f.k, f.depth - 1, {}};
  for (TreeId t : f.trees) collect_label_trees(t, out.trees);
  return out;
}

IForest qi_forest(int i, const IForest& f) {
  if (i < 0 || i >= f.k) throw validation_error("qi_forest label out of range");
  IForest base{f.k, std::max(f.depth, 2), f.trees};
  IForest flat = r_flatten(base);
  TreeId inner = make_tree(i, flat.trees);  // i . r(f)
  return IForest{f.k, base.depth, {make_tree_nested(inner, {})}};
}

// ---------------------------------------------------------------------------
// the M operator

namespace {

// M at label level: base labels yield the other base labels, tree labels recurse
std::vector<TreeId> label_mset(const TreeData& d, int k, int depth);

std::vector<TreeId> mset_trees(const IForest& f);

std::vector<TreeId> label_mset(const TreeData& d, int k, int depth) {
  std::vector<TreeId> out;
  if (d.base >= 0) {
    for (int j = 0; j < k; ++j)
      if (j != d.base) out.push_back(make_tree(j));
  } else {
    IForest lab{k, depth - 1, {d.nested}};
    for (TreeId v : mset_trees(lab)) out.push_back(v);
  }
  return out;
}

std::vector<TreeId> mset_trees(const IForest& f) {
  IForest m = minimize_impl(f, kMinimizeVerifyBound);
  if (m.trees.empty()) throw validation_error("mset of an empty forest");
  std::vector<TreeId> out;
  if (m.trees.size() >= 2) {
    // proper forest: j over all labels, one pick from each component's M-set
    std::vector<std::vector<TreeId>> parts;
    for (TreeId t : m.trees) parts.push_back(mset_trees(with_trees(m, {t})));
    std::vector<std::size_t> pick(parts.size(), 0);
    while (true) {
      std::vector<TreeId> children;
      for (std::size_t i = 0; i < parts.size(); ++i) children.push_back(parts[i][pick[i]]);
      for (int j = 0; j < m.k; ++j) out.push_back(make_tree(j, children));
      std::size_t i = 0;
      while (i < parts.size() && ++pick[i] == parts[i].size()) pick[i++] = 0;
      if (i == parts.size()) break;
    }
    return out;
  }
  const TreeData d = tree_data(m.trees[0]);
  if (d.children.empty()) {
    for (TreeId v1 : label_mset(d, m.k, m.depth))
      out.push_back(make_tree_nested(v1, {}));  // s(V1); single base nodes collapse
    return out;
  }
  IForest child_forest = with_trees(m, d.children);
  std::vector<TreeId> label_part = label_mset(d, m.k, m.depth);
  std::vector<TreeId> child_part = mset_trees(child_forest);
  for (TreeId v1 : label_part)
    for (TreeId k1 : child_part) out.push_back(make_tree_nested(v1, {k1}));
  return out;
}

}  // namespace

std::vector<IForest> mset(const IForest& f) {
  f.validate();
  Guard g(interner().mu);
  std::vector<TreeId> raw = mset_trees(f);
  // minimize members and deduplicate up to ≡h
  std::vector<IForest> out;
  for (TreeId t : raw) {
    IForest m = minimize_impl(IForest{f.k, f.depth, {t}}, kMinimizeVerifyBound);
    bool dup = false;
    for (const IForest& seen : out)
      if (seen.trees == m.trees || equiv_h(seen, m)) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), [](const IForest& a, const IForest& b) {
    return forest_cmp(a.trees, b.trees) < 0;
  });
  return out;
}

// ---------------------------------------------------------------------------
// enumeration and the Hasse diagram

std::vector<IForest> enumerate_forests(int k, int depth, int max_nodes, std::size_t cap) {
  if (k < 2 || depth < 1 || max_nodes < 1)
    throw validation_error("enumerate_forests needs k >= 2, depth >= 1, max_nodes >= 1");
  Guard g(interner().mu);
  std::vector<LabelChoice> pool;
  for (int i = 0; i < k; ++i) pool.push_back({true, i, 0, 1});
  if (depth >= 2) {
    // nested labels: all depth-1 trees of 2..max_nodes-1 nodes (deeper nesting
    // would need depth > 2; degree work lives at depth 2)
    if (depth > 2) throw validation_error("enumerate_forests supports depth 1 and 2");
    std::vector<LabelChoice> sub;
    for (int i = 0; i < k; ++i) sub.push_back({true, i, 0, 1});
    std::vector<std::vector<TreeId>> label_by_size(max_nodes);
    for (int s = 1; s + 1 <= max_nodes; ++s) {
      trees_of_size(s, sub, label_by_size);
      for (TreeId v : label_by_size[s])
        if (tree_nodes(v) >= 2) pool.push_back({false, 0, v, 1 + tree_nodes(v)});
    }
  }
  std::vector<std::vector<TreeId>> by_size(max_nodes + 1);
  for (int s = 1; s <= max_nodes; ++s) trees_of_size(s, pool, by_size);

  std::vector<IForest> classes;
  std::size_t generated = 0;
  for (int total = 1; total <= max_nodes; ++total) {
    std::vector<std::vector<TreeId>> cands;
    std::vector<TreeId> acc;
    forests_of_total(total, 1, false, 0, pool, by_size, acc, cands);
    for (const auto& cand : cands) {
      if (++generated > cap)
        throw resource_error("enumeration exceeds cap of " + std::to_string(cap));
      IForest f{k, depth, cand};
      IForest m = minimize_impl(f, kMinimizeVerifyBound);
      bool dup = false;
      for (const IForest& seen : classes)
        if (seen.trees == m.trees ||
            (seen.node_total() == m.node_total() && equiv_h(seen, m))) {
          dup = true;
          break;
        }
      if (!dup) classes.push_back(std::move(m));
    }
  }
  std::sort(classes.begin(), classes.end(), [](const IForest& a, const IForest& b) {
    if (a.node_total() != b.node_total()) return a.node_total() < b.node_total();
    return forest_cmp(a.trees, b.trees) < 0;
  });
  return classes;
}

std::string hasse(int k, int depth, int max_nodes, std::size_t cap) {
  std::vector<IForest> classes = enumerate_forests(k, depth, max_nodes, cap);
  std::size_t n = classes.size();
  std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) le[i][j] = leq_h(classes[i], classes[j]);
  std::ostringstream os;
  os << "digraph hasse {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < n; ++i)
    os << "  n" << i << " [label=\"" << to_text(classes[i]) << "\"];\n";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !le[i][j] || le[j][i]) continue;
      bool covering = true;
      for (std::size_t l = 0; l < n && covering; ++l) {
        if (l == i || l == j) continue;
        if (le[i][l] && !le[l][i] && le[l][j] && !le[j][l]) covering = false;
      }
      if (covering) os << "  n" << i << " -> n" << j << ";\n";
    }
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// text syntax

namespace {

void tree_text(std::ostream& os, TreeId t, int depth) {
  const TreeData d = tree_data(t);
  if (depth >= 2) {
    os << '<';
    if (d.base >= 0)
      os << d.base;
    else
      tree_text(os, d.nested, depth - 1);
    os << '>';
  } else {
    if (d.base < 0) throw internal_error("nested label at depth 1");
    os << d.base;
  }
  if (!d.children.empty()) {
    os << '(';
    for (std::size_t i = 0; i < d.children.size(); ++i) {
      if (i) os << ',';
      tree_text(os, d.children[i], depth);
    }
    os << ')';
  }
}

struct TextParser {
  const std::string& s;
  std::size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw validation_error("forest syntax error at offset " + std::to_string(pos) + ": " +
                           what);
  }
  int parse_int() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected a label");
    return std::stoi(s.substr(start, pos - start));
  }
  TreeId parse_tree() {
    skip();
    bool nested = eat('<');
    TreeId label_tree = 0;
    int base = -1;
    if (nested) {
      label_tree = parse_tree();
      if (!eat('>')) fail("expected '>'");
    } else {
      base = parse_int();
    }
    std::vector<TreeId> children;
    if (eat('(')) {
      do {
        children.push_back(parse_tree());
      } while (eat(','));
      if (!eat(')')) fail("expected ')'");
    }
    return nested ? make_tree_nested(label_tree, std::move(children))
                  : make_tree(base, std::move(children));
  }
};

}  // namespace

std::string tree_to_text(TreeId t, int depth) {
  std::ostringstream os;
  tree_text(os, t, depth);
  return os.str();
}

std::string to_text(const IForest& f) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < f.trees.size(); ++i) {
    if (i) os << ',';
    tree_text(os, f.trees[i], f.depth);
  }
  os << ']';
  return os.str();
}

IForest parse_forest_text(const std::string& text, int k) {
  TextParser p{text};
  std::vector<TreeId> trees;
  if (p.eat('[')) {
    do {
      trees.push_back(p.parse_tree());
    } while (p.eat(','));
    if (!p.eat(']')) p.fail("expected ']'");
  } else {
    trees.push_back(p.parse_tree());
  }
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  IForest f;
  f.trees = std::move(trees);
  int maxb = 0, depth = 1;
  for (TreeId t : f.trees) {
    maxb = std::max(maxb, max_base_label(t));
    depth = std::max(depth, tree_min_depth(t));
  }
  f.k = std::max(k, maxb + 1);
  if (f.k < 2) f.k = 2;
  f.depth = depth;
  f.validate();
  return f;
}

}  // namespace wagner
