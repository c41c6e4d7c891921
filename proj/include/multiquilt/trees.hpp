// Combinatorial types of (nodal, possibly quilted) pointed disks as stable
// colored rooted ribbon trees: enumeration, surgery, stratum classification.
#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <tuple>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace multiquilt {

/// A slot of a vertex: either a pointer to a child vertex or a leaf marker.
/// Leaf indices are 1-based; in canonical form they follow planar DFS order.
struct Slot {
  int child = -1;  ///< child vertex id, or -1 for a leaf slot
  int leaf = 0;    ///< leaf index when child < 0

  bool is_leaf() const { return child < 0; }
  friend bool operator==(const Slot&, const Slot&) = default;
};

struct Vertex {
  int id = 0;
  bool colored = false;
  std::vector<Slot> slots;

  /// #slots + 1 (the parent edge, or the root edge e_0 for the root vertex).
  int valency() const { return static_cast<int>(slots.size()) + 1; }
  friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Planar rooted ribbon tree with an optional colored vertex subset.
/// The root semi-infinite edge e_0 hangs below the root vertex; the leaf
/// markers are e_1..e_d.  Finite edges E(T) are the parent links, identified
/// by their child vertex id.
struct RibbonTree {
  int d = 0;     ///< leaf count
  int root = 0;  ///< root vertex id
  std::vector<Vertex> vertices;  ///< indexed by id in canonical form

  const Vertex& vertex(int id) const { return vertices.at(static_cast<size_t>(id)); }
  Vertex& vertex(int id) { return vertices.at(static_cast<size_t>(id)); }

  int num_vertices() const { return static_cast<int>(vertices.size()); }
  /// |E(T)| = finite edges = all non-root vertices.
  int num_edges() const { return num_vertices() - 1; }

  int num_colored() const {
    int k = 0;
    for (const auto& v : vertices) k += v.colored ? 1 : 0;
    return k;
  }
  bool has_colors() const { return num_colored() > 0; }

  friend bool operator==(const RibbonTree&, const RibbonTree&) = default;
  friend auto operator<=>(const RibbonTree& a, const RibbonTree& b) {
    auto ka = a.key(), kb = b.key();
    return ka < kb ? std::strong_ordering::less
         : ka > kb ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }

  /// Flat structural key (assumes canonical form); used for ordering/dedup.
  std::vector<int> key() const {
    std::vector<int> k{d, root};
    for (const auto& v : vertices) {
      k.push_back(v.colored ? 1 : 0);
      k.push_back(static_cast<int>(v.slots.size()));
      for (const auto& s : v.slots) {
        k.push_back(s.child);
        k.push_back(s.leaf);
      }
    }
    return k;
  }
};

/// Colored trees share the representation; the alias tracks intent in
/// signatures that require a nonempty colored set.
using ColoredRibbonTree = RibbonTree;

namespace detail {

inline void canon_dfs(const RibbonTree& t, int v, RibbonTree& out, int parent_new,
                      int slot_index, int& next_leaf, std::vector<int>* old_to_new = nullptr) {
  const Vertex& src = t.vertex(v);
  int id = out.num_vertices();
  if (old_to_new) (*old_to_new)[static_cast<size_t>(v)] = id;
  out.vertices.push_back(Vertex{id, src.colored, {}});
  if (parent_new >= 0) out.vertex(parent_new).slots[static_cast<size_t>(slot_index)].child = id;
  out.vertex(id).slots.resize(src.slots.size());
  for (size_t i = 0; i < src.slots.size(); ++i) {
    if (src.slots[i].is_leaf()) {
      out.vertex(id).slots[i] = Slot{-1, ++next_leaf};
    } else {
      canon_dfs(t, src.slots[i].child, out, id, static_cast<int>(i), next_leaf, old_to_new);
    }
  }
}

}  // namespace detail

/// Depth-first normal form: vertices in preorder, ids = positions, leaf
/// indices renumbered 1..d in planar order.  Equality of canonical forms is
/// the tree isomorphism used throughout.
inline RibbonTree canonical(const RibbonTree& t) {
  RibbonTree out;
  out.root = 0;
  int next_leaf = 0;
  detail::canon_dfs(t, t.root, out, -1, 0, next_leaf);
  out.d = next_leaf;
  return out;
}

/// As canonical(), also reporting old vertex id -> new id (-1 for vertices
/// unreachable from the root, which are dropped).
inline RibbonTree canonical_with_map(const RibbonTree& t, std::vector<int>& old_to_new) {
  RibbonTree out;
  out.root = 0;
  old_to_new.assign(t.vertices.size(), -1);
  int next_leaf = 0;
  detail::canon_dfs(t, t.root, out, -1, 0, next_leaf, &old_to_new);
  out.d = next_leaf;
  return out;
}

/// Structural and stability diagnostics; empty result means the tree is a
/// well-formed stable (colored) ribbon tree.
inline std::vector<std::string> validate(const RibbonTree& t) {
  std::vector<std::string> diag;
  const int n = t.num_vertices();
  if (n == 0) {
    diag.push_back("tree has no vertices");
    return diag;
  }
  // id/reference integrity
  for (int i = 0; i < n; ++i) {
    if (t.vertices[static_cast<size_t>(i)].id != i)
      diag.push_back("vertex record " + std::to_string(i) + " has id " +
                     std::to_string(t.vertices[static_cast<size_t>(i)].id));
  }
  if (t.root < 0 || t.root >= n) {
    diag.push_back("root id out of range");
    return diag;
  }
  std::vector<int> parent(static_cast<size_t>(n), -2);
  bool dangling = false;
  for (const auto& v : t.vertices) {
    for (const auto& s : v.slots) {
      if (s.is_leaf()) continue;
      if (s.child < 0 || s.child >= n) {
        diag.push_back("dangling child id " + std::to_string(s.child));
        dangling = true;
      } else if (parent[static_cast<size_t>(s.child)] != -2) {
        diag.push_back("vertex " + std::to_string(s.child) + " has multiple parents");
      } else {
        parent[static_cast<size_t>(s.child)] = v.id;
      }
    }
  }
  if (dangling) return diag;
  // connectivity / acyclicity: DFS from the root must reach every vertex once
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::vector<int> leaf_order;
  bool cyclic = false;
  auto dfs = [&](auto&& self, int v) -> void {
    if (seen[static_cast<size_t>(v)]) {
      cyclic = true;
      return;
    }
    seen[static_cast<size_t>(v)] = 1;
    for (const auto& s : t.vertex(v).slots) {
      if (s.is_leaf())
        leaf_order.push_back(s.leaf);
      else
        self(self, s.child);
    }
  };
  dfs(dfs, t.root);
  if (cyclic) diag.push_back("cycle detected");
  for (int i = 0; i < n; ++i)
    if (!seen[static_cast<size_t>(i)]) diag.push_back("vertex " + std::to_string(i) + " unreachable from root");
  if (!diag.empty()) return diag;
  // leaf count and planar (ribbon) numbering
  if (static_cast<int>(leaf_order.size()) != t.d)
    diag.push_back("leaf count " + std::to_string(leaf_order.size()) + " != d = " + std::to_string(t.d));
  for (size_t i = 0; i < leaf_order.size(); ++i) {
    if (leaf_order[i] != static_cast<int>(i) + 1) {
      diag.push_back("leaf indices not in planar DFS order");
      break;
    }
  }
  // stability
  for (const auto& v : t.vertices) {
    int min_val = v.colored ? 2 : 3;
    if (v.valency() < min_val)
      diag.push_back("vertex " + std::to_string(v.id) + (v.colored ? " (colored)" : " (uncolored)") +
                     " has valency " + std::to_string(v.valency()) + " < " + std::to_string(min_val));
  }
  // one colored vertex on every root-to-leaf path
  if (t.has_colors()) {
    auto count_paths = [&](auto&& self, int v, int colored_above) -> void {
      int c = colored_above + (t.vertex(v).colored ? 1 : 0);
      for (const auto& s : t.vertex(v).slots) {
        if (s.is_leaf()) {
          if (c != 1)
            diag.push_back("path to leaf " + std::to_string(s.leaf) + " contains " + std::to_string(c) +
                           " colored vertices");
        } else {
          self(self, s.child, c);
        }
      }
    };
    count_paths(count_paths, t.root, 0);
  }
  return diag;
}

inline bool is_stable(const RibbonTree& t) { return validate(t).empty(); }

// ---------------------------------------------------------------------------
// Enumeration of stable combinatorial types
// ---------------------------------------------------------------------------

namespace detail {

/// All compositions of n into m ordered positive parts, in lexicographic order.
inline void compositions(int n, int m, std::vector<int>& cur,
                         const std::function<void(const std::vector<int>&)>& emit) {
  if (m == 1) {
    if (n >= 1) {
      cur.push_back(n);
      emit(cur);
      cur.pop_back();
    }
    return;
  }
  for (int first = 1; first <= n - m + 1; ++first) {
    cur.push_back(first);
    compositions(n - first, m - 1, cur, emit);
    cur.pop_back();
  }
}

/// Graft `sub` (canonical) under `slot` of `base.vertex(at)`, with id shift.
inline void attach_subtree(RibbonTree& base, int at, const RibbonTree& sub) {
  int shift = base.num_vertices();
  base.vertex(at).slots.push_back(Slot{shift + sub.root, 0});
  for (Vertex v : sub.vertices) {
    v.id += shift;
    for (auto& s : v.slots)
      if (!s.is_leaf()) s.child += shift;
    base.vertices.push_back(std::move(v));
  }
}

}  // namespace detail

/// Stable uncolored planar types with e leaves (every vertex >= 2 slots).
/// Requires e >= 2; results are canonical, sorted, deduplicated.
inline const std::vector<RibbonTree>& enumerate_uncolored(int e);

/// Stable colored planar types with d leaves (d >= 1).
inline const std::vector<ColoredRibbonTree>& enumerate_colored(int d);

namespace detail {

inline std::vector<RibbonTree> build_uncolored(int e) {
  std::vector<RibbonTree> out;
  if (e < 2) return out;
  // root vertex with m >= 2 slots; each slot is a leaf or an uncolored
  // stable subtree with >= 2 leaves
  for (int m = 2; m <= e; ++m) {
    std::vector<int> cur;
    compositions(e, m, cur, [&](const std::vector<int>& parts) {
      // for each part: part == 1 -> leaf; part >= 2 -> any subtree type
      std::vector<const std::vector<RibbonTree>*> choices(parts.size(), nullptr);
      std::vector<size_t> idx(parts.size(), 0);
      for (size_t i = 0; i < parts.size(); ++i)
        if (parts[i] >= 2) choices[i] = &enumerate_uncolored(parts[i]);
      // odometer over subtree choices
      while (true) {
        RibbonTree t;
        t.root = 0;
        t.vertices.push_back(Vertex{0, false, {}});
        for (size_t i = 0; i < parts.size(); ++i) {
          if (parts[i] == 1)
            t.vertex(0).slots.push_back(Slot{-1, 0});
          else
            attach_subtree(t, 0, (*choices[i])[idx[i]]);
        }
        out.push_back(canonical(t));
        // advance
        size_t j = 0;
        for (; j < parts.size(); ++j) {
          if (parts[j] == 1) continue;
          if (++idx[j] < choices[j]->size()) break;
          idx[j] = 0;
        }
        if (j == parts.size()) break;
      }
    });
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<ColoredRibbonTree> build_colored(int d) {
  std::vector<ColoredRibbonTree> out;
  if (d < 1) return out;
  // Case A: colored root, m >= 1 slots, each slot a leaf or an uncolored
  // stable subtree.
  for (int m = 1; m <= d; ++m) {
    std::vector<int> cur;
    compositions(d, m, cur, [&](const std::vector<int>& parts) {
      std::vector<const std::vector<RibbonTree>*> choices(parts.size(), nullptr);
      std::vector<size_t> idx(parts.size(), 0);
      for (size_t i = 0; i < parts.size(); ++i)
        if (parts[i] >= 2) choices[i] = &enumerate_uncolored(parts[i]);
      while (true) {
        RibbonTree t;
        t.root = 0;
        t.vertices.push_back(Vertex{0, true, {}});
        for (size_t i = 0; i < parts.size(); ++i) {
          if (parts[i] == 1)
            t.vertex(0).slots.push_back(Slot{-1, 0});
          else
            attach_subtree(t, 0, (*choices[i])[idx[i]]);
        }
        out.push_back(canonical(t));
        size_t j = 0;
        for (; j < parts.size(); ++j) {
          if (parts[j] == 1) continue;
          if (++idx[j] < choices[j]->size()) break;
          idx[j] = 0;
        }
        if (j == parts.size()) break;
      }
    });
  }
  // Case B: uncolored root, m >= 2 slots, each slot a colored subtree
  // (a bare leaf would give a path with no colored vertex).
  for (int m = 2; m <= d; ++m) {
    std::vector<int> cur;
    compositions(d, m, cur, [&](const std::vector<int>& parts) {
      std::vector<const std::vector<ColoredRibbonTree>*> choices(parts.size());
      std::vector<size_t> idx(parts.size(), 0);
      for (size_t i = 0; i < parts.size(); ++i) choices[i] = &enumerate_colored(parts[i]);
      for (const auto* c : choices)
        if (c->empty()) return;
      while (true) {
        RibbonTree t;
        t.root = 0;
        t.vertices.push_back(Vertex{0, false, {}});
        for (size_t i = 0; i < parts.size(); ++i) attach_subtree(t, 0, (*choices[i])[idx[i]]);
        out.push_back(canonical(t));
        size_t j = 0;
        for (; j < parts.size(); ++j) {
          if (++idx[j] < choices[j]->size()) break;
          idx[j] = 0;
        }
        if (j == parts.size()) break;
      }
    });
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

inline const std::vector<RibbonTree>& enumerate_uncolored(int e) {
  static std::map<int, std::vector<RibbonTree>> memo;
  auto it = memo.find(e);
  if (it == memo.end()) {
    memo.emplace(e, std::vector<RibbonTree>{});  // placeholder guards recursion depth
    memo[e] = detail::build_uncolored(e);
    it = memo.find(e);
  }
  return it->second;
}

inline const std::vector<ColoredRibbonTree>& enumerate_colored(int d) {
  static std::map<int, std::vector<ColoredRibbonTree>> memo;
  auto it = memo.find(d);
  if (it == memo.end()) {
    memo.emplace(d, std::vector<ColoredRibbonTree>{});
    memo[d] = detail::build_colored(d);
    it = memo.find(d);
  }
  return it->second;
}

/// enumerate_strata per the external interface: colored flag selects the
/// quilted (d >= 1) or unquilted (d >= 2) family.
inline std::vector<RibbonTree> enumerate_strata(int d, bool colored) {
  if (d < 1 || (!colored && d < 2))
    throw std::invalid_argument("enumerate_strata: d out of range");
  return colored ? enumerate_colored(d) : enumerate_uncolored(d);
}

// ---------------------------------------------------------------------------
// Surgery
// ---------------------------------------------------------------------------

struct CutResult {
  RibbonTree lower;  ///< the cut edge became leaf i+1 of this tree
  RibbonTree upper;  ///< the cut edge became the root edge e_0 of this tree
  int i = 0;         ///< leaves of the original tree strictly left of the cut subtree
  int e = 0;         ///< leaf count of the upper tree
};

namespace detail {

inline RibbonTree extract_subtree(const RibbonTree& t, int v) {
  RibbonTree out;
  out.root = 0;
  int next_leaf = 0;
  canon_dfs(t, v, out, -1, 0, next_leaf);
  out.d = next_leaf;
  return out;
}

inline int find_parent(const RibbonTree& t, int child) {
  for (const auto& v : t.vertices)
    for (const auto& s : v.slots)
      if (!s.is_leaf() && s.child == child) return v.id;
  return -1;
}

inline int leaves_before(const RibbonTree& t, int target_child) {
  // count leaves visited in DFS before descending into target_child
  int count = 0;
  bool done = false;
  auto dfs = [&](auto&& self, int v) -> void {
    if (done) return;
    for (const auto& s : t.vertex(v).slots) {
      if (done) return;
      if (s.is_leaf()) {
        ++count;
      } else if (s.child == target_child) {
        done = true;
        return;
      } else {
        self(self, s.child);
      }
    }
  };
  dfs(dfs, t.root);
  return count;
}

}  // namespace detail

/// Cut the finite edge whose child vertex is `edge_child`.  The edge becomes
/// leaf e_{i+1} of the lower tree and the root edge e_0 of the upper one.
inline CutResult cut_edge(const RibbonTree& t, int edge_child) {
  if (edge_child == t.root || edge_child < 0 || edge_child >= t.num_vertices())
    throw std::invalid_argument("cut_edge: no such finite edge");
  CutResult r;
  r.upper = detail::extract_subtree(t, edge_child);
  r.e = r.upper.d;
  r.i = detail::leaves_before(t, edge_child);
  RibbonTree low = t;
  int parent = detail::find_parent(low, edge_child);
  for (auto& s : low.vertex(parent).slots)
    if (!s.is_leaf() && s.child == edge_child) s = Slot{-1, 0};
  r.lower = canonical(low);  // drops the detached subtree, renumbers leaves
  return r;
}

/// Inverse of cut_edge: graft `upper`'s root onto leaf `leaf_index` of `lower`.
inline RibbonTree graft(const RibbonTree& lower, int leaf_index, const RibbonTree& upper) {
  if (leaf_index < 1 || leaf_index > lower.d)
    throw std::invalid_argument("graft: leaf index out of range");
  RibbonTree out = lower;
  int shift = out.num_vertices();
  for (Vertex v : upper.vertices) {
    v.id += shift;
    for (auto& s : v.slots)
      if (!s.is_leaf()) s.child += shift;
    out.vertices.push_back(std::move(v));
  }
  bool placed = false;
  for (auto& v : out.vertices) {
    if (v.id >= shift) continue;
    for (auto& s : v.slots)
      if (s.is_leaf() && s.leaf == leaf_index) {
        s = Slot{shift + upper.root, 0};
        placed = true;
      }
  }
  if (!placed) throw std::invalid_argument("graft: leaf not found");
  RibbonTree res = canonical(out);
  auto diag = validate(res);
  if (!diag.empty()) throw std::invalid_argument("graft: result not stable: " + diag.front());
  return res;
}

/// Contract the finite edge with child vertex `edge_child`, splicing the
/// child's slots into the parent in planar order.  Rejected when no choice of
/// color for the merged vertex keeps the tree stable.
inline RibbonTree contract_edge(const RibbonTree& t, int edge_child) {
  if (edge_child == t.root || edge_child < 0 || edge_child >= t.num_vertices())
    throw std::invalid_argument("contract_edge: no such finite edge");
  int parent = detail::find_parent(t, edge_child);
  auto merged_with_color = [&](bool colored) {
    RibbonTree out = t;
    auto& pv = out.vertex(parent);
    std::vector<Slot> slots;
    for (const auto& s : pv.slots) {
      if (!s.is_leaf() && s.child == edge_child) {
        for (const auto& cs : out.vertex(edge_child).slots) slots.push_back(cs);
      } else {
        slots.push_back(s);
      }
    }
    pv.slots = std::move(slots);
    pv.colored = colored;
    out.vertex(edge_child).slots.clear();  // orphaned; canonical() drops it
    return canonical(out);
  };
  const bool pc = t.vertex(parent).colored;
  const bool cc = t.vertex(edge_child).colored;
  std::vector<bool> candidates = (pc == cc) ? std::vector<bool>{pc} : std::vector<bool>{true, false};
  for (bool c : candidates) {
    RibbonTree res = merged_with_color(c);
    if (validate(res).empty()) return res;
  }
  throw std::invalid_argument("contract_edge: contraction produces an illegal coloring");
}

/// Contract a set of finite edges simultaneously.  Each merged vertex class
/// is colored iff it contains a colored vertex (a quilted component absorbs
/// unquilted ones).  Throws when the quotient violates stability or the
/// colored-path rule — e.g. contracting a single neck of a multi-neck broken
/// configuration, which geometry only allows to degenerate jointly.
inline RibbonTree contract_edges(const RibbonTree& t, const std::vector<int>& edge_children_set) {
  std::vector<char> contracted(static_cast<size_t>(t.num_vertices()), 0);
  for (int e : edge_children_set) {
    if (e == t.root || e < 0 || e >= t.num_vertices())
      throw std::invalid_argument("contract_edges: no such finite edge");
    contracted[static_cast<size_t>(e)] = 1;
  }
  RibbonTree out;
  out.d = t.d;
  out.root = 0;
  // expanded slot list of a merged class, splicing contracted children
  auto expand = [&](auto&& self, int v, std::vector<Slot>& slots, bool& colored) -> void {
    if (t.vertex(v).colored) colored = true;
    for (const auto& s : t.vertex(v).slots) {
      if (!s.is_leaf() && contracted[static_cast<size_t>(s.child)])
        self(self, s.child, slots, colored);
      else
        slots.push_back(s);
    }
  };
  // build the quotient: class representatives are the non-contracted vertices
  auto build = [&](auto&& self, int v, int new_parent, size_t slot_index) -> void {
    int id = out.num_vertices();
    out.vertices.push_back(Vertex{id, false, {}});
    if (new_parent >= 0) out.vertex(new_parent).slots[slot_index].child = id;
    std::vector<Slot> slots;
    bool colored = false;
    expand(expand, v, slots, colored);
    out.vertex(id).colored = colored;
    out.vertex(id).slots = slots;
    for (size_t i = 0; i < slots.size(); ++i)
      if (!slots[i].is_leaf()) self(self, slots[i].child, id, i);
  };
  build(build, t.root, -1, 0);
  RibbonTree res = canonical(out);
  auto diag = validate(res);
  if (!diag.empty())
    throw std::invalid_argument("contract_edges: quotient is not a stable colored type: " + diag.front());
  return res;
}

// ---------------------------------------------------------------------------
// Stratum classification
// ---------------------------------------------------------------------------

struct FacetLabel {
  enum class Kind { Type1, Type2, FloerIncoming, FloerOutgoing, NotCodimOne };
  Kind kind = Kind::NotCodimOne;
  int e = 0, i = 0;         ///< Type1 data, 2 <= e, i + e <= d
  std::vector<int> parts;   ///< Type2 composition s_1..s_r, r >= 2
  friend bool operator==(const FacetLabel&, const FacetLabel&) = default;
  friend auto operator<=>(const FacetLabel& a, const FacetLabel& b) {
    return std::tie(a.kind, a.e, a.i, a.parts) <=> std::tie(b.kind, b.e, b.i, b.parts);
  }
};

inline FacetLabel type1_label(int e, int i) { return FacetLabel{FacetLabel::Kind::Type1, e, i, {}}; }
inline FacetLabel type2_label(std::vector<int> parts) {
  return FacetLabel{FacetLabel::Kind::Type2, 0, 0, std::move(parts)};
}
inline FacetLabel floer_incoming(int i) { return FacetLabel{FacetLabel::Kind::FloerIncoming, 0, i, {}}; }
inline FacetLabel floer_outgoing() { return FacetLabel{FacetLabel::Kind::FloerOutgoing, 0, 0, {}}; }

/// Classify a stable colored type as a codimension-one facet of the
/// compactified moduli of quilted disks, or NotCodimOne.
inline FacetLabel facet_label(const ColoredRibbonTree& tree) {
  const RibbonTree t = canonical(tree);
  const int d = t.d;
  if (t.num_vertices() == 2) {
    // Candidate Type 1: colored root with one uncolored child carrying e
    // consecutive leaves after position i.
    const Vertex& rootv = t.vertex(t.root);
    int child = -1;
    for (const auto& s : rootv.slots)
      if (!s.is_leaf()) child = s.child;
    if (child >= 0 && rootv.colored && !t.vertex(child).colored) {
      bool child_all_leaves = true;
      for (const auto& s : t.vertex(child).slots)
        if (!s.is_leaf()) child_all_leaves = false;
      if (child_all_leaves) {
        int e = static_cast<int>(t.vertex(child).slots.size());
        int i = 0;
        for (const auto& s : rootv.slots) {
          if (!s.is_leaf()) break;
          ++i;
        }
        if (e >= 2 && i + e <= d) return type1_label(e, i);
      }
    }
  }
  // Candidate Type 2: uncolored root whose children are colored corollas.
  {
    const Vertex& rootv = t.vertex(t.root);
    if (!rootv.colored && static_cast<int>(rootv.slots.size()) >= 2) {
      std::vector<int> parts;
      bool ok = true;
      for (const auto& s : rootv.slots) {
        if (s.is_leaf()) {
          ok = false;
          break;
        }
        const Vertex& c = t.vertex(s.child);
        if (!c.colored) {
          ok = false;
          break;
        }
        for (const auto& cs : c.slots)
          if (!cs.is_leaf()) ok = false;
        if (!ok) break;
        parts.push_back(static_cast<int>(c.slots.size()));
      }
      if (ok) return type2_label(std::move(parts));
    }
  }
  return FacetLabel{};
}

/// Dimension of the stratum indexed by a stable (colored) type:
/// sum over uncolored vertices of (valency - 3) plus sum over colored
/// vertices of (valency - 2).
inline int stratum_dim(const RibbonTree& t) {
  int dim = 0;
  for (const auto& v : t.vertices) dim += v.valency() - (v.colored ? 2 : 3);
  return dim;
}

/// Forget the colored structure and stabilize: bivalent (ex-colored)
/// vertices are spliced out.  Requires d >= 2.
inline RibbonTree forget_colors(const ColoredRibbonTree& tree) {
  if (tree.d < 2) throw std::invalid_argument("forget_colors: no stable uncolored type with d < 2");
  RibbonTree t = tree;
  for (auto& v : t.vertices) v.colored = false;
  // splice vertices of valency 2 (exactly one slot) until none remain
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& v : t.vertices) {
      if (v.slots.size() != 1) continue;
      if (v.id == t.root) {
        const Slot s = v.slots[0];
        if (s.is_leaf()) throw std::invalid_argument("forget_colors: degenerate tree");
        t.root = s.child;
      } else {
        int parent = detail::find_parent(t, v.id);
        for (auto& ps : t.vertex(parent).slots)
          if (!ps.is_leaf() && ps.child == v.id) ps = v.slots[0];
      }
      t.vertex(v.id).slots.clear();
      changed = true;
      break;
    }
    if (changed) t = canonical(t);
  }
  RibbonTree res = canonical(t);
  auto diag = validate(res);
  if (!diag.empty()) throw std::logic_error("forget_colors: result not stable: " + diag.front());
  return res;
}

/// Finite edges in canonical id order (identified by child vertex id).
inline std::vector<int> edge_children(const RibbonTree& t) {
  std::vector<int> e;
  for (const auto& v : t.vertices)
    if (v.id != t.root) e.push_back(v.id);
  return e;
}

}  // namespace multiquilt
