// Metric realization of the multiplihedra: edge-length maps, the
// admissibility cone, gluing-parameter bookkeeping, Type 1 / Type 2 gluing,
// and the face lattice of the compactification.
#pragma once

#include <boost/rational.hpp>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "trees.hpp"

namespace multiquilt {

/// Extended non-negative length: a finite value or an explicit +inf marker.
/// The marker is deliberately not a float infinity so that broken (nodal)
/// configurations are tracked symbolically.
struct ExtLen {
  double value = 0.0;
  bool inf = false;

  static ExtLen finite(double v) { return ExtLen{v, false}; }
  static ExtLen infinity() { return ExtLen{0.0, true}; }
  friend ExtLen operator+(const ExtLen& a, const ExtLen& b) {
    if (a.inf || b.inf) return infinity();
    return finite(a.value + b.value);
  }
  friend bool operator==(const ExtLen&, const ExtLen&) = default;
};

/// Absolute tolerance for float length comparisons in admissibility checks.
inline constexpr double kAdmissibilityTol = 1e-9;

/// Tree plus edge-length map lambda: E(T) -> [0, inf], keyed by the child
/// vertex id of each finite edge.
struct MetricTree {
  RibbonTree tree;
  std::map<int, ExtLen> lambda;

  ExtLen len(int edge_child) const {
    auto it = lambda.find(edge_child);
    if (it == lambda.end()) throw std::invalid_argument("missing edge length");
    return it->second;
  }
};
using MetricColoredTree = MetricTree;
using MetricRibbonTree = MetricTree;

namespace detail {

/// Root path of a vertex as a list of edge (child-vertex) ids.
inline std::vector<int> root_path(const RibbonTree& t, int v) {
  std::vector<int> path;
  while (v != t.root) {
    path.push_back(v);
    v = find_parent(t, v);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace detail

/// Distance from the root along lambda; +inf if the path crosses an +inf edge.
inline ExtLen root_distance(const MetricTree& mt, int v) {
  ExtLen d = ExtLen::finite(0.0);
  for (int e : detail::root_path(mt.tree, v)) d = d + mt.len(e);
  return d;
}

// ---------------------------------------------------------------------------
// Relation system
// ---------------------------------------------------------------------------

/// Reduced integer linear system cutting out the admissibility cone: the
/// colored vertices of a stable colored tree are equidistant from the root,
/// which imposes k - 1 independent relations on the edge lengths.
struct RelationSystem {
  std::vector<int> variables;                      ///< edge (child-vertex) ids
  std::vector<std::vector<long long>> equations;   ///< reduced independent rows

  int rank() const { return static_cast<int>(equations.size()); }

  /// Evaluate the system on finite lengths (absolute tolerance per row).
  bool satisfied(const std::map<int, ExtLen>& lambda, double tol = kAdmissibilityTol) const {
    for (const auto& row : equations) {
      double acc = 0.0;
      for (size_t j = 0; j < row.size(); ++j) {
        if (row[j] == 0) continue;
        auto it = lambda.find(variables[j]);
        if (it == lambda.end() || it->second.inf)
          throw std::invalid_argument("RelationSystem::satisfied requires finite lengths");
        acc += static_cast<double>(row[j]) * it->second.value;
      }
      if (std::abs(acc) > tol) return false;
    }
    return true;
  }
};

/// Equidistance relations for a stable colored tree, reduced to rank k - 1
/// by exact rational elimination.
inline RelationSystem relations(const ColoredRibbonTree& tree) {
  RelationSystem sys;
  sys.variables = edge_children(tree);
  std::map<int, size_t> col;
  for (size_t j = 0; j < sys.variables.size(); ++j) col[sys.variables[j]] = j;

  std::vector<int> colored;
  for (const auto& v : tree.vertices)
    if (v.colored) colored.push_back(v.id);

  using Rat = boost::rational<long long>;
  std::vector<std::vector<Rat>> rows;
  for (size_t i = 0; i + 1 < colored.size(); ++i) {
    std::vector<Rat> row(sys.variables.size(), Rat(0));
    for (int e : detail::root_path(tree, colored[i])) row[col[e]] += 1;
    for (int e : detail::root_path(tree, colored[i + 1])) row[col[e]] -= 1;
    rows.push_back(std::move(row));
  }
  // exact Gaussian elimination to reduced row echelon form
  size_t pivot_row = 0;
  for (size_t c = 0; c < sys.variables.size() && pivot_row < rows.size(); ++c) {
    size_t pr = pivot_row;
    while (pr < rows.size() && rows[pr][c] == Rat(0)) ++pr;
    if (pr == rows.size()) continue;
    std::swap(rows[pivot_row], rows[pr]);
    Rat inv = Rat(1) / rows[pivot_row][c];
    for (auto& x : rows[pivot_row]) x *= inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == pivot_row || rows[r][c] == Rat(0)) continue;
      Rat f = rows[r][c];
      for (size_t j = 0; j < rows[r].size(); ++j) rows[r][j] -= f * rows[pivot_row][j];
    }
    ++pivot_row;
  }
  rows.resize(pivot_row);  // drop zero rows
  // clear denominators to integer rows
  for (const auto& row : rows) {
    long long lcm = 1;
    for (const auto& x : row)
      if (x != Rat(0)) lcm = std::lcm(lcm, x.denominator());
    std::vector<long long> irow(row.size());
    for (size_t j = 0; j < row.size(); ++j)
      irow[j] = boost::rational_cast<long long>(row[j] * Rat(lcm));
    sys.equations.push_back(std::move(irow));
  }
  return sys;
}

/// Admissibility: all colored vertices equidistant from the root under
/// extended arithmetic (+inf distances compare equal), lengths defined and
/// non-negative on every edge.
inline bool is_admissible(const MetricColoredTree& mt) {
  for (int e : edge_children(mt.tree)) {
    auto it = mt.lambda.find(e);
    if (it == mt.lambda.end()) return false;
    if (!it->second.inf && it->second.value < 0.0) return false;
  }
  bool have_ref = false;
  ExtLen ref;
  for (const auto& v : mt.tree.vertices) {
    if (!v.colored) continue;
    ExtLen d = root_distance(mt, v.id);
    if (!have_ref) {
      ref = d;
      have_ref = true;
      continue;
    }
    if (ref.inf != d.inf) return false;
    if (!ref.inf && std::abs(ref.value - d.value) > kAdmissibilityTol) return false;
  }
  return true;
}

/// Metric degrees of freedom of the admissibility cone of a fixed colored
/// type: |E(T)| - k + 1.  Note this counts lengths of one tree (including
/// the overall scale direction), not the dimension of the ambient moduli.
inline int cone_dim(const ColoredRibbonTree& tree) {
  return tree.num_edges() - tree.num_colored() + 1;
}

// ---------------------------------------------------------------------------
// Gluing
// ---------------------------------------------------------------------------

/// delta in (0,1) and the associated gluing length R = -log(delta).
struct GluingParameter {
  double delta = 0.0;
  double R = 0.0;

  static GluingParameter from_delta(double delta) {
    if (!(delta > 0.0) || !(delta < 1.0))
      throw std::invalid_argument("gluing parameter delta must lie in (0,1)");
    return GluingParameter{delta, -std::log(delta)};
  }
  static GluingParameter from_R(double R) {
    if (!(R > 0.0)) throw std::invalid_argument("gluing length R must be positive");
    return GluingParameter{std::exp(-R), R};
  }
};

/// Graft `upper` onto leaf `leaf_index` of `lower` with the given length on
/// the new edge, carrying both length maps through canonical renumbering.
inline MetricTree metric_graft(const MetricTree& lower, int leaf_index, const MetricTree& upper,
                               ExtLen new_len) {
  if (leaf_index < 1 || leaf_index > lower.tree.d)
    throw std::invalid_argument("metric_graft: leaf index out of range");
  RibbonTree combined = lower.tree;
  const int shift = combined.num_vertices();
  for (Vertex v : upper.tree.vertices) {
    v.id += shift;
    for (auto& s : v.slots)
      if (!s.is_leaf()) s.child += shift;
    combined.vertices.push_back(std::move(v));
  }
  bool placed = false;
  for (auto& v : combined.vertices) {
    if (v.id >= shift) continue;
    for (auto& s : v.slots)
      if (s.is_leaf() && s.leaf == leaf_index) {
        s = Slot{shift + upper.tree.root, 0};
        placed = true;
      }
  }
  if (!placed) throw std::invalid_argument("metric_graft: leaf not found");
  std::vector<int> old_to_new;
  MetricTree out;
  out.tree = canonical_with_map(combined, old_to_new);
  auto diag = validate(out.tree);
  if (!diag.empty()) throw std::invalid_argument("metric_graft: result not stable: " + diag.front());
  for (const auto& [e, len] : lower.lambda) out.lambda[old_to_new[static_cast<size_t>(e)]] = len;
  for (const auto& [e, len] : upper.lambda)
    out.lambda[old_to_new[static_cast<size_t>(e + shift)]] = len;
  out.lambda[old_to_new[static_cast<size_t>(shift + upper.tree.root)]] = new_len;
  return out;
}

/// Type 1 gluing: graft the unquilted piece r2 into slot i+1 of the quilted
/// piece r1 with normal coordinate nu = R.  No colored vertex lies above the
/// new edge, so the output is admissible for every R > 0.
inline MetricColoredTree glue_type1(const MetricColoredTree& r1, const MetricRibbonTree& r2, int i,
                                    const GluingParameter& g) {
  if (!r1.tree.has_colors() || r2.tree.has_colors())
    throw std::invalid_argument("glue_type1: expects (quilted, unquilted) inputs");
  if (!is_admissible(r1)) throw std::invalid_argument("glue_type1: r1 not admissible");
  MetricTree out = metric_graft(r1, i + 1, r2, ExtLen::finite(g.R));
  if (!is_admissible(out)) throw std::logic_error("glue_type1: output not admissible");
  return out;
}

/// Type 2 gluing: graft the quilted parts r_1..r_k onto the leaves of the
/// unquilted base r0.  The new edge lengths nu_j = R + a_j are determined by
/// equalizing root-to-colored distances, normalized so nu_1 = R.
inline MetricColoredTree glue_type2(const MetricRibbonTree& r0,
                                    const std::vector<MetricColoredTree>& parts,
                                    const GluingParameter& g) {
  const size_t k = parts.size();
  if (r0.tree.has_colors()) throw std::invalid_argument("glue_type2: base must be unquilted");
  if (static_cast<int>(k) != r0.tree.d || k < 1)
    throw std::invalid_argument("glue_type2: need one part per leaf of the base");
  // depth of the attachment vertex of leaf j plus the colored depth of part j
  std::vector<double> total(k);
  for (size_t j = 0; j < k; ++j) {
    if (!parts[j].tree.has_colors() || !is_admissible(parts[j]))
      throw std::invalid_argument("glue_type2: parts must be admissible quilted trees");
    int parent = -1;
    for (const auto& v : r0.tree.vertices)
      for (const auto& s : v.slots)
        if (s.is_leaf() && s.leaf == static_cast<int>(j) + 1) parent = v.id;
    ExtLen depth = root_distance(r0, parent);
    int cv = -1;
    for (const auto& v : parts[j].tree.vertices)
      if (v.colored) cv = v.id;
    ExtLen coldepth = root_distance(parts[j], cv);
    if (depth.inf || coldepth.inf)
      throw std::invalid_argument("glue_type2: inputs must have finite lengths");
    total[j] = depth.value + coldepth.value;
  }
  std::vector<double> nu(k);
  for (size_t j = 0; j < k; ++j) {
    nu[j] = g.R + (total[0] - total[j]);
    if (!(nu[j] > 0.0)) throw std::invalid_argument("gluing length too small");
  }
  // assemble in one step: intermediate single grafts would not be valid
  // colored types (some leaves would see no colored vertex)
  RibbonTree combined = r0.tree;
  std::map<int, ExtLen> lam = r0.lambda;
  const int base_n = combined.num_vertices();
  for (size_t j = 0; j < k; ++j) {
    const int shift = combined.num_vertices();
    for (Vertex v : parts[j].tree.vertices) {
      v.id += shift;
      for (auto& s : v.slots)
        if (!s.is_leaf()) s.child += shift;
      combined.vertices.push_back(std::move(v));
    }
    for (auto& v : combined.vertices) {
      if (v.id >= base_n) continue;  // search base leaves only
      for (auto& s : v.slots)
        if (s.is_leaf() && s.leaf == static_cast<int>(j) + 1)
          s = Slot{shift + parts[j].tree.root, 0};
    }
    for (const auto& [e, len] : parts[j].lambda) lam[e + shift] = len;
    lam[shift + parts[j].tree.root] = ExtLen::finite(nu[j]);
  }
  std::vector<int> old_to_new;
  MetricTree out;
  out.tree = canonical_with_map(combined, old_to_new);
  auto diag = validate(out.tree);
  if (!diag.empty()) throw std::logic_error("glue_type2: output not stable: " + diag.front());
  for (const auto& [e, len] : lam) out.lambda[old_to_new[static_cast<size_t>(e)]] = len;
  if (!is_admissible(out)) throw std::logic_error("glue_type2: output not admissible");
  return out;
}

/// Forget the colored structure at the metric level: bivalent ex-colored
/// vertices are spliced, their incident lengths adding; an edge merging into
/// a semi-infinite edge drops its length.
inline MetricRibbonTree metric_forget_colors(const MetricColoredTree& mt) {
  if (mt.tree.d < 2) throw std::invalid_argument("metric_forget_colors: requires d >= 2");
  MetricTree t{mt.tree, mt.lambda};
  for (auto& v : t.tree.vertices) v.colored = false;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& v : t.tree.vertices) {
      if (v.slots.size() != 1) continue;
      const Slot s = v.slots[0];
      if (v.id == t.tree.root) {
        // splice into the root semi-infinite edge: child edge length dropped
        if (s.is_leaf()) throw std::invalid_argument("metric_forget_colors: degenerate tree");
        t.tree.root = s.child;
        t.lambda.erase(s.child);
      } else if (s.is_leaf()) {
        // splice into the leaf semi-infinite edge: parent edge length dropped
        int parent = detail::find_parent(t.tree, v.id);
        for (auto& ps : t.tree.vertex(parent).slots)
          if (!ps.is_leaf() && ps.child == v.id) ps = s;
        t.lambda.erase(v.id);
      } else {
        // interior splice: incident finite lengths add
        int parent = detail::find_parent(t.tree, v.id);
        for (auto& ps : t.tree.vertex(parent).slots)
          if (!ps.is_leaf() && ps.child == v.id) ps = s;
        ExtLen merged = t.len(v.id) + t.len(s.child);
        t.lambda.erase(v.id);
        t.lambda[s.child] = merged;
      }
      t.tree.vertex(v.id).slots.clear();
      changed = true;
      break;
    }
    if (changed) {
      std::vector<int> old_to_new;
      RibbonTree canon = canonical_with_map(t.tree, old_to_new);
      std::map<int, ExtLen> lam;
      for (const auto& [e, len] : t.lambda) lam[old_to_new[static_cast<size_t>(e)]] = len;
      t.tree = std::move(canon);
      t.lambda = std::move(lam);
    }
  }
  auto diag = validate(t.tree);
  if (!diag.empty()) throw std::logic_error("metric_forget_colors: result not stable: " + diag.front());
  return t;
}

// ---------------------------------------------------------------------------
// Face lattice
// ---------------------------------------------------------------------------

/// Stratification poset of the compactified moduli of quilted disks, graded
/// by stratum_dim.  T' <= T iff T is obtained from T' by contracting a set
/// of edges (legally colored quotient), i.e. T' appears in the closure of
/// the stratum of T; the unique maximum is the top stratum (single colored
/// vertex, dimension d-1).  Edge sets rather than single edges are needed:
/// multi-neck degenerations (Type 2) contract all necks simultaneously,
/// while contracting one neck alone violates the colored-path rule.
struct FaceLattice {
  int d = 0;
  std::vector<ColoredRibbonTree> elements;  ///< canonical enumeration order
  std::vector<int> dims;                    ///< stratum_dim per element
  std::vector<std::pair<int, int>> covers;  ///< (lower, upper): upper covers lower

  std::vector<int> f_vector() const {
    std::vector<int> f(static_cast<size_t>(d), 0);
    for (int dim : dims) ++f[static_cast<size_t>(dim)];
    return f;
  }
  int euler_characteristic() const {
    int chi = 0;
    for (int dim : dims) chi += (dim % 2 == 0) ? 1 : -1;
    return chi;
  }
  int codim1_count() const {
    int n = 0;
    for (int dim : dims) n += (dim == d - 2) ? 1 : 0;
    return n;
  }
};

inline FaceLattice face_lattice(int d) {
  if (d < 1 || d > 8) throw std::invalid_argument("face_lattice: supported range is 1 <= d <= 8");
  FaceLattice L;
  L.d = d;
  L.elements = enumerate_strata(d, true);
  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < L.elements.size(); ++i) {
    L.dims.push_back(stratum_dim(L.elements[i]));
    index[L.elements[i].key()] = static_cast<int>(i);
  }
  // strict order relation: up[i] = all j > i (subset contractions of i)
  const size_t n = L.elements.size();
  std::vector<std::vector<int>> up(n);
  for (size_t i = 0; i < n; ++i) {
    std::vector<int> edges = edge_children(L.elements[i]);
    const size_t m = edges.size();
    std::set<int> above;
    for (std::uint64_t mask = 1; mask < (1ULL << m); ++mask) {
      std::vector<int> subset;
      for (size_t b = 0; b < m; ++b)
        if (mask & (1ULL << b)) subset.push_back(edges[b]);
      try {
        RibbonTree q = contract_edges(L.elements[i], subset);
        above.insert(index.at(q.key()));
      } catch (const std::invalid_argument&) {
        // illegal quotient: not a closure relation
      }
    }
    up[i].assign(above.begin(), above.end());
  }
  // covering relations: strict order minus transitive shortcuts
  for (size_t i = 0; i < n; ++i) {
    std::set<int> shortcut;
    for (int j : up[i])
      for (int l : up[static_cast<size_t>(j)]) shortcut.insert(l);
    for (int j : up[i])
      if (!shortcut.count(j)) L.covers.emplace_back(static_cast<int>(i), j);
  }
  return L;
}

}  // namespace multiquilt
