// Quilted surfaces with strip-like ends parametrized by metric (colored)
// trees: strip thickening, seam placement, truncation-and-identification
// gluing, strip attaching, folding, and a skeleton normal form used for
// structural equality of glued surfaces.
#pragma once

#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "moduli.hpp"
#include "trees.hpp"

namespace multiquilt {

enum class Side { Left, Right, Bottom, Top };

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// A strip rectangle patch: s-interval (possibly unbounded on either side)
/// times t in [0,1].
struct SurfRect {
  int id = 0;
  double s_lo = 0.0;
  double s_hi = kInf;
  std::string target = "M";
  bool thin = true;

  double length() const { return s_hi - s_lo; }
  friend bool operator==(const SurfRect&, const SurfRect&) = default;
};

/// A boundary arc of a rectangle: an interval along one side (t-interval for
/// Left/Right sides, s-interval for Bottom/Top).
struct ArcRef {
  int rect = 0;
  Side side = Side::Left;
  double lo = 0.0;
  double hi = 1.0;
  friend bool operator==(const ArcRef&, const ArcRef&) = default;
  friend auto operator<=>(const ArcRef&, const ArcRef&) = default;
};

/// Involutive boundary-arc gluing.  `disk >= 0` tags the half-interval
/// identifications belonging to a vertex disk (in ribbon order); -1 marks
/// neck identifications (truncated ends) and attached-strip seams.
struct Identification {
  ArcRef a, b;
  bool flip = false;  ///< orientation reversal (t -> 1 - t across the arc)
  int disk = -1;
  friend bool operator==(const Identification&, const Identification&) = default;
};

/// Vertex holes are recorded combinatorially, not conformally filled.
struct VertexDisk {
  int id = 0;
  bool colored_cap = false;  ///< a seam branch turns around at this disk
  friend bool operator==(const VertexDisk&, const VertexDisk&) = default;
};

/// Strip-like end zeta_k: the unbounded tail of a rectangle.
struct EndRef {
  int rect = 0;
  bool toward_hi = true;  ///< tail direction: s -> +inf (else s -> -inf)
  friend bool operator==(const EndRef&, const EndRef&) = default;
};

struct SeamSegment {
  int rect = 0;
  double s0 = 0, t0 = 0, s1 = 0, t1 = 0;
  friend bool operator==(const SeamSegment&, const SeamSegment&) = default;
};

/// One seam branch per colored vertex: the lines t = 1/3, 2/3 along the
/// rectangles between the root end and the cap disk, closed by a
/// piecewise-linear cap at the disk.
struct SeamBranch {
  int label = 0;
  int cap_disk = 0;
  std::vector<SeamSegment> segments;
  friend bool operator==(const SeamBranch&, const SeamBranch&) = default;
};

struct QuiltSurface {
  std::vector<SurfRect> rects;
  std::vector<VertexDisk> disks;
  std::vector<Identification> idents;
  std::vector<EndRef> ends;  ///< index k = zeta_k; zeta_0 is the root end
  std::vector<SeamBranch> seams;

  const SurfRect& rect(int id) const { return rects.at(static_cast<size_t>(id)); }
  SurfRect& rect(int id) { return rects.at(static_cast<size_t>(id)); }
  friend bool operator==(const QuiltSurface&, const QuiltSurface&) = default;
};

// ---------------------------------------------------------------------------
// Strip thickening
// ---------------------------------------------------------------------------

namespace detail {

/// Ribbon-ordered incident arcs of a tree vertex, as presented strip sides.
/// parent (or root end) first, then the child slots left to right.
inline std::vector<ArcRef> incident_sides(const RibbonTree& t, int v,
                                          const std::map<int, int>& edge_rect, int end_rect_base) {
  std::vector<ArcRef> inc;
  if (v == t.root)
    inc.push_back(ArcRef{end_rect_base + 0, Side::Left, 0, 1});
  else
    inc.push_back(ArcRef{edge_rect.at(v), Side::Right, 0, 1});
  for (const auto& s : t.vertex(v).slots) {
    if (s.is_leaf())
      inc.push_back(ArcRef{end_rect_base + s.leaf, Side::Left, 0, 1});
    else
      inc.push_back(ArcRef{edge_rect.at(s.child), Side::Left, 0, 1});
  }
  return inc;
}

}  // namespace detail

/// Thicken a metric tree into a quilted surface: one semi-infinite rectangle
/// per end e_0..e_d, one rectangle [0, lambda(e)] x [0,1] per interior edge
/// (s = 0 at the root side), half-interval identifications in ribbon order
/// at every vertex, and one vertex-disk patch per vertex.
inline QuiltSurface surface_from_tree(const MetricTree& mt) {
  const RibbonTree& t = mt.tree;
  QuiltSurface s;
  // end rects 0..d
  for (int k = 0; k <= t.d; ++k) {
    s.rects.push_back(SurfRect{k, 0.0, kInf, "M", true});
    s.ends.push_back(EndRef{k, true});
  }
  // interior edge rects
  std::map<int, int> edge_rect;
  for (int e : edge_children(t)) {
    ExtLen len = mt.len(e);
    if (len.inf)
      throw std::invalid_argument("surface_from_tree: +inf edge length (glue or cut first)");
    int id = static_cast<int>(s.rects.size());
    edge_rect[e] = id;
    s.rects.push_back(SurfRect{id, 0.0, len.value, "M", true});
  }
  // vertex disks and ribbon-order half-interval identifications
  for (const auto& v : t.vertices) {
    int disk = static_cast<int>(s.disks.size());
    s.disks.push_back(VertexDisk{disk, false});
    auto inc = detail::incident_sides(t, v.id, edge_rect, 0);
    const size_t m = inc.size();
    for (size_t i = 0; i < m; ++i) {
      ArcRef a = inc[i];
      ArcRef b = inc[(i + 1) % m];
      a.lo = 0.5;
      a.hi = 1.0;
      b.lo = 0.0;
      b.hi = 0.5;
      s.idents.push_back(Identification{a, b, false, disk});
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Seam derivation
// ---------------------------------------------------------------------------

namespace detail {

/// Adjacency in the rect/disk graph.  Nodes: rect r -> node r; disk k ->
/// node n_rects + k.
inline std::vector<std::vector<int>> surface_graph(const QuiltSurface& s) {
  const int nr = static_cast<int>(s.rects.size());
  std::vector<std::vector<int>> adj(static_cast<size_t>(nr + s.disks.size()));
  auto link = [&](int x, int y) {
    adj[static_cast<size_t>(x)].push_back(y);
    adj[static_cast<size_t>(y)].push_back(x);
  };
  for (const auto& id : s.idents) {
    if (id.disk >= 0) {
      link(id.a.rect, nr + id.disk);
      link(id.b.rect, nr + id.disk);
    } else if (id.a.side == Side::Left || id.a.side == Side::Right) {
      link(id.a.rect, id.b.rect);  // neck
    }
  }
  return adj;
}

inline std::vector<int> bfs_path(const std::vector<std::vector<int>>& adj, int from, int to) {
  std::vector<int> prev(adj.size(), -2);
  std::vector<int> queue{from};
  prev[static_cast<size_t>(from)] = -1;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int x = queue[qi];
    if (x == to) break;
    for (int y : adj[static_cast<size_t>(x)])
      if (prev[static_cast<size_t>(y)] == -2) {
        prev[static_cast<size_t>(y)] = x;
        queue.push_back(y);
      }
  }
  std::vector<int> path;
  for (int x = to; x != -1; x = prev[static_cast<size_t>(x)]) {
    if (x == -2) throw std::logic_error("seam path: disconnected surface");
    path.push_back(x);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace detail

/// (Re)compute the canonical seam branches from the cap-disk tags: for each
/// capped disk, the lines t = 1/3, 2/3 along every rectangle on the path
/// from the root end, closed by a PL cap segment at the disk-facing side.
inline void derive_seams(QuiltSurface& s) {
  s.seams.clear();
  if (s.ends.empty()) return;
  const int nr = static_cast<int>(s.rects.size());
  auto adj = detail::surface_graph(s);
  int label = 0;
  for (const auto& disk : s.disks) {
    if (!disk.colored_cap) continue;
    SeamBranch branch;
    branch.label = label++;
    branch.cap_disk = disk.id;
    auto path = detail::bfs_path(adj, s.ends[0].rect, nr + disk.id);
    int last_rect = -1;
    for (int node : path) {
      if (node >= nr) continue;  // disk crossings carry no segments
      const SurfRect& r = s.rect(node);
      branch.segments.push_back(SeamSegment{node, r.s_lo, 1.0 / 3.0, r.s_hi, 1.0 / 3.0});
      branch.segments.push_back(SeamSegment{node, r.s_lo, 2.0 / 3.0, r.s_hi, 2.0 / 3.0});
      last_rect = node;
    }
    // cap at the side of the last rectangle facing the cap disk
    if (last_rect >= 0) {
      double s_cap = s.rect(last_rect).s_hi;
      for (const auto& id : s.idents)
        if (id.disk == disk.id)
          for (const ArcRef* arc : {&id.a, &id.b})
            if (arc->rect == last_rect)
              s_cap = (arc->side == Side::Left) ? s.rect(last_rect).s_lo : s.rect(last_rect).s_hi;
      branch.segments.push_back(SeamSegment{last_rect, s_cap, 1.0 / 3.0, s_cap, 2.0 / 3.0});
    }
    s.seams.push_back(std::move(branch));
  }
}

/// Strip thickening of an admissible metric colored tree: the underlying
/// rectangle structure of the color-forgetting geometry plus the canonical
/// seam branches, one per colored vertex.
inline QuiltSurface surface_from_colored_tree(const MetricColoredTree& mt) {
  if (!is_admissible(mt)) throw std::invalid_argument("surface_from_colored_tree: not admissible");
  QuiltSurface s = surface_from_tree(mt);
  for (const auto& v : mt.tree.vertices)
    if (v.colored) s.disks[static_cast<size_t>(v.id)].colored_cap = true;
  derive_seams(s);
  return s;
}

// ---------------------------------------------------------------------------
// Truncation gluing
// ---------------------------------------------------------------------------

/// Truncate end `endA` of sA and end `endB` of sB at s = R (end-local) and
/// identify the cut slices with the orientation flip t -> 1 - t.  Ends are
/// relabeled so that the surviving ends of sB replace endA in sA's cyclic
/// leaf order.  Seams are re-derived so that branches entering the glued
/// neck concatenate across it.
inline QuiltSurface truncate_and_identify(const QuiltSurface& sA, int endA, const QuiltSurface& sB,
                                          int endB, double R) {
  if (endA < 0 || endA >= static_cast<int>(sA.ends.size()) || endB < 0 ||
      endB >= static_cast<int>(sB.ends.size()))
    throw std::invalid_argument("truncate_and_identify: no such end");
  if (!(R > 0.0)) throw std::invalid_argument("truncate_and_identify: R must be positive");

  QuiltSurface out = sA;
  const int rect_shift = static_cast<int>(out.rects.size());
  const int disk_shift = static_cast<int>(out.disks.size());
  for (SurfRect r : sB.rects) {
    r.id += rect_shift;
    out.rects.push_back(r);
  }
  for (VertexDisk d : sB.disks) {
    d.id += disk_shift;
    out.disks.push_back(d);
  }
  for (Identification id : sB.idents) {
    id.a.rect += rect_shift;
    id.b.rect += rect_shift;
    if (id.disk >= 0) id.disk += disk_shift;
    out.idents.push_back(id);
  }

  auto truncate = [&](QuiltSurface& s, const EndRef& end) -> Side {
    SurfRect& r = s.rect(end.rect);
    if (end.toward_hi) {
      double cut = (r.s_lo == -kInf) ? R : r.s_lo + R;
      if (r.s_hi != kInf && cut > r.s_hi)
        throw std::invalid_argument("truncate_and_identify: truncation exceeds a finite rectangle");
      r.s_hi = cut;
      return Side::Right;
    }
    double cut = (r.s_hi == kInf) ? -R : r.s_hi - R;
    if (r.s_lo != -kInf && cut < r.s_lo)
      throw std::invalid_argument("truncate_and_identify: truncation exceeds a finite rectangle");
    r.s_lo = cut;
    return Side::Left;
  };
  EndRef ea = sA.ends[static_cast<size_t>(endA)];
  EndRef eb = sB.ends[static_cast<size_t>(endB)];
  eb.rect += rect_shift;
  Side sideA = truncate(out, ea);
  Side sideB = truncate(out, eb);
  out.idents.push_back(
      Identification{ArcRef{ea.rect, sideA, 0, 1}, ArcRef{eb.rect, sideB, 0, 1}, true, -1});

  // end relabeling: sB's surviving ends replace endA in order
  out.ends.clear();
  for (int k = 0; k < endA; ++k) out.ends.push_back(sA.ends[static_cast<size_t>(k)]);
  for (int k = 0; k < static_cast<int>(sB.ends.size()); ++k) {
    if (k == endB) continue;
    EndRef e = sB.ends[static_cast<size_t>(k)];
    e.rect += rect_shift;
    out.ends.push_back(e);
  }
  for (int k = endA + 1; k < static_cast<int>(sA.ends.size()); ++k)
    out.ends.push_back(sA.ends[static_cast<size_t>(k)]);

  derive_seams(out);
  return out;
}

// ---------------------------------------------------------------------------
// Attached strips and folding
// ---------------------------------------------------------------------------

/// True boundary components: rectangle horizontal sides not consumed by any
/// identification, in (rect, side) order.
inline std::vector<ArcRef> boundary_components(const QuiltSurface& s) {
  std::set<std::pair<int, int>> used;
  for (const auto& id : s.idents)
    for (const ArcRef* arc : {&id.a, &id.b})
      used.insert({arc->rect, static_cast<int>(arc->side)});
  std::vector<ArcRef> out;
  for (const auto& r : s.rects)
    for (Side side : {Side::Bottom, Side::Top})
      if (!used.count({r.id, static_cast<int>(side)}))
        out.push_back(ArcRef{r.id, side, r.s_lo, r.s_hi});
  return out;
}

/// Attach n unit-width strips along a true boundary component, with the
/// translation-normalized attaching map (the common boundary point is 0).
/// Attached strips introduce no degrees of freedom: each spans the same
/// s-interval as the component it attaches to.
inline QuiltSurface attach_strips(const QuiltSurface& s, int component, int n) {
  auto comps = boundary_components(s);
  if (component < 0 || component >= static_cast<int>(comps.size()))
    throw std::invalid_argument("attach_strips: no such boundary component");
  const ArcRef base = comps[static_cast<size_t>(component)];
  for (const auto& br : s.seams)
    for (const auto& seg : br.segments)
      if (seg.rect == base.rect && seg.t0 == seg.t1 &&
          ((base.side == Side::Bottom && seg.t0 == 0.0) || (base.side == Side::Top && seg.t0 == 1.0)))
        throw std::invalid_argument("attach_strips: component already consumed by a seam");
  QuiltSurface out = s;
  ArcRef attach_to = base;
  for (int m = 0; m < n; ++m) {
    int id = static_cast<int>(out.rects.size());
    out.rects.push_back(SurfRect{id, base.lo, base.hi, "M" + std::to_string(m + 1), false});
    // new strip's facing side: glue its Bottom when extending past a Top
    // component and vice versa
    Side new_side = (attach_to.side == Side::Top) ? Side::Bottom : Side::Top;
    out.idents.push_back(Identification{attach_to, ArcRef{id, new_side, base.lo, base.hi}, false, -1});
    attach_to = ArcRef{id, (new_side == Side::Bottom) ? Side::Top : Side::Bottom, base.lo, base.hi};
  }
  return out;
}

/// Correspondence between an n-patch quilted strip and a single strip over
/// the n-fold product target.  Factor m (1-based) uses t -> t for odd m and
/// t -> 1 - t for even m, matching the eps(R,t) ~ eps(R,1-t) rule.
struct FoldCorrespondence {
  int n = 1;

  /// patch coordinates (patch m in 1..n, s, t) -> factor-m coordinate (s, t')
  std::pair<double, double> to_factor(int patch, double s, double t) const {
    if (patch < 1 || patch > n) throw std::invalid_argument("fold: no such patch");
    return {s, (patch % 2 == 1) ? t : 1.0 - t};
  }
  /// inverse map; applying the convention twice is the identity
  std::pair<double, double> to_patch(int patch, double s, double t) const {
    return to_factor(patch, s, t);
  }
};

inline FoldCorrespondence fold_quilted_strip(int n) {
  if (n < 1) throw std::invalid_argument("fold_quilted_strip: n >= 1 required");
  return FoldCorrespondence{n};
}

// ---------------------------------------------------------------------------
// Skeleton normal form
// ---------------------------------------------------------------------------

/// Reconstruct the metric colored tree underlying a strip-thickened surface,
/// merging rectangle chains joined by neck identifications into single
/// edges.  Two surfaces built along different gluing routes are equal up to
/// canonical relabeling iff their skeletons coincide.
inline MetricColoredTree skeleton(const QuiltSurface& s) {
  const int nr = static_cast<int>(s.rects.size());
  // union-find over rects joined by necks
  std::vector<int> parent(static_cast<size_t>(nr));
  for (int i = 0; i < nr; ++i) parent[static_cast<size_t>(i)] = i;
  auto find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  for (const auto& id : s.idents)
    if (id.disk < 0 && (id.a.side == Side::Left || id.a.side == Side::Right))
      parent[static_cast<size_t>(find(id.a.rect))] = find(id.b.rect);

  // chain lengths
  std::map<int, double> chain_len;
  std::map<int, bool> chain_infinite;
  for (const auto& r : s.rects) {
    int c = find(r.id);
    if (r.s_lo == -kInf || r.s_hi == kInf)
      chain_infinite[c] = true;
    else
      chain_len[c] += r.length();
  }
  // disk attachment of each (rect, side) consumed by a vertex identification
  std::map<std::pair<int, int>, int> side_disk;
  // successor around a disk: the arc glued below follows the arc glued above
  std::map<std::pair<int, int>, std::pair<int, int>> succ;
  for (const auto& id : s.idents) {
    if (id.disk < 0) continue;
    side_disk[{id.a.rect, static_cast<int>(id.a.side)}] = id.disk;
    side_disk[{id.b.rect, static_cast<int>(id.b.side)}] = id.disk;
    succ[{id.a.rect, static_cast<int>(id.a.side)}] = {id.b.rect, static_cast<int>(id.b.side)};
  }
  // for an edge chain entered at one disk-facing side, the opposite
  // disk-facing side: walk across rects through neck identifications
  std::map<std::pair<int, int>, std::pair<int, int>> across;  // (rect,side) -> other end
  {
    std::map<std::pair<int, int>, std::pair<int, int>> neck;
    for (const auto& id : s.idents)
      if (id.disk < 0 && (id.a.side == Side::Left || id.a.side == Side::Right)) {
        neck[{id.a.rect, static_cast<int>(id.a.side)}] = {id.b.rect, static_cast<int>(id.b.side)};
        neck[{id.b.rect, static_cast<int>(id.b.side)}] = {id.a.rect, static_cast<int>(id.a.side)};
      }
    for (const auto& [key, disk] : side_disk) {
      (void)disk;
      std::pair<int, int> cur = key;
      while (true) {
        // opposite side of the same rect
        Side other = (static_cast<Side>(cur.second) == Side::Left) ? Side::Right : Side::Left;
        cur = {cur.first, static_cast<int>(other)};
        auto it = neck.find(cur);
        if (it == neck.end()) break;
        cur = it->second;
      }
      across[key] = cur;
    }
  }
  // end chains
  std::map<int, int> chain_end;  // chain representative -> end index
  for (size_t k = 0; k < s.ends.size(); ++k) chain_end[find(s.ends[k].rect)] = static_cast<int>(k);

  // build the tree rooted at the disk adjacent to the zeta_0 chain
  if (s.ends.empty()) throw std::invalid_argument("skeleton: surface has no ends");
  MetricColoredTree mt;
  RibbonTree& t = mt.tree;
  std::map<int, int> disk_vertex;
  // find the disk-facing side of the zeta_0 chain
  std::pair<int, int> root_side{-1, -1};
  for (const auto& [key, disk] : side_disk) {
    (void)disk;
    if (find(key.first) == find(s.ends[0].rect)) root_side = key;
  }
  if (root_side.first < 0) throw std::invalid_argument("skeleton: root end not attached to a disk");

  int next_leaf = 0;
  auto build = [&](auto&& self, std::pair<int, int> arrival_side) -> int {
    int disk = side_disk.at(arrival_side);
    int vid = t.num_vertices();
    disk_vertex[disk] = vid;
    t.vertices.push_back(Vertex{vid, s.disks[static_cast<size_t>(disk)].colored_cap, {}});
    std::pair<int, int> cur = succ.at(arrival_side);
    while (cur != arrival_side) {
      int chain = find(cur.first);
      auto ce = chain_end.find(chain);
      if (ce != chain_end.end()) {
        t.vertex(vid).slots.push_back(Slot{-1, ++next_leaf});
        if (ce->second != next_leaf)
          throw std::logic_error("skeleton: end labels out of planar order");
      } else {
        // interior edge: descend through the opposite disk
        size_t slot_index = t.vertex(vid).slots.size();
        t.vertex(vid).slots.push_back(Slot{-2, 0});  // placeholder
        int child = self(self, across.at(cur));
        t.vertex(vid).slots[slot_index] = Slot{child, 0};
        mt.lambda[child] = ExtLen::finite(chain_len.at(chain));
      }
      cur = succ.at(cur);
    }
    return vid;
  };
  t.root = build(build, root_side);
  t.d = next_leaf;
  std::vector<int> old_to_new;
  RibbonTree canon = canonical_with_map(t, old_to_new);
  std::map<int, ExtLen> lam;
  for (const auto& [e, len] : mt.lambda) lam[old_to_new[static_cast<size_t>(e)]] = len;
  mt.tree = std::move(canon);
  mt.lambda = std::move(lam);
  return mt;
}

}  // namespace multiquilt
