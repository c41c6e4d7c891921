// Shared test fixtures: small canonical trees and admissible metric
// instances used across suites.
#pragma once

#include <array>

#include "multiquilt/moduli.hpp"
#include "multiquilt/trees.hpp"

namespace fixtures {

using namespace multiquilt;

inline RibbonTree corolla(int d, bool colored) {
  RibbonTree t;
  t.d = d;
  t.root = 0;
  Vertex v{0, colored, {}};
  for (int i = 1; i <= d; ++i) v.slots.push_back(Slot{-1, i});
  t.vertices.push_back(std::move(v));
  return t;
}

/// Worked-example colored tree: five colored vertices, eight interior edges
/// lambda_1..lambda_8, six leaves.  edge[i] is the child vertex id of the
/// edge carrying lambda_{i+1}.
struct FigureTree {
  ColoredRibbonTree tree;
  std::array<int, 8> edge{};
};

inline FigureTree figure_tree() {
  RibbonTree t;
  t.d = 6;
  t.root = 0;
  t.vertices = {
      Vertex{0, false, {Slot{1, 0}, Slot{8, 0}}},
      Vertex{1, false, {Slot{2, 0}, Slot{7, 0}}},
      Vertex{2, false, {Slot{3, 0}, Slot{4, 0}, Slot{5, 0}}},
      Vertex{3, true, {Slot{6, 0}}},
      Vertex{4, true, {Slot{-1, 3}}},
      Vertex{5, true, {Slot{-1, 4}}},
      Vertex{6, false, {Slot{-1, 1}, Slot{-1, 2}}},
      Vertex{7, true, {Slot{-1, 5}}},
      Vertex{8, true, {Slot{-1, 6}}},
  };
  return FigureTree{t, {1, 2, 3, 4, 5, 7, 8, 6}};
}

/// Metric instance of the figure tree with lambda = (l1..l8).
inline MetricColoredTree figure_metric(const std::array<double, 8>& l) {
  auto fig = figure_tree();
  MetricColoredTree mt;
  mt.tree = fig.tree;
  for (int i = 0; i < 8; ++i) mt.lambda[fig.edge[static_cast<size_t>(i)]] = ExtLen::finite(l[static_cast<size_t>(i)]);
  return mt;
}

/// Random admissible instance: random non-negative lengths, then the edge
/// into each colored vertex is adjusted so all colored depths equal a common
/// value (that edge lies on no other colored vertex's root path).
template <typename RngT>
MetricColoredTree random_admissible(const ColoredRibbonTree& tree, RngT& rng) {
  MetricColoredTree mt;
  mt.tree = tree;
  for (int e : edge_children(tree)) mt.lambda[e] = ExtLen::finite(rng.uniform(0.0, 2.0));
  double target = 0.0;
  for (const auto& v : tree.vertices) {
    if (!v.colored || v.id == tree.root) continue;
    int parent = detail::find_parent(tree, v.id);
    target = std::max(target, root_distance(mt, parent).value + 0.1);
  }
  for (const auto& v : tree.vertices) {
    if (!v.colored || v.id == tree.root) continue;
    int parent = detail::find_parent(tree, v.id);
    mt.lambda[v.id] = ExtLen::finite(target - root_distance(mt, parent).value);
  }
  return mt;
}

}  // namespace fixtures
