#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "multiquilt/tree_io.hpp"
#include "multiquilt/trees.hpp"

using namespace multiquilt;

namespace {

RibbonTree corolla(int d, bool colored) {
  RibbonTree t;
  t.d = d;
  t.root = 0;
  Vertex v{0, colored, {}};
  for (int i = 1; i <= d; ++i) v.slots.push_back(Slot{-1, i});
  t.vertices.push_back(std::move(v));
  return t;
}

/// The colored tree from the worked example: five colored vertices, eight
/// interior edges lambda_1..lambda_8, six leaves.  Edge ids (= child vertex
/// ids) in lambda order are returned alongside.
struct FigureTree {
  ColoredRibbonTree tree;
  // child vertex id of the edge carrying lambda_i, i = 1..8
  std::array<int, 8> edge{};
};

FigureTree figure_tree() {
  // ids: 0 = root (uncolored), 1 = a (uncolored), 2 = b (uncolored),
  // 3,4,5 = colored children of b, 6 = uncolored 2-leaf vertex under 3,
  // 7 = colored child of a, 8 = colored child of root.
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

/// Independent oracle: planar binary trees with d leaves (all internal
/// vertices 2 slots), generated directly.
int count_binary(int d) {
  if (d == 1) return 1;
  int n = 0;
  for (int l = 1; l < d; ++l) n += count_binary(l) * count_binary(d - l);
  return n;
}

void gen_binary(int d, std::vector<RibbonTree>& out) {
  if (d == 1) {
    RibbonTree t;
    t.d = 1;
    t.root = 0;
    t.vertices = {Vertex{0, false, {Slot{-1, 1}}}};
    out.push_back(t);
    return;
  }
  std::vector<RibbonTree> ls, rs;
  for (int l = 1; l < d; ++l) {
    ls.clear();
    rs.clear();
    gen_binary(l, ls);
    gen_binary(d - l, rs);
    for (const auto& a : ls)
      for (const auto& b : rs) {
        RibbonTree t;
        t.root = 0;
        t.vertices.push_back(Vertex{0, false, {}});
        auto attach = [&](const RibbonTree& sub) {
          if (sub.d == 1 && sub.num_vertices() == 1) {
            t.vertex(0).slots.push_back(Slot{-1, 0});
            return;
          }
          int shift = t.num_vertices();
          t.vertex(0).slots.push_back(Slot{shift + sub.root, 0});
          for (Vertex v : sub.vertices) {
            v.id += shift;
            for (auto& s : v.slots)
              if (!s.is_leaf()) s.child += shift;
            // leaves of a d=1 "tree" are placeholders; drop them
            if (sub.d == 1) v.slots.clear();
            t.vertices.push_back(std::move(v));
          }
        };
        // encode leaves directly: a 1-leaf subtree is just a leaf slot
        if (a.d == 1)
          t.vertex(0).slots.push_back(Slot{-1, 0});
        else
          attach(a);
        if (b.d == 1)
          t.vertex(0).slots.push_back(Slot{-1, 0});
        else
          attach(b);
        out.push_back(canonical(t));
      }
  }
}

}  // namespace

TEST_CASE("validate accepts and rejects the basic examples") {
  CHECK(validate(corolla(2, true)).empty());   // colored, valency 3 >= 2
  CHECK(validate(corolla(2, false)).empty());  // uncolored, valency 3
  CHECK_FALSE(validate(corolla(1, false)).empty());  // valency 2 < 3
  CHECK(validate(corolla(1, true)).empty());         // basic piece, d = 1

  auto fig = figure_tree();
  CHECK(validate(fig.tree).empty());
  CHECK(fig.tree.num_edges() == 8);
  CHECK(fig.tree.num_colored() == 5);
  CHECK(fig.tree.d == 6);
}

TEST_CASE("validate flags a broken colored-path rule") {
  // colored root with a colored child: the path through that child crosses
  // two colored vertices
  RibbonTree t;
  t.d = 2;
  t.root = 0;
  t.vertices = {Vertex{0, true, {Slot{1, 0}, Slot{-1, 2}}},
                Vertex{1, true, {Slot{-1, 1}}}};
  CHECK_FALSE(validate(t).empty());
}

TEST_CASE("uncolored enumeration matches Schroeder and Catalan oracles") {
  // little Schroeder numbers: planar trees, every vertex >= 2 children
  const std::vector<int> schroeder = {1, 3, 11, 45, 197};  // d = 2..6
  for (int d = 2; d <= 6; ++d) {
    auto all = enumerate_strata(d, false);
    CHECK(static_cast<int>(all.size()) == schroeder[static_cast<size_t>(d - 2)]);
    for (const auto& t : all) CHECK(validate(t).empty());
    // dedup sanity
    std::set<std::vector<int>> keys;
    for (const auto& t : all) keys.insert(t.key());
    CHECK(keys.size() == all.size());
  }
  // dimension-0 types are the planar binary trees (Catalan C_{d-1})
  for (int d = 2; d <= 8; ++d) {
    auto all = enumerate_strata(d, false);
    int dim0 = 0;
    for (const auto& t : all) dim0 += (stratum_dim(t) == 0) ? 1 : 0;
    CHECK(dim0 == count_binary(d));
    if (d <= 6) {
      std::vector<RibbonTree> bins;
      gen_binary(d, bins);
      std::set<std::vector<int>> keys;
      for (const auto& b : bins) keys.insert(canonical(b).key());
      CHECK(static_cast<int>(keys.size()) == count_binary(d));
      // every brute-force binary tree appears in the enumeration
      std::set<std::vector<int>> enum_keys;
      for (const auto& t : all) enum_keys.insert(t.key());
      for (const auto& k : keys) CHECK(enum_keys.count(k) == 1);
    }
  }
}

TEST_CASE("colored enumeration: small counts and validity") {
  CHECK(enumerate_strata(1, true).size() == 1);  // the basic piece
  CHECK(enumerate_strata(2, true).size() == 3);  // interval: 2 endpoints + cell
  for (int d = 1; d <= 6; ++d) {
    auto all = enumerate_strata(d, true);
    for (const auto& t : all) {
      CHECK(validate(t).empty());
      CHECK(t.num_colored() >= 1);
    }
    // unique top-dimensional type: the single colored vertex
    int top = 0;
    for (const auto& t : all) top += (stratum_dim(t) == d - 1) ? 1 : 0;
    CHECK(top == 1);
  }
}

TEST_CASE("codim-1 strata counts match the direct label census") {
  for (int d = 2; d <= 6; ++d) {
    // direct label enumeration, independent of trees
    int type1 = 0;
    for (int i = 0; i <= d; ++i)
      for (int e = 2; i + e <= d; ++e) ++type1;
    CHECK(type1 == d * (d - 1) / 2);
    int type2 = 0;  // compositions of d into r >= 2 parts
    std::function<void(int, int)> comps = [&](int rem, int parts) {
      if (rem == 0) {
        if (parts >= 2) ++type2;
        return;
      }
      for (int first = 1; first <= rem; ++first) comps(rem - first, parts + 1);
    };
    comps(d, 0);
    CHECK(type2 == (1 << (d - 1)) - 1);

    auto all = enumerate_strata(d, true);
    std::set<FacetLabel> labels;
    int codim1_by_dim = 0;
    for (const auto& t : all) {
      auto lab = facet_label(t);
      bool is_codim1 = (stratum_dim(t) == d - 2);
      CHECK((lab.kind != FacetLabel::Kind::NotCodimOne) == is_codim1);
      if (lab.kind != FacetLabel::Kind::NotCodimOne) labels.insert(lab);
      codim1_by_dim += is_codim1 ? 1 : 0;
    }
    CHECK(codim1_by_dim == d * (d - 1) / 2 + (1 << (d - 1)) - 1);
    CHECK(static_cast<int>(labels.size()) == codim1_by_dim);
  }
}

TEST_CASE("facet_label examples") {
  // d=3 Type1(2,1): colored root with leaf, then child with leaves 2,3
  RibbonTree t1;
  t1.d = 3;
  t1.root = 0;
  t1.vertices = {Vertex{0, true, {Slot{-1, 1}, Slot{1, 0}}},
                 Vertex{1, false, {Slot{-1, 2}, Slot{-1, 3}}}};
  CHECK(facet_label(t1) == type1_label(2, 1));

  // d=3 Type2(1,1,1)
  RibbonTree t2;
  t2.d = 3;
  t2.root = 0;
  t2.vertices = {Vertex{0, false, {Slot{1, 0}, Slot{2, 0}, Slot{3, 0}}},
                 Vertex{1, true, {Slot{-1, 1}}}, Vertex{2, true, {Slot{-1, 2}}},
                 Vertex{3, true, {Slot{-1, 3}}}};
  CHECK(facet_label(t2) == type2_label({1, 1, 1}));

  CHECK(facet_label(corolla(3, true)).kind == FacetLabel::Kind::NotCodimOne);
}

TEST_CASE("cut_edge / graft round-trip over all edges, d <= 5") {
  for (int d = 2; d <= 5; ++d)
    for (bool colored : {false, true})
      for (const auto& t : enumerate_strata(d, colored))
        for (int e : edge_children(t)) {
          auto cut = cut_edge(t, e);
          CHECK(validate(cut.upper).empty());
          CHECK(cut.lower.d + cut.upper.d == d + 1);
          RibbonTree back = graft(cut.lower, cut.i + 1, cut.upper);
          CHECK(back == t);
        }
}

TEST_CASE("cut_edge Type 1 example: two-vertex colored tree") {
  // d=3, e=2, i=1
  RibbonTree t;
  t.d = 3;
  t.root = 0;
  t.vertices = {Vertex{0, true, {Slot{-1, 1}, Slot{1, 0}}},
                Vertex{1, false, {Slot{-1, 2}, Slot{-1, 3}}}};
  auto cut = cut_edge(t, 1);
  CHECK(cut.i == 1);
  CHECK(cut.e == 2);
  CHECK(cut.lower == canonical(corolla(2, true)));  // quilted, d - e + 1 = 2
  CHECK(cut.upper == canonical(corolla(2, false)));  // unquilted, e = 2
}

TEST_CASE("contract_edge merges vertices and raises dimension by one") {
  // binary 3-leaf tree -> 4-valent corolla
  RibbonTree t;
  t.d = 3;
  t.root = 0;
  t.vertices = {Vertex{0, false, {Slot{1, 0}, Slot{-1, 3}}},
                Vertex{1, false, {Slot{-1, 1}, Slot{-1, 2}}}};
  CHECK(contract_edge(t, 1) == canonical(corolla(3, false)));

  auto fig = figure_tree();
  RibbonTree c = contract_edge(fig.tree, fig.edge[0]);  // lambda_1 edge
  CHECK(c.num_edges() == 7);
  CHECK(stratum_dim(c) == stratum_dim(fig.tree) + 1);

  for (int d = 2; d <= 5; ++d)
    for (bool colored : {false, true})
      for (const auto& t2 : enumerate_strata(d, colored))
        for (int e : edge_children(t2)) {
          try {
            RibbonTree c2 = contract_edge(t2, e);
            CHECK(validate(c2).empty());
            CHECK(stratum_dim(c2) == stratum_dim(t2) + 1);
          } catch (const std::invalid_argument&) {
            // illegal coloring: allowed outcome
          }
        }
}

TEST_CASE("contracting every edge of an uncolored tree yields the corolla") {
  for (const auto& t0 : enumerate_strata(4, false)) {
    RibbonTree t = t0;
    while (t.num_edges() > 0) t = contract_edge(t, edge_children(t).front());
    CHECK(t == canonical(corolla(4, false)));
  }
}

TEST_CASE("stratum_dim formulas") {
  for (int d = 1; d <= 6; ++d) CHECK(stratum_dim(corolla(d, true)) == d - 1);
  for (int d = 2; d <= 6; ++d) CHECK(stratum_dim(corolla(d, false)) == d - 2);
  auto fig = figure_tree();
  // 4 uncolored vertices of valencies 3,3,4,3 and 5 colored of valency 2
  CHECK(stratum_dim(fig.tree) == (0 + 0 + 1 + 0) + 0);
}

TEST_CASE("forget_colors stabilizes") {
  CHECK(forget_colors(corolla(3, true)) == canonical(corolla(3, false)));

  // Type2(1,1) for d=2 -> single 3-valent vertex
  RibbonTree t;
  t.d = 2;
  t.root = 0;
  t.vertices = {Vertex{0, false, {Slot{1, 0}, Slot{2, 0}}},
                Vertex{1, true, {Slot{-1, 1}}}, Vertex{2, true, {Slot{-1, 2}}}};
  CHECK(forget_colors(t) == canonical(corolla(2, false)));

  auto fig = figure_tree();
  RibbonTree f = forget_colors(fig.tree);
  CHECK(validate(f).empty());
  CHECK(f.d == 6);
  // the four 1-leaf colored vertices splice away; edge lambda_8 merges with
  // lambda_3's into one edge; lambda_7's vertex with the root's
  CHECK(f.num_colored() == 0);

  for (int d = 2; d <= 5; ++d)
    for (const auto& t2 : enumerate_strata(d, true)) {
      RibbonTree f2 = forget_colors(t2);
      CHECK(validate(f2).empty());
      CHECK(f2.d == d);
    }
}

TEST_CASE("forget_colors commutes with cut/graft where defined") {
  for (int d = 3; d <= 5; ++d)
    for (const auto& t : enumerate_strata(d, true))
      for (int e : edge_children(t)) {
        auto cut = cut_edge(t, e);
        if (cut.upper.has_colors() || cut.lower.d < 2) continue;
        // colored part below, plain part above: forgetting colors first and
        // grafting gives the same uncolored type
        RibbonTree lhs = forget_colors(graft(cut.lower, cut.i + 1, cut.upper));
        RibbonTree rhs = graft(forget_colors(cut.lower), cut.i + 1, cut.upper);
        CHECK(lhs == rhs);
      }
}

TEST_CASE("JSON round-trip is bit-stable") {
  auto fig = figure_tree();
  json j = tree_to_json(fig.tree);
  RibbonTree back = tree_from_json(j);
  CHECK(back == fig.tree);
  CHECK(tree_to_json(back).dump() == j.dump());

  for (const auto& t : enumerate_strata(4, true)) {
    json jt = tree_to_json(t);
    CHECK(tree_from_json(jt) == t);
    CHECK(tree_to_json(tree_from_json(jt)).dump() == jt.dump());
  }
}

TEST_CASE("enumerate_strata rejects out-of-range d") {
  CHECK_THROWS_AS(enumerate_strata(0, true), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_strata(1, false), std::invalid_argument);
}
