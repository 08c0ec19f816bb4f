#include <gtest/gtest.h>

#include <random>

#include "flagtrop/subdivision.hpp"

using namespace flagtrop;

namespace {

std::vector<Subset> S(std::initializer_list<const char*> labels) {
  std::vector<Subset> out;
  for (const char* l : labels) out.push_back(parse_subset(l));
  sort_bases(out);
  return out;
}

std::map<Subset, Rational> W(std::initializer_list<std::pair<const char*, long>> w) {
  std::map<Subset, Rational> out;
  for (const auto& [l, x] : w) out[parse_subset(l)] = x;
  return out;
}

std::map<Subset, Rational> random_weights(const FlagMatroid& fm, std::mt19937& rng, int hi) {
  std::uniform_int_distribution<int> d(0, hi);
  std::map<Subset, Rational> w;
  for (Subset b : fm.bases_union()) w[b] = d(rng);
  return w;
}

std::vector<std::set<Point>> cell_point_sets(const Subdivision& s) {
  std::vector<std::set<Point>> out;
  for (const auto& c : s.cells) out.push_back(cell_points(c.flag));
  std::sort(out.begin(), out.end());
  return out;
}

// Adjacency read off the point sets alone: two cells are adjacent when the
// common points span a codimension-one face.
std::set<std::pair<std::size_t, std::size_t>> adjacency_by_points(const Subdivision& s) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < s.cells.size(); ++i)
    for (std::size_t j = i + 1; j < s.cells.size(); ++j) {
      const auto a = cell_points(s.cells[i].flag), b = cell_points(s.cells[j].flag);
      std::vector<Point> common;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
      if (!common.empty() && affine_dim(common) + 1 == s.dim) out.emplace(i, j);
    }
  return out;
}

}  // namespace

TEST(Mixing, WeightsAreBlockwiseSums) {
  const auto hex = FlagMatroid::uniform({1, 2}, 3);
  const auto wc = WeightedConfig::from_flag(hex, W({{"1", 2}, {"23", 5}}));
  const auto labels = product_labels(wc);
  const auto phi = mix_weights(wc);
  ASSERT_EQ(labels.size(), 9u);
  ASSERT_EQ(phi.size(), 9u);
  for (std::size_t i = 0; i < labels.size(); ++i)
    EXPECT_EQ(phi[i], Rational(labels[i][0] == parse_subset("1") ? 2 : 0) + Rational(labels[i][1] == parse_subset("23") ? 5 : 0));
  EXPECT_THROW(wc.blocks[0].weight(parse_subset("12")), std::invalid_argument);
}

TEST(Subdivision, HexagonSplitsIntoTwoCells) {
  const auto hex = FlagMatroid::uniform({1, 2}, 3);
  for (const char* raised : {"1", "23"}) {
    const auto wc = WeightedConfig::from_flag(hex, W({{raised, 1}}));
    const auto s = regular_subdivision(wc);
    ASSERT_EQ(s.cells.size(), 2u);
    EXPECT_EQ(s.cells[0].flag[0].bases(), S({"1", "2", "3"}));
    EXPECT_EQ(s.cells[0].flag[1].bases(), S({"12", "13"}));
    EXPECT_EQ(s.cells[1].flag[0].bases(), S({"2", "3"}));
    EXPECT_EQ(s.cells[1].flag[1].bases(), S({"12", "13", "23"}));
    ASSERT_EQ(s.edges.size(), 1u);
    const auto common = cell_intersection(s.cells[0].flag, s.cells[1].flag);
    ASSERT_TRUE(common);
    EXPECT_EQ((*common)[0].bases(), S({"2", "3"}));
    EXPECT_EQ((*common)[1].bases(), S({"12", "13"}));
    EXPECT_TRUE(is_matroidal(s));
  }
}

TEST(Subdivision, ZeroWeightsGiveOneCell) {
  const auto u = FlagMatroid::uniform({1, 2, 3}, 4);
  const auto s = regular_subdivision(WeightedConfig::zero(u));
  ASSERT_EQ(s.cells.size(), 1u);
  EXPECT_EQ(s.cells[0].flag, u);
  EXPECT_TRUE(s.edges.empty());
}

TEST(Subdivision, PermutahedronRaisedVertexLabel) {
  const auto u = FlagMatroid::uniform({1, 2, 3}, 4);
  const auto wc = WeightedConfig::from_flag(u, W({{"1", 1}}));
  const auto s = regular_subdivision(wc);
  ASSERT_EQ(s.cells.size(), 2u);
  EXPECT_EQ(s.cells[0].bases_union(), S({"1", "2", "3", "4", "12", "13", "14", "123", "124", "134"}));
  EXPECT_EQ(s.cells[1].bases_union(),
            S({"2", "3", "4", "12", "13", "14", "23", "24", "34", "123", "124", "134", "234"}));
  EXPECT_TRUE(is_matroidal(s));
  EXPECT_EQ(s.edges.size(), 1u);
  // the two independent routes agree
  EXPECT_EQ(cell_point_sets(s), lower_hull_cells(wc));
  const auto vc = volume_cover(wc, s);
  EXPECT_EQ(vc.total, 96);
  EXPECT_EQ(vc.cells, 96);
}

TEST(Subdivision, WitnessesRealizeTheirCells) {
  std::mt19937 rng(61);
  const auto hex = FlagMatroid::uniform({1, 2}, 3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto wc = WeightedConfig::from_flag(hex, random_weights(hex, rng, 4));
    for (const auto& c : regular_subdivision(wc).cells) EXPECT_EQ(weighted_face(wc, c.witness), c.flag);
  }
}

TEST(Subdivision, AgreesWithLowerHullOnRandomHexagons) {
  std::mt19937 rng(67);
  const auto hex = FlagMatroid::uniform({1, 2}, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto wc = WeightedConfig::from_flag(hex, random_weights(hex, rng, 3));
    const auto s = regular_subdivision(wc);
    EXPECT_EQ(cell_point_sets(s), lower_hull_cells(wc));
    const auto vc = volume_cover(wc, s);
    EXPECT_EQ(vc.cells, vc.total);
    const std::set<std::pair<std::size_t, std::size_t>> edges(s.edges.begin(), s.edges.end());
    EXPECT_EQ(edges, adjacency_by_points(s));
  }
}

TEST(Subdivision, AgreesWithLowerHullOnSmallerFlags) {
  std::mt19937 rng(71);
  const std::vector<FlagMatroid> flags = {
      FlagMatroid({Matroid::uniform(2, 4)}),
      FlagMatroid::from_nonbases(4, {1, 2, 3}, S({"3", "13", "14", "23", "34", "134"})),
      FlagMatroid::uniform({1, 3}, 4),
  };
  for (const auto& fm : flags)
    for (int trial = 0; trial < 6; ++trial) {
      const auto wc = WeightedConfig::from_flag(fm, random_weights(fm, rng, 2));
      const auto s = regular_subdivision(wc);
      EXPECT_EQ(cell_point_sets(s), lower_hull_cells(wc));
      const auto vc = volume_cover(wc, s);
      EXPECT_EQ(vc.cells, vc.total);
    }
}

TEST(Matroidal, OctahedronTetrahedronIsRejected) {
  // raising 12 and 13 cuts off the tetrahedron 12,13,14,23 whose edge 14-23
  // is not parallel to any e_i - e_j
  const FlagMatroid u24({Matroid::uniform(2, 4)});
  const auto s = regular_subdivision(WeightedConfig::from_flag(u24, W({{"12", 1}, {"13", 1}})));
  ASSERT_EQ(s.cells.size(), 4u);
  EXPECT_FALSE(is_matroidal(s));
  const auto bad = non_matroidal_cell(s);
  ASSERT_TRUE(bad);
  EXPECT_EQ(s.cells[*bad].bases_union(), S({"12", "13", "14", "23"}));
  EXPECT_FALSE(flag_dressian_member(u24, W({{"12", 1}, {"13", 1}})));
  EXPECT_TRUE(flag_dressian_member(u24, W({{"12", 1}, {"34", 1}})));
}

TEST(Matroidal, DressianMembershipMatchesThreeTermRelation) {
  // For a single U(2,4) block the subdivision is matroidal iff the minimum of
  // w12+w34, w13+w24, w14+w23 is attained at least twice.
  const FlagMatroid u24({Matroid::uniform(2, 4)});
  const auto labels = k_subsets(4, 2);
  for (int code = 0; code < 729; ++code) {
    std::map<Subset, Rational> w;
    int c = code;
    for (Subset l : labels) {
      w[l] = c % 3;
      c /= 3;
    }
    auto at = [&](const char* l) { return w[parse_subset(l)]; };
    std::vector<Rational> terms = {at("12") + at("34"), at("13") + at("24"), at("14") + at("23")};
    std::sort(terms.begin(), terms.end());
    ASSERT_EQ(flag_dressian_member(u24, w), terms[0] == terms[1]) << code;
  }
}

TEST(Faces, BraidFunctionalsCoverAllFacesOfPermutahedron) {
  const auto u = FlagMatroid::uniform({1, 2, 3}, 4);
  std::map<std::size_t, int> by_dim;
  for (const auto& f : faces_of(u)) ++by_dim[polytope_dim(f)];
  EXPECT_EQ(by_dim[0], 24);
  EXPECT_EQ(by_dim[1], 36);
  EXPECT_EQ(by_dim[2], 14);
  EXPECT_EQ(by_dim[3], 1);
}

TEST(Graph, SubgraphsAboveFacesAreConnected) {
  std::mt19937 rng(73);
  const auto u = FlagMatroid::uniform({1, 2, 3}, 4);
  int nontrivial = 0;
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    // 0/1 weights on the singletons and triples only; these are often matroidal
    std::map<Subset, Rational> w;
    for (Subset b : u.bases_union())
      if (cardinality(b) != 2 && coin(rng)) w[b] = 1;
    const auto s = regular_subdivision(WeightedConfig::from_flag(u, w));
    if (!is_matroidal(s)) continue;
    EXPECT_TRUE(adjacency_graph(s).connected());
    for (const auto& r : all_faces(s)) {
      const auto g = subgraph_above(s, r);
      EXPECT_FALSE(g.cells.empty());
      EXPECT_TRUE(g.graph.connected());
      if (g.cells.size() > 2) ++nontrivial;
    }
  }
  EXPECT_GT(nontrivial, 0);
}

TEST(Graph, TreeAndConnectivity) {
  EXPECT_TRUE((Graph{3, {{0, 1}, {1, 2}}}).is_tree());
  EXPECT_FALSE((Graph{3, {{0, 1}}}).connected());
  EXPECT_FALSE((Graph{3, {{0, 1}, {1, 2}, {0, 2}}}).is_tree());
  EXPECT_TRUE((Graph{1, {}}).is_tree());
}
