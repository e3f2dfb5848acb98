#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "qwsearch/errors.hpp"
#include "qwsearch/graph.hpp"
#include "support/oracles.hpp"

using qws::Graph;

namespace {

long long degree_sum(const Graph& g) {
  const auto d = g.degrees();
  return std::accumulate(d.begin(), d.end(), 0LL);
}

std::vector<Graph> family_instances() {
  return {Graph::johnson(3, 1),        Graph::johnson(4, 2),    Graph::johnson(5, 2),
          Graph::johnson(7, 3),        Graph::rook(1, 4),       Graph::rook(2, 2),
          Graph::rook(3, 4),           Graph::complete_square(2), Graph::complete_square(5),
          Graph::complete_bipartite(1, 8), Graph::complete_bipartite(3, 7), Graph::complete(6)};
}

}  // namespace

TEST(Johnson, SmallCases) {
  const Graph k3 = Graph::johnson(3, 1);
  EXPECT_EQ(k3.size(), 3);
  EXPECT_EQ(k3.edges().size(), 3u);

  const Graph j42 = Graph::johnson(4, 2);
  EXPECT_EQ(j42.size(), 6);
  EXPECT_EQ(j42.regular_degree(), 4);
  EXPECT_EQ(j42.labels().front(), "{1,2}");
  EXPECT_EQ(j42.labels().back(), "{3,4}");

  const Graph j52 = Graph::johnson(5, 2);
  EXPECT_EQ(j52.size(), 10);
  EXPECT_EQ(j52.regular_degree(), 6);
}

TEST(Johnson, MatchesBitmaskEnumeration) {
  for (auto [n, k] : std::vector<std::pair<int, int>>{{4, 2}, {5, 2}, {6, 3}, {7, 2}, {8, 3}}) {
    const auto [size, edges] = oracle::johnson_bitmask(n, k);
    const Graph g = Graph::johnson(n, k);
    ASSERT_EQ(g.size(), size);
    std::vector<qws::Edge> expected(edges.begin(), edges.end());
    EXPECT_EQ(g.edges(), expected) << n << "," << k;
    EXPECT_EQ(g.regular_degree(), k * (n - k));
  }
}

TEST(Johnson, RejectsBadParameters) {
  EXPECT_THROW(Graph::johnson(4, 0), qws::ValidationError);
  EXPECT_THROW(Graph::johnson(4, 4), qws::ValidationError);
  EXPECT_THROW(Graph::johnson(40, 20), qws::ValidationError);
}

TEST(Rook, Shapes) {
  const Graph k4 = Graph::rook(1, 4);
  EXPECT_EQ(k4.edges().size(), 6u);
  const Graph c4 = Graph::rook(2, 2);
  EXPECT_EQ(c4.regular_degree(), 2);
  EXPECT_EQ(c4.edges(), (std::vector<qws::Edge>{{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
  const Graph r34 = Graph::rook(3, 4);
  EXPECT_EQ(r34.size(), 12);
  EXPECT_EQ(r34.regular_degree(), 5);
  EXPECT_THROW(Graph::rook(1, 1), qws::ValidationError);
  EXPECT_THROW(Graph::rook(0, 3), qws::ValidationError);
}

TEST(CompleteSquare, Shapes) {
  const Graph g2 = Graph::complete_square(2);
  EXPECT_EQ(g2.size(), 8);
  EXPECT_EQ(g2.regular_degree(), 3);
  const Graph g4 = Graph::complete_square(4);
  EXPECT_EQ(g4.size(), 16);
  EXPECT_EQ(g4.regular_degree(), 5);
  EXPECT_THROW(Graph::complete_square(1), qws::ValidationError);
}

TEST(CompleteBipartite, Shapes) {
  const Graph star = Graph::complete_bipartite(1, 8);
  EXPECT_EQ(star.size(), 9);
  EXPECT_EQ(star.degrees().front(), 8);
  ASSERT_TRUE(star.bipartition());
  EXPECT_EQ(star.bipartition()->first.size(), 1u);
  EXPECT_EQ(star.bipartition()->second.size(), 8u);

  const Graph c4 = Graph::complete_bipartite(2, 2);
  EXPECT_EQ(c4.regular_degree(), 2);
  EXPECT_EQ(c4.edges().size(), 4u);

  const Graph g = Graph::complete_bipartite(3, 7);
  EXPECT_EQ(g.size(), 10);
  EXPECT_EQ(g.edges().size(), 21u);
  EXPECT_THROW(Graph::complete_bipartite(0, 2), qws::ValidationError);
}

TEST(EdgeList, ParsesAndValidates) {
  const Graph k2 = Graph::from_edge_list("N 2\n0 1\n");
  EXPECT_EQ(k2.size(), 2);
  EXPECT_EQ(k2.family().kind, qws::Family::custom);
  const Graph k3 = Graph::from_edge_list("# triangle\nN 3\n0 1\n1 2   # comment\n0 2\n");
  EXPECT_EQ(k3.edges().size(), 3u);

  EXPECT_THROW(Graph::from_edge_list("N 4\n0 1\n2 3\n"), qws::ValidationError);  // disconnected
  EXPECT_THROW(Graph::from_edge_list("N 2\n0 0\n"), qws::ValidationError);       // loop
  EXPECT_THROW(Graph::from_edge_list("N 2\n0 1\n1 0\n"), qws::ValidationError);  // duplicate
  EXPECT_THROW(Graph::from_edge_list("N 2\n0 5\n"), qws::ValidationError);
  EXPECT_THROW(Graph::from_edge_list("0 1\n"), qws::ValidationError);
  EXPECT_THROW(Graph::from_edge_list("N 2\n0 x\n"), qws::ValidationError);
  EXPECT_THROW(Graph::from_edge_list(""), qws::ValidationError);
}

TEST(EdgeList, RoundTripsEveryFamily) {
  for (const Graph& g : family_instances()) {
    const Graph back = Graph::from_edge_list(g.to_edge_list());
    EXPECT_EQ(back.size(), g.size()) << g.family().describe();
    EXPECT_EQ(back.edges(), g.edges()) << g.family().describe();
  }
}

TEST(Matrices, SmallExamples) {
  const Graph k2 = Graph::complete(2);
  Eigen::Matrix2d l;
  l << 1, -1, -1, 1;
  EXPECT_EQ(k2.laplacian(), Eigen::MatrixXd(l));
  Eigen::Matrix2d a;
  a << 0, 1, 1, 0;
  EXPECT_EQ(k2.adjacency(), Eigen::MatrixXd(a));

  const auto lc4 = Graph::rook(2, 2).laplacian();
  EXPECT_EQ(lc4.diagonal(), Eigen::VectorXd::Constant(4, 2.0));
  EXPECT_EQ(lc4(0, 1), -1.0);
  EXPECT_EQ(lc4(0, 3), 0.0);

  const auto star = Graph::complete_bipartite(1, 2).adjacency();
  EXPECT_EQ(star.row(1).sum(), 1.0);
  EXPECT_EQ(star.row(0).sum(), 2.0);

  EXPECT_EQ(Graph::johnson(4, 2).laplacian().diagonal(), Eigen::VectorXd::Constant(6, 4.0));
}

TEST(Properties, HandshakeAndClosedFormDegree) {
  for (const Graph& g : family_instances()) {
    EXPECT_EQ(degree_sum(g), 2LL * static_cast<long long>(g.edges().size())) << g.family().describe();
  }
  for (int n = 2; n <= 8; ++n) EXPECT_EQ(Graph::complete_square(n).regular_degree(), n + 1);
  for (int m = 1; m <= 4; ++m)
    for (int n = 2; n <= 5; ++n) EXPECT_EQ(Graph::rook(m, n).regular_degree(), m + n - 2);
}

TEST(Properties, LaplacianIsDegreeMinusAdjacencyOnRandomGraphs) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 9);
    const auto e = oracle::random_connected(n, 0.3, rng);
    const Graph g(n, std::vector<qws::Edge>(e.begin(), e.end()));
    const Eigen::MatrixXd l = g.laplacian();
    const Eigen::MatrixXd a = g.adjacency();
    const auto d = g.degrees();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) ASSERT_EQ(l(i, j), (i == j ? d[i] : 0) - a(i, j));
    EXPECT_LT(l.rowwise().sum().cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_EQ(l, l.transpose());
    EXPECT_EQ(oracle::laplacian_of(n, e), l);
  }
}
