#include <gtest/gtest.h>

#include "smm/graph.hpp"
#include "support/instances.hpp"

using namespace smm;

TEST(Graph, AddNodeAssignsDenseIds) {
  LabeledMultigraph g;
  EXPECT_EQ(g.add_node(), 0u);
  const LabelId red = g.node_dict().intern("red");
  const LabelId green = g.node_dict().intern("green");
  EXPECT_EQ(g.add_node({red}), 1u);
  EXPECT_EQ(g.add_node({green}), 2u);
  EXPECT_EQ(g.node_count(), 3u);
}

TEST(Graph, NodeLabelsAreDeduplicated) {
  LabeledMultigraph g;
  const LabelId a = g.node_dict().intern("a");
  const LabelId b = g.node_dict().intern("b");
  g.add_node({b, a, b});
  EXPECT_EQ(g.labels(0), (LabelSet{a, b}));
  EXPECT_EQ(g.node_multiplicity(0), 2u);
}

TEST(Graph, DuplicateEdgeIsNoOp) {
  LabeledMultigraph g;
  g.add_node();
  g.add_node();
  EXPECT_TRUE(g.add_named_edge(0, 1, "a"));
  EXPECT_FALSE(g.add_named_edge(0, 1, "a"));
  EXPECT_FALSE(g.add_named_edge(1, 0, "a"));
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(Graph, UndirectedEdgesAreSymmetric) {
  LabeledMultigraph g;
  g.add_node();
  g.add_node();
  g.add_named_edge(0, 1, "a");
  ASSERT_EQ(g.neighbors(1).size(), 1u);
  EXPECT_EQ(g.neighbors(1)[0], 0u);
  EXPECT_TRUE(g.has_edge(1, 0, 0));
}

TEST(Graph, DirectedEdgesKeepOrientation) {
  LabeledMultigraph g(Directedness::kDirected);
  g.add_node();
  g.add_node();
  g.add_named_edge(0, 1, "a");
  ASSERT_EQ(g.in_neighbors(1).size(), 1u);
  EXPECT_EQ(g.in_neighbors(1)[0], 0u);
  EXPECT_TRUE(g.in_neighbors(0).empty());
  EXPECT_FALSE(g.has_edge(1, 0, 0));
  EXPECT_EQ(g.degree(0), 1u);
  EXPECT_EQ(g.degree(1), 1u);
  EXPECT_EQ(g.out_degree(0), 1u);
  EXPECT_EQ(g.in_degree(0), 0u);
}

TEST(Graph, MultiplicityDoesNotInflateDegree) {
  LabeledMultigraph g;
  g.add_node();
  g.add_node();
  g.add_named_edge(0, 1, "a");
  g.add_named_edge(0, 1, "b");
  EXPECT_EQ(g.degree(0), 1u);
  EXPECT_EQ(g.edge_multiplicity(0, 1), 2u);
  EXPECT_FALSE(g.has_edge(0, 1, g.edge_dict().intern("c")));
}

TEST(Graph, DirectedNeighborsIncludeBothDirectionsOnce) {
  LabeledMultigraph g(Directedness::kDirected);
  for (int i = 0; i < 3; ++i) g.add_node();
  g.add_named_edge(0, 1, "a");
  g.add_named_edge(1, 0, "b");
  g.add_named_edge(2, 0, "a");
  EXPECT_EQ(g.degree(0), 2u);
  EXPECT_EQ(g.out_degree(0), 1u);
  EXPECT_EQ(g.in_degree(0), 2u);
}

TEST(Graph, WorkedQueryDegrees) {
  auto q = fixtures::worked_query();
  auto t = fixtures::worked_target();
  EXPECT_EQ(q.degree(0), 2u);
  EXPECT_EQ(t.degree(0), 3u);
}

TEST(Graph, StarCenterDegree) {
  LabeledMultigraph g;
  for (int i = 0; i < 4; ++i) g.add_node();
  for (NodeId leaf = 1; leaf < 4; ++leaf) g.add_named_edge(0, leaf, "e");
  EXPECT_EQ(g.degree(0), 3u);
}

TEST(Graph, UnknownNodeThrows) {
  LabeledMultigraph g;
  g.add_node();
  EXPECT_THROW(g.add_named_edge(0, 5, "a"), GraphError);
  EXPECT_THROW(g.degree(3), GraphError);
  EXPECT_THROW(g.labels(1), GraphError);
}

TEST(Graph, FrozenGraphRejectsMutation) {
  LabeledMultigraph g;
  g.add_node();
  g.freeze();
  EXPECT_THROW(g.add_node(), GraphError);
}

TEST(Graph, NeighborListsMatchDegreesAfterRandomInsertions) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    auto g = fixtures::random_graph(rng, seed % 2 == 0, 25, 0.3, 3, 2, 3, 3, 0.1);
    std::size_t multiplicity_sum = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
      EXPECT_EQ(g.degree(u), g.neighbors(u).size());
      for (NodeId v = 0; v < g.node_count(); ++v) {
        multiplicity_sum += g.edge_multiplicity(u, v);
        if (!g.directed()) {
          for (const Arc& a : g.arcs_between(u, v)) EXPECT_TRUE(g.has_edge(v, u, a.label));
        }
      }
    }
    // Undirected edges are stored in both directions, except self-loops.
    std::size_t loops = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) loops += g.edge_multiplicity(u, u);
    const std::size_t expected = g.directed() ? g.edge_count() : 2 * g.edge_count() - loops;
    EXPECT_EQ(multiplicity_sum, expected);
    EXPECT_EQ(g.edges().size(), g.edge_count());
  }
}

TEST(Graph, RelabelMapsByName) {
  LabeledMultigraph a;
  a.add_named_node({"x"});
  a.add_named_node({"y"});
  a.add_named_edge(0, 1, "e");
  LabeledMultigraph b;
  b.node_dict().intern("y");
  b.node_dict().intern("x");
  auto r = relabel_into(a, b.node_dict(), b.edge_dict());
  EXPECT_EQ(r.node_dict().name(r.labels(0)[0]), "x");
  EXPECT_TRUE(structurally_equal(a, r));
}
