#include <gtest/gtest.h>

#include "linkage/graph.hpp"
#include "reference.hpp"

using namespace linkage;

namespace {

std::vector<std::vector<int>> matrix_of(const EpistaticGraph& g) {
  std::vector<std::vector<int>> m(g.size(), std::vector<int>(g.size(), 0));
  for (const auto& e : g.edges()) m[e.from][e.to] = e.kind == EpistasisKind::strict ? 1 : 2;
  return m;
}

std::set<int> to_set(LocusSet s) {
  std::set<int> out;
  for (auto v : s) out.insert(static_cast<int>(v));
  return out;
}

EpistaticGraph chain_with_cycle() {
  // 0 <-> 1 -> 2 -> 3, 4 isolated, 5 -> 3.
  EpistaticGraph g(6);
  g.add_edge(0, 1, EpistasisKind::strict);
  g.add_edge(1, 0, EpistasisKind::strict);
  g.add_edge(1, 2, EpistasisKind::nonstrict);
  g.add_edge(2, 3, EpistasisKind::strict);
  g.add_edge(5, 3, EpistasisKind::strict);
  return g;
}

}  // namespace

TEST(EpistaticGraph, EdgesAndDegrees) {
  const EpistaticGraph g = chain_with_cycle();
  EXPECT_EQ(g.edge_count(), 5u);
  EXPECT_EQ(g.in_neighbors(3), (LocusSet{2, 5}));
  EXPECT_EQ(g.out_neighbors(1), (LocusSet{0, 2}));
  EXPECT_EQ(g.max_in_degree(), 2u);
  EXPECT_FALSE(g.only_strict());
  EXPECT_EQ(g.kind(1, 2), EpistasisKind::nonstrict);
  EpistaticGraph h(3);
  EXPECT_THROW(h.add_edge(1, 1, EpistasisKind::strict), InvalidArgument);
  EXPECT_THROW(h.add_edge(0, 3, EpistasisKind::strict), InvalidArgument);
  h.add_edge(0, 1, EpistasisKind::none);
  EXPECT_EQ(h.edge_count(), 0u);
}

TEST(EpistaticGraph, BuildMatchesReference) {
  for (const auto& f : {ctrap(2), cniah(2), leading_ones(6), leading_traps(2), cyctrap(3), abac_problem()}) {
    EXPECT_EQ(matrix_of(build_eg(Landscape(f))), ref::eg(f)) << f.name();
  }
}

TEST(EpistaticGraph, BenchmarkShapes) {
  const EpistaticGraph om = build_eg(Landscape(onemax(8)));
  EXPECT_EQ(om.edge_count(), 0u);
  const EpistaticGraph ct = build_eg(Landscape(ctrap(3)));
  EXPECT_EQ(ct.edge_count(), 3u * 12u);
  EXPECT_TRUE(ct.only_strict());
  const EpistaticGraph cn = build_eg(Landscape(cniah(3)));
  EXPECT_EQ(cn.edge_count(), 3u * 12u);
  for (const auto& e : cn.edges()) EXPECT_EQ(e.kind, EpistasisKind::nonstrict);
  const EpistaticGraph lo = build_eg(Landscape(leading_ones(6)));
  for (Locus u = 0; u < 6; ++u) {
    for (Locus v = 0; v < 6; ++v) {
      if (u != v) {
        EXPECT_EQ(lo.has_edge(u, v), u < v) << u << "->" << v;
      }
    }
  }
}

TEST(InSets, IteratedAndClosure) {
  const EpistaticGraph g = chain_with_cycle();
  EXPECT_EQ(in_set(g, LocusSet{3}), (LocusSet{2, 5}));
  EXPECT_EQ(in_set(g, 3, 2), (LocusSet{1}));
  EXPECT_EQ(in_set(g, 3, 0), (LocusSet{3}));
  EXPECT_EQ(in_closure(g, 3), (LocusSet{0, 1, 2, 3, 5}));
  EXPECT_EQ(in_closure(g, 4), (LocusSet{4}));
  EXPECT_THROW(in_closure(g, 6), InvalidArgument);
  const auto m = matrix_of(g);
  for (Locus v = 0; v < 6; ++v) EXPECT_EQ(to_set(in_closure(g, v)), ref::in_closure(m, static_cast<int>(v)));
}

TEST(Condensation, ComponentsAndEdges) {
  const EpistaticGraph g = chain_with_cycle();
  const ComponentGraph cg = condense(g);
  ASSERT_EQ(cg.size(), 5u);
  EXPECT_EQ(cg.components[0], (LocusSet{0, 1}));
  EXPECT_EQ(cg.components[1], (LocusSet{2}));
  EXPECT_EQ(cg.component_of[1], 0u);
  EXPECT_TRUE(cg.has_edge(0, 1));
  EXPECT_FALSE(cg.has_edge(1, 0));
  EXPECT_EQ(cg.max_component_size(), 2u);
  std::set<std::set<int>> mine;
  for (const auto& c : cg.components) mine.insert(to_set(c));
  EXPECT_EQ(mine, ref::sccs(matrix_of(g)));
}

TEST(Condensation, BenchmarksMatchReference) {
  for (const auto& f : {ctrap(2), cyctrap(4), leading_traps(2), leading_ones(5)}) {
    const EpistaticGraph g = build_eg(Landscape(f));
    std::set<std::set<int>> mine;
    for (const auto& c : condense(g).components) mine.insert(to_set(c));
    EXPECT_EQ(mine, ref::sccs(ref::eg(f))) << f.name();
  }
}

TEST(TopologicalPartition, SmallestLocusFirstAmongReady) {
  const EpistaticGraph g = chain_with_cycle();
  const OrderedPartition d = topological_partition(g);
  EXPECT_EQ(d.to_string(), "({0,1},{2},{4},{5},{3})");
  EXPECT_EQ(topological_partition(build_eg(Landscape(ctrap(2)))).to_string(), "({0,1,2,3},{4,5,6,7})");
  EXPECT_EQ(topological_partition(build_eg(Landscape(leading_ones(4)))).to_string(), "({0},{1},{2},{3})");
  EXPECT_EQ(topological_partition(build_eg(Landscape(cyctrap(4)))).to_string(), "({0,3,6,9},{1,2},{4,5},{7,8},{10,11})");
}

TEST(TopologicalPartition, RespectsEveryEdge) {
  for (const auto& f : {leading_traps(2), cniah(2), abac_problem(), ctrap(2).with_permutation({7, 6, 5, 4, 3, 2, 1, 0})}) {
    const EpistaticGraph g = build_eg(Landscape(f));
    const OrderedPartition d = topological_partition(g);
    std::vector<std::size_t> block_of(g.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
      for (Locus v : d[i]) block_of[v] = i;
    }
    for (const auto& e : g.edges()) EXPECT_LE(block_of[e.from], block_of[e.to]) << f.name();
  }
}

TEST(OrderedPartition, Validation) {
  EXPECT_THROW(OrderedPartition({LocusSet{0}, LocusSet{0, 1}}, 2), InvalidArgument);
  EXPECT_THROW(OrderedPartition({LocusSet{0}}, 2), InvalidArgument);
  EXPECT_THROW(OrderedPartition({LocusSet{0, 1}, LocusSet{}}, 2), InvalidArgument);
  EXPECT_NO_THROW(OrderedPartition({LocusSet{1}, LocusSet{0}}, 2));
}

TEST(Difficulty, Benchmarks) {
  EXPECT_EQ(decomposition_difficulty(build_eg(Landscape(onemax(6)))), 1u);
  EXPECT_EQ(decomposition_difficulty(build_eg(Landscape(ctrap(3)))), 4u);
  EXPECT_EQ(decomposition_difficulty(build_eg(Landscape(leading_ones(6)))), 6u);
  const Difficulty d = difficulty(chain_with_cycle());
  EXPECT_EQ(d.max_scc, 2u);
  EXPECT_EQ(d.max_in_degree, 2u);
  EXPECT_EQ(d.value(), 3u);
}

TEST(MaxEpistasisOrder, Benchmarks) {
  EXPECT_EQ(max_epistasis_order(Landscape(onemax(5)), 4).order, 0u);
  const EpistasisOrder trap = max_epistasis_order(Landscape(ctrap(1)), 3);
  EXPECT_EQ(trap.order, 3u);
  EXPECT_FALSE(trap.saturated);
  const EpistasisOrder capped = max_epistasis_order(Landscape(ctrap(2)), 2);
  EXPECT_EQ(capped.order, 2u);
  EXPECT_TRUE(capped.saturated);
  EXPECT_EQ(max_epistasis_order(Landscape(onemax_prime_concat({3})), 2).order, 2u);
}

TEST(Export, DotAndJson) {
  const EpistaticGraph g = chain_with_cycle();
  const std::string dot = to_dot(g);
  EXPECT_NE(dot.find("digraph"), std::string::npos);
  EXPECT_NE(dot.find("1 -> 2 [style=dashed]"), std::string::npos);
  EXPECT_NE(dot.find("0 -> 1 [style=solid]"), std::string::npos);
  const nlohmann::json j = to_json(g);
  EXPECT_EQ(j["vertices"], 6);
  EXPECT_EQ(j["adjacency"]["1"].size(), 2u);
}
