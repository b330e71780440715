// Seeded properties over random unimodular negative-definite trees of at most
// 20 vertices. Rerun a failure with --seed=N.

#include <random>

#include <gtest/gtest.h>

#include "support/moves.hpp"
#include "support/random_trees.hpp"
#include "support/seed.hpp"
#include "splicetype/splicetype.hpp"

using namespace splicetype;
using namespace splicetype::testing;

namespace {

constexpr int kTrees = 100;

template <typename Generator>
std::vector<PlumbingGraph> sample(std::uint64_t salt, int count, Generator gen) {
  std::mt19937_64 rng(seed() ^ salt);
  std::vector<PlumbingGraph> out;
  for (int i = 0; i < count; ++i) out.push_back(gen(rng, RandomTreeOptions{}));
  return out;
}

const std::vector<PlumbingGraph>& trees() {
  static const auto t = sample(0x7ee5ULL, kTrees, random_unimodular_tree);
  return t;
}

}  // namespace

TEST(Properties, GeneratorProducesUnimodularTrees) {
  for (const auto& g : trees()) {
    EXPECT_LE(g.size(), 20u);
    auto c = certify_zhs(g);
    EXPECT_TRUE(c.negative_definite) << print_graph(g);
    EXPECT_EQ(abs(c.det), 1) << print_graph(g);
  }
}

TEST(Properties, MMatrixPositive) {
  for (const auto& g : trees()) {
    auto m = m_matrix(g);
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j) {
        ASSERT_GT(m(i, j), 0) << print_graph(g);
        ASSERT_EQ(m(i, j), m(j, i)) << print_graph(g);
      }
  }
}

TEST(Properties, DualCyclesAreDual) {
  for (const auto& g : trees()) {
    for (std::size_t v = 0; v < g.size(); ++v) {
      auto dv = dual_cycle(g, g.id(v));
      for (std::size_t u = 0; u < g.size(); ++u)
        ASSERT_EQ(intersect(g, dv, Cycle::basis(g.size(), u)), Rational(u == v ? -1 : 0)) << print_graph(g);
    }
  }
}

TEST(Properties, MovesPreserveDeterminantAndDiagram) {
  std::mt19937_64 rng(seed() ^ 0xb10ULL);
  for (const auto& g : trees()) {
    const BigInt d = abs_det(g);
    const auto diagram = splice_diagram(minimal_model(g)).canonical_form();

    // edge blow-ups leave the diagram of the graph itself unchanged
    if (!g.edges().empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, g.edges().size() - 1);
      auto [a, b] = g.edges()[pick(rng)];
      auto h = blow_up_edge(g, a, b, "blown_e");
      EXPECT_EQ(abs_det(h), d);
      EXPECT_TRUE(certify_zhs(h).is_zhs);
      EXPECT_EQ(splice_diagram(h).canonical_form(), splice_diagram(g).canonical_form()) << print_graph(g);
    }

    // a few blow-ups anywhere, then back down move by move
    PlumbingGraph h = g;
    std::uniform_int_distribution<int> count(1, 3);
    for (int k = count(rng); k > 0; --k) {
      std::uniform_int_distribution<std::size_t> pick(0, h.size() - 1);
      h = blow_up_vertex(h, pick(rng), "blown_" + std::to_string(k));
      EXPECT_EQ(abs_det(h), d);
    }
    std::vector<CalculusMove> moves;
    auto m = minimal_model(h, &moves);
    EXPECT_FALSE(moves.empty());
    PlumbingGraph cur = h;
    for (const auto& mv : moves) {
      cur = apply_move(cur, mv);
      ASSERT_EQ(abs_det(cur), d) << print_graph(g);
    }
    EXPECT_TRUE(certify_zhs(m).is_zhs);
    EXPECT_EQ(splice_diagram(m).canonical_form(), diagram) << print_graph(g);
  }
}

TEST(Properties, EdgeDeterminantsPositive) {
  for (const auto& g : trees()) {
    auto d = splice_diagram(minimal_model(g));
    for (std::size_t v : d.nodes())
      for (std::size_t u : d.neighbors(v))
        if (d.vertex(u).node) EXPECT_GT(edge_determinant(d, v, u), 0) << print_graph(g);
  }
}

// pg with either end-node first, over the 100 trees plus 300 skeleton trees.
// Trees with fewer than two nodes, or that fail the monomial condition, are
// skipped and counted.
TEST(Properties, GenusIndependentOfEndNode) {
  auto pool = trees();
  for (auto& g : sample(0x9e9ULL, 3 * kTrees, random_skeleton_tree)) pool.push_back(std::move(g));

  int compared = 0, few_nodes = 0, not_splice = 0, too_large = 0;
  for (const auto& g : pool) {
    auto m = minimal_model(g);
    auto ends = end_nodes(m);
    if (nodes_of(m).size() < 2) {
      ++few_nodes;
      continue;
    }
    if (!check_monomial_condition(m).satisfied) {
      ++not_splice;
      continue;
    }
    try {
      std::optional<BigInt> first;
      for (auto e : ends) {
        auto gr = geometric_genus_steps(m, m.id(e));
        EXPECT_GE(gr.pg, 0);
        if (first) EXPECT_EQ(gr.pg, *first) << print_graph(m);
        else first = gr.pg;
      }
      EXPECT_EQ(geometric_genus_route2(m), *first) << print_graph(m);
      EXPECT_EQ(casson(m).lambda * 8, Rational(-8 * *first - c_invariant(m))) << print_graph(m);
      ++compared;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InputTooLarge) throw;
      ++too_large;
    }
  }
  std::printf("end-node check: %d compared, %d with < 2 nodes, %d failing the monomial condition, %d too large\n",
              compared, few_nodes, not_splice, too_large);
  EXPECT_GE(compared, 20);
}
