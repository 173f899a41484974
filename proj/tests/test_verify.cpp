#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace sfvs;
using namespace sfvs::testing;

namespace {

// Random S-forest: add vertices in random order while the result stays one.
VertexSet random_sforest(std::mt19937_64& rng, const Instance& inst) {
  std::vector<Vertex> order = inst.graph.vertices().to_vector();
  std::shuffle(order.begin(), order.end(), rng);
  VertexSet z;
  for (Vertex v : order) {
    if (rng() % 4 == 0) continue;
    if (is_s_forest(inst.graph, z | VertexSet{v}, inst.s)) z.insert(v);
  }
  return z;
}

}  // namespace

TEST(BruteForce, Examples) {
  EXPECT_EQ(brute_force_sfvs(unit(complete(4), {0, 1, 2, 3})).weight, 2);
  EXPECT_EQ(brute_force_sfvs(unit(complete(3), {0})).weight, 2);
  EXPECT_EQ(brute_force_sfvs(unit(complete(3), {})).weight, 3);
  EXPECT_EQ(brute_force_fvs(complete(4), {1, 1, 1, 1}).weight, 2);
  EXPECT_EQ(brute_force_fvs(cycle(5), {1, 1, 1, 1, 1}).weight, 4);
  // ties go to the lex-smallest set
  EXPECT_EQ(brute_force_sfvs(unit(cycle(3), {0, 1, 2})).sforest, (VertexSet{0, 1}));
  EXPECT_THROW(brute_force_sfvs(unit(path(25), {})), SizeGuardError);
}

TEST(BruteForce, FvsOracleAgreesWithSForestOracle) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng() % 9);
    Instance inst = random_instance(rng, n, 0.4);
    inst.s = inst.graph.vertices();
    EXPECT_EQ(brute_force_sfvs(inst).weight, brute_force_fvs(inst.graph, inst.weights).weight);
  }
}

TEST(FindScontraction, Examples) {
  // C4 0-1-2-3 with A = {0}: without S every subset is an S-forest
  const Instance inst = unit(Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}), {});
  EXPECT_NO_THROW(find_scontraction(inst, {0}, {0}, {1, 2, 3}));
  const Instance s = unit(inst.graph, {0});
  EXPECT_THROW(find_scontraction(s, {0}, {0}, {1, 2, 3}), InputError);
  EXPECT_THROW(find_scontraction(s, {0}, {1}, {}), InputError);

  // C4 without S: Y's two vertices close a cycle with X's two and must merge
  const Instance c4 = unit(Graph::from_edges(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}), {});
  const auto sc = find_scontraction(c4, {0, 1}, {0, 1}, {2, 3});
  EXPECT_EQ(sc.p_y.size(), 1u);
  EXPECT_TRUE(scontraction_conditions_hold(c4, {0, 1}, {0, 1}, {2, 3}, sc));
  EXPECT_EQ(find_scontraction(c4, {0, 1}, {}, {}).vc.size(), 0u);
}

TEST(FindScontraction, ConditionsHoldOnRandomSForests) {
  std::mt19937_64 rng(52);
  int nonempty = 0;
  for (int t = 0; t < 600; ++t) {
    const int n = 3 + static_cast<int>(rng() % 10);
    Instance inst = random_instance(rng, n, 0.2 + 0.1 * (t % 5));
    const VertexSet a = random_subset(rng, n);
    const VertexSet z = random_sforest(rng, inst);
    const auto sc = find_scontraction(inst, a, z & a, z - a);
    ASSERT_TRUE(scontraction_conditions_hold(inst, a, z & a, z - a, sc));
    nonempty += !sc.vc.empty();
  }
  EXPECT_GT(nonempty, 200);
}

TEST(FindScontraction, RejectsBrokenCandidates) {
  const Instance c4 = unit(Graph::from_edges(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}), {});
  auto sc = find_scontraction(c4, {0, 1}, {0, 1}, {2, 3});
  auto split = sc;
  split.y_blocks = {{2}, {3}};
  EXPECT_FALSE(scontraction_conditions_hold(c4, {0, 1}, {0, 1}, {2, 3}, split));
  auto uncovered = sc;
  uncovered.vc.clear();
  EXPECT_FALSE(scontraction_conditions_hold(c4, {0, 1}, {0, 1}, {2, 3}, uncovered));
}

// For an S-forest Z and a node x, the index read off the cover admits Z ∩ V_x
// as a partial solution and Z ∖ V_x as a complement solution.
TEST(IndexExistence, CoverIndexAdmitsBothSides) {
  std::mt19937_64 rng(53);
  for (int t = 0; t < 500; ++t) {
    const int n = 3 + static_cast<int>(rng() % 9);
    Instance inst = random_instance(rng, n, 0.2 + 0.1 * (t % 5));
    const VertexSet a = random_subset(rng, n);
    const VertexSet z = random_sforest(rng, inst);
    const VertexSet x = z & a, y = z - a;
    const NodeContext ctx = make_context(inst, a);
    const auto sc = find_scontraction(inst, a, x, y);
    const IndexTuple i = index_from_cover(ctx, x, sc);
    ASSERT_LE(i.vc_size(), ctx.vc_bound());
    ASSERT_TRUE(is_partial_solution(ctx, x, i)) << "t=" << t;
    ASSERT_TRUE(is_complement_solution(ctx, y, sc.p_y, i)) << "t=" << t;
  }
}

namespace {

bool contracted_forest(const Instance& inst, const VertexSet& x, const VertexSet& y, const BlockPartition& p) {
  auto blocks = contract_components(inst, x).sets();
  for (auto& b : contract_partial(y, p, inst.s).sets()) blocks.push_back(b);
  const BlockGraph bg = contracted(inst.graph, blocks, {}, ContractMode::full);
  return is_forest(bg.graph, bg.graph.vertices());
}

}  // namespace

// Partial and complement solutions of one index whose contraction is a forest
// combine to an S-forest; partial solutions with equal signatures agree on
// whether that contraction is a forest.
TEST(IndexExistence, PartialAndComplementCombineToSForest) {
  std::mt19937_64 rng(54);
  int combined = 0, paired = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 3 + static_cast<int>(rng() % 5);
    Instance inst = random_instance(rng, n, 0.35 + 0.1 * (t % 3));
    const VertexSet a = random_subset(rng, n);
    const NodeContext ctx = make_context(inst, a);
    if (index_count(ctx) > 5000) continue;
    for (int k = 0; k < 6; ++k) {
      const VertexSet x = random_subset(rng, n) & a, w = random_subset(rng, n) & a, y = random_subset(rng, n) - a;
      const BlockPartition p = connected_components(inst.graph, y - inst.s);
      enumerate_indices(ctx, [&](const IndexTuple& i) {
        if (!is_partial_solution(ctx, x, i) || !is_complement_solution(ctx, y, p, i)) return;
        const bool forest = contracted_forest(inst, x, y, p);
        if (forest) {
          ASSERT_TRUE(is_s_forest(inst.graph, x | y, inst.s)) << "t=" << t;
          ++combined;
        }
        if (is_partial_solution(ctx, w, i) && cc_signature(ctx, x, i) == cc_signature(ctx, w, i)) {
          ASSERT_EQ(forest, contracted_forest(inst, w, y, p)) << "t=" << t;
          ++paired;
        }
      });
    }
  }
  EXPECT_GT(combined, 100);
  EXPECT_GT(paired, 20);
}

TEST(IsComplementSolution, Examples) {
  // 0 ∈ V_x; 1 - 2 outside, 1 ∈ S
  const Instance inst = unit(path(3), {1});
  const NodeContext ctx = make_context(inst, {0});
  IndexTuple i;
  i.x_rest = ctx.in1.class_of({});
  EXPECT_TRUE(is_complement_solution(ctx, {1, 2}, BlockPartition({Block{{2}, false}}), i));
  // x_rest sees the unmatched block {1}
  i.x_rest = ctx.in1.class_of({0});
  EXPECT_FALSE(is_complement_solution(ctx, {1, 2}, BlockPartition({Block{{2}, false}}), i));
  // claims an S vertex of the {1} class that Y lacks
  IndexTuple j;
  j.x_rest = ctx.in1.class_of({});
  j.yvc_s = {ctx.out1.class_of({1})};
  EXPECT_FALSE(is_complement_solution(ctx, {2}, BlockPartition({Block{{2}, false}}), j));
  EXPECT_THROW(is_complement_solution(ctx, {0}, BlockPartition{}, i), InputError);
}

TEST(CheckX2Plus, ExamplesAndRandomForests) {
  // star centre 0 with leaves 1, 2, 3: X = {0} has three neighbors in Y
  const Graph star = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  EXPECT_TRUE(check_x2plus(star, {0}, {1, 2, 3}));
  EXPECT_THROW(check_x2plus(cycle(3), {0}, {1, 2}), InputError);
  EXPECT_THROW(check_x2plus(star, {0}, {0, 1}), InputError);

  std::mt19937_64 rng(55);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng() % 14);
    Instance inst = random_instance(rng, n, 0.3);
    inst.s = inst.graph.vertices();
    const VertexSet z = random_sforest(rng, inst);
    const VertexSet x = random_subset(rng, n) & z;
    ASSERT_TRUE(check_x2plus(inst.graph, x, z - x));
  }
}

TEST(CheckRepresents, Examples) {
  const Instance inst = unit(path(3), {});
  std::vector<PartialSolution> all{{{}, 0}, {{0}, 1}};
  const SolutionTable full(all), lone(std::vector<PartialSolution>{{{0}, 1}}), none;
  EXPECT_TRUE(check_represents(inst, full, full, {1, 2}));
  EXPECT_TRUE(check_represents(inst, full, lone, {1, 2}));
  EXPECT_FALSE(check_represents(inst, full, none, {1, 2}));
  EXPECT_THROW(check_represents(unit(path(14), {}), none, none, from_mask((1u << 13) - 1, 14)), SizeGuardError);
}
