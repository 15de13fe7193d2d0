#include <gtest/gtest.h>

#include "linkage/ga.hpp"

using namespace linkage;

TEST(Rng, UniformAndBernoulli) {
  Rng rng(42);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = uniform01(rng);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 20000.0, 0.5, 0.01);
  EXPECT_FALSE(bernoulli(rng, 0.0));
  EXPECT_TRUE(bernoulli(rng, 1.0));
}

TEST(Rng, RunSeedsDiffer) {
  EXPECT_EQ(run_seed(1, 5), run_seed(1, 5));
  EXPECT_NE(run_seed(1, 5), run_seed(1, 6));
  EXPECT_NE(run_seed(1, 5), run_seed(2, 5));
}

TEST(GaConfig, Validation) {
  GaConfig c;
  EXPECT_NO_THROW(c.validate());
  c.population = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = GaConfig{};
  c.mutation = 1.5;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = GaConfig{};
  c.crossover = -0.1;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(Ga, SnapshotsPerGenerationAndDeterminism) {
  GaConfig c;
  c.population = 20;
  c.generations = 5;
  c.seed = 3;
  const auto a = run_ga(onemax(16), c);
  const auto b = run_ga(onemax(16), c);
  ASSERT_EQ(a.size(), 6u);
  EXPECT_EQ(a, b);
  for (const auto& pop : a) EXPECT_EQ(pop.size(), 20u);
}

TEST(Ga, SelectionRaisesMeanFitness) {
  GaConfig c;
  c.population = 200;
  c.generations = 10;
  c.seed = 8;
  const FitnessProblem f = onemax(32);
  const auto snaps = run_ga(f, c);
  auto mean = [&](const std::vector<Chromosome>& pop) {
    double s = 0.0;
    for (const auto& x : pop) s += f.evaluate(x).value();
    return s / static_cast<double>(pop.size());
  };
  EXPECT_GT(mean(snaps.back()), mean(snaps.front()) + 4.0);
}

TEST(Ga, NoVariationWithoutOperatorsKeepsOnlyExistingChromosomes) {
  GaConfig c;
  c.population = 30;
  c.generations = 4;
  c.crossover = 0.0;
  c.mutation = 0.0;
  c.seed = 4;
  const auto snaps = run_ga(onemax(10), c);
  for (std::size_t g = 1; g < snaps.size(); ++g) {
    for (const auto& x : snaps[g]) {
      EXPECT_NE(std::find(snaps[g - 1].begin(), snaps[g - 1].end(), x), snaps[g - 1].end());
    }
  }
}

TEST(Ga, FullMutationComplementsWithoutCrossover) {
  GaConfig c;
  c.population = 1;
  c.generations = 1;
  c.crossover = 0.0;
  c.mutation = 1.0;
  c.seed = 5;
  const auto snaps = run_ga(onemax(12), c);
  EXPECT_EQ(snaps[1][0], snaps[0][0].complement());
}

TEST(Observability, TargetsForOneMaxPrimeBlocks) {
  const auto targets = onemax_prime_targets({3, 4});
  ASSERT_EQ(targets.size(), 2u);
  EXPECT_EQ(targets[0].loci, (LocusSet{0, 1}));
  EXPECT_EQ(targets[0].target, 2u);
  EXPECT_EQ(targets[1].loci, (LocusSet{3, 4, 5}));
  EXPECT_EQ(targets[1].target, 6u);
  EXPECT_EQ(targets[1].order(), 3u);
  EXPECT_TRUE(targets[0].observed_in({Chromosome::parse("0001111")}));
  EXPECT_FALSE(targets[0].observed_in({Chromosome::parse("0101111"), Chromosome::parse("1111111")}));
  EXPECT_THROW(ObservabilityTarget(LocusSet{0}, 0, Assignment{{0, 0}}), InvalidArgument);
}

TEST(Observability, GenerationZeroMatchesUniformFormula) {
  const std::vector<std::size_t> sizes{3, 5};
  GaConfig c;
  c.population = 20;
  c.generations = 0;
  c.runs = 4000;
  c.seed = 1;
  const auto rows = observability_by_generation(onemax_prime_concat(sizes), onemax_prime_targets(sizes), c);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    const double expected = uniform_presence_probability(r.block_order + 1, 20);
    EXPECT_NEAR(r.probability, expected, 4.0 * std::max(r.stderr_, 0.005)) << r.block_order;
  }
}

TEST(Observability, RowsOrderedAndProbabilityDecaysForLargeBlocks) {
  const std::vector<std::size_t> sizes{3, 7};
  GaConfig c;
  c.population = 100;
  c.generations = 10;
  c.runs = 200;
  c.seed = 2;
  const auto rows = observability_by_generation(onemax_prime_concat(sizes), onemax_prime_targets(sizes), c);
  ASSERT_EQ(rows.size(), 22u);
  EXPECT_EQ(rows[0].block_order, 2u);
  EXPECT_EQ(rows[10].generation, 10u);
  EXPECT_EQ(rows[11].block_order, 6u);
  EXPECT_LT(rows.back().probability, rows[11].probability + 1e-12);
  const auto by_pop =
      observability_by_population(onemax_prime_concat(sizes), onemax_prime_targets(sizes), {10, 40}, c);
  ASSERT_EQ(by_pop.size(), 4u);
  EXPECT_EQ(by_pop[0].population_size, 10u);
  EXPECT_EQ(by_pop[1].population_size, 40u);
  EXPECT_EQ(by_pop[2].block_order, 6u);
}

TEST(Observability, UniformPresenceFormula) {
  EXPECT_DOUBLE_EQ(uniform_presence_probability(1, 1), 0.5);
  EXPECT_DOUBLE_EQ(uniform_presence_probability(2, 2), 1.0 - 0.5625);
  EXPECT_NEAR(uniform_presence_probability(8, 500), 1.0 - std::pow(255.0 / 256.0, 500.0), 1e-15);
}
