#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace woadiv;
using woadiv::testing::sphere;

TEST(Rng, UniformUsesTop53BitsOfEngine) {
  std::mt19937_64 engine(42);
  RngStream rng(42);
  for (int i = 0; i < 1000; ++i) {
    const double expected = static_cast<double>(engine() >> 11) / 9007199254740992.0;
    ASSERT_EQ(rng.uniform(), expected);
  }
}

TEST(Rng, UniformStaysInHalfOpenInterval) {
  RngStream rng(7);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform(-1.0, 1.0);
    ASSERT_GE(u, -1.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, IndexCoversRangeAndRejectsZero) {
  RngStream rng(3);
  std::vector<int> hits(5, 0);
  for (int i = 0; i < 5000; ++i) ++hits.at(rng.index(5));
  for (int h : hits) EXPECT_GT(h, 800);
  EXPECT_THROW((void)rng.index(0), std::invalid_argument);
}

TEST(Rng, SameSeedSameSequence) {
  RngStream a(99), b(99);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
  EXPECT_NE(noise_seed(99), 99u);
}

TEST(Bounds, RejectsBadInput) {
  EXPECT_THROW(Bounds({}, {}), std::invalid_argument);
  EXPECT_THROW(Bounds({0.0}, {1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(Bounds({1.0}, {1.0}), std::invalid_argument);
  EXPECT_THROW(Bounds({2.0}, {1.0}), std::invalid_argument);
}

TEST(Bounds, Contains) {
  const Bounds b({-1.0, 0.0}, {1.0, 5.0});
  const std::vector<double> inside{0.0, 5.0}, outside{0.0, 5.5}, short_x{0.0};
  EXPECT_TRUE(b.contains(inside));
  EXPECT_FALSE(b.contains(outside));
  EXPECT_FALSE(b.contains(short_x));
}

TEST(Clamp, ProjectsEachCoordinate) {
  const Bounds b({-1.0, 0.0, 2.0}, {1.0, 5.0, 3.0});
  const std::vector<double> x{-3.0, 2.5, 7.0};
  EXPECT_EQ(clamp(x, b), (std::vector<double>{-1.0, 2.5, 3.0}));
  const std::vector<double> bad{0.0};
  EXPECT_THROW((void)clamp(bad, b), std::invalid_argument);
}

TEST(Objective, DimensionMismatchThrows) {
  const auto f = sphere(3);
  const std::vector<double> x{1.0, 2.0};
  EXPECT_THROW((void)f(x), std::invalid_argument);
}

TEST(Objective, NoisyNeedsStream) {
  const ObjectiveFunction f("noisy", Bounds::uniform(1, 0, 1),
                            [](std::span<const double>, RngStream& r) { return r.uniform(); },
                            std::nullopt, true);
  const std::vector<double> x{0.5};
  EXPECT_THROW((void)f(x), std::invalid_argument);
  RngStream noise(1);
  EXPECT_NO_THROW((void)f(x, noise));
}

TEST(PositionMatrix, RowsColumnsAndShapeCheck) {
  const PositionMatrix m(2, 3, {1, 2, 3, 4, 5, 6});
  EXPECT_EQ(m(1, 2), 6.0);
  EXPECT_EQ(m.column(1), (std::vector<double>{2, 5}));
  EXPECT_EQ(m.row(1)[0], 4.0);
  EXPECT_THROW(PositionMatrix(2, 2, {1, 2, 3}), std::invalid_argument);
}

TEST(Argmin, MatchesBruteForceAndKeepsFirstTie) {
  RngStream rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Agent> agents(1 + rng.index(10));
    for (auto& a : agents) a.fitness = static_cast<double>(rng.index(4));
    std::size_t expected = 0;
    for (std::size_t i = 0; i < agents.size(); ++i)
      if (agents[i].fitness < agents[expected].fitness) expected = i;
    ASSERT_EQ(argmin_fitness(agents), expected);
  }
  EXPECT_THROW((void)argmin_fitness({}), std::invalid_argument);
}

TEST(Init, DeterministicInsideBoundsWithBest) {
  const auto f = sphere(4, -2.0, 3.0);
  RngStream r1(11), r2(11);
  const Population a = init_population(f, 6, r1);
  const Population b = init_population(f, 6, r2);
  EXPECT_EQ(a, b);
  ASSERT_EQ(a.size(), 6u);
  double best = a.agents[0].fitness;
  for (const auto& agent : a.agents) {
    EXPECT_TRUE(f.bounds().contains(agent.position));
    EXPECT_EQ(agent.fitness, f(agent.position));
    best = std::min(best, agent.fitness);
  }
  EXPECT_EQ(a.best.fitness, best);
  EXPECT_EQ(a.iteration, 0u);
}

TEST(Init, DrawsAgentByAgentThenDimension) {
  const auto f = sphere(2, 0.0, 1.0);
  RngStream rng(8), replay(8);
  const Population p = init_population(f, 3, rng);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(p.agents[i].position[j], replay.uniform());
}

TEST(Init, NeedsTwoAgents) {
  const auto f = sphere(2);
  RngStream rng(1);
  EXPECT_THROW((void)init_population(f, 1, rng), std::invalid_argument);
}
