#include "gensys/taskspace.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "gensys/errors.hpp"
#include "support/generators.hpp"

using namespace gensys;

namespace {

TaskSet random_subset(testkit::Rng& rng, std::size_t tasks, double density) {
  std::vector<TaskId> members;
  for (std::size_t t = 0; t < tasks; ++t) {
    if (testkit::uniform01(rng) < density) members.push_back(TaskId{t});
  }
  return TaskSet(std::move(members));
}

TEST(TaskMeasure, RejectsWeightsThatDoNotSumToOne) {
  EXPECT_THROW(TaskMeasure({0.5, 0.4}), ConfigError);
  EXPECT_THROW(TaskMeasure({0.5, 0.5 + 1e-9}), ConfigError);
  EXPECT_THROW(TaskMeasure({1.5, -0.5}), ConfigError);
  EXPECT_THROW(TaskMeasure(std::vector<double>{}), ConfigError);
  EXPECT_NO_THROW(TaskMeasure({0.25, 0.75}));
}

TEST(TaskMeasure, ProportionalNormalizesExplicitly) {
  const std::vector<double> masses{1.0, 3.0};
  const auto mu = TaskMeasure::proportional(masses);
  EXPECT_DOUBLE_EQ(mu.weight(TaskId{0}), 0.25);
  EXPECT_DOUBLE_EQ(mu.weight(TaskId{1}), 0.75);
}

TEST(MeasureOf, EmptySetIsZero) {
  EXPECT_EQ(measure_of(TaskSet{}, TaskMeasure::uniform(7)), 0.0);
}

TEST(MeasureOf, FullSupportIsOne) {
  testkit::Rng rng(3);
  const auto mu = testkit::random_task_measure(rng, 17);
  EXPECT_NEAR(measure_of(TaskSet::full(17), mu), 1.0, 1e-12);
}

TEST(MeasureOf, TwoOfTenUniform) {
  EXPECT_NEAR(measure_of(TaskSet{0, 1}, TaskMeasure::uniform(10)), 0.2, 1e-15);
}

TEST(MeasureOf, OutOfBoundsMemberThrows) {
  EXPECT_THROW(measure_of(TaskSet{0, 10}, TaskMeasure::uniform(10)), BoundsError);
}

TEST(Novelty, Examples) {
  const TaskSet a{0, 1, 2};
  EXPECT_TRUE(novelty(a, a).empty());
  EXPECT_EQ(novelty(TaskSet{0, 1, 2}, TaskSet{0}), (TaskSet{1, 2}));
  // prev need not be contained in next.
  EXPECT_EQ(novelty(TaskSet{1, 2}, TaskSet{0, 2, 5}), (TaskSet{1}));
}

TEST(MeasureProperties, AdditiveMonotoneAndNoveltyIdentity) {
  testkit::Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t tasks = testkit::uniform_index(rng, 1, 40);
    const auto mu = testkit::random_task_measure(rng, tasks);
    const TaskSet a = random_subset(rng, tasks, 0.4);
    const TaskSet b = random_subset(rng, tasks, 0.5);

    // Disjoint pieces: a and b \ a.
    const TaskSet rest = novelty(b, a);
    EXPECT_NEAR(measure_of(set_union(a, rest), mu),
                measure_of(a, mu) + measure_of(rest, mu), 1e-12);

    const TaskSet sup = set_union(a, b);
    EXPECT_LE(measure_of(a, mu), measure_of(sup, mu));
    EXPECT_NEAR(measure_of(sup, mu) - measure_of(a, mu),
                measure_of(novelty(sup, a), mu), 1e-12);
  }
}

TEST(SampleTask, PointMassAlwaysReturnsItsTask) {
  const auto mu = TaskMeasure::point_mass(6, TaskId{3});
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    EXPECT_EQ(sample_task(mu, seed), TaskId{3});
  }
}

TEST(SampleTask, DeterministicForFixedSeed) {
  testkit::Rng rng(5);
  const auto mu = testkit::random_task_measure(rng, 9);
  EXPECT_EQ(sample_task(mu, 1234), sample_task(mu, 1234));
}

TEST(SampleTask, FrequencyMatchesUniformTwoTasks) {
  const auto mu = TaskMeasure::uniform(2);
  std::size_t zeros = 0;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    if (sample_task(mu, seed) == TaskId{0}) ++zeros;
  }
  EXPECT_NEAR(static_cast<double>(zeros) / 10000.0, 0.5, 0.02);
}

TEST(SampleTask, FrequenciesTrackWeights) {
  const TaskMeasure mu({0.1, 0.6, 0.0, 0.3});
  std::vector<std::size_t> counts(4, 0);
  constexpr std::size_t kDraws = 20000;
  for (std::uint64_t seed = 0; seed < kDraws; ++seed) ++counts[sample_task(mu, seed).index];
  EXPECT_EQ(counts[2], 0u);
  for (std::size_t t = 0; t < 4; ++t) {
    EXPECT_NEAR(static_cast<double>(counts[t]) / kDraws, mu.weight(TaskId{t}), 0.02);
  }
}

}  // namespace
