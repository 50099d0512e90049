#include "osg/metrics.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <set>

namespace osg {
namespace {

using ShotSets = std::vector<std::set<int>>;

ShotSets scenes_of(const Division& d) {
  ShotSets out;
  int start = 1;
  for (int end : d.boundaries()) {
    std::set<int> s;
    for (int i = start; i <= end; ++i) s.insert(i);
    out.push_back(s);
    start = end + 1;
  }
  return out;
}

// Set-based evaluation of coverage and overflow, weighted by scene size.
std::pair<double, double> oracle_metrics(const Division& pred, const Division& gt) {
  const ShotSets p = scenes_of(pred);
  const ShotSets g = scenes_of(gt);
  double c = 0.0, o = 0.0;
  for (std::size_t t = 0; t < g.size(); ++t) {
    std::size_t best = 0, spill = 0;
    for (const auto& s : p) {
      std::size_t shared = 0;
      for (int x : s) shared += g[t].count(x);
      best = std::max(best, shared);
      if (shared > 0) spill += s.size() - shared;
    }
    const std::size_t neighbors = (t > 0 ? g[t - 1].size() : 0) + (t + 1 < g.size() ? g[t + 1].size() : 0);
    const double ot = neighbors == 0 ? 0.0 : std::min(1.0, static_cast<double>(spill) / static_cast<double>(neighbors));
    c += static_cast<double>(best);
    o += ot * static_cast<double>(g[t].size());
  }
  const double n = static_cast<double>(gt.n_shots());
  return {c / n, o / n};
}

Division random_division(std::mt19937_64& rng, int n) {
  std::vector<int> b;
  for (int i = 1; i < n; ++i)
    if (std::bernoulli_distribution(0.3)(rng)) b.push_back(i);
  b.push_back(n);
  return Division(b, n);
}

TEST(Metrics, HandExample) {
  const SceneLabels gt({1, 1, 1, 2, 2, 2});
  const Division pred({2, 6}, 6);
  const SceneScore c = coverage(pred, gt);
  const SceneScore o = overflow(pred, gt);
  EXPECT_NEAR(c.value, 5.0 / 6.0, 1e-12);
  EXPECT_EQ(c.per_scene, (std::vector<double>{2.0 / 3.0, 1.0}));
  EXPECT_NEAR(o.value, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(o.per_scene[0], 1.0, 1e-15);
  EXPECT_NEAR(o.per_scene[1], 1.0 / 3.0, 1e-15);
  const MetricsReport r = f_score(pred, gt);
  EXPECT_NEAR(r.f_score, 10.0 / 21.0, 1e-12);
  EXPECT_EQ(r.per_scene_coverage, c.per_scene);
}

TEST(Metrics, PerfectAndTrivialPredictions) {
  const SceneLabels gt({1, 1, 2, 3, 3, 3, 4});
  const MetricsReport r = f_score(labels_to_division(gt), gt);
  EXPECT_EQ(r.coverage, 1.0);
  EXPECT_EQ(r.overflow, 0.0);
  EXPECT_EQ(r.f_score, 1.0);

  EXPECT_EQ(coverage(Division({7}, 7), gt).value, 1.0);
  EXPECT_EQ(overflow(Division({3, 5}, 5), SceneLabels({1, 1, 1, 1, 1})).value, 0.0);
}

TEST(Metrics, HarmonicMean) {
  EXPECT_EQ(harmonic_f(0.0, 1.0), 0.0);
  EXPECT_NEAR(harmonic_f(0.5, 0.5), 0.5, 1e-15);
  EXPECT_NEAR(harmonic_f(5.0 / 6.0, 2.0 / 3.0), 10.0 / 21.0, 1e-15);
}

TEST(Metrics, LengthMismatch) {
  EXPECT_THROW(f_score(Division({3}, 3), SceneLabels({1, 1, 2, 2})), ValidationError);
  EXPECT_THROW(overflow(Division({3}, 3), SceneLabels({1, 1, 2, 2})), ValidationError);
}

TEST(Metrics, MatchesSetOracleAndStaysInRange) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 20)(rng);
    const Division gt = random_division(rng, n);
    const Division pred = random_division(rng, n);
    const SceneLabels labels = division_to_labels(gt);
    const MetricsReport r = f_score(pred, labels);
    const auto [c, o] = oracle_metrics(pred, gt);
    EXPECT_NEAR(r.coverage, c, 1e-12);
    EXPECT_NEAR(r.overflow, o, 1e-12);
    for (double v : {r.coverage, r.overflow, r.f_score}) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
    }
    EXPECT_GT(r.coverage, 0.0);
    if (n >= 2 && gt.num_groups() >= 2) EXPECT_EQ(r.f_score == 1.0, pred == gt);
  }
}

TEST(Metrics, RefiningTheTruthOnlyLowersCoverage) {
  const SceneLabels gt({1, 1, 1, 1, 2, 2, 2, 3, 3});
  const Division split({2, 4, 7, 9}, 9);
  const MetricsReport r = f_score(split, gt);
  EXPECT_EQ(r.overflow, 0.0);
  EXPECT_LT(r.coverage, 1.0);
  EXPECT_NEAR(r.coverage, (2.0 + 3.0 + 2.0) / 9.0, 1e-15);
}

}  // namespace
}  // namespace osg
