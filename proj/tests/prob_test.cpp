#include "osg/prob.hpp"

#include "osg/synth.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <numeric>

namespace osg {
namespace {

// Smallest gap between the best and second-best candidate over all hard
// cells; a perturbation smaller than this cannot move an argmin.
double min_argmin_gap(const DistanceMatrix& d, int k) {
  const DPTable t = build_table(d, k);
  double gap = std::numeric_limits<double>::infinity();
  for (int level = 2; level <= k; ++level) {
    for (int n = 1; n <= t.last_split(level); ++n) {
      Vector g = g_row(d, t, n, level).values;
      if (g.size() < 2) continue;
      std::sort(g.data(), g.data() + g.size());
      gap = std::min(gap, g(1) - g(0));
    }
  }
  return gap;
}

SceneLabels random_labels(std::mt19937_64& rng, int n, int scenes) {
  std::vector<int> cuts(static_cast<std::size_t>(n - 1));
  std::iota(cuts.begin(), cuts.end(), 1);
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(static_cast<std::size_t>(scenes - 1));
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(n);
  return division_to_labels(Division(cuts, n));
}

TEST(Softmin, Examples) {
  EXPECT_LE((softmin(Vector::Constant(3, 4.2)) - Vector::Constant(3, 1.0 / 3.0)).cwiseAbs().maxCoeff(), 1e-15);
  Vector g(2);
  g << 0.0, std::log(2.0);
  const Vector p = softmin(g);
  EXPECT_NEAR(p(0), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(p(1), 1.0 / 3.0, 1e-15);

  Vector row(3);
  row << 3.8, 0.6, 3.8;
  const double z = 2.0 * std::exp(-3.8) + std::exp(-0.6);
  const Vector q = softmin(row);
  EXPECT_NEAR(q(0), std::exp(-3.8) / z, 1e-15);
  EXPECT_NEAR(q(1), std::exp(-0.6) / z, 1e-15);
  EXPECT_NEAR(q(0), 0.0377, 5e-5);
  EXPECT_NEAR(q(1), 0.9246, 5e-5);
}

TEST(Softmin, ShiftInvariantAndLargeValues) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  for (int trial = 0; trial < 50; ++trial) {
    Vector g(8);
    for (Index i = 0; i < 8; ++i) g(i) = u(rng);
    const Vector a = softmin(g);
    const Vector b = softmin((g.array() + 1234.5).matrix());
    EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(a.sum(), 1.0, 1e-12);
  }
  Vector big(2);
  big << 1e6, 1e6 + 1.0;
  EXPECT_TRUE(softmin(big).allFinite());
}

TEST(ProbTable, RowsAreDistributions) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 25)(rng);
    const int k = std::uniform_int_distribution<int>(2, n)(rng);
    const ProbTable pt = prob_table(testing::random_distance(rng, n, 0.0, 3.0), k);
    std::size_t expected_rows = 0;
    for (int level = 2; level <= k; ++level) expected_rows += static_cast<std::size_t>(n - level + 1);
    EXPECT_EQ(pt.rows.size(), expected_rows);
    for (const ProbRow& row : pt.rows) {
      EXPECT_NEAR(row.p.sum(), 1.0, 1e-9);
      EXPECT_GT(row.p.minCoeff(), 0.0);
      EXPECT_LE(row.p.maxCoeff(), 1.0);
    }
  }
  std::mt19937_64 rng2(1);
  EXPECT_THROW(prob_table(testing::random_distance(rng2, 4), 1), ValidationError);
}

TEST(DivisionScores, Examples) {
  std::mt19937_64 rng(33);
  const DivisionScores two = division_scores(prob_table(testing::random_distance(rng, 2), 2));
  EXPECT_DOUBLE_EQ(two.t(0), 0.25);
  EXPECT_DOUBLE_EQ(two.t(1), 0.0);
  EXPECT_EQ(two.counts, (std::vector<int>{1, 0}));

  for (int trial = 0; trial < 20; ++trial) {
    const int n = std::uniform_int_distribution<int>(3, 15)(rng);
    const int k = std::uniform_int_distribution<int>(2, n)(rng);
    const Matrix m = testing::random_symmetric(rng, n);
    const ProbTable pt = prob_table(DistanceMatrix::from_values(m), k);
    const DivisionScores s = division_scores(pt);
    EXPECT_NEAR(s.t.sum(), static_cast<double>(pt.rows.size()) / (n * k), 1e-12);
    EXPECT_LT(s.t.sum(), 1.0);
    EXPECT_GE(s.t.minCoeff(), 0.0);
    EXPECT_LE((s.t - testing::oracle_scores(m, k)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(DivisionScores, ReversalOfEqualDistances) {
  // Reversing the shots of an all-equal matrix leaves it unchanged, so both
  // evaluations agree. T itself is not reflection symmetric, because every
  // subproblem is a suffix ending at N.
  const int n = 7;
  const Matrix m = 0.3 * (Matrix::Ones(n, n) - Matrix::Identity(n, n));
  const Matrix reversed = m.colwise().reverse().rowwise().reverse();
  const Vector t = division_scores(prob_table(DistanceMatrix::from_values(m), 3)).t;
  const Vector tr = division_scores(prob_table(DistanceMatrix::from_values(reversed), 3)).t;
  EXPECT_LE((t - tr).cwiseAbs().maxCoeff(), 1e-15);
  const Vector mirrored = t.head(n - 1).reverse();
  EXPECT_GT((t.head(n - 1) - mirrored).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(CeLoss, Examples) {
  const SceneLabels gt({1, 1, 2, 2, 3});
  DivisionScores ones{Vector::Ones(5), {}};
  EXPECT_EQ(ce_loss(ones, gt), 0.0);

  DivisionScores e{Vector::Constant(3, std::exp(-1.0)), {}};
  EXPECT_NEAR(ce_loss(e, SceneLabels({1, 1, 2})), 1.0, 1e-15);

  std::mt19937_64 rng(34);
  const DistanceMatrix d2 = testing::random_distance(rng, 2);
  EXPECT_NEAR(ce_loss(division_scores(prob_table(d2, 2)), SceneLabels({1, 2})), -std::log(0.25), 1e-15);
  EXPECT_NEAR(ce_loss_with_grad(d2, 2, SceneLabels({1, 2})).loss, 1.3862943611198906, 1e-15);

  EXPECT_THROW(ce_loss(e, SceneLabels({1, 1, 1})), ValidationError);
  EXPECT_THROW(ce_loss_backward(d2, 2, SceneLabels({1, 1})), ValidationError);
}

// Richardson-extrapolated central differences on the nested-sum oracle. A
// plain h = 1e-5 difference carries about eps * loss / h of rounding noise,
// which swamps entries near 1e-8.
TEST(CeLossBackward, MatchesExtrapolatedDifferences) {
  std::mt19937_64 rng(35);
  int checked = 0;
  while (checked < 20) {
    const int n = std::uniform_int_distribution<int>(3, 10)(rng);
    const int k = std::uniform_int_distribution<int>(2, std::min(n, 4))(rng);
    const Matrix m = testing::random_symmetric(rng, n, 0.05, 0.95);
    const DistanceMatrix d = DistanceMatrix::from_values(m);
    if (min_argmin_gap(d, k) < 1e-2) continue;
    const SceneLabels gt = random_labels(rng, n, std::uniform_int_distribution<int>(2, n)(rng));
    const std::vector<int> cuts = labels_to_division(gt).interior();

    const Matrix grad = ce_loss_backward(d, k, gt);
    EXPECT_LE((grad - grad.transpose()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(grad.diagonal().cwiseAbs().maxCoeff(), 0.0);
    const auto loss = [&](const Matrix& x) { return testing::oracle_ce_loss(x, k, cuts); };
    const double h = 2e-3;
    const Matrix numeric =
        (4.0 * testing::central_difference_pairs(m, loss, h / 2) - testing::central_difference_pairs(m, loss, h)) / 3.0;
    EXPECT_LE(testing::max_pair_relative_error(grad, numeric), 1e-4) << "n=" << n << " k=" << k;
    ++checked;
  }
}

TEST(CeLossBackward, GradientConcentratesNearDivisions) {
  SynthSpec spec;
  spec.n_scenes = 4;
  spec.min_shots = 6;
  spec.max_shots = 6;
  spec.dim = 16;
  spec.sigma = 0.3;
  spec.seed = 5;
  const SynthVideo v = generate(spec);
  const DistanceMatrix d = build_matrix(v.features);
  const Matrix g = ce_loss_backward(d, 4, v.labels);
  const std::vector<int> divisions = labels_to_division(v.labels).interior();
  const auto near = [&](Index i) {
    for (int b : divisions) {
      if (i + 1 >= b - 1 && i + 1 <= b + 2) return true;
    }
    return false;
  };
  double near_max = 0.0, far_max = 0.0;
  for (Index i = 0; i < d.size(); ++i) {
    for (Index j = 0; j < d.size(); ++j) {
      if (near(i) && near(j)) near_max = std::max(near_max, std::abs(g(i, j)));
      else far_max = std::max(far_max, std::abs(g(i, j)));
    }
  }
  EXPECT_GT(near_max, 0.0);
  EXPECT_LE(far_max, near_max);
}

TEST(CeLossBackward, DescentStepRaisesScoreAtBoundary) {
  std::mt19937_64 rng(36);
  int checked = 0;
  while (checked < 10) {
    const int n = std::uniform_int_distribution<int>(4, 12)(rng);
    const int k = std::uniform_int_distribution<int>(2, std::min(n, 4))(rng);
    const Matrix m = testing::random_symmetric(rng, n, 0.1, 0.9);
    const DistanceMatrix d = DistanceMatrix::from_values(m);
    if (min_argmin_gap(d, k) < 1e-3) continue;
    const SceneLabels gt = random_labels(rng, n, 2);
    const int boundary = labels_to_division(gt).interior().front();

    const ProbLossResult before = ce_loss_with_grad(d, k, gt);
    const double step = 1e-3 / std::max(1.0, before.grad.cwiseAbs().maxCoeff());
    const Matrix moved = (m - step * before.grad).cwiseMax(0.0);
    const ProbLossResult after = ce_loss_with_grad(DistanceMatrix::from_values(moved), k, gt);
    EXPECT_GT(after.scores.t(boundary - 1), before.scores.t(boundary - 1));
    EXPECT_LT(after.loss, before.loss);
    ++checked;
  }
}

}  // namespace
}  // namespace osg
