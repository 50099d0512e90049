#include "osg/prob.hpp"

#include <cmath>

namespace osg {

namespace {

std::vector<int> annotated_divisions(const SceneLabels& gt) {
  if (gt.num_scenes() < 2) {
    throw ValidationError("no annotated division: ground truth holds a single scene");
  }
  return labels_to_division(gt).interior();
}

// grad(j1, j2) = sum of block adjoints over all blocks [a..b] containing
// both j1 and j2, i.e. a <= min(j1, j2) and b >= max(j1, j2).
Matrix spread_block_adjoints(const Matrix& block_adj) {
  const Index n = block_adj.rows() - 1;  // 1-based storage
  Matrix acc = Matrix::Zero(n + 2, n + 2);
  for (Index a = 1; a <= n; ++a) {
    for (Index b = n; b >= a; --b) {
      acc(a, b) = block_adj(a, b) + acc(a - 1, b) + acc(a, b + 1) - acc(a - 1, b + 1);
    }
  }
  Matrix grad = Matrix::Zero(n, n);
  for (Index i = 1; i <= n; ++i) {
    for (Index j = i + 1; j <= n; ++j) grad(i - 1, j - 1) = grad(j - 1, i - 1) = acc(i, j);
  }
  return grad;
}

}  // namespace

Vector softmin(const Vector& g) {
  const double lo = g.minCoeff();
  Vector p = (-(g.array() - lo)).exp();
  return p / p.sum();
}

ProbTable prob_table(const DistanceMatrix& d, int k) {
  if (k < 2) throw ValidationError("prob_table needs K >= 2 (no division rows otherwise)");
  ProbTable pt{static_cast<int>(d.size()), k, build_table(d, k), {}};
  for (int level = 2; level <= k; ++level) {
    for (int n = 1; n <= pt.hard.last_split(level); ++n) {
      GRow row = g_row(d, pt.hard, n, level);
      Vector p = softmin(row.values);
      pt.rows.push_back({n, level, row.first, std::move(row.values), std::move(p)});
    }
  }
  return pt;
}

DivisionScores division_scores(const ProbTable& pt) {
  DivisionScores out{Vector::Zero(pt.n_shots), std::vector<int>(static_cast<std::size_t>(pt.n_shots), 0)};
  for (const ProbRow& row : pt.rows) {
    for (Index j = 0; j < row.p.size(); ++j) {
      out.t(row.first - 1 + j) += row.p(j);
      ++out.counts[static_cast<std::size_t>(row.first - 1 + j)];
    }
  }
  out.t /= static_cast<double>(pt.n_shots) * pt.max_groups;
  return out;
}

double ce_loss(const DivisionScores& scores, const SceneLabels& gt) {
  if (gt.size() != static_cast<std::size_t>(scores.t.size())) {
    throw ValidationError("ce_loss: labels and scores disagree on shot count");
  }
  double loss = 0.0;
  for (int i : annotated_divisions(gt)) loss -= std::log(std::max(scores.t(i - 1), kScoreFloor));
  return loss;
}

ProbLossResult ce_loss_with_grad(const DistanceMatrix& d, int k, const SceneLabels& gt) {
  const int n_shots = static_cast<int>(d.size());
  if (gt.size() != static_cast<std::size_t>(n_shots)) {
    throw ValidationError("ce_loss: labels and matrix disagree on shot count");
  }
  const std::vector<int> divisions = annotated_divisions(gt);
  const ProbTable pt = prob_table(d, k);

  ProbLossResult out;
  out.scores = division_scores(pt);
  out.loss = ce_loss(out.scores, gt);

  // dloss/dP(n,k,i), identical for every row.
  Vector dp = Vector::Zero(n_shots);
  const double scale = 1.0 / (static_cast<double>(n_shots) * k);
  for (int i : divisions) {
    const double t = out.scores.t(i - 1);
    if (t > kScoreFloor) dp(i - 1) -= scale / t;
  }

  Matrix block_adj = Matrix::Zero(n_shots + 1, n_shots + 1);
  Matrix cost_adj = Matrix::Zero(k + 1, n_shots + 2);  // (level, n), 1-based
  for (const ProbRow& row : pt.rows) {
    const Index len = row.p.size();
    const auto dp_row = dp.segment(row.first - 1, len);
    const double mean = row.p.dot(dp_row);
    for (Index j = 0; j < len; ++j) {
      const double dg = -row.p(j) * (dp_row(j) - mean);
      const int i = row.first + static_cast<int>(j);
      block_adj(row.n, i) += dg;
      cost_adj(row.k - 1, i + 1) += dg;
    }
  }

  // Hard cells: C(n, level) = block(n, i*) + C(i*+1, level-1), C(n,1) = block(n, N).
  for (int level = k - 1; level >= 1; --level) {
    for (int n = 1; n <= n_shots; ++n) {
      const double a = cost_adj(level, n);
      if (a == 0.0) continue;
      if (level == 1) {
        block_adj(n, n_shots) += a;
      } else {
        const int i = pt.hard.argmin(n, level);
        block_adj(n, i) += a;
        cost_adj(level - 1, i + 1) += a;
      }
    }
  }

  out.grad = spread_block_adjoints(block_adj);
  return out;
}

Matrix ce_loss_backward(const DistanceMatrix& d, int k, const SceneLabels& gt) {
  return ce_loss_with_grad(d, k, gt).grad;
}

}  // namespace osg
