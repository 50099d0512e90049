#include "osg/losses.hpp"

#include <cmath>
#include <cstdlib>

namespace osg {

namespace {

void check_shape(const Matrix& d, Index n) {
  if (d.rows() != n || d.cols() != n) {
    throw ValidationError("loss: matrix is " + std::to_string(d.rows()) + "x" +
                          std::to_string(d.cols()) + ", expected " + std::to_string(n) + "x" +
                          std::to_string(n));
  }
}

double hinge(double z, HingeMode mode) {
  return mode == HingeMode::kMax ? std::max(z, 0.0) : std::min(z, 0.0);
}

bool hinge_active(double z, HingeMode mode) { return mode == HingeMode::kMax ? z > 0.0 : z < 0.0; }

}  // namespace

TargetMatrix make_target(const SceneLabels& labels, bool adjacent_only) {
  const Index n = static_cast<Index>(labels.size());
  TargetMatrix t{Matrix::Zero(n, n), Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, true)};
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const int li = labels[static_cast<std::size_t>(i)];
      const int lj = labels[static_cast<std::size_t>(j)];
      t.values(i, j) = li == lj ? 0.0 : 1.0;
      if (adjacent_only) t.mask(i, j) = std::abs(li - lj) <= 1;
    }
  }
  return t;
}

double block_loss(const Matrix& d, const TargetMatrix& target) {
  check_shape(d, target.values.rows());
  return std::sqrt((target.mask.cast<double>().array() * (d - target.values).array().square()).sum());
}

Matrix block_loss_grad(const Matrix& d, const TargetMatrix& target) {
  const double norm = block_loss(d, target);
  Matrix g = Matrix::Zero(d.rows(), d.cols());
  if (norm == 0.0) return g;
  g = (target.mask.cast<double>().array() * (d - target.values).array()).matrix() / norm;
  g.diagonal().setZero();
  return g;
}

std::vector<Triplet> mine_semi_hard(const Matrix& d, const SceneLabels& labels,
                                    const TripletConfig& cfg) {
  const int n = static_cast<int>(labels.size());
  check_shape(d, n);
  if (!(cfg.margin > 0.0)) throw ValidationError("triplet margin must be positive");
  std::vector<Triplet> out;
  for (int a = 0; a < n; ++a) {
    for (int p = 0; p < n; ++p) {
      if (p == a || labels[a] != labels[p]) continue;
      const double dap = d(a, p);
      for (int q = 0; q < n; ++q) {
        if (labels[q] == labels[a]) continue;
        const double dan = d(a, q);
        if (dap < dan && dan < dap + cfg.margin) out.push_back({a, p, q});
      }
    }
  }
  return out;
}

double triplet_loss(const Matrix& d, const std::vector<Triplet>& triplets, const TripletConfig& cfg) {
  if (triplets.empty()) return 0.0;
  double sum = 0.0;
  for (const Triplet& t : triplets) {
    sum += hinge(d(t.anchor, t.positive) - d(t.anchor, t.negative) + cfg.margin, cfg.hinge);
  }
  return sum / static_cast<double>(triplets.size());
}

Matrix triplet_loss_grad(const Matrix& d, const std::vector<Triplet>& triplets,
                         const TripletConfig& cfg) {
  Matrix g = Matrix::Zero(d.rows(), d.cols());
  if (triplets.empty()) return g;
  const double w = 1.0 / static_cast<double>(triplets.size());
  for (const Triplet& t : triplets) {
    const double z = d(t.anchor, t.positive) - d(t.anchor, t.negative) + cfg.margin;
    if (!hinge_active(z, cfg.hinge)) continue;
    g(t.anchor, t.positive) += w;
    g(t.anchor, t.negative) -= w;
  }
  // D is symmetric, so a read of D(a,p) splits evenly between (a,p) and (p,a).
  Matrix sym = (g + g.transpose()) / 2.0;
  sym.diagonal().setZero();
  return sym;
}

}  // namespace osg
