#include "osg/k_estim.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>

namespace osg {

SingularSpectrum singular_spectrum(const DistanceMatrix& d, double epsilon) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(d.values(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("symmetric eigensolver did not converge on a " +
                             std::to_string(d.size()) + "x" + std::to_string(d.size()) +
                             " matrix (Eigen info code " + std::to_string(solver.info()) + ")");
  }
  std::vector<double> sigma(static_cast<std::size_t>(d.size()));
  for (Index i = 0; i < d.size(); ++i) sigma[static_cast<std::size_t>(i)] = std::abs(solver.eigenvalues()(i));
  std::sort(sigma.begin(), sigma.end(), std::greater<>());

  SingularSpectrum out{Vector(d.size()), epsilon};
  for (Index i = 0; i < d.size(); ++i) {
    out.log_values(i) = std::log(std::max(sigma[static_cast<std::size_t>(i)], epsilon));
  }
  return out;
}

int log_elbow(const SingularSpectrum& spectrum) {
  const Vector& s = spectrum.log_values;
  const Index n = s.size();
  if (n < 2) return 1;
  const Eigen::Vector2d chord(static_cast<double>(n - 1), s(n - 1) - s(0));
  if (chord.y() == 0.0) return 1;
  const Eigen::Vector2d dir = chord.normalized();

  Index best = 0;
  double best_dist = -1.0;
  for (Index i = 0; i < n; ++i) {
    const Eigen::Vector2d p(static_cast<double>(i), s(i) - s(0));
    const double dist = (p - p.dot(dir) * dir).norm();
    if (dist > best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  return static_cast<int>(std::clamp<Index>(best, 1, n));
}

int estimate_k(const DistanceMatrix& d) {
  if (d.size() == 1) return 1;
  return std::clamp(log_elbow(singular_spectrum(d)), 1, static_cast<int>(d.size()));
}

}  // namespace osg
