#include "osg/distance.hpp"

#include <algorithm>
#include <cmath>

namespace osg {

DistanceMatrix::DistanceMatrix(Matrix values) : values_(std::move(values)) {
  const Index n = values_.rows();
  prefix_ = Matrix::Zero(n + 1, n + 1);
  for (Index a = 1; a <= n; ++a) {
    double row = 0.0;
    for (Index b = 1; b <= n; ++b) {
      row += values_(a - 1, b - 1);
      prefix_(a, b) = prefix_(a - 1, b) + row;
    }
  }
}

DistanceMatrix DistanceMatrix::from_values(Matrix values) {
  if (values.rows() < 1 || values.rows() != values.cols()) {
    throw ValidationError("distance matrix must be square and nonempty");
  }
  const Index n = values.rows();
  for (Index i = 0; i < n; ++i) {
    if (values(i, i) != 0.0) {
      throw ValidationError("distance matrix diagonal must be zero (row " + std::to_string(i) + ")");
    }
    for (Index j = 0; j < n; ++j) {
      const double v = values(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw ValidationError("distance matrix entries must be finite and nonnegative");
      }
      if (v != values(j, i)) throw ValidationError("distance matrix must be symmetric");
    }
  }
  return DistanceMatrix(std::move(values));
}

void DistanceMatrix::throw_block_range(Index a, Index b) const {
  throw std::out_of_range("block_sum(" + std::to_string(a) + ", " + std::to_string(b) +
                          "): need 1 <= a <= b <= " + std::to_string(size()));
}

double cosine_distance(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b) {
  if (a.size() != b.size()) throw ValidationError("cosine_distance: dimension mismatch");
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw ValidationError("cosine_distance: zero-norm vector");
  const double cos = std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
  return (1.0 - cos) / 2.0;
}

DistanceMatrix build_matrix(const FeatureSequence& seq) {
  const Index n = seq.size();
  Matrix unit = seq.rows();
  for (Index i = 0; i < n; ++i) {
    const double norm = unit.row(i).norm();
    if (norm == 0.0) throw ValidationError("shot " + std::to_string(i) + " has zero norm");
    unit.row(i) /= norm;
  }
  Matrix d = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double cos = std::clamp(unit.row(i).dot(unit.row(j)), -1.0, 1.0);
      d(i, j) = d(j, i) = (1.0 - cos) / 2.0;
    }
  }
  return DistanceMatrix::from_values(std::move(d));
}

}  // namespace osg
