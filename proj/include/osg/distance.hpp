#pragma once

#include "osg/model.hpp"

namespace osg {

// Pairwise shot distances plus an (N+1)x(N+1) summed-area table so any
// square block sum costs O(1).
class DistanceMatrix {
 public:
  /// Wraps an existing matrix. Checks squareness, symmetry, zero diagonal
  /// and finite nonnegative entries.
  static DistanceMatrix from_values(Matrix values);

  Index size() const { return values_.rows(); }
  const Matrix& values() const { return values_; }
  double operator()(Index i, Index j) const { return values_(i, j); }

  /// Sum of D over [a..b] x [a..b], 1-based inclusive. Both orderings of
  /// each pair are counted.
  double block_sum(Index a, Index b) const {
    if (a < 1 || b > size() || a > b) throw_block_range(a, b);
    if (a == b) return 0.0;
    const double s = prefix_(b, b) - prefix_(a - 1, b) - prefix_(b, a - 1) + prefix_(a - 1, a - 1);
    return s > 0.0 ? s : 0.0;
  }

 private:
  explicit DistanceMatrix(Matrix values);
  [[noreturn]] void throw_block_range(Index a, Index b) const;

  Matrix values_;
  Matrix prefix_;
};

/// Cosine distance rescaled into [0, 1]: (1 - cos) / 2.
double cosine_distance(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b);

DistanceMatrix build_matrix(const FeatureSequence& seq);

}  // namespace osg
