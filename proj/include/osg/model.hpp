#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace osg {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Raised whenever input data violates a type invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered feature vectors, one row per shot. Rows are never all-zero.
class FeatureSequence {
 public:
  explicit FeatureSequence(Matrix rows);

  Index size() const { return rows_.rows(); }
  Index dim() const { return rows_.cols(); }
  const Matrix& rows() const { return rows_; }
  auto shot(Index i) const { return rows_.row(i); }

 private:
  Matrix rows_;
};

/// Scene index per shot (1-based, contiguous, nondecreasing).
class SceneLabels {
 public:
  explicit SceneLabels(std::vector<int> labels);

  std::size_t size() const { return labels_.size(); }
  int num_scenes() const { return labels_.empty() ? 0 : labels_.back(); }
  const std::vector<int>& values() const { return labels_; }
  int operator[](std::size_t i) const { return labels_[i]; }

  /// Shot count of each scene, in scene order.
  std::vector<int> scene_sizes() const;

  bool operator==(const SceneLabels&) const = default;

 private:
  std::vector<int> labels_;
};

/// Partition of N shots into K contiguous groups. Boundaries hold the
/// 1-based index of the last shot of each group, so the last one is N.
class Division {
 public:
  Division(std::vector<int> boundaries, int n_shots);

  int n_shots() const { return n_shots_; }
  int num_groups() const { return static_cast<int>(boundaries_.size()); }
  const std::vector<int>& boundaries() const { return boundaries_; }

  /// Boundaries excluding the final N, i.e. the actual division points.
  std::vector<int> interior() const;

  bool operator==(const Division&) const = default;

 private:
  std::vector<int> boundaries_;
  int n_shots_;
};

Division labels_to_division(const SceneLabels& labels);
SceneLabels division_to_labels(const Division& div);

}  // namespace osg
