#include "osg/model.hpp"

#include <algorithm>

namespace osg {

FeatureSequence::FeatureSequence(Matrix rows) : rows_(std::move(rows)) {
  if (rows_.rows() < 1) throw ValidationError("feature sequence is empty");
  if (rows_.cols() < 1) throw ValidationError("feature dimension must be >= 1");
  if (!rows_.allFinite()) throw ValidationError("feature sequence has non-finite values");
  for (Index i = 0; i < rows_.rows(); ++i) {
    if (rows_.row(i).squaredNorm() == 0.0) {
      throw ValidationError("shot " + std::to_string(i) + " has an all-zero feature vector");
    }
  }
}

SceneLabels::SceneLabels(std::vector<int> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw ValidationError("scene labels are empty");
  if (labels_.front() != 1) throw ValidationError("scene labels must start at 1 (index 0)");
  for (std::size_t i = 1; i < labels_.size(); ++i) {
    const int step = labels_[i] - labels_[i - 1];
    if (step != 0 && step != 1) {
      throw ValidationError("scene labels must be contiguous and nondecreasing; offending index " +
                            std::to_string(i));
    }
  }
}

std::vector<int> SceneLabels::scene_sizes() const {
  std::vector<int> sizes(static_cast<std::size_t>(num_scenes()), 0);
  for (int l : labels_) ++sizes[static_cast<std::size_t>(l - 1)];
  return sizes;
}

Division::Division(std::vector<int> boundaries, int n_shots)
    : boundaries_(std::move(boundaries)), n_shots_(n_shots) {
  if (n_shots_ < 1) throw ValidationError("division needs at least one shot");
  if (boundaries_.empty() || boundaries_.back() != n_shots_) {
    throw ValidationError("division must end at the last shot (t_K = N)");
  }
  if (boundaries_.front() < 1) throw ValidationError("division boundaries are 1-based");
  for (std::size_t i = 1; i < boundaries_.size(); ++i) {
    if (boundaries_[i] <= boundaries_[i - 1]) {
      throw ValidationError("division boundaries must be strictly increasing; offending index " +
                            std::to_string(i));
    }
  }
}

std::vector<int> Division::interior() const {
  return {boundaries_.begin(), boundaries_.end() - 1};
}

Division labels_to_division(const SceneLabels& labels) {
  const auto& l = labels.values();
  const int n = static_cast<int>(l.size());
  std::vector<int> b;
  for (int i = 0; i + 1 < n; ++i) {
    if (l[i + 1] > l[i]) b.push_back(i + 1);
  }
  b.push_back(n);
  return Division(std::move(b), n);
}

SceneLabels division_to_labels(const Division& div) {
  std::vector<int> l(static_cast<std::size_t>(div.n_shots()));
  int group = 0;
  for (int j = 1; j <= div.n_shots(); ++j) {
    if (j > div.boundaries()[static_cast<std::size_t>(group)]) ++group;
    l[static_cast<std::size_t>(j - 1)] = group + 1;
  }
  return SceneLabels(std::move(l));
}

}  // namespace osg
