#include "osg/synth.hpp"

#include <random>

namespace osg {

namespace {

constexpr long kMaxCenterAttempts = 100000;

Vector random_unit(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(dim);
  do {
    for (int i = 0; i < dim; ++i) v(i) = normal(rng);
  } while (v.squaredNorm() == 0.0);
  return v.normalized();
}

}  // namespace

SynthVideo generate(const SynthSpec& spec) {
  if (spec.n_scenes < 1) throw ValidationError("synth: need at least one scene");
  if (spec.min_shots < 1 || spec.max_shots < spec.min_shots) {
    throw ValidationError("synth: shots range must satisfy 1 <= min <= max");
  }
  if (spec.dim < 2) throw ValidationError("synth: feature dimension must be >= 2");
  if (!(spec.sigma >= 0.0)) throw ValidationError("synth: sigma must be >= 0");

  std::mt19937_64 rng(spec.seed);
  std::vector<Vector> centers;
  long attempts = 0;
  while (static_cast<int>(centers.size()) < spec.n_scenes) {
    if (++attempts > kMaxCenterAttempts) {
      throw ValidationError("synth: could not place " + std::to_string(spec.n_scenes) +
                            " separated centers in dimension " + std::to_string(spec.dim) +
                            "; use a larger dimension or a smaller separation");
    }
    Vector c = random_unit(rng, spec.dim);
    bool far = true;
    for (const Vector& o : centers) far = far && cosine_distance(c, o) >= spec.min_center_distance;
    if (far) centers.push_back(std::move(c));
  }

  std::uniform_int_distribution<int> shots(spec.min_shots, spec.max_shots);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<Vector> rows;
  std::vector<int> labels;
  for (int s = 0; s < spec.n_scenes; ++s) {
    const int count = shots(rng);
    for (int j = 0; j < count; ++j) {
      Vector x;
      do {
        x = centers[static_cast<std::size_t>(s)];
        if (spec.sigma > 0.0) {
          for (int i = 0; i < spec.dim; ++i) x(i) += spec.sigma * noise(rng);
        }
      } while (x.squaredNorm() == 0.0);
      rows.push_back(x.normalized());
      labels.push_back(s + 1);
    }
  }
  Matrix m(static_cast<Index>(rows.size()), spec.dim);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Index>(i)) = rows[i].transpose();
  return {FeatureSequence(std::move(m)), SceneLabels(std::move(labels))};
}

DistanceMatrix ideal_block_matrix(const std::vector<int>& block_sizes) {
  std::vector<int> label;
  for (std::size_t b = 0; b < block_sizes.size(); ++b) {
    if (block_sizes[b] < 1) throw ValidationError("block sizes must be >= 1");
    label.insert(label.end(), static_cast<std::size_t>(block_sizes[b]), static_cast<int>(b));
  }
  if (label.empty()) throw ValidationError("no blocks given");
  const Index n = static_cast<Index>(label.size());
  Matrix d(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) d(i, j) = label[static_cast<std::size_t>(i)] == label[static_cast<std::size_t>(j)] ? 0.0 : 1.0;
  }
  return DistanceMatrix::from_values(std::move(d));
}

}  // namespace osg
