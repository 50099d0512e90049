#pragma once

#include "osg/distance.hpp"

#include <cstdint>
#include <vector>

namespace osg {

struct SynthSpec {
  int n_scenes = 3;
  int min_shots = 3;
  int max_shots = 10;
  int dim = 16;
  /// Lower bound on the normalized cosine distance between scene centers.
  double min_center_distance = 0.25;
  /// Stddev of the isotropic noise added to each shot before renormalizing.
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

struct SynthVideo {
  FeatureSequence features;
  SceneLabels labels;
};

/// Unit-norm shots clustered around one random center per scene.
SynthVideo generate(const SynthSpec& spec);

/// 0 inside the diagonal blocks, 1 elsewhere.
DistanceMatrix ideal_block_matrix(const std::vector<int>& block_sizes);

}  // namespace osg
