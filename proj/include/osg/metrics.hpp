#pragma once

#include "osg/model.hpp"

#include <vector>

namespace osg {

struct SceneScore {
  double value = 0.0;              // shot-weighted average over ground-truth scenes
  std::vector<double> per_scene;  // one entry per ground-truth scene
};

struct MetricsReport {
  double coverage = 0.0;
  double overflow = 0.0;
  double f_score = 0.0;
  std::vector<double> per_scene_coverage;
  std::vector<double> per_scene_overflow;
};

/// Fraction of each ground-truth scene captured by its best-overlapping
/// predicted scene.
SceneScore coverage(const Division& pred, const SceneLabels& gt);

/// How far the predicted scenes touching a ground-truth scene spill outside
/// it, relative to the sizes of its two neighbors (missing neighbors count 0).
/// Clamped to [0, 1]; 0 when the scene has no neighbors.
SceneScore overflow(const Division& pred, const SceneLabels& gt);

/// Harmonic mean of C and 1 - O, or 0 when both vanish.
double harmonic_f(double coverage, double overflow);

MetricsReport f_score(const Division& pred, const SceneLabels& gt);

}  // namespace osg
