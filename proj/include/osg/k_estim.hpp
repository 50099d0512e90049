#pragma once

#include "osg/distance.hpp"

namespace osg {

inline constexpr double kSpectrumFloor = 1e-12;

/// Log singular values of D, descending, floored at epsilon before the log.
struct SingularSpectrum {
  Vector log_values;
  double epsilon = kSpectrumFloor;
};

SingularSpectrum singular_spectrum(const DistanceMatrix& d, double epsilon = kSpectrumFloor);

// Elbow of the log-spectrum graph: the point farthest from the chord joining
// its first and last points. Returns the number of points that precede it,
// which for a block-diagonal matrix is the block count. A flat spectrum
// yields 1.
int log_elbow(const SingularSpectrum& spectrum);

/// log_elbow(singular_spectrum(d)), clamped to [1, N].
int estimate_k(const DistanceMatrix& d);

}  // namespace osg
