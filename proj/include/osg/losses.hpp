#pragma once

#include "osg/model.hpp"

#include <array>
#include <vector>

namespace osg {

// Ideal distance matrix for a labeling: 0 within a scene, 1 across scenes.
// mask marks the entries the loss looks at.
struct TargetMatrix {
  Matrix values;
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> mask;
};

/// adjacent_only restricts the mask to pairs whose scenes differ by at most one.
TargetMatrix make_target(const SceneLabels& labels, bool adjacent_only);

/// Frobenius norm of (D - D*) over the masked entries.
double block_loss(const Matrix& d, const TargetMatrix& target);

/// Gradient of block_loss; zero matrix when the loss is zero.
Matrix block_loss_grad(const Matrix& d, const TargetMatrix& target);

enum class HingeMode {
  kMax,         // max(z, 0)
  kMin,  // min(z, 0); never positive, so it never trains
};

struct TripletConfig {
  double margin = 0.5;
  HingeMode hinge = HingeMode::kMax;
};

struct Triplet {
  int anchor;
  int positive;
  int negative;

  bool operator==(const Triplet&) const = default;
};

/// All (a, p, n) with L(a) = L(p), a != p, L(a) != L(n) and
/// D(a,p) < D(a,n) < D(a,p) + margin, in lexicographic order.
std::vector<Triplet> mine_semi_hard(const Matrix& d, const SceneLabels& labels,
                                    const TripletConfig& cfg);

/// Mean hinge over a fixed set of triplets; 0 for an empty set.
double triplet_loss(const Matrix& d, const std::vector<Triplet>& triplets, const TripletConfig& cfg);

Matrix triplet_loss_grad(const Matrix& d, const std::vector<Triplet>& triplets,
                         const TripletConfig& cfg);

}  // namespace osg
