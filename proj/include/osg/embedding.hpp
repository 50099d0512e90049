#pragma once

#include "osg/model.hpp"

#include <cstdint>
#include <vector>

namespace osg {

struct Layer {
  Matrix weight;  // out x in
  Vector bias;    // out
  bool relu = false;
};

/// Stack of affine layers, ReLU on all but the last. Applied per shot.
class EmbeddingModel {
 public:
  explicit EmbeddingModel(std::vector<Layer> layers);

  /// Glorot-uniform weights in +-sqrt(6 / (in + out)), zero biases. widths
  /// lists every layer's output size; the last entry is the embedding size.
  static EmbeddingModel initialize(Index input_dim, const std::vector<int>& widths, std::uint64_t seed);

  Index input_dim() const { return layers_.front().weight.cols(); }
  Index output_dim() const { return layers_.back().weight.rows(); }
  const std::vector<Layer>& layers() const { return layers_; }
  std::vector<Layer>& layers() { return layers_; }

  /// Row-per-shot input to row-per-shot output.
  Matrix forward(const Matrix& rows) const;
  FeatureSequence forward(const FeatureSequence& seq) const;

 private:
  std::vector<Layer> layers_;
};

struct ModelGradient {
  std::vector<Matrix> weight;
  std::vector<Vector> bias;
};

/// dLoss/dY for Y -> D(Y) with the normalized cosine distance, given the
/// symmetric dLoss/dD.
Matrix cosine_distance_backward(const Matrix& embedded, const Matrix& dloss_dd);

/// Parameter gradients for a loss that depends on the embedded sequence only
/// through its distance matrix.
ModelGradient backward(const EmbeddingModel& model, const FeatureSequence& seq, const Matrix& dloss_dd);

struct AdamConfig {
  double learning_rate = 5e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

class AdamOptimizer {
 public:
  AdamOptimizer(const EmbeddingModel& model, AdamConfig cfg);

  void step(EmbeddingModel& model, const ModelGradient& grad);
  long steps() const { return t_; }

 private:
  AdamConfig cfg_;
  long t_ = 0;
  std::vector<Matrix> m_w_, v_w_;
  std::vector<Vector> m_b_, v_b_;
};

}  // namespace osg
