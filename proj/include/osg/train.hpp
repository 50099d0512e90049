#pragma once

#include "osg/distance.hpp"
#include "osg/embedding.hpp"
#include "osg/losses.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace osg {

enum class LossKind { kTriplet, kBlock, kBlockAdjacent, kProb };

std::string_view to_string(LossKind kind);
LossKind parse_loss_kind(std::string_view name);

struct TrainConfig {
  LossKind loss = LossKind::kProb;
  AdamConfig adam;
  int max_epochs = 200;
  double stop_ratio = 0.25;
  std::uint64_t seed = 0;
  std::vector<int> widths{64, 32};
  TripletConfig triplet;
  /// Index into the corpus of the video whose T vector is traced per epoch
  /// (prob loss only).
  int trace_video = 0;
};

struct Video {
  std::string name;
  FeatureSequence features;
  SceneLabels labels;
};

struct LossEval {
  double loss = 0.0;
  Matrix grad;  // dloss/dD
};

/// Loss and dloss/dD for one video's distance matrix. For the triplet loss,
/// `triplets` pins the mined set; otherwise it is mined from d. The prob loss
/// uses K = number of annotated scenes.
LossEval evaluate_loss(LossKind kind, const DistanceMatrix& d, const SceneLabels& labels,
                       const TrainConfig& cfg, const std::vector<Triplet>* triplets = nullptr);

/// Distance matrix of the embedded sequence.
DistanceMatrix embedded_matrix(const EmbeddingModel& model, const FeatureSequence& seq);

struct TrainLog {
  std::vector<double> epoch_loss;  // entry e-1 is epoch e's mean loss
  /// Row 0 is T before training, row e is T after epoch e. Empty unless the
  /// loss is prob.
  std::vector<Vector> trace;
  std::vector<std::string> warnings;
  bool stopped_early = false;
};

struct TrainResult {
  EmbeddingModel model;
  TrainLog log;
};

/// Per epoch: visit videos in a seeded shuffled order, one ADAM step per
/// video. Stops once an epoch's mean loss drops to stop_ratio times the first
/// epoch's, or after max_epochs.
TrainResult train(const std::vector<Video>& corpus, const TrainConfig& cfg);

}  // namespace osg
