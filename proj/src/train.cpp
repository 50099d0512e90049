#include "osg/train.hpp"

#include "osg/prob.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace osg {

std::string_view to_string(LossKind kind) {
  switch (kind) {
    case LossKind::kTriplet: return "triplet";
    case LossKind::kBlock: return "block";
    case LossKind::kBlockAdjacent: return "block-adjacent";
    case LossKind::kProb: return "prob";
  }
  return "unknown";
}

LossKind parse_loss_kind(std::string_view name) {
  for (LossKind k : {LossKind::kTriplet, LossKind::kBlock, LossKind::kBlockAdjacent, LossKind::kProb}) {
    if (to_string(k) == name) return k;
  }
  throw ValidationError("unknown loss '" + std::string(name) +
                        "' (expected triplet, block, block-adjacent or prob)");
}

LossEval evaluate_loss(LossKind kind, const DistanceMatrix& d, const SceneLabels& labels,
                       const TrainConfig& cfg, const std::vector<Triplet>* triplets) {
  if (labels.size() != static_cast<std::size_t>(d.size())) {
    throw ValidationError("labels and features disagree on shot count");
  }
  switch (kind) {
    case LossKind::kTriplet: {
      std::vector<Triplet> mined;
      if (triplets == nullptr) {
        mined = mine_semi_hard(d.values(), labels, cfg.triplet);
        triplets = &mined;
      }
      return {triplet_loss(d.values(), *triplets, cfg.triplet),
              triplet_loss_grad(d.values(), *triplets, cfg.triplet)};
    }
    case LossKind::kBlock:
    case LossKind::kBlockAdjacent: {
      const TargetMatrix target = make_target(labels, kind == LossKind::kBlockAdjacent);
      return {block_loss(d.values(), target), block_loss_grad(d.values(), target)};
    }
    case LossKind::kProb: {
      ProbLossResult r = ce_loss_with_grad(d, labels.num_scenes(), labels);
      return {r.loss, std::move(r.grad)};
    }
  }
  throw ValidationError("unknown loss kind");
}

DistanceMatrix embedded_matrix(const EmbeddingModel& model, const FeatureSequence& seq) {
  return build_matrix(model.forward(seq));
}

TrainResult train(const std::vector<Video>& corpus, const TrainConfig& cfg) {
  if (corpus.empty()) throw ValidationError("training corpus is empty");
  if (!(cfg.stop_ratio > 0.0 && cfg.stop_ratio < 1.0)) throw ValidationError("stop ratio must be in (0, 1)");
  if (cfg.max_epochs < 0) throw ValidationError("max epochs must be >= 0");

  TrainResult result{EmbeddingModel::initialize(corpus.front().features.dim(), cfg.widths, cfg.seed), {}};
  TrainLog& log = result.log;

  const bool needs_division = cfg.loss == LossKind::kTriplet || cfg.loss == LossKind::kProb;
  std::vector<std::size_t> usable;
  for (std::size_t v = 0; v < corpus.size(); ++v) {
    const Video& video = corpus[v];
    if (video.features.dim() != corpus.front().features.dim()) {
      throw ValidationError("video '" + video.name + "' has a different feature dimension");
    }
    if (video.labels.size() != static_cast<std::size_t>(video.features.size())) {
      throw ValidationError("video '" + video.name + "': labels and features disagree on shot count");
    }
    if (needs_division && video.labels.num_scenes() < 2) {
      log.warnings.push_back("skipping '" + video.name + "': a single scene has no division to learn");
      continue;
    }
    usable.push_back(v);
  }
  if (usable.empty()) throw ValidationError("every video in the corpus was skipped");

  const bool tracing = cfg.loss == LossKind::kProb;
  const std::size_t traced = static_cast<std::size_t>(std::clamp(cfg.trace_video, 0, static_cast<int>(corpus.size()) - 1));
  const bool trace_ok = tracing && corpus[traced].labels.num_scenes() >= 2;
  const auto record_trace = [&] {
    if (!trace_ok) return;
    const Video& v = corpus[traced];
    const DistanceMatrix d = embedded_matrix(result.model, v.features);
    log.trace.push_back(division_scores(prob_table(d, v.labels.num_scenes())).t);
  };

  if (cfg.max_epochs == 0) return result;
  record_trace();

  AdamOptimizer adam(result.model, cfg.adam);
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::size_t> order = usable;
  double first_loss = 0.0;
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double total = 0.0;
    for (std::size_t v : order) {
      const Video& video = corpus[v];
      const DistanceMatrix d = embedded_matrix(result.model, video.features);
      const LossEval eval = evaluate_loss(cfg.loss, d, video.labels, cfg);
      total += eval.loss;
      adam.step(result.model, backward(result.model, video.features, eval.grad));
    }
    const double mean = total / static_cast<double>(order.size());
    log.epoch_loss.push_back(mean);
    record_trace();
    if (epoch == 1) first_loss = mean;
    if (mean <= cfg.stop_ratio * first_loss) {
      log.stopped_early = epoch < cfg.max_epochs;
      break;
    }
  }
  return result;
}

}  // namespace osg
