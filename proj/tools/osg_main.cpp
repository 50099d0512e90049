// Command-line front end: segment, train, eval, elbow, synth, trace.

#include "osg/io.hpp"
#include "osg/k_estim.hpp"
#include "osg/prob.hpp"
#include "osg/solver.hpp"
#include "osg/synth.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <sstream>

namespace {

using osg::io::DataError;
using json = nlohmann::json;

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

osg::FeatureSequence embed(const osg::FeatureSequence& seq, const std::string& model_path) {
  if (model_path.empty()) return seq;
  const osg::EmbeddingModel model = osg::io::load_model(model_path);
  return model.forward(seq);
}

std::vector<int> parse_widths(const std::string& text) {
  std::vector<int> widths;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      widths.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--widths", "'" + text + "' is not a comma-separated list of integers");
    }
  }
  if (widths.empty()) throw CLI::ValidationError("--widths", "no layer widths given");
  return widths;
}

struct SegmentArgs {
  std::string features, features2, model, model2, gt, out;
  int k = 0;
  bool estimate_k = false;
};

void run_segment(const SegmentArgs& a) {
  const osg::FeatureSequence x = embed(osg::io::load_features(a.features), a.model);
  const osg::DistanceMatrix dx = osg::build_matrix(x);
  const int k = a.estimate_k || a.k == 0 ? osg::estimate_k(dx) : a.k;

  osg::io::DivisionFile file{osg::Division({static_cast<int>(dx.size())}, static_cast<int>(dx.size())),
                             std::nullopt, std::nullopt};
  if (a.features2.empty()) {
    osg::Solution sol = osg::solve(dx, k);
    file.cost = sol.table.cost(1, k);
    file.division = std::move(sol.division);
  } else {
    const osg::FeatureSequence y = embed(osg::io::load_features(a.features2), a.model2);
    if (y.size() != x.size()) {
      throw osg::ValidationError("--features2 has " + std::to_string(y.size()) + " shots, --features has " +
                                 std::to_string(x.size()));
    }
    file.division = osg::solve_fused(dx, osg::build_matrix(y), k).division;
  }
  if (!a.gt.empty()) file.f_score = osg::f_score(file.division, osg::io::load_labels(a.gt)).f_score;
  osg::io::save_division(a.out, file);
}

struct TrainArgs {
  std::string corpus, loss = "prob", out, trace, loss_log;
  double lr = 5e-3, margin = 0.5, stop_ratio = 0.25;
  int max_epochs = 200;
  std::uint64_t seed = 0;
  std::string widths = "64,32";
};

void run_train(const TrainArgs& a) {
  osg::TrainConfig cfg;
  cfg.loss = osg::parse_loss_kind(a.loss);
  cfg.adam.learning_rate = a.lr;
  cfg.triplet.margin = a.margin;
  cfg.stop_ratio = a.stop_ratio;
  cfg.max_epochs = a.max_epochs;
  cfg.seed = a.seed;
  cfg.widths = parse_widths(a.widths);

  const std::vector<osg::Video> corpus = osg::io::load_corpus(a.corpus);
  const osg::TrainResult result = osg::train(corpus, cfg);
  for (const std::string& w : result.log.warnings) std::cerr << "warning: " << w << "\n";

  osg::io::save_model(a.out, result.model, cfg.seed, osg::io::config_to_json(cfg));
  osg::io::save_loss_log(a.loss_log.empty() ? a.out + ".loss.csv" : a.loss_log, result.log.epoch_loss);
  if (!a.trace.empty()) {
    if (cfg.loss != osg::LossKind::kProb) {
      std::cerr << "warning: --trace is only recorded for --loss prob\n";
    } else {
      osg::io::save_trace(a.trace, result.log.trace);
    }
  }
  std::cerr << "trained " << result.log.epoch_loss.size() << " epochs on " << corpus.size() << " videos"
            << (result.log.stopped_early ? " (stop ratio reached)" : "") << "\n";
}

void run_eval(const std::string& pred, const std::string& gt) {
  const osg::io::DivisionFile div = osg::io::load_division(pred);
  const osg::SceneLabels labels = osg::io::load_labels(gt);
  std::cout << osg::io::to_json(osg::f_score(div.division, labels)).dump(2) << "\n";
}

void run_elbow(const std::string& features, const std::string& model) {
  const osg::DistanceMatrix d = osg::build_matrix(embed(osg::io::load_features(features), model));
  const osg::SingularSpectrum s = osg::singular_spectrum(d);
  json j;
  j["k"] = d.size() == 1 ? 1 : osg::estimate_k(d);
  j["log_singular_values"] = std::vector<double>(s.log_values.data(), s.log_values.data() + s.log_values.size());
  std::cout << j.dump(2) << "\n";
}

struct SynthArgs {
  osg::SynthSpec spec;
  std::string shots = "3:10";
  std::string out;
  int videos = 1;
};

void run_synth(SynthArgs a) {
  const auto colon = a.shots.find(':');
  try {
    if (colon == std::string::npos) throw std::invalid_argument("missing ':'");
    a.spec.min_shots = std::stoi(a.shots.substr(0, colon));
    a.spec.max_shots = std::stoi(a.shots.substr(colon + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--shots", "expected MIN:MAX, got '" + a.shots + "'");
  }
  const std::uint64_t base_seed = a.spec.seed;
  for (int v = 0; v < a.videos; ++v) {
    std::string prefix = a.out;
    if (a.videos > 1) {
      char suffix[16];
      std::snprintf(suffix, sizeof suffix, "-%03d", v);
      prefix += suffix;
    }
    a.spec.seed = base_seed + static_cast<std::uint64_t>(v);
    const osg::SynthVideo video = osg::generate(a.spec);
    osg::io::save_features(prefix + ".features.csv", video.features);
    osg::io::save_labels(prefix + ".labels.csv", video.labels);
  }
}

void run_trace(const std::string& trace_path, const std::string& gt) {
  const std::vector<osg::Vector> trace = osg::io::load_trace(trace_path);
  const osg::SceneLabels labels = osg::io::load_labels(gt);
  const std::vector<int> divisions = osg::labels_to_division(labels).interior();
  json rows = json::array();
  for (std::size_t e = 0; e < trace.size(); ++e) {
    if (trace[e].size() != static_cast<osg::Index>(labels.size())) {
      throw DataError(trace_path + ": trace length does not match the label count");
    }
    double mean = 0.0;
    for (int i : divisions) mean += trace[e](i - 1);
    if (!divisions.empty()) mean /= static_cast<double>(divisions.size());
    rows.push_back({{"epoch", e}, {"mean_t_at_divisions", mean}});
  }
  std::cout << rows.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal sequential grouping: segment shot sequences into scenes"};
  app.require_subcommand(1);

  SegmentArgs seg;
  auto* segment = app.add_subcommand("segment", "Divide a feature sequence into K contiguous groups");
  segment->add_option("--features", seg.features, "Feature CSV")->required();
  segment->add_option("--features2", seg.features2, "Second-modality feature CSV (fused solve)");
  auto* k_opt = segment->add_option("--k", seg.k, "Number of groups")->check(CLI::PositiveNumber);
  auto* est_opt = segment->add_flag("--estimate-k", seg.estimate_k, "Estimate K from the log-elbow");
  k_opt->excludes(est_opt);
  segment->add_option("--model", seg.model, "Embedding model applied to --features");
  segment->add_option("--model2", seg.model2, "Embedding model applied to --features2");
  segment->add_option("--gt", seg.gt, "Ground-truth labels; adds f_score to the output");
  segment->add_option("--out", seg.out, "Division JSON")->required();

  TrainArgs tr;
  auto* train = app.add_subcommand("train", "Train an embedding with one of the OSG losses");
  train->add_option("--corpus", tr.corpus, "Directory of <name>.features.csv / <name>.labels.csv")->required();
  train->add_option("--loss", tr.loss, "triplet | block | block-adjacent | prob")
      ->check(CLI::IsMember({"triplet", "block", "block-adjacent", "prob"}));
  train->add_option("--lr", tr.lr, "ADAM learning rate")->capture_default_str();
  train->add_option("--margin", tr.margin, "Triplet margin")->capture_default_str();
  train->add_option("--stop-ratio", tr.stop_ratio, "Stop once the epoch loss falls to this fraction of epoch 1")
      ->capture_default_str();
  train->add_option("--max-epochs", tr.max_epochs, "Epoch cap")->capture_default_str();
  train->add_option("--seed", tr.seed, "Seed for initialization and video order")->capture_default_str();
  train->add_option("--widths", tr.widths, "Comma-separated layer widths")->capture_default_str();
  train->add_option("--out", tr.out, "Model JSON")->required();
  train->add_option("--trace", tr.trace, "Per-epoch T trace CSV (prob loss)");
  train->add_option("--loss-log", tr.loss_log, "Epoch loss CSV (default: <out>.loss.csv)");

  std::string pred, gt;
  auto* eval = app.add_subcommand("eval", "Coverage / overflow / F-score of a division");
  eval->add_option("--pred", pred, "Division JSON")->required();
  eval->add_option("--gt", gt, "Ground-truth label CSV")->required();

  std::string elbow_features, elbow_model;
  auto* elbow = app.add_subcommand("elbow", "Estimate K and print the log singular spectrum");
  elbow->add_option("--features", elbow_features, "Feature CSV")->required();
  elbow->add_option("--model", elbow_model, "Embedding model");

  SynthArgs sy;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic clustered shot sequence");
  synth->add_option("--scenes", sy.spec.n_scenes, "Number of scenes")->required();
  synth->add_option("--shots", sy.shots, "Shots per scene, MIN:MAX")->capture_default_str();
  synth->add_option("--dim", sy.spec.dim, "Feature dimension")->capture_default_str();
  synth->add_option("--sigma", sy.spec.sigma, "Intra-scene noise stddev")->capture_default_str();
  synth->add_option("--separation", sy.spec.min_center_distance, "Minimum center distance")
      ->capture_default_str();
  synth->add_option("--seed", sy.spec.seed, "Seed")->capture_default_str();
  synth->add_option("--videos", sy.videos, "Number of videos (seeds seed..seed+V-1)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--out", sy.out, "Output prefix")->required();

  std::string trace_path, trace_gt;
  auto* trace = app.add_subcommand("trace", "Mean division score at ground-truth boundaries per epoch");
  trace->add_option("--trace", trace_path, "Trace CSV written by train --trace")->required();
  trace->add_option("--gt", trace_gt, "Ground-truth label CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*segment) run_segment(seg);
    if (*train) run_train(tr);
    if (*eval) run_eval(pred, gt);
    if (*elbow) run_elbow(elbow_features, elbow_model);
    if (*synth) run_synth(sy);
    if (*trace) run_trace(trace_path, trace_gt);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
  return 0;
}
