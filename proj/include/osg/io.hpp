#pragma once

#include "osg/embedding.hpp"
#include "osg/metrics.hpp"
#include "osg/train.hpp"

#include "json.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace osg::io {

namespace fs = std::filesystem;

// Unreadable files and malformed contents. Messages carry the file path.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// %.17g, enough digits for an exact round trip.
std::string format_double(double v);

// Feature CSV: header "shot_id,f0,f1,...", then one row per shot with a
// 0-based consecutive shot_id.
FeatureSequence read_features(std::istream& in);
void write_features(std::ostream& out, const FeatureSequence& seq);
FeatureSequence load_features(const fs::path& path);
void save_features(const fs::path& path, const FeatureSequence& seq);

// Label CSV: header "shot_id,scene_id".
SceneLabels read_labels(std::istream& in);
void write_labels(std::ostream& out, const SceneLabels& labels);
SceneLabels load_labels(const fs::path& path);
void save_labels(const fs::path& path, const SceneLabels& labels);

/// {num_shots, k, boundaries (1-based), cost?, f_score?}
struct DivisionFile {
  Division division;
  std::optional<double> cost;
  std::optional<double> f_score;
};
nlohmann::json to_json(const DivisionFile& file);
DivisionFile division_from_json(const nlohmann::json& j);
DivisionFile load_division(const fs::path& path);
void save_division(const fs::path& path, const DivisionFile& file);

/// {input_dim, layers:[{rows, cols, weights (row-major), bias, relu}], seed, config}
nlohmann::json to_json(const EmbeddingModel& model, std::uint64_t seed, const nlohmann::json& config);
EmbeddingModel model_from_json(const nlohmann::json& j);
EmbeddingModel load_model(const fs::path& path);
void save_model(const fs::path& path, const EmbeddingModel& model, std::uint64_t seed,
                const nlohmann::json& config);
nlohmann::json config_to_json(const TrainConfig& cfg);

/// {coverage, overflow, f_score, per_scene:{c:[], o:[]}}
nlohmann::json to_json(const MetricsReport& report);

/// "epoch,mean_loss" rows.
void save_loss_log(const fs::path& path, const std::vector<double>& epoch_loss);

// T traces: header "epoch,t1..tN", one row per recorded epoch.
void write_trace(std::ostream& out, const std::vector<Vector>& trace);
std::vector<Vector> read_trace(std::istream& in);
void save_trace(const fs::path& path, const std::vector<Vector>& trace);
std::vector<Vector> load_trace(const fs::path& path);

/// Pairs `<name>.features.csv` with `<name>.labels.csv`, sorted by name.
/// Lists every unpaired file in the error.
std::vector<Video> load_corpus(const fs::path& dir);

void write_text(const fs::path& path, const std::string& text);

}  // namespace osg::io
