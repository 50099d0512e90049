#include "osg/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace osg::io {

namespace {

using json = nlohmann::json;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) {
    while (!field.empty() && (field.back() == ' ' || field.back() == '\r')) field.pop_back();
    std::size_t start = field.find_first_not_of(' ');
    out.push_back(start == std::string::npos ? std::string() : field.substr(start));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, int line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError("line " + std::to_string(line) + ": '" + s + "' is not a number");
  }
  return v;
}

long parse_int(const std::string& s, int line) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw DataError("line " + std::to_string(line) + ": '" + s + "' is not an integer");
  }
  return v;
}

// Rows of a CSV whose first column is shot_id, header dropped.
std::vector<std::vector<std::string>> read_shot_rows(std::istream& in, const std::string& what) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  int lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \r\t") == std::string::npos) continue;
    auto fields = split_csv(line);
    if (first) {
      first = false;
      if (fields.front() == "shot_id") continue;
    }
    const long id = parse_int(fields.front(), lineno);
    if (id != static_cast<long>(rows.size())) {
      throw DataError(what + " line " + std::to_string(lineno) + ": shot_id " + std::to_string(id) +
                      " out of sequence (expected " + std::to_string(rows.size()) + ")");
    }
    rows.push_back(std::move(fields));
  }
  if (rows.empty()) throw DataError(what + " has no rows");
  return rows;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  return out;
}

template <typename Fn>
auto with_path(const fs::path& path, Fn&& fn) {
  try {
    return fn();
  } catch (const DataError& e) {
    throw DataError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw DataError(path.string() + ": " + e.what());
  } catch (const json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

json read_json(const fs::path& path) {
  auto in = open_in(path);
  return with_path(path, [&] { return json::parse(in); });
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  if (!out) throw DataError("failed writing '" + path.string() + "'");
}

FeatureSequence read_features(std::istream& in) {
  const auto rows = read_shot_rows(in, "feature file");
  const std::size_t dim = rows.front().size() - 1;
  if (dim == 0) throw DataError("feature file has no feature columns");
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(dim));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() - 1 != dim) {
      throw DataError("shot " + std::to_string(r) + " has " + std::to_string(rows[r].size() - 1) +
                      " features, expected " + std::to_string(dim));
    }
    for (std::size_t c = 0; c < dim; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) = parse_double(rows[r][c + 1], static_cast<int>(r));
    }
  }
  return FeatureSequence(std::move(m));
}

void write_features(std::ostream& out, const FeatureSequence& seq) {
  out << "shot_id";
  for (Index c = 0; c < seq.dim(); ++c) out << ",f" << c;
  out << "\n";
  for (Index r = 0; r < seq.size(); ++r) {
    out << r;
    for (Index c = 0; c < seq.dim(); ++c) out << ',' << format_double(seq.rows()(r, c));
    out << "\n";
  }
}

FeatureSequence load_features(const fs::path& path) {
  auto in = open_in(path);
  return with_path(path, [&] { return read_features(in); });
}

void save_features(const fs::path& path, const FeatureSequence& seq) {
  std::ostringstream ss;
  write_features(ss, seq);
  write_text(path, ss.str());
}

SceneLabels read_labels(std::istream& in) {
  const auto rows = read_shot_rows(in, "label file");
  std::vector<int> labels;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != 2) throw DataError("label row " + std::to_string(r) + " needs shot_id,scene_id");
    labels.push_back(static_cast<int>(parse_int(rows[r][1], static_cast<int>(r))));
  }
  return SceneLabels(std::move(labels));
}

void write_labels(std::ostream& out, const SceneLabels& labels) {
  out << "shot_id,scene_id\n";
  for (std::size_t i = 0; i < labels.size(); ++i) out << i << ',' << labels[i] << "\n";
}

SceneLabels load_labels(const fs::path& path) {
  auto in = open_in(path);
  return with_path(path, [&] { return read_labels(in); });
}

void save_labels(const fs::path& path, const SceneLabels& labels) {
  std::ostringstream ss;
  write_labels(ss, labels);
  write_text(path, ss.str());
}

json to_json(const DivisionFile& file) {
  json j;
  j["num_shots"] = file.division.n_shots();
  j["k"] = file.division.num_groups();
  j["boundaries"] = file.division.boundaries();
  if (file.cost) j["cost"] = *file.cost;
  if (file.f_score) j["f_score"] = *file.f_score;
  return j;
}

DivisionFile division_from_json(const json& j) {
  Division div(j.at("boundaries").get<std::vector<int>>(), j.at("num_shots").get<int>());
  if (j.contains("k") && j.at("k").get<int>() != div.num_groups()) {
    throw DataError("division k does not match the boundary count");
  }
  DivisionFile f{std::move(div), std::nullopt, std::nullopt};
  if (j.contains("cost")) f.cost = j.at("cost").get<double>();
  if (j.contains("f_score")) f.f_score = j.at("f_score").get<double>();
  return f;
}

DivisionFile load_division(const fs::path& path) {
  const json j = read_json(path);
  return with_path(path, [&] { return division_from_json(j); });
}

void save_division(const fs::path& path, const DivisionFile& file) { write_json(path, to_json(file)); }

json to_json(const EmbeddingModel& model, std::uint64_t seed, const json& config) {
  json layers = json::array();
  for (const Layer& l : model.layers()) {
    std::vector<double> w;
    w.reserve(static_cast<std::size_t>(l.weight.size()));
    for (Index r = 0; r < l.weight.rows(); ++r) {
      for (Index c = 0; c < l.weight.cols(); ++c) w.push_back(l.weight(r, c));
    }
    layers.push_back({{"rows", l.weight.rows()},
                      {"cols", l.weight.cols()},
                      {"weights", w},
                      {"bias", std::vector<double>(l.bias.data(), l.bias.data() + l.bias.size())},
                      {"relu", l.relu}});
  }
  return {{"input_dim", model.input_dim()}, {"layers", layers}, {"seed", seed}, {"config", config}};
}

EmbeddingModel model_from_json(const json& j) {
  std::vector<Layer> layers;
  for (const json& jl : j.at("layers")) {
    const Index rows = jl.at("rows").get<Index>();
    const Index cols = jl.at("cols").get<Index>();
    const auto w = jl.at("weights").get<std::vector<double>>();
    const auto b = jl.at("bias").get<std::vector<double>>();
    if (rows < 1 || cols < 1 || static_cast<Index>(w.size()) != rows * cols) {
      throw DataError("layer weights do not match rows x cols");
    }
    Layer l{Matrix(rows, cols), Vector(static_cast<Index>(b.size())), jl.at("relu").get<bool>()};
    for (Index r = 0; r < rows; ++r) {
      for (Index c = 0; c < cols; ++c) l.weight(r, c) = w[static_cast<std::size_t>(r * cols + c)];
    }
    for (std::size_t i = 0; i < b.size(); ++i) l.bias(static_cast<Index>(i)) = b[i];
    layers.push_back(std::move(l));
  }
  EmbeddingModel model(std::move(layers));
  if (model.input_dim() != j.at("input_dim").get<Index>()) {
    throw DataError("input_dim does not match the first layer");
  }
  return model;
}

EmbeddingModel load_model(const fs::path& path) {
  const json j = read_json(path);
  return with_path(path, [&] { return model_from_json(j); });
}

void save_model(const fs::path& path, const EmbeddingModel& model, std::uint64_t seed, const json& config) {
  write_json(path, to_json(model, seed, config));
}

json config_to_json(const TrainConfig& cfg) {
  return {{"loss", std::string(to_string(cfg.loss))},
          {"learning_rate", cfg.adam.learning_rate},
          {"beta1", cfg.adam.beta1},
          {"beta2", cfg.adam.beta2},
          {"epsilon", cfg.adam.epsilon},
          {"max_epochs", cfg.max_epochs},
          {"stop_ratio", cfg.stop_ratio},
          {"margin", cfg.triplet.margin},
          {"widths", cfg.widths}};
}

json to_json(const MetricsReport& report) {
  return {{"coverage", report.coverage},
          {"overflow", report.overflow},
          {"f_score", report.f_score},
          {"per_scene", {{"c", report.per_scene_coverage}, {"o", report.per_scene_overflow}}}};
}

void save_loss_log(const fs::path& path, const std::vector<double>& epoch_loss) {
  std::ostringstream ss;
  ss << "epoch,mean_loss\n";
  for (std::size_t e = 0; e < epoch_loss.size(); ++e) ss << e + 1 << ',' << format_double(epoch_loss[e]) << "\n";
  write_text(path, ss.str());
}

void write_trace(std::ostream& out, const std::vector<Vector>& trace) {
  const Index n = trace.empty() ? 0 : trace.front().size();
  out << "epoch";
  for (Index i = 1; i <= n; ++i) out << ",t" << i;
  out << "\n";
  for (std::size_t e = 0; e < trace.size(); ++e) {
    out << e;
    for (Index i = 0; i < trace[e].size(); ++i) out << ',' << format_double(trace[e](i));
    out << "\n";
  }
}

std::vector<Vector> read_trace(std::istream& in) {
  std::vector<Vector> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \r\t") == std::string::npos) continue;
    const auto fields = split_csv(line);
    if (fields.front() == "epoch") continue;
    if (parse_int(fields.front(), lineno) != static_cast<long>(out.size())) {
      throw DataError("trace line " + std::to_string(lineno) + ": epochs out of sequence");
    }
    Vector t(static_cast<Index>(fields.size() - 1));
    for (std::size_t i = 1; i < fields.size(); ++i) t(static_cast<Index>(i - 1)) = parse_double(fields[i], lineno);
    if (!out.empty() && t.size() != out.front().size()) throw DataError("trace rows differ in length");
    out.push_back(std::move(t));
  }
  return out;
}

void save_trace(const fs::path& path, const std::vector<Vector>& trace) {
  std::ostringstream ss;
  write_trace(ss, trace);
  write_text(path, ss.str());
}

std::vector<Vector> load_trace(const fs::path& path) {
  auto in = open_in(path);
  return with_path(path, [&] { return read_trace(in); });
}

std::vector<Video> load_corpus(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw DataError("'" + dir.string() + "' is not a directory");
  constexpr std::string_view kFeat = ".features.csv";
  constexpr std::string_view kLab = ".labels.csv";
  std::map<std::string, std::pair<bool, bool>> seen;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.size() > kFeat.size() && name.ends_with(kFeat)) {
      seen[name.substr(0, name.size() - kFeat.size())].first = true;
    } else if (name.size() > kLab.size() && name.ends_with(kLab)) {
      seen[name.substr(0, name.size() - kLab.size())].second = true;
    }
  }
  std::string missing;
  for (const auto& [name, has] : seen) {
    if (!has.first) missing += " " + name + std::string(kFeat);
    if (!has.second) missing += " " + name + std::string(kLab);
  }
  if (!missing.empty()) throw DataError("corpus '" + dir.string() + "' is missing:" + missing);
  if (seen.empty()) throw DataError("corpus '" + dir.string() + "' has no videos");

  std::vector<Video> videos;
  for (const auto& [name, has] : seen) {
    FeatureSequence f = load_features(dir / (name + std::string(kFeat)));
    SceneLabels l = load_labels(dir / (name + std::string(kLab)));
    if (l.size() != static_cast<std::size_t>(f.size())) {
      throw DataError("video '" + name + "': " + std::to_string(f.size()) + " shots of features but " +
                      std::to_string(l.size()) + " labels");
    }
    videos.push_back({name, std::move(f), std::move(l)});
  }
  return videos;
}

}  // namespace osg::io
