#include "osg/metrics.hpp"

#include <algorithm>

namespace osg {

namespace {

struct Span {
  int first;  // 1-based inclusive
  int last;
  int size() const { return last - first + 1; }
};

std::vector<Span> spans(const Division& div) {
  std::vector<Span> out;
  int prev = 0;
  for (int t : div.boundaries()) {
    out.push_back({prev + 1, t});
    prev = t;
  }
  return out;
}

int shared(const Span& a, const Span& b) {
  return std::max(0, std::min(a.last, b.last) - std::max(a.first, b.first) + 1);
}

void check_lengths(const Division& pred, const SceneLabels& gt) {
  if (static_cast<std::size_t>(pred.n_shots()) != gt.size()) {
    throw ValidationError("prediction covers " + std::to_string(pred.n_shots()) +
                          " shots but ground truth has " + std::to_string(gt.size()));
  }
}

double weighted(const std::vector<double>& per_scene, const std::vector<Span>& truth, int n_shots) {
  double sum = 0.0;
  for (std::size_t t = 0; t < truth.size(); ++t) sum += per_scene[t] * truth[t].size();
  return sum / n_shots;
}

}  // namespace

SceneScore coverage(const Division& pred, const SceneLabels& gt) {
  check_lengths(pred, gt);
  const auto predicted = spans(pred);
  const auto truth = spans(labels_to_division(gt));
  SceneScore out;
  for (const Span& s : truth) {
    int best = 0;
    for (const Span& p : predicted) best = std::max(best, shared(p, s));
    out.per_scene.push_back(static_cast<double>(best) / s.size());
  }
  out.value = weighted(out.per_scene, truth, pred.n_shots());
  return out;
}

SceneScore overflow(const Division& pred, const SceneLabels& gt) {
  check_lengths(pred, gt);
  const auto predicted = spans(pred);
  const auto truth = spans(labels_to_division(gt));
  SceneScore out;
  for (std::size_t t = 0; t < truth.size(); ++t) {
    const int neighbors = (t > 0 ? truth[t - 1].size() : 0) + (t + 1 < truth.size() ? truth[t + 1].size() : 0);
    if (neighbors == 0) {
      out.per_scene.push_back(0.0);
      continue;
    }
    int spill = 0;
    for (const Span& p : predicted) {
      const int common = shared(p, truth[t]);
      if (common > 0) spill += p.size() - common;
    }
    out.per_scene.push_back(std::min(1.0, static_cast<double>(spill) / neighbors));
  }
  out.value = weighted(out.per_scene, truth, pred.n_shots());
  return out;
}

double harmonic_f(double coverage, double overflow) {
  const double denom = coverage + (1.0 - overflow);
  return denom > 0.0 ? 2.0 * coverage * (1.0 - overflow) / denom : 0.0;
}

MetricsReport f_score(const Division& pred, const SceneLabels& gt) {
  SceneScore c = coverage(pred, gt);
  SceneScore o = overflow(pred, gt);
  MetricsReport r;
  r.coverage = c.value;
  r.overflow = o.value;
  r.f_score = harmonic_f(c.value, o.value);
  r.per_scene_coverage = std::move(c.per_scene);
  r.per_scene_overflow = std::move(o.per_scene);
  return r;
}

}  // namespace osg
