#include "osg/embedding.hpp"

#include <cmath>
#include <random>

namespace osg {

namespace {

struct Trace {
  std::vector<Matrix> inputs;  // input to each layer, N x in
  std::vector<Matrix> pre;     // pre-activation of each layer, N x out
  Matrix output;
};

Trace run(const std::vector<Layer>& layers, const Matrix& rows) {
  Trace tr;
  Matrix h = rows;
  for (const Layer& l : layers) {
    tr.inputs.push_back(h);
    Matrix z = h * l.weight.transpose();
    z.rowwise() += l.bias.transpose();
    tr.pre.push_back(z);
    h = l.relu ? Matrix(z.cwiseMax(0.0)) : z;
  }
  tr.output = std::move(h);
  return tr;
}

}  // namespace

EmbeddingModel::EmbeddingModel(std::vector<Layer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw ValidationError("embedding model needs at least one layer");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const Layer& l = layers_[i];
    if (l.weight.rows() < 1 || l.weight.cols() < 1) throw ValidationError("empty layer weight");
    if (l.bias.size() != l.weight.rows()) {
      throw ValidationError("layer " + std::to_string(i) + ": bias size does not match weight rows");
    }
    if (i > 0 && l.weight.cols() != layers_[i - 1].weight.rows()) {
      throw ValidationError("layer " + std::to_string(i) + ": input size does not chain");
    }
  }
}

EmbeddingModel EmbeddingModel::initialize(Index input_dim, const std::vector<int>& widths,
                                          std::uint64_t seed) {
  if (widths.empty()) throw ValidationError("layer widths are empty");
  std::mt19937_64 rng(seed);
  std::vector<Layer> layers;
  Index in = input_dim;
  for (std::size_t i = 0; i < widths.size(); ++i) {
    const Index out = widths[i];
    if (out < 1) throw ValidationError("layer widths must be positive");
    const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
    std::uniform_real_distribution<double> dist(-limit, limit);
    Layer l{Matrix(out, in), Vector::Zero(out), i + 1 < widths.size()};
    for (Index r = 0; r < out; ++r) {
      for (Index c = 0; c < in; ++c) l.weight(r, c) = dist(rng);
    }
    layers.push_back(std::move(l));
    in = out;
  }
  return EmbeddingModel(std::move(layers));
}

Matrix EmbeddingModel::forward(const Matrix& rows) const {
  if (rows.cols() != input_dim()) {
    throw ValidationError("embedding expects dimension " + std::to_string(input_dim()) + ", got " +
                          std::to_string(rows.cols()));
  }
  return run(layers_, rows).output;
}

FeatureSequence EmbeddingModel::forward(const FeatureSequence& seq) const {
  return FeatureSequence(forward(seq.rows()));
}

Matrix cosine_distance_backward(const Matrix& embedded, const Matrix& dloss_dd) {
  const Index n = embedded.rows();
  if (dloss_dd.rows() != n || dloss_dd.cols() != n) {
    throw ValidationError("distance gradient shape does not match shot count");
  }
  const Vector norms = embedded.rowwise().norm();
  if ((norms.array() == 0.0).any()) throw ValidationError("embedded shot has zero norm");
  const Matrix unit = norms.cwiseInverse().asDiagonal() * embedded;
  Matrix g = dloss_dd;
  g.diagonal().setZero();
  const Matrix cos = unit * unit.transpose();
  // D_ij = (1 - u_i.u_j)/2 and dL = sum_ij G_ij dD_ij, so
  // dL/dy_i = -sum_j G_ij (u_j - cos_ij u_i) / |y_i|.
  const Vector weight = g.cwiseProduct(cos).rowwise().sum();
  Matrix dy = -(g * unit - weight.asDiagonal() * unit);
  return norms.cwiseInverse().asDiagonal() * dy;
}

ModelGradient backward(const EmbeddingModel& model, const FeatureSequence& seq, const Matrix& dloss_dd) {
  const auto& layers = model.layers();
  ModelGradient grad;
  for (const Layer& l : layers) {
    grad.weight.push_back(Matrix::Zero(l.weight.rows(), l.weight.cols()));
    grad.bias.push_back(Vector::Zero(l.bias.size()));
  }
  if (seq.size() < 2) return grad;

  const Trace tr = run(layers, seq.rows());
  Matrix delta = cosine_distance_backward(tr.output, dloss_dd);
  for (std::size_t li = layers.size(); li-- > 0;) {
    if (layers[li].relu) delta = delta.cwiseProduct((tr.pre[li].array() > 0.0).cast<double>().matrix());
    grad.weight[li] = delta.transpose() * tr.inputs[li];
    grad.bias[li] = delta.colwise().sum().transpose();
    if (li > 0) delta = delta * layers[li].weight;
  }
  return grad;
}

AdamOptimizer::AdamOptimizer(const EmbeddingModel& model, AdamConfig cfg) : cfg_(cfg) {
  if (!(cfg_.learning_rate > 0.0)) throw ValidationError("learning rate must be positive");
  for (const Layer& l : model.layers()) {
    m_w_.push_back(Matrix::Zero(l.weight.rows(), l.weight.cols()));
    v_w_.push_back(Matrix::Zero(l.weight.rows(), l.weight.cols()));
    m_b_.push_back(Vector::Zero(l.bias.size()));
    v_b_.push_back(Vector::Zero(l.bias.size()));
  }
}

void AdamOptimizer::step(EmbeddingModel& model, const ModelGradient& grad) {
  ++t_;
  const double c1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  const auto update = [&](auto& param, const auto& g, auto& m, auto& v) {
    m = cfg_.beta1 * m + (1.0 - cfg_.beta1) * g;
    v = cfg_.beta2 * v + (1.0 - cfg_.beta2) * g.cwiseProduct(g);
    param.array() -= cfg_.learning_rate * (m.array() / c1) / ((v.array() / c2).sqrt() + cfg_.epsilon);
  };
  auto& layers = model.layers();
  for (std::size_t i = 0; i < layers.size(); ++i) {
    update(layers[i].weight, grad.weight[i], m_w_[i], v_w_[i]);
    update(layers[i].bias, grad.bias[i], m_b_[i], v_b_[i]);
  }
}

}  // namespace osg
