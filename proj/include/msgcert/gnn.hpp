/* Copyright 2026 The msgcert Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Two-layer graph convolutional network with a trainable ablation token and
// an optional skip connection, trained with hand-written backpropagation.
//
//   H1     = relu(P X W1)
//   logits = P H1 W2  [+ relu(X_clean W1) W2 when skip is on]
//
// P is the symmetric normalized adjacency with self-loops,
// P[v][u] = 1 / sqrt((indeg(v) + 1) (indeg(u) + 1)), rebuilt for every
// smoothed sample. X holds the (possibly ablated) node features.

#ifndef MSGCERT_GNN_HPP
#define MSGCERT_GNN_HPP

#include <Eigen/Sparse>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "msgcert/detail/text.hpp"
#include "msgcert/error.hpp"
#include "msgcert/graph.hpp"
#include "msgcert/random.hpp"
#include "msgcert/smoothing.hpp"

namespace msgcert {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct GnnModel {
  Matrix W1;     ///< d x h
  Matrix W2;     ///< h x C
  Vector token;  ///< length d
  bool skip = false;

  std::size_t input_dim() const { return static_cast<std::size_t>(W1.rows()); }
  std::size_t hidden() const { return static_cast<std::size_t>(W1.cols()); }
  std::size_t classes() const { return static_cast<std::size_t>(W2.cols()); }

  void validate() const {
    if (W2.rows() != W1.cols())
      throw ShapeError("W1 is " + std::to_string(W1.rows()) + "x" + std::to_string(W1.cols()) + " but W2 has " +
                       std::to_string(W2.rows()) + " rows");
    if (token.size() != W1.rows())
      throw ShapeError("token length " + std::to_string(token.size()) + " differs from input dimension " +
                       std::to_string(W1.rows()));
    if (W2.cols() < 1) throw ShapeError("model has no output classes");
  }
};

/// Xavier-uniform initialization; the token is treated as a 1 x d matrix.
inline GnnModel init_model(std::size_t d, std::size_t h, std::size_t c, bool skip, std::uint64_t seed) {
  auto fill = [](Matrix& m, std::size_t fan_in, std::size_t fan_out, CounterStream rng) {
    const double a = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = rng.uniform(-a, a);
  };
  GnnModel model;
  model.skip = skip;
  model.W1.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(h));
  model.W2.resize(static_cast<Eigen::Index>(h), static_cast<Eigen::Index>(c));
  Matrix t(1, static_cast<Eigen::Index>(d));
  fill(model.W1, d, h, CounterStream(seed, Stream::kWeightInit, 0));
  fill(model.W2, h, c, CounterStream(seed, Stream::kWeightInit, 1));
  fill(t, 1, d, CounterStream(seed, Stream::kWeightInit, 2));
  model.token = t.row(0).transpose();
  return model;
}

/// Normalized propagation matrix for the edges of `g` with `edge_kept[e] != 0`
/// (all edges when the mask is empty).
inline SparseMatrix propagation_matrix(const Graph& g, std::span<const std::uint8_t> edge_kept = {}) {
  const auto n = g.num_nodes();
  auto kept = [&](EdgeId e) { return edge_kept.empty() || edge_kept[e] != 0; };
  std::vector<double> inv_sqrt_deg(n);
  std::size_t nnz = n;
  for (NodeId v = 0; v < n; ++v) {
    std::size_t deg = 1;
    for (auto e : g.in_edges(v)) deg += kept(e);
    nnz += deg - 1;
    inv_sqrt_deg[v] = 1.0 / std::sqrt(static_cast<double>(deg));
  }
  SparseMatrix p(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(nnz);
  for (NodeId v = 0; v < n; ++v) {
    triplets.emplace_back(v, v, inv_sqrt_deg[v] * inv_sqrt_deg[v]);
    for (auto e : g.in_edges(v)) {
      if (!kept(e)) continue;
      const NodeId u = g.edge(e).src;
      triplets.emplace_back(v, u, inv_sqrt_deg[v] * inv_sqrt_deg[u]);
    }
  }
  p.setFromTriplets(triplets.begin(), triplets.end());
  return p;
}

namespace detail {

inline Matrix relu(const Matrix& m) { return m.cwiseMax(0.0); }

inline void check_features(const GnnModel& model, const Matrix& x, const char* what) {
  if (static_cast<std::size_t>(x.cols()) != model.input_dim())
    throw ShapeError(std::string(what) + " have dimension " + std::to_string(x.cols()) +
                     ", model expects " + std::to_string(model.input_dim()));
}

}  // namespace detail

/// Logits for every node. `g.features()` is the network input (ablated rows
/// already substituted); `clean` feeds the skip branch.
inline Matrix forward_all(const GnnModel& model, const Graph& g, const Matrix& clean) {
  model.validate();
  detail::check_features(model, g.features(), "graph features");
  const SparseMatrix p = propagation_matrix(g);
  const Matrix h1 = detail::relu(p * (g.features() * model.W1));
  Matrix logits = p * (h1 * model.W2);
  if (model.skip) {
    detail::check_features(model, clean, "clean features");
    logits += detail::relu(clean * model.W1) * model.W2;
  }
  return logits;
}

inline Matrix forward_all(const GnnModel& model, const Graph& g) { return forward_all(model, g, g.features()); }

/// Class scores of node v.
inline Vector forward(const GnnModel& model, const Graph& g, const Matrix& clean, NodeId v) {
  if (v >= g.num_nodes()) throw DomainError("node " + std::to_string(v) + " is outside the graph");
  return forward_all(model, g, clean).row(v).transpose();
}

inline Vector forward(const GnnModel& model, const Graph& g, NodeId v) { return forward(model, g, g.features(), v); }

/// Index of the largest entry; ties go to the lowest index.
template <class Row>
int argmax(const Row& scores) {
  int best = 0;
  for (Eigen::Index c = 1; c < scores.size(); ++c)
    if (scores(c) > scores(best)) best = static_cast<int>(c);
  return best;
}

/// Inference over smoothed samples of one graph with a frozen model. The
/// projections X W1 and t W1 are computed once; each sample only swaps rows
/// and propagates. Reentrant: `predict` may run concurrently.
class SmoothedPredictor {
 public:
  SmoothedPredictor(const GnnModel& model, const Graph& g, const SmoothingConfig& cfg)
      : model_(model), graph_(g), cfg_(cfg) {
    model_.validate();
    detail::check_features(model_, g.features(), "graph features");
    xw1_ = g.features() * model_.W1;
    tw1_ = model_.token.transpose() * model_.W1;
    if (model_.skip) skip_logits_ = detail::relu(xw1_) * model_.W2;
  }

  std::size_t num_nodes() const { return graph_.num_nodes(); }
  std::size_t num_classes() const { return model_.classes(); }
  const Graph& graph() const { return graph_; }
  const SmoothingConfig& smoothing() const { return cfg_; }

  /// Logits of every node under smoothing draw `sample_index`.
  Matrix logits(std::uint64_t sample_index) const { return logits(msgcert::sample(graph_, cfg_, sample_index)); }

  Matrix logits(const SmoothedSample& s) const {
    Matrix z1 = xw1_;
    for (NodeId u = 0; u < graph_.num_nodes(); ++u)
      if (s.node_ablated[u]) z1.row(u) = tw1_;
    const SparseMatrix p = propagation_matrix(graph_, s.edge_kept);
    const Matrix h1 = detail::relu(p * z1);
    Matrix out = p * (h1 * model_.W2);
    if (model_.skip) out += skip_logits_;
    return out;
  }

  /// Predicted class of every node under draw `sample_index`.
  std::vector<int> predict(std::uint64_t sample_index) const {
    const Matrix z = logits(sample_index);
    std::vector<int> out(static_cast<std::size_t>(z.rows()));
    for (Eigen::Index v = 0; v < z.rows(); ++v) out[static_cast<std::size_t>(v)] = argmax(z.row(v));
    return out;
  }

 private:
  GnnModel model_;
  const Graph& graph_;
  SmoothingConfig cfg_;
  Matrix xw1_;
  Eigen::RowVectorXd tw1_;
  Matrix skip_logits_;
};

struct Gradients {
  Matrix W1;
  Matrix W2;
  Vector token;
};

/// Everything except the model that determines one training loss evaluation.
struct LossInputs {
  Matrix features;                    ///< clean features
  std::vector<std::uint8_t> ablated;  ///< rows replaced by the token
  Matrix dropout_scale;               ///< per-entry input multiplier; empty means none
  SparseMatrix propagation;
  std::vector<NodeId> nodes;  ///< nodes the loss averages over
  std::vector<int> labels;    ///< label of each entry of `nodes`
};

struct LossAndGradients {
  double loss = 0.0;
  double accuracy = 0.0;
  Gradients grad;
};

/// Mean cross-entropy over `in.nodes` and its gradient with respect to W1,
/// W2 and the token.
inline LossAndGradients loss_and_gradients(const GnnModel& model, const LossInputs& in, bool need_gradients = true) {
  const auto n = in.features.rows();
  const bool dropout = in.dropout_scale.size() != 0;
  auto drop = [&](Matrix m) {
    if (dropout) m.array() *= in.dropout_scale.array();
    return m;
  };
  Matrix raw = in.features;
  for (Eigen::Index u = 0; u < n; ++u)
    if (in.ablated[static_cast<std::size_t>(u)]) raw.row(u) = model.token.transpose();
  const Matrix x0 = drop(std::move(raw));
  const Matrix z1 = x0 * model.W1;
  const Matrix a1 = in.propagation * z1;
  const Matrix h1 = detail::relu(a1);
  Matrix logits = in.propagation * (h1 * model.W2);
  Matrix xc, sa, sh;
  if (model.skip) {
    xc = drop(in.features);
    sa = xc * model.W1;
    sh = detail::relu(sa);
    logits += sh * model.W2;
  }

  LossAndGradients out;
  Matrix g = Matrix::Zero(logits.rows(), logits.cols());
  const double scale = 1.0 / static_cast<double>(std::max<std::size_t>(in.nodes.size(), 1));
  std::size_t correct = 0;
  for (std::size_t i = 0; i < in.nodes.size(); ++i) {
    const auto v = static_cast<Eigen::Index>(in.nodes[i]);
    const auto row = logits.row(v);
    const double mx = row.maxCoeff();
    const Eigen::RowVectorXd e = (row.array() - mx).exp().matrix();
    const double z = e.sum();
    out.loss += (std::log(z) + mx - row(in.labels[i])) * scale;
    correct += argmax(row) == in.labels[i];
    g.row(v) = e / z * scale;
    g(v, in.labels[i]) -= scale;
  }
  out.accuracy = in.nodes.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(in.nodes.size());
  if (!need_gradients) return out;

  const Matrix dz2 = in.propagation.transpose() * g;
  out.grad.W2 = h1.transpose() * dz2;
  const Matrix da1 = ((dz2 * model.W2.transpose()).array() * (a1.array() > 0.0).cast<double>()).matrix();
  const Matrix dz1 = in.propagation.transpose() * da1;
  out.grad.W1 = x0.transpose() * dz1;
  if (model.skip) {
    out.grad.W2 += sh.transpose() * g;
    const Matrix dsa = ((g * model.W2.transpose()).array() * (sa.array() > 0.0).cast<double>()).matrix();
    out.grad.W1 += xc.transpose() * dsa;
  }
  Matrix dx0 = dz1 * model.W1.transpose();
  if (dropout) dx0.array() *= in.dropout_scale.array();
  out.grad.token = Vector::Zero(model.token.size());
  for (Eigen::Index u = 0; u < n; ++u)
    if (in.ablated[static_cast<std::size_t>(u)]) out.grad.token += dx0.row(u).transpose();
  return out;
}

struct TrainConfig {
  double learning_rate = 1e-3;
  double weight_decay = 5e-4;
  int epochs = 1000;
  int patience = 50;
  double dropout = 0.8;
  double p_del = 0.0;  ///< training-time edge deletion
  double p_abl = 0.0;  ///< training-time feature ablation
  int hidden = 64;
  bool skip = false;
  int val_samples = 8;  ///< fixed smoothed draws the validation loss averages over
  std::uint64_t seed = 0;

  void validate() const {
    if (!(p_del >= 0.0 && p_del <= 1.0) || !(p_abl >= 0.0 && p_abl <= 1.0))
      throw ConfigError("training smoothing probabilities must lie in [0, 1]");
    if (!(dropout >= 0.0 && dropout < 1.0)) throw ConfigError("dropout must lie in [0, 1)");
    if (epochs < 1) throw ConfigError("epochs must be at least 1");
    if (patience < 1) throw ConfigError("patience must be at least 1");
    if (hidden < 1) throw ConfigError("hidden size must be at least 1");
    if (val_samples < 1) throw ConfigError("val_samples must be at least 1");
    if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
    if (weight_decay < 0.0) throw ConfigError("weight decay must be non-negative");
  }

  SmoothingConfig smoothing() const {
    SmoothingConfig s;
    s.p_del = p_del;
    s.p_abl = p_abl;
    s.seed = seed;
    return s;
  }
};

inline void to_json(nlohmann::json& j, const TrainConfig& c) {
  j = {{"learning_rate", c.learning_rate}, {"weight_decay", c.weight_decay}, {"epochs", c.epochs},
       {"patience", c.patience},           {"dropout", c.dropout},           {"p_del", c.p_del},
       {"p_abl", c.p_abl},                 {"hidden", c.hidden},             {"skip", c.skip},
       {"val_samples", c.val_samples},     {"seed", c.seed}};
}

inline void from_json(const nlohmann::json& j, TrainConfig& c) {
  const TrainConfig d;
  c.learning_rate = j.value("learning_rate", d.learning_rate);
  c.weight_decay = j.value("weight_decay", d.weight_decay);
  c.epochs = j.value("epochs", d.epochs);
  c.patience = j.value("patience", d.patience);
  c.dropout = j.value("dropout", d.dropout);
  c.p_del = j.value("p_del", d.p_del);
  c.p_abl = j.value("p_abl", d.p_abl);
  c.hidden = j.value("hidden", d.hidden);
  c.skip = j.value("skip", d.skip);
  c.val_samples = j.value("val_samples", d.val_samples);
  c.seed = j.value("seed", d.seed);
}

struct EpochLog {
  int epoch = 0;
  double train_loss = 0.0;
  double train_accuracy = 0.0;
  double val_loss = 0.0;
  double val_accuracy = 0.0;
};

struct TrainResult {
  GnnModel model;
  std::vector<EpochLog> log;
  int best_epoch = 0;
};

/// Deterministic per-class split of labeled nodes.
struct Split {
  std::vector<NodeId> train;
  std::vector<NodeId> val;
  std::vector<NodeId> test;
};

inline Split make_split(std::span<const int> labels, int train_per_class, int val_per_class, std::uint64_t seed) {
  int classes = 0;
  for (int y : labels) classes = std::max(classes, y + 1);
  Split s;
  for (int c = 0; c < classes; ++c) {
    std::vector<NodeId> members;
    for (NodeId v = 0; v < labels.size(); ++v)
      if (labels[v] == c) members.push_back(v);
    CounterStream(seed, Stream::kSplit, static_cast<std::uint64_t>(c)).shuffle(members.begin(), members.end());
    for (std::size_t i = 0; i < members.size(); ++i) {
      auto& bucket = i < static_cast<std::size_t>(train_per_class)                   ? s.train
                     : i < static_cast<std::size_t>(train_per_class + val_per_class) ? s.val
                                                                                     : s.test;
      bucket.push_back(members[i]);
    }
  }
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.val.begin(), s.val.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

namespace detail {

// Validation draws use sample indices far above any epoch index.
inline constexpr std::uint64_t kValidationSampleBase = std::uint64_t{1} << 40;

struct AdamState {
  Matrix m, v;

  template <class Param, class Grad>
  void step(Param& param, const Grad& grad, double lr, int t) {
    constexpr double kBeta1 = 0.9, kBeta2 = 0.999, kEps = 1e-8;
    if (m.size() == 0) {
      m = Matrix::Zero(grad.rows(), grad.cols());
      v = Matrix::Zero(grad.rows(), grad.cols());
    }
    m = kBeta1 * m + (1.0 - kBeta1) * grad;
    v = kBeta2 * v + (1.0 - kBeta2) * grad.cwiseProduct(grad);
    const double c1 = 1.0 - std::pow(kBeta1, t);
    const double c2 = 1.0 - std::pow(kBeta2, t);
    param.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + kEps);
  }
};

inline LossInputs make_loss_inputs(const Graph& g, const SmoothedSample& s, std::span<const NodeId> nodes) {
  LossInputs in;
  in.features = g.features();
  in.ablated = s.node_ablated;
  in.propagation = propagation_matrix(g, s.edge_kept);
  in.nodes.assign(nodes.begin(), nodes.end());
  for (auto v : nodes) in.labels.push_back((*g.labels())[v]);
  return in;
}

}  // namespace detail

/// Full-batch Adam training. Every epoch draws a fresh smoothed graph
/// (sample index = epoch) and a fresh dropout mask. Early stopping tracks
/// the mean validation loss over `val_samples` fixed draws and returns the
/// best weights seen.
inline TrainResult train(const Graph& g, const Split& split, const TrainConfig& cfg) {
  cfg.validate();
  if (!g.labels()) throw ConfigError("training requires node labels");
  if (split.train.empty()) throw ConfigError("training requires at least one labeled node");
  for (auto v : split.train)
    if (v >= g.num_nodes()) throw ConfigError("training node " + std::to_string(v) + " is outside the graph");
  const auto classes = static_cast<std::size_t>(g.num_classes());
  const auto d = g.feature_dim();
  TrainResult result;
  result.model = init_model(d, static_cast<std::size_t>(cfg.hidden), std::max<std::size_t>(classes, 2), cfg.skip,
                            cfg.seed);
  GnnModel& model = result.model;
  const SmoothingConfig smooth = cfg.smoothing();

  std::vector<LossInputs> val_inputs;
  for (int i = 0; i < cfg.val_samples && !split.val.empty(); ++i)
    val_inputs.push_back(detail::make_loss_inputs(
        g, sample(g, smooth, detail::kValidationSampleBase + static_cast<std::uint64_t>(i)), split.val));

  detail::AdamState opt_w1, opt_w2, opt_t;
  GnnModel best = model;
  double best_val = std::numeric_limits<double>::infinity();
  int since_best = 0;
  const double keep = 1.0 - cfg.dropout;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    LossInputs in = detail::make_loss_inputs(g, sample(g, smooth, static_cast<std::uint64_t>(epoch)), split.train);
    if (cfg.dropout > 0.0) {
      CounterStream rng(cfg.seed, Stream::kDropout, static_cast<std::uint64_t>(epoch));
      in.dropout_scale.resize(in.features.rows(), in.features.cols());
      for (Eigen::Index i = 0; i < in.dropout_scale.rows(); ++i)
        for (Eigen::Index j = 0; j < in.dropout_scale.cols(); ++j)
          in.dropout_scale(i, j) = rng.uniform() < keep ? 1.0 / keep : 0.0;
    }
    auto step = loss_and_gradients(model, in);
    step.grad.W1 += cfg.weight_decay * model.W1;
    step.grad.W2 += cfg.weight_decay * model.W2;
    step.grad.token += cfg.weight_decay * model.token;
    opt_w1.step(model.W1, step.grad.W1, cfg.learning_rate, epoch + 1);
    opt_w2.step(model.W2, step.grad.W2, cfg.learning_rate, epoch + 1);
    opt_t.step(model.token, step.grad.token, cfg.learning_rate, epoch + 1);

    EpochLog entry{epoch, step.loss, step.accuracy, 0.0, 0.0};
    if (val_inputs.empty()) {
      best = model;
      result.best_epoch = epoch;
      result.log.push_back(entry);
      continue;
    }
    for (const auto& vin : val_inputs) {
      const auto r = loss_and_gradients(model, vin, false);
      entry.val_loss += r.loss / static_cast<double>(val_inputs.size());
      entry.val_accuracy += r.accuracy / static_cast<double>(val_inputs.size());
    }
    result.log.push_back(entry);
    if (entry.val_loss < best_val) {
      best_val = entry.val_loss;
      best = model;
      result.best_epoch = epoch;
      since_best = 0;
    } else if (++since_best >= cfg.patience) {
      break;
    }
  }
  model = best;
  return result;
}

// ---------------------------------------------------------------------------
// Checkpoints

inline constexpr std::string_view kCheckpointFormat = "msgcert-gcn/1";

namespace detail {

inline nlohmann::json matrix_to_json(const Matrix& m) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const nlohmann::json& j, std::size_t rows, std::size_t cols, const char* name) {
  if (!j.is_array() || j.size() != rows)
    throw FormatError(std::string("checkpoint field ") + name + " must have " + std::to_string(rows) + " rows");
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw FormatError(std::string("checkpoint field ") + name + " row " + std::to_string(i) + " must have " +
                        std::to_string(cols) + " entries");
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = j[i][k].get<double>();
  }
  return m;
}

}  // namespace detail

inline nlohmann::json checkpoint_json(const GnnModel& model, const TrainConfig& cfg) {
  Matrix t = model.token.transpose();
  return {{"format", kCheckpointFormat},
          {"input_dim", model.input_dim()},
          {"hidden", model.hidden()},
          {"classes", model.classes()},
          {"skip", model.skip},
          {"train_config", cfg},
          {"W1", detail::matrix_to_json(model.W1)},
          {"W2", detail::matrix_to_json(model.W2)},
          {"token", detail::matrix_to_json(t)[0]}};
}

inline void save_checkpoint(const std::filesystem::path& path, const GnnModel& model, const TrainConfig& cfg) {
  detail::write_file(path, checkpoint_json(model, cfg).dump(1) + "\n");
}

inline GnnModel model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != kCheckpointFormat)
      throw FormatError("unsupported checkpoint format '" + j.at("format").get<std::string>() + "'");
    const auto d = j.at("input_dim").get<std::size_t>();
    const auto h = j.at("hidden").get<std::size_t>();
    const auto c = j.at("classes").get<std::size_t>();
    GnnModel m;
    m.skip = j.at("skip").get<bool>();
    m.W1 = detail::matrix_from_json(j.at("W1"), d, h, "W1");
    m.W2 = detail::matrix_from_json(j.at("W2"), h, c, "W2");
    m.token = detail::matrix_from_json(nlohmann::json::array({j.at("token")}), 1, d, "token").row(0).transpose();
    m.validate();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed checkpoint: ") + e.what());
  }
}

inline GnnModel load_checkpoint(const std::filesystem::path& path) {
  try {
    return model_from_json(nlohmann::json::parse(detail::read_file(path)));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace msgcert

#endif  // MSGCERT_GNN_HPP
