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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "msgcert/gnn.hpp"
#include "msgcert/synthetic.hpp"
#include "support.hpp"

namespace msgcert {
namespace {

// --- forward pass -------------------------------------------------------------

TEST(Forward, WithoutEdgesOnlyOwnFeaturesMatter) {
  testing::Rng rng(1);
  auto g = testing::random_graph(rng, 6, 0.0, false, 4);
  const auto model = testing::random_model(rng, 4, 5, 3, false);
  const Vector before = forward(model, g, 2);
  Matrix x = g.features();
  for (Eigen::Index r = 0; r < x.rows(); ++r)
    if (r != 2) x.row(r).setRandom();
  const Graph h(6, {}, x, std::nullopt, false);
  EXPECT_EQ(forward(model, h, 2), before);
}

TEST(Forward, ZeroInputsTieToTheFirstClass) {
  testing::Rng rng(2);
  const auto g = Graph(5, {{0, 1}, {1, 2}}, Matrix::Zero(5, 3), std::nullopt, false);
  auto model = testing::random_model(rng, 3, 4, 3, false);
  model.token.setZero();
  const Vector s = forward(model, g, 1);
  EXPECT_EQ(s, Vector::Zero(3));
  EXPECT_EQ(argmax(s.transpose()), 0);
}

TEST(Forward, ArgmaxBreaksTiesTowardTheLowestIndex) {
  Vector v(4);
  v << 1.0, 3.0, 3.0, -1.0;
  EXPECT_EQ(argmax(v.transpose()), 1);
}

TEST(Forward, PermutationEquivariant) {
  testing::Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 10;
    const auto g = testing::random_graph(rng, n, 0.3, trial % 2 == 0, 4);
    const auto model = testing::random_model(rng, 4, 6, 3, trial % 3 == 0);
    std::vector<NodeId> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) edges.push_back({perm[e.src], perm[e.dst]});
    Matrix x(static_cast<Eigen::Index>(n), 4);
    for (NodeId v = 0; v < n; ++v) x.row(perm[v]) = g.features().row(v);
    const Graph h(n, edges, x, std::nullopt, g.directed());
    const Matrix a = forward_all(model, g);
    const Matrix b = forward_all(model, h);
    for (NodeId v = 0; v < n; ++v)
      ASSERT_TRUE(a.row(v).isApprox(b.row(perm[v]), 1e-12)) << "trial " << trial << " node " << v;
  }
}

TEST(Forward, RejectsMismatchedDimensions) {
  testing::Rng rng(4);
  const auto g = testing::random_graph(rng, 4, 0.5, false, 3);
  const auto model = testing::random_model(rng, 5, 4, 2, false);
  EXPECT_THROW(forward(model, g, 0), ShapeError);
  auto broken = testing::random_model(rng, 3, 4, 2, false);
  broken.token.resize(2);
  EXPECT_THROW(forward(broken, g, 0), ShapeError);
}

TEST(Forward, SkipBranchBypassesDeletedEdges) {
  testing::Rng rng(5);
  const auto g = testing::random_graph(rng, 12, 0.4, false, 4);
  const auto model = testing::random_model(rng, 4, 6, 3, true);
  const SmoothedPredictor predictor(model, g, SmoothingConfig{1.0, 0.0, {}, 2, 0});
  const Graph edgeless(12, {}, g.features(), std::nullopt, false);
  const Matrix expect = forward_all(model, edgeless);
  EXPECT_TRUE(predictor.logits(0).isApprox(expect, 1e-13));
  const auto pred = predictor.predict(0);
  for (NodeId v = 0; v < 12; ++v) EXPECT_EQ(pred[v], argmax(expect.row(v)));
}

TEST(SmoothedPredictor, MatchesMaterializedGraph) {
  testing::Rng rng(6);
  for (bool skip : {false, true}) {
    const auto g = testing::random_graph(rng, 15, 0.3, false, 4);
    const auto model = testing::random_model(rng, 4, 8, 3, skip);
    SmoothingConfig cfg{0.4, 0.5, model.token, 2, 17};
    const SmoothedPredictor predictor(model, g, cfg);
    for (std::uint64_t i = 0; i < 10; ++i) {
      const auto s = sample(g, cfg, i);
      const Matrix expect = forward_all(model, apply(g, s, cfg), g.features());
      ASSERT_TRUE(predictor.logits(i).isApprox(expect, 1e-12));
    }
  }
}

// --- gradients ------------------------------------------------------------------

double relative_error(const Matrix& a, const Matrix& b) {
  const double denom = std::max(a.norm() + b.norm(), 1e-12);
  return (a - b).norm() / denom;
}

LossInputs random_inputs(testing::Rng& rng, const Graph& g, bool dropout) {
  LossInputs in;
  in.features = g.features();
  for (NodeId v = 0; v < g.num_nodes(); ++v) in.ablated.push_back(testing::uniform(rng) < 0.4);
  std::vector<std::uint8_t> kept;
  for (EdgeId e = 0; e < g.num_edges(); ++e) kept.push_back(testing::uniform(rng) < 0.7);
  in.propagation = propagation_matrix(g, kept);
  if (dropout) {
    in.dropout_scale.resize(in.features.rows(), in.features.cols());
    for (Eigen::Index i = 0; i < in.dropout_scale.size(); ++i)
      in.dropout_scale.data()[i] = testing::uniform(rng) < 0.5 ? 2.0 : 0.0;
  }
  for (NodeId v = 0; v < g.num_nodes(); v += 2) {
    in.nodes.push_back(v);
    in.labels.push_back(testing::uniform_int(rng, 0, 2));
  }
  return in;
}

template <class Param>
Matrix numeric_gradient(GnnModel& model, Param& param, const LossInputs& in) {
  constexpr double kStep = 1e-6;
  Matrix out(param.rows(), param.cols());
  for (Eigen::Index i = 0; i < param.size(); ++i) {
    const double saved = param.data()[i];
    param.data()[i] = saved + kStep;
    const double up = loss_and_gradients(model, in, false).loss;
    param.data()[i] = saved - kStep;
    const double down = loss_and_gradients(model, in, false).loss;
    param.data()[i] = saved;
    out.data()[i] = (up - down) / (2 * kStep);
  }
  return out;
}

TEST(Gradients, MatchCentralFiniteDifferences) {
  testing::Rng rng(7);
  for (int trial = 0; trial < 12; ++trial) {
    const bool skip = trial % 2 == 1;
    const bool dropout = trial % 4 >= 2;
    const auto g = testing::random_graph(rng, 8, 0.35, trial % 3 == 0, 4);
    auto model = testing::random_model(rng, 4, 5, 3, skip);
    const auto in = random_inputs(rng, g, dropout);
    const auto analytic = loss_and_gradients(model, in).grad;
    EXPECT_LT(relative_error(analytic.W1, numeric_gradient(model, model.W1, in)), 1e-4) << trial;
    EXPECT_LT(relative_error(analytic.W2, numeric_gradient(model, model.W2, in)), 1e-4) << trial;
    EXPECT_LT(relative_error(analytic.token, numeric_gradient(model, model.token, in)), 1e-4) << trial;
  }
}

// --- training -------------------------------------------------------------------

TrainConfig quick_config() {
  TrainConfig cfg;
  cfg.learning_rate = 0.01;
  cfg.epochs = 50;
  cfg.dropout = 0.5;
  cfg.hidden = 16;
  cfg.seed = 3;
  return cfg;
}

double accuracy(const Matrix& logits, const Graph& g, std::span<const NodeId> nodes) {
  std::size_t correct = 0;
  for (auto v : nodes) correct += argmax(logits.row(v)) == (*g.labels())[v];
  return static_cast<double>(correct) / static_cast<double>(nodes.size());
}

TEST(Train, SeparatesTwoBlocks) {
  const auto g = two_block_graph(TwoBlockSpec{.seed = 1});
  const auto split = make_split(*g.labels(), 20, 20, 1);
  const auto result = train(g, split, quick_config());
  EXPECT_GT(accuracy(forward_all(result.model, g), g, split.train), 0.9);
  EXPECT_FALSE(result.log.empty());
  EXPECT_LE(result.best_epoch, result.log.back().epoch);
}

TEST(Train, FullAblationLearnsTheMajorityRate) {
  testing::Rng rng(8);
  auto base = testing::random_graph(rng, 100, 0.05, false, 5);
  std::vector<int> labels(100);
  for (std::size_t v = 0; v < 100; ++v) labels[v] = v < 70 ? 0 : 1;
  const Graph g(100, {base.edges().begin(), base.edges().end()}, base.features(), labels, false);
  auto cfg = quick_config();
  cfg.p_abl = 1.0;
  // Everything outside validation trains, so the 70/30 imbalance carries over.
  auto split = make_split(labels, 0, 10, 2);
  split.train.clear();
  for (NodeId v = 0; v < 100; ++v)
    if (!std::binary_search(split.val.begin(), split.val.end(), v)) split.train.push_back(v);
  const auto result = train(g, split, cfg);
  const SmoothedPredictor predictor(result.model, g, cfg.smoothing());
  std::vector<NodeId> all(100);
  std::iota(all.begin(), all.end(), 0);
  EXPECT_NEAR(accuracy(predictor.logits(12345), g, all), 0.7, 0.1);
}

TEST(Train, IsDeterministic) {
  const auto g = two_block_graph(TwoBlockSpec{.nodes = 80, .seed = 2});
  const auto split = make_split(*g.labels(), 10, 10, 2);
  auto cfg = quick_config();
  cfg.p_del = 0.2;
  cfg.p_abl = 0.5;
  const auto a = train(g, split, cfg);
  const auto b = train(g, split, cfg);
  EXPECT_EQ(a.model.W1, b.model.W1);
  EXPECT_EQ(a.model.W2, b.model.W2);
  EXPECT_EQ(a.model.token, b.model.token);
  EXPECT_EQ(a.best_epoch, b.best_epoch);
}

TEST(Train, RequiresLabeledNodes) {
  const auto g = two_block_graph(TwoBlockSpec{.nodes = 20});
  EXPECT_THROW(train(g, Split{}, quick_config()), ConfigError);
  const Graph unlabeled(3, {}, Matrix::Zero(3, 2), std::nullopt, false);
  EXPECT_THROW(train(unlabeled, Split{{0}, {}, {}}, quick_config()), ConfigError);
}

TEST(Split, IsPerClassAndDisjoint) {
  std::vector<int> labels;
  for (int i = 0; i < 30; ++i) labels.push_back(i % 3);
  const auto s = make_split(labels, 2, 3, 9);
  EXPECT_EQ(s.train.size(), 6u);
  EXPECT_EQ(s.val.size(), 9u);
  EXPECT_EQ(s.test.size(), 15u);
  std::vector<int> per_class(3, 0);
  for (auto v : s.train) ++per_class[labels[v]];
  EXPECT_EQ(per_class, (std::vector<int>{2, 2, 2}));
  std::vector<NodeId> all;
  for (const auto* part : {&s.train, &s.val, &s.test}) all.insert(all.end(), part->begin(), part->end());
  std::sort(all.begin(), all.end());
  EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
  EXPECT_EQ(make_split(labels, 2, 3, 9).train, s.train);
}

TEST(Checkpoint, RoundTripsExactly) {
  testing::Rng rng(10);
  const auto model = testing::random_model(rng, 4, 3, 2, true);
  const auto dir = testing::temp_dir("checkpoint");
  save_checkpoint(dir / "m.json", model, quick_config());
  const auto back = load_checkpoint(dir / "m.json");
  EXPECT_EQ(back.W1, model.W1);
  EXPECT_EQ(back.W2, model.W2);
  EXPECT_EQ(back.token, model.token);
  EXPECT_TRUE(back.skip);
}

TEST(Checkpoint, RejectsMalformedFiles) {
  const auto dir = testing::temp_dir("checkpoint_bad");
  detail::write_file(dir / "a.json", "{not json");
  EXPECT_THROW(load_checkpoint(dir / "a.json"), FormatError);
  detail::write_file(dir / "b.json", R"({"format": "other"})");
  EXPECT_THROW(load_checkpoint(dir / "b.json"), FormatError);
  testing::Rng rng(11);
  auto j = checkpoint_json(testing::random_model(rng, 2, 2, 2, false), quick_config());
  j["W2"] = nlohmann::json::array({nlohmann::json::array({1.0})});
  EXPECT_THROW(model_from_json(j), FormatError);
}

TEST(TrainConfig, JsonRoundTripAndValidation) {
  auto cfg = quick_config();
  cfg.p_abl = 0.85;
  cfg.skip = true;
  const auto back = nlohmann::json(cfg).get<TrainConfig>();
  EXPECT_EQ(back.p_abl, 0.85);
  EXPECT_TRUE(back.skip);
  EXPECT_EQ(back.epochs, 50);
  cfg.epochs = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

}  // namespace
}  // namespace msgcert
