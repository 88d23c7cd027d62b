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

// Message-interception smoothing: random edge deletion and random node
// feature ablation.

#ifndef MSGCERT_SMOOTHING_HPP
#define MSGCERT_SMOOTHING_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "msgcert/error.hpp"
#include "msgcert/graph.hpp"
#include "msgcert/random.hpp"

namespace msgcert {

struct SmoothingConfig {
  double p_del = 0.0;  ///< probability to delete an edge
  double p_abl = 0.0;  ///< probability to replace a node's features by `token`
  Vector token;        ///< ablation token; empty means the zero vector
  int k = 2;           ///< message-passing layers of the base model
  std::uint64_t seed = 0;

  void validate() const {
    if (!(p_del >= 0.0 && p_del <= 1.0)) throw ConfigError("p_del must lie in [0, 1]");
    if (!(p_abl >= 0.0 && p_abl <= 1.0)) throw ConfigError("p_abl must lie in [0, 1]");
    if (k < 1) throw ConfigError("layer count k must be at least 1");
  }

  /// Token resolved against feature dimension `d`.
  Vector token_for(std::size_t d) const {
    if (token.size() == 0) return Vector::Zero(static_cast<Eigen::Index>(d));
    if (static_cast<std::size_t>(token.size()) != d)
      throw DimensionError("ablation token has length " + std::to_string(token.size()) +
                           ", feature dimension is " + std::to_string(d));
    return token;
  }
};

/// One draw from the smoothing distribution for a fixed graph.
struct SmoothedSample {
  std::uint64_t sample_index = 0;
  std::vector<std::uint8_t> edge_kept;     ///< per graph edge
  std::vector<std::uint8_t> node_ablated;  ///< per node

  std::vector<EdgeId> kept_edges() const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < edge_kept.size(); ++e)
      if (edge_kept[e]) out.push_back(e);
    return out;
  }

  std::size_t num_ablated() const {
    std::size_t c = 0;
    for (auto a : node_ablated) c += a;
    return c;
  }
};

/// Draws sample `sample_index`. Every edge group and node gets its own
/// counter-keyed coin, so the result does not depend on call order.
inline SmoothedSample sample(const Graph& g, const SmoothingConfig& cfg, std::uint64_t sample_index) {
  SmoothedSample s;
  s.sample_index = sample_index;
  s.edge_kept.resize(g.num_edges());
  s.node_ablated.resize(g.num_nodes());
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    s.edge_kept[e] = !bernoulli(cfg.p_del, cfg.seed, Stream::kEdgeDeletion, sample_index, g.edge_group(e));
  for (NodeId u = 0; u < g.num_nodes(); ++u)
    s.node_ablated[u] = bernoulli(cfg.p_abl, cfg.seed, Stream::kNodeAblation, sample_index, u);
  return s;
}

/// Features with every ablated row replaced by the token.
inline Matrix ablated_features(const Graph& g, const SmoothedSample& s, const SmoothingConfig& cfg) {
  Matrix x = g.features();
  const Vector t = cfg.token_for(g.feature_dim());
  for (NodeId u = 0; u < g.num_nodes(); ++u)
    if (s.node_ablated[u]) x.row(u) = t.transpose();
  return x;
}

/// Materializes the smoothed graph: kept edges only, ablated rows set to the token.
inline Graph apply(const Graph& g, const SmoothedSample& s, const SmoothingConfig& cfg) {
  return g.with(s.kept_edges(), ablated_features(g, s, cfg));
}

}  // namespace msgcert

#endif  // MSGCERT_SMOOTHING_HPP
