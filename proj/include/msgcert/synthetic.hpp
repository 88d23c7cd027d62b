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

#ifndef MSGCERT_SYNTHETIC_HPP
#define MSGCERT_SYNTHETIC_HPP

#include <cstdint>
#include <vector>

#include "msgcert/error.hpp"
#include "msgcert/graph.hpp"
#include "msgcert/random.hpp"

namespace msgcert {

/// Two-community stochastic block model with binary features. The first
/// half of the feature columns is associated with block 0, the second half
/// with block 1: a node switches on each of its own block's columns with
/// probability `p_signal` and every other column with `p_noise`.
struct TwoBlockSpec {
  std::size_t nodes = 200;
  double p_intra = 0.05;
  double p_inter = 0.005;
  std::size_t feature_dim = 20;
  double p_signal = 0.3;
  double p_noise = 0.05;
  std::uint64_t seed = 0;
};

inline Graph two_block_graph(const TwoBlockSpec& spec) {
  if (spec.nodes < 2) throw ConfigError("two-block graph needs at least two nodes");
  if (spec.feature_dim < 2) throw ConfigError("two-block graph needs at least two feature columns");
  const auto n = spec.nodes;
  std::vector<int> labels(n);
  for (std::size_t v = 0; v < n; ++v) labels[v] = v < n / 2 ? 0 : 1;

  CounterStream edges_rng(spec.seed, Stream::kSynthetic, 0);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (edges_rng.bernoulli(labels[u] == labels[v] ? spec.p_intra : spec.p_inter)) edges.push_back({u, v});

  CounterStream feat_rng(spec.seed, Stream::kSynthetic, 1);
  const auto d = spec.feature_dim;
  Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t j = 0; j < d; ++j) {
      const int block_of_column = j < d / 2 ? 0 : 1;
      const double p = block_of_column == labels[v] ? spec.p_signal : spec.p_noise;
      x(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(j)) = feat_rng.bernoulli(p) ? 1.0 : 0.0;
    }
  return Graph(n, std::move(edges), std::move(x), std::move(labels), false);
}

}  // namespace msgcert

#endif  // MSGCERT_SYNTHETIC_HPP
