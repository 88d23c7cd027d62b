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

// Fixtures and independent oracles shared by the unit and acceptance tests.
// The oracles deliberately avoid the library's own path enumeration and
// inclusion-exclusion code.

#ifndef MSGCERT_TESTS_SUPPORT_HPP
#define MSGCERT_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "msgcert/msgcert.hpp"

namespace msgcert::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Erdos-Renyi graph with Gaussian features.
inline Graph random_graph(Rng& rng, std::size_t n, double p, bool directed, std::size_t dim = 3,
                          int classes = 0) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = 0; v < n; ++v) {
      if (u == v || (!directed && v < u)) continue;
      if (uniform(rng) < p) edges.push_back({u, v});
    }
  Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  std::normal_distribution<double> normal;
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = normal(rng);
  std::optional<std::vector<int>> labels;
  if (classes > 0) {
    labels.emplace();
    for (std::size_t v = 0; v < n; ++v) labels->push_back(uniform_int(rng, 0, classes - 1));
  }
  return Graph(n, std::move(edges), std::move(x), std::move(labels), directed);
}

/// Uniform random recursive tree, undirected.
inline Graph random_tree(Rng& rng, std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) edges.push_back({static_cast<NodeId>(uniform_int(rng, 0, static_cast<int>(v) - 1)), v});
  return Graph::from_edges(n, std::move(edges), false);
}

inline GnnModel random_model(Rng& rng, std::size_t d, std::size_t h, std::size_t c, bool skip) {
  GnnModel m;
  std::normal_distribution<double> normal;
  m.W1.resize(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(h));
  m.W2.resize(static_cast<Eigen::Index>(h), static_cast<Eigen::Index>(c));
  m.token.resize(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < m.W1.size(); ++i) m.W1.data()[i] = normal(rng);
  for (Eigen::Index i = 0; i < m.W2.size(); ++i) m.W2.data()[i] = normal(rng);
  for (Eigen::Index i = 0; i < m.token.size(); ++i) m.token[i] = normal(rng);
  m.skip = skip;
  return m;
}

/// Hop distance from every node to `target` along edge direction, using only
/// edges with keep(e) and at most `k` hops; -1 when unreachable.
inline std::vector<int> hops_to(const Graph& g, NodeId target, int k,
                                const std::function<bool(EdgeId)>& keep = [](EdgeId) { return true; }) {
  std::vector<int> dist(g.num_nodes(), -1);
  dist[target] = 0;
  std::deque<NodeId> queue{target};
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    if (dist[v] == k) continue;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (g.edge(e).dst != v || !keep(e)) continue;
      const NodeId u = g.edge(e).src;
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  return dist;
}

/// Exact probability that an attacked node's message reaches the target, by
/// enumerating every deletion outcome of the coins inside the k-hop
/// neighbourhood. Ablation is summed out analytically: given the surviving
/// edges, the event fails only if every connected attacked node is ablated.
inline double brute_force_delta(const Graph& g, NodeId target, int k, std::span<const NodeId> attacked,
                                double p_del, double p_abl) {
  const auto reach = hops_to(g, target, k);
  // Only edges between nodes of the neighbourhood matter.
  std::vector<std::uint32_t> groups;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (reach[g.edge(e).src] >= 0 && reach[g.edge(e).dst] >= 0) groups.push_back(g.edge_group(e));
  std::sort(groups.begin(), groups.end());
  groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
  if (groups.size() > 22) throw std::runtime_error("brute_force_delta: too many coins");
  long double total = 0.0L;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << groups.size()); ++mask) {
    long double weight = 1.0L;
    for (std::size_t i = 0; i < groups.size(); ++i) weight *= (mask >> i & 1) ? 1.0L - p_del : p_del;
    if (weight == 0.0) continue;
    auto kept = [&](EdgeId e) {
      const auto it = std::lower_bound(groups.begin(), groups.end(), g.edge_group(e));
      return it != groups.end() && *it == g.edge_group(e) && (mask >> (it - groups.begin()) & 1);
    };
    const auto dist = hops_to(g, target, k, kept);
    int connected = 0;
    for (auto w : attacked) connected += dist[w] >= 0;
    total += weight * (1.0L - std::pow(static_cast<long double>(p_abl), connected));
  }
  return static_cast<double>(total);
}

/// Every simple path of length 1..k ending at `target`, as node sequences
/// (source first), found by brute-force extension over all nodes.
inline std::set<std::vector<NodeId>> brute_force_paths(const Graph& g, NodeId target, int k) {
  std::set<std::vector<NodeId>> out;
  std::function<void(std::vector<NodeId>&)> grow = [&](std::vector<NodeId>& rev) {
    if (static_cast<int>(rev.size()) > k) return;
    for (NodeId u = 0; u < g.num_nodes(); ++u) {
      if (std::find(rev.begin(), rev.end(), u) != rev.end()) continue;
      if (!g.find_edge(u, rev.back())) continue;
      rev.push_back(u);
      out.insert(std::vector<NodeId>(rev.rbegin(), rev.rend()));
      grow(rev);
      rev.pop_back();
    }
  };
  std::vector<NodeId> start{target};
  grow(start);
  return out;
}

/// Calls fn(R) for every retention set R = {target} + k other members of the
/// field, with the target first and the rest ascending.
template <class Fn>
void for_each_retention_set(const ReceptiveField& rf, std::size_t k, Fn&& fn) {
  std::vector<NodeId> others;
  for (auto w : rf.members())
    if (w != rf.target()) others.push_back(w);
  std::vector<NodeId> r{rf.target()};
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    if (r.size() == k + 1) {
      fn(std::as_const(r));
      return;
    }
    for (std::size_t i = from; i < others.size(); ++i) {
      r.push_back(others[i]);
      grow(i + 1);
      r.pop_back();
    }
  };
  grow(0);
}

/// Members of `retained` with a directed path to retained[0] that stays inside
/// `retained`; target first, rest ascending.
inline std::vector<NodeId> connected_part(const Graph& g, std::span<const NodeId> retained) {
  std::set<NodeId> keep(retained.begin(), retained.end());
  std::set<NodeId> seen{retained[0]};
  std::deque<NodeId> queue{retained[0]};
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (auto e : g.in_edges(v)) {
      const NodeId u = g.edge(e).src;
      if (keep.count(u) && seen.insert(u).second) queue.push_back(u);
    }
  }
  std::vector<NodeId> out{retained[0]};
  for (auto u : seen)
    if (u != retained[0]) out.push_back(u);
  return out;
}

inline std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("msgcert_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace msgcert::testing

#endif  // MSGCERT_TESTS_SUPPORT_HPP
