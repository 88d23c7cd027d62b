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

#ifndef MSGCERT_RECEPTIVE_FIELD_HPP
#define MSGCERT_RECEPTIVE_FIELD_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "msgcert/error.hpp"
#include "msgcert/graph.hpp"

namespace msgcert {

inline constexpr std::size_t kDefaultMaxPaths = 100'000;

/// An edge that lies on at least one stored path. `coin` identifies the
/// independent deletion draw the edge belongs to (both orientations of an
/// undirected edge share one coin).
struct FieldEdge {
  NodeId src;
  NodeId dst;
  EdgeId graph_edge;
  std::uint32_t coin;
};

/// Simple path from `source` to the target; `edges` index into
/// ReceptiveField::edges() and run in message direction (source first).
struct FieldPath {
  NodeId source;
  std::vector<std::uint32_t> edges;

  std::size_t length() const noexcept { return edges.size(); }
};

/// Nodes whose features can reach a target within k message-passing steps,
/// together with every simple path of length <= k into the target.
class ReceptiveField {
 public:
  NodeId target() const noexcept { return target_; }
  int layers() const noexcept { return k_; }

  /// Members in ascending node order; always contains the target.
  std::span<const NodeId> members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }

  std::optional<std::size_t> index_of(NodeId w) const {
    const auto it = std::lower_bound(members_.begin(), members_.end(), w);
    if (it == members_.end() || *it != w) return std::nullopt;
    return static_cast<std::size_t>(it - members_.begin());
  }

  bool contains(NodeId w) const { return index_of(w).has_value(); }

  /// Shortest hop distance to the target; nullopt outside the field.
  std::optional<int> distance(NodeId w) const {
    const auto i = index_of(w);
    if (!i) return std::nullopt;
    return distance_[*i];
  }

  std::span<const FieldPath> paths() const noexcept { return paths_; }

  /// Ids (into paths()) of the simple paths starting at `w`. Empty for the
  /// target and for nodes outside the field.
  std::span<const std::uint32_t> paths_from(NodeId w) const {
    const auto i = index_of(w);
    if (!i) return {};
    return member_paths_[*i];
  }

  std::span<const FieldEdge> edges() const noexcept { return edges_; }
  std::size_t num_coins() const noexcept { return num_coins_; }

  /// Every graph edge whose endpoints are both members.
  std::span<const Edge> induced_edges() const noexcept { return induced_; }

  /// True when each non-target member has exactly one simple path, i.e. the
  /// path edges form an in-tree rooted at the target.
  bool is_tree() const {
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (members_[i] == target_) continue;
      if (member_paths_[i].size() != 1) return false;
    }
    return true;
  }

  /// Members at distance >= d_min, i.e. nodes an adversary may control.
  std::vector<NodeId> candidates(int d_min) const {
    std::vector<NodeId> out;
    for (std::size_t i = 0; i < members_.size(); ++i)
      if (distance_[i] >= d_min) out.push_back(members_[i]);
    return out;
  }

  std::size_t attack_surface(int d_min) const { return candidates(d_min).size(); }

 private:
  friend ReceptiveField receptive_field(const Graph&, NodeId, int, std::size_t);

  NodeId target_ = 0;
  int k_ = 0;
  std::vector<NodeId> members_;
  std::vector<int> distance_;
  std::vector<std::vector<std::uint32_t>> member_paths_;
  std::vector<FieldPath> paths_;
  std::vector<FieldEdge> edges_;
  std::size_t num_coins_ = 0;
  std::vector<Edge> induced_;
};

/// Enumerates the receptive field of `v` for a k-layer message-passing model by
/// depth-limited backward search against edge direction. In-neighbors are
/// visited in ascending node order, so the path order is deterministic.
///
/// Throws ResourceLimitError when more than `max_paths` simple paths exist;
/// truncating the set would silently invalidate every bound built on it.
inline ReceptiveField receptive_field(const Graph& g, NodeId v, int k,
                                      std::size_t max_paths = kDefaultMaxPaths) {
  if (v >= g.num_nodes())
    throw DomainError("target node " + std::to_string(v) + " is outside the graph");
  if (k < 1) throw DomainError("layer count must be at least 1");

  // Raw paths as graph edge ids in message direction.
  std::vector<std::pair<NodeId, std::vector<EdgeId>>> raw;
  std::vector<NodeId> on_path{v};
  std::vector<EdgeId> stack;  // edges from the current node down to v

  auto extend = [&](auto&& self, NodeId cur) -> void {
    for (const EdgeId e : g.in_edges(cur)) {
      const NodeId u = g.edge(e).src;
      if (std::find(on_path.begin(), on_path.end(), u) != on_path.end()) continue;
      if (raw.size() >= max_paths)
        throw ResourceLimitError("receptive field of node " + std::to_string(v) + " has more than " +
                                 std::to_string(max_paths) + " simple paths of length <= " +
                                 std::to_string(k));
      std::vector<EdgeId> path{e};
      path.insert(path.end(), stack.rbegin(), stack.rend());
      raw.emplace_back(u, std::move(path));
      if (static_cast<int>(stack.size()) + 1 < k) {
        on_path.push_back(u);
        stack.push_back(e);
        self(self, u);
        stack.pop_back();
        on_path.pop_back();
      }
    }
  };
  extend(extend, v);

  ReceptiveField rf;
  rf.target_ = v;
  rf.k_ = k;

  rf.members_.push_back(v);
  for (const auto& [u, p] : raw) rf.members_.push_back(u);
  std::sort(rf.members_.begin(), rf.members_.end());
  rf.members_.erase(std::unique(rf.members_.begin(), rf.members_.end()), rf.members_.end());

  const auto m = rf.members_.size();
  rf.distance_.assign(m, std::numeric_limits<int>::max());
  rf.member_paths_.assign(m, {});
  rf.distance_[*rf.index_of(v)] = 0;

  std::map<EdgeId, std::uint32_t> local_edge;
  for (const auto& [u, p] : raw)
    for (auto e : p) local_edge.emplace(e, 0);
  std::map<std::uint32_t, std::uint32_t> coin_of_group;
  for (auto& [e, idx] : local_edge) {
    idx = static_cast<std::uint32_t>(rf.edges_.size());
    const auto group = g.edge_group(e);
    auto [it, fresh] = coin_of_group.emplace(group, static_cast<std::uint32_t>(coin_of_group.size()));
    rf.edges_.push_back({g.edge(e).src, g.edge(e).dst, e, it->second});
  }
  rf.num_coins_ = coin_of_group.size();

  rf.paths_.reserve(raw.size());
  for (const auto& [u, p] : raw) {
    FieldPath fp{u, {}};
    fp.edges.reserve(p.size());
    for (auto e : p) fp.edges.push_back(local_edge.at(e));
    const auto i = *rf.index_of(u);
    rf.member_paths_[i].push_back(static_cast<std::uint32_t>(rf.paths_.size()));
    rf.distance_[i] = std::min(rf.distance_[i], static_cast<int>(fp.length()));
    rf.paths_.push_back(std::move(fp));
  }

  for (const NodeId w : rf.members_)
    for (const EdgeId e : g.in_edges(w))
      if (rf.contains(g.edge(e).src)) rf.induced_.push_back(g.edge(e));
  std::sort(rf.induced_.begin(), rf.induced_.end());
  return rf;
}

}  // namespace msgcert

#endif  // MSGCERT_RECEPTIVE_FIELD_HPP
