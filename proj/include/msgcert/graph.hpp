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

#ifndef MSGCERT_GRAPH_HPP
#define MSGCERT_GRAPH_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "msgcert/detail/text.hpp"
#include "msgcert/error.hpp"

namespace msgcert {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Dense row-major matrix used for features and weights.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

struct Edge {
  NodeId src;
  NodeId dst;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Attributed graph with an immutable, normalized edge set.
///
/// Edges are stored sorted by (src, dst) with self-loops and duplicates
/// removed. Undirected graphs store both orientations of every edge; the two
/// orientations share one "edge group" so that a smoothing draw can delete
/// them together.
class Graph {
 public:
  Graph() = default;

  Graph(std::size_t n, std::vector<Edge> edges, Matrix features,
        std::optional<std::vector<int>> labels, bool directed)
      : n_(n), features_(std::move(features)), labels_(std::move(labels)), directed_(directed) {
    if (static_cast<std::size_t>(features_.rows()) != n_)
      throw DimensionError("feature matrix has " + std::to_string(features_.rows()) +
                           " rows for " + std::to_string(n_) + " nodes");
    if (labels_ && labels_->size() != n_)
      throw DimensionError("label count " + std::to_string(labels_->size()) +
                           " does not match node count " + std::to_string(n_));
    for (const auto& e : edges) {
      if (e.src >= n_ || e.dst >= n_)
        throw DimensionError("edge (" + std::to_string(e.src) + ", " + std::to_string(e.dst) +
                             ") references a node outside [0, " + std::to_string(n_) + ")");
    }
    std::erase_if(edges, [](const Edge& e) { return e.src == e.dst; });
    if (!directed_) {
      const auto m = edges.size();
      edges.reserve(2 * m);
      for (std::size_t i = 0; i < m; ++i) edges.push_back({edges[i].dst, edges[i].src});
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    build_index();
  }

  /// Structure-only graph with one-hot identity features.
  static Graph from_edges(std::size_t n, std::vector<Edge> edges, bool directed,
                          std::optional<std::vector<int>> labels = std::nullopt) {
    return Graph(n, std::move(edges), Matrix::Identity(static_cast<Eigen::Index>(n),
                                                       static_cast<Eigen::Index>(n)),
                 std::move(labels), directed);
  }

  std::size_t num_nodes() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::size_t feature_dim() const noexcept { return static_cast<std::size_t>(features_.cols()); }
  bool directed() const noexcept { return directed_; }

  std::span<const Edge> edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const Matrix& features() const noexcept { return features_; }
  const std::optional<std::vector<int>>& labels() const noexcept { return labels_; }

  int num_classes() const {
    if (!labels_ || labels_->empty()) return 0;
    return *std::max_element(labels_->begin(), labels_->end()) + 1;
  }

  /// Indices of edges (u -> v), ascending by u.
  std::span<const EdgeId> in_edges(NodeId v) const {
    return {in_edges_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
  }

  std::size_t in_degree(NodeId v) const { return in_offsets_[v + 1] - in_offsets_[v]; }

  /// Logical edge id shared by both orientations of an undirected edge.
  std::uint32_t edge_group(EdgeId e) const { return group_[e]; }
  std::size_t num_edge_groups() const noexcept { return num_groups_; }

  std::optional<EdgeId> find_edge(NodeId src, NodeId dst) const {
    const Edge key{src, dst};
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return std::nullopt;
    return static_cast<EdgeId>(it - edges_.begin());
  }

  /// Copy of this graph with a different edge subset and feature matrix.
  /// `kept` must be a subset of the current edge indices.
  Graph with(std::span<const EdgeId> kept, Matrix features) const {
    Graph g;
    g.n_ = n_;
    g.directed_ = directed_;
    g.labels_ = labels_;
    g.features_ = std::move(features);
    g.edges_.reserve(kept.size());
    for (auto e : kept) g.edges_.push_back(edges_[e]);
    std::sort(g.edges_.begin(), g.edges_.end());
    g.build_index();
    // Keep the group ids of the parent so draws stay comparable.
    for (std::size_t i = 0; i < g.edges_.size(); ++i)
      g.group_[i] = group_[*find_edge(g.edges_[i].src, g.edges_[i].dst)];
    g.num_groups_ = num_groups_;
    return g;
  }

 private:
  void build_index() {
    in_offsets_.assign(n_ + 1, 0);
    for (const auto& e : edges_) ++in_offsets_[e.dst + 1];
    for (std::size_t i = 0; i < n_; ++i) in_offsets_[i + 1] += in_offsets_[i];
    in_edges_.assign(edges_.size(), 0);
    auto cursor = in_offsets_;
    // edges_ is sorted by src, so each in-list comes out ascending by src.
    for (EdgeId e = 0; e < edges_.size(); ++e) in_edges_[cursor[edges_[e].dst]++] = e;

    group_.assign(edges_.size(), 0);
    num_groups_ = 0;
    if (directed_) {
      for (EdgeId e = 0; e < edges_.size(); ++e) group_[e] = e;
      num_groups_ = edges_.size();
      return;
    }
    constexpr auto kUnset = static_cast<std::uint32_t>(-1);
    std::fill(group_.begin(), group_.end(), kUnset);
    for (EdgeId e = 0; e < edges_.size(); ++e) {
      if (group_[e] != kUnset) continue;
      group_[e] = static_cast<std::uint32_t>(num_groups_);
      if (auto r = find_edge(edges_[e].dst, edges_[e].src)) group_[*r] = group_[e];
      ++num_groups_;
    }
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  Matrix features_;
  std::optional<std::vector<int>> labels_;
  bool directed_ = false;

  std::vector<std::size_t> in_offsets_{0};
  std::vector<EdgeId> in_edges_;
  std::vector<std::uint32_t> group_;
  std::size_t num_groups_ = 0;
};

/// Subgraph on `nodes` (in the given order; node i of the result is nodes[i])
/// keeping every edge with both endpoints inside. Features and labels follow
/// their nodes.
inline Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  std::vector<std::int64_t> local(g.num_nodes(), -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = static_cast<std::int64_t>(i);
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (local[e.src] >= 0 && local[e.dst] >= 0)
      edges.push_back({static_cast<NodeId>(local[e.src]), static_cast<NodeId>(local[e.dst])});
  Matrix x(static_cast<Eigen::Index>(nodes.size()), g.features().cols());
  std::optional<std::vector<int>> labels;
  if (g.labels()) labels.emplace();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    x.row(static_cast<Eigen::Index>(i)) = g.features().row(nodes[i]);
    if (labels) labels->push_back((*g.labels())[nodes[i]]);
  }
  // The edge set is already closed under reversal for undirected graphs.
  return Graph(nodes.size(), std::move(edges), std::move(x), std::move(labels), g.directed());
}

namespace detail {

inline std::vector<Edge> parse_edge_list(std::string_view text, const std::string& source) {
  std::vector<Edge> edges;
  for (const auto& [line_no, line] : content_lines(text)) {
    const auto tok = split_whitespace(line);
    std::optional<NodeId> a;
    std::optional<NodeId> b;
    if (tok.size() == 2) {
      a = parse_int<NodeId>(tok[0]);
      b = parse_int<NodeId>(tok[1]);
    }
    if (!a || !b) throw ParseError(source, line_no, "expected two non-negative integers");
    edges.push_back({*a, *b});
  }
  return edges;
}

inline Matrix parse_feature_csv(std::string_view text, const std::string& source) {
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  for (const auto& [line_no, line] : content_lines(text)) {
    std::vector<double> row;
    for (auto cell : split(line, ',')) {
      auto x = parse_double(cell);
      if (!x) throw ParseError(source, line_no, "invalid number '" + std::string(cell) + "'");
      row.push_back(*x);
    }
    if (rows.empty()) width = row.size();
    if (row.size() != width)
      throw ParseError(source, line_no,
                       "expected " + std::to_string(width) + " columns, got " + std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return m;
}

inline std::vector<int> parse_labels(std::string_view text, const std::string& source) {
  std::vector<int> labels;
  for (const auto& [line_no, line] : content_lines(text)) {
    auto y = parse_int<int>(split(line, ',').front());
    if (!y || *y < 0) throw ParseError(source, line_no, "expected a non-negative class index");
    labels.push_back(*y);
  }
  return labels;
}

}  // namespace detail

/// Loads an edge list plus optional feature and label files.
///
/// The node count is one more than the largest index in the edge list, or the
/// number of feature rows when that is larger. Without a feature file every
/// node gets a one-hot identity feature vector.
inline Graph load_graph(const std::filesystem::path& edge_path,
                        const std::optional<std::filesystem::path>& feature_path,
                        const std::optional<std::filesystem::path>& label_path, bool directed) {
  auto edges = detail::parse_edge_list(detail::read_file(edge_path), edge_path.string());
  std::size_t n = 0;
  for (const auto& e : edges) n = std::max<std::size_t>(n, std::max(e.src, e.dst) + std::size_t{1});

  std::optional<Matrix> features;
  if (feature_path) {
    features = detail::parse_feature_csv(detail::read_file(*feature_path), feature_path->string());
    const auto rows = static_cast<std::size_t>(features->rows());
    if (rows < n)
      throw DimensionError("feature file has " + std::to_string(rows) +
                           " rows but the edge list references " + std::to_string(n) + " nodes");
    n = rows;
  }
  std::optional<std::vector<int>> labels;
  if (label_path) {
    labels = detail::parse_labels(detail::read_file(*label_path), label_path->string());
    if (labels->size() != n)
      throw DimensionError("label file has " + std::to_string(labels->size()) + " rows for " +
                           std::to_string(n) + " nodes");
  }
  if (!features) {
    return Graph::from_edges(n, std::move(edges), directed, std::move(labels));
  }
  return Graph(n, std::move(edges), std::move(*features), std::move(labels), directed);
}

}  // namespace msgcert

#endif  // MSGCERT_GRAPH_HPP
