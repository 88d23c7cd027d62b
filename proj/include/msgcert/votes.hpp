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

// Externally produced base-classifier votes: one predicted class per
// (node, smoothing sample). Lets any model plug into the estimator.

#ifndef MSGCERT_VOTES_HPP
#define MSGCERT_VOTES_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msgcert/detail/text.hpp"
#include "msgcert/error.hpp"
#include "msgcert/graph.hpp"

namespace msgcert {

class VoteTable {
 public:
  /// Records a vote; a second vote for the same (node, sample) is rejected.
  void add(NodeId node, std::uint64_t sample_index, int cls) {
    if (cls < 0) throw FormatError("negative class index for node " + std::to_string(node));
    const auto [it, fresh] = votes_[node].emplace(sample_index, cls);
    if (!fresh)
      throw FormatError("duplicate vote for node " + std::to_string(node) + ", sample " +
                        std::to_string(sample_index));
    num_classes_ = std::max(num_classes_, static_cast<std::size_t>(cls) + 1);
    ++size_;
  }

  std::optional<int> vote(NodeId node, std::uint64_t sample_index) const {
    const auto n = votes_.find(node);
    if (n == votes_.end()) return std::nullopt;
    const auto s = n->second.find(sample_index);
    if (s == n->second.end()) return std::nullopt;
    return s->second;
  }

  /// Per-class counts over every stored sample of `node`.
  std::vector<std::size_t> tally(NodeId node) const {
    std::vector<std::size_t> counts(num_classes_, 0);
    if (const auto n = votes_.find(node); n != votes_.end())
      for (const auto& [s, c] : n->second) ++counts[static_cast<std::size_t>(c)];
    return counts;
  }

  std::vector<NodeId> nodes() const {
    std::vector<NodeId> out;
    for (const auto& [v, _] : votes_) out.push_back(v);
    return out;
  }

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  std::size_t num_classes() const noexcept { return num_classes_; }

  const std::map<NodeId, std::map<std::uint64_t, int>>& entries() const noexcept { return votes_; }

 private:
  std::map<NodeId, std::map<std::uint64_t, int>> votes_;
  std::size_t num_classes_ = 0;
  std::size_t size_ = 0;
};

inline constexpr std::string_view kVoteHeader = "node_id,sample_index,class";

inline VoteTable parse_votes(std::string_view text, const std::string& source) {
  VoteTable table;
  bool first = true;
  for (const auto& [line_no, line] : detail::content_lines(text)) {
    if (first && line == kVoteHeader) {
      first = false;
      continue;
    }
    first = false;
    const auto cells = detail::split(line, ',');
    if (cells.size() != 3) throw ParseError(source, line_no, "expected node_id,sample_index,class");
    const auto node = detail::parse_int<NodeId>(cells[0]);
    const auto sample = detail::parse_int<std::uint64_t>(cells[1]);
    const auto cls = detail::parse_int<int>(cells[2]);
    if (!node || !sample || !cls || *cls < 0) throw ParseError(source, line_no, "expected non-negative integers");
    try {
      table.add(*node, *sample, *cls);
    } catch (const FormatError& e) {
      throw FormatError(source + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return table;
}

inline VoteTable load_votes(const std::filesystem::path& path) {
  return parse_votes(detail::read_file(path), path.string());
}

inline std::string format_votes(const VoteTable& table) {
  std::string out(kVoteHeader);
  out += '\n';
  for (const auto& [node, samples] : table.entries())
    for (const auto& [s, c] : samples) out += std::to_string(node) + ',' + std::to_string(s) + ',' + std::to_string(c) + '\n';
  return out;
}

inline void write_votes(const std::filesystem::path& path, const VoteTable& table) {
  detail::write_file(path, format_votes(table));
}

}  // namespace msgcert

#endif  // MSGCERT_VOTES_HPP
