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

// Exact label probabilities under uniform node-retention smoothing: keep k
// of the d non-target nodes of a receptive field, delete the rest.
//
// A message-passing prediction only sees the part S of the retained set that
// can still reach the target. Grouping the C(d, k) retention sets by S gives
// one classifier evaluation per group; a group's size is
//   beta_S = C(|V| - |N(S)| - |S|, k + 1 - |S|)
// where N(S) are the in-neighbors of S outside S (none of them may be kept).

#ifndef MSGCERT_DERANDOMIZER_HPP
#define MSGCERT_DERANDOMIZER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "msgcert/combinatorics.hpp"
#include "msgcert/error.hpp"
#include "msgcert/gnn.hpp"
#include "msgcert/receptive_field.hpp"

namespace msgcert {

struct ReducedRepresentative {
  std::vector<NodeId> nodes;  ///< graph node ids; nodes[0] is the target, the rest ascending
  BigInt beta;
};

struct RetentionConfig {
  double k_rel = 0.1;
  std::uint64_t tau = 100'000;

  void validate() const {
    if (!(k_rel >= 0.0 && k_rel <= 1.0)) throw ConfigError("k_rel must lie in [0, 1]");
    if (tau < 1) throw ConfigError("tau must be at least 1");
  }
};

/// ceil(d * k_rel), ignoring floating-point noise below 1e-9 (so that e.g.
/// 10 * 0.7 retains 7 nodes, not 8).
inline std::int64_t retention_count(std::int64_t d, double k_rel) {
  if (d < 0) throw DomainError("field size must be non-negative");
  const double x = static_cast<double>(d) * k_rel;
  return std::min<std::int64_t>(d, static_cast<std::int64_t>(std::ceil(x - 1e-9)));
}

struct Enumeration {
  bool refused = false;  ///< C(d, k) exceeded tau; nothing was enumerated
  std::int64_t d = 0;
  std::int64_t k = 0;
  BigInt total;  ///< C(d, k)
  std::vector<ReducedRepresentative> reps;

  /// Classifier evaluations per retention set.
  double savings() const {
    if (refused || total == 0) return 1.0;
    return static_cast<double>(Rational(static_cast<std::int64_t>(reps.size()), total));
  }
};

/// Complete set of reduced representatives for retaining k of the field's
/// d = |V| - 1 non-target members. Refuses (without enumerating) when
/// C(d, k) > tau.
inline Enumeration enumerate_representatives(const ReceptiveField& rf, std::int64_t k,
                                             std::uint64_t tau = RetentionConfig{}.tau) {
  const auto members = rf.members();
  const auto size = static_cast<std::int64_t>(members.size());
  Enumeration out;
  out.d = size - 1;
  out.k = k;
  if (k < 0 || k > out.d)
    throw DomainError("retention count " + std::to_string(k) + " outside [0, " + std::to_string(out.d) + "]");
  out.total = binomial(out.d, k);
  if (out.total > tau) {
    out.refused = true;
    return out;
  }

  // Local ids: target 0, other members ascending.
  std::vector<NodeId> global{rf.target()};
  for (auto w : members)
    if (w != rf.target()) global.push_back(w);
  auto local = [&](NodeId w) {
    return static_cast<std::uint32_t>(std::lower_bound(global.begin() + 1, global.end(), w) - global.begin());
  };
  std::vector<std::vector<std::uint32_t>> in(global.size());
  for (const auto& e : rf.induced_edges()) {
    const auto dst = e.dst == rf.target() ? 0u : local(e.dst);
    const auto src = e.src == rf.target() ? 0u : local(e.src);
    in[dst].push_back(src);
  }
  for (auto& list : in) std::sort(list.begin(), list.end());

  std::set<std::vector<std::uint32_t>> visited;
  auto visit = [&](auto&& self, const std::vector<std::uint32_t>& s) -> void {
    if (!visited.insert(s).second) return;
    std::vector<std::uint32_t> frontier;
    for (auto u : s)
      for (auto w : in[u])
        if (!std::binary_search(s.begin(), s.end(), w)) frontier.push_back(w);
    std::sort(frontier.begin(), frontier.end());
    frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());

    const auto ns = static_cast<std::int64_t>(s.size());
    BigInt beta = binomial(size - static_cast<std::int64_t>(frontier.size()) - ns, k + 1 - ns);
    if (beta > 0) {
      ReducedRepresentative rep;
      for (auto u : s) rep.nodes.push_back(global[u]);
      rep.beta = std::move(beta);
      out.reps.push_back(std::move(rep));
    }
    if (ns >= k + 1) return;
    for (auto w : frontier) {
      auto next = s;
      next.insert(std::upper_bound(next.begin(), next.end(), w), w);
      self(self, next);
    }
  };
  visit(visit, {0});
  return out;
}

/// p_y = C(d, k)^-1 * sum over representatives S with classify(S) = y of beta_S.
/// `classify` receives the representative's node set (target first).
template <class Classify>
std::vector<Rational> exact_label_probs(const Enumeration& e, std::size_t num_classes, Classify&& classify) {
  if (e.refused) throw IntegrityError("enumeration was refused; no exact probabilities available");
  BigInt sum = 0;
  for (const auto& r : e.reps) sum += r.beta;
  if (sum != e.total)
    throw IntegrityError("representative multiplicities sum to " + sum.str() + ", expected C(" +
                         std::to_string(e.d) + ", " + std::to_string(e.k) + ") = " + e.total.str());
  std::vector<BigInt> mass(num_classes, 0);
  for (const auto& r : e.reps) {
    const int y = classify(std::span<const NodeId>(r.nodes));
    if (y < 0 || static_cast<std::size_t>(y) >= num_classes)
      throw DomainError("classifier returned class " + std::to_string(y));
    mass[static_cast<std::size_t>(y)] += r.beta;
  }
  std::vector<Rational> probs;
  for (auto& m : mass) probs.emplace_back(m, e.total);
  return probs;
}

/// GCN prediction for the target after deleting every graph node outside `nodes`.
inline int classify_retained(const GnnModel& model, const Graph& g, std::span<const NodeId> nodes) {
  const Graph sub = induced_subgraph(g, nodes);
  return argmax(forward_all(model, sub).row(0));
}

/// Exact delta for node retention: 1 - C(d - rho, k) / C(d, k).
inline Rational retention_delta(std::int64_t d, std::int64_t k, std::int64_t rho) {
  if (rho <= 0) return 0;
  if (k > d - rho) return 1;
  return Rational(1) - Rational(binomial(d - rho, k), binomial(d, k));
}

struct DerandomizedCertificate {
  int prediction = 0;
  int runner_up = -1;
  int radius = 0;
};

/// Certificate from exact probabilities (no confidence level, no abstention):
/// largest rho with p_top - delta(rho) > p_second + delta(rho), delta(rho) < 1/2.
inline DerandomizedCertificate derandomized_certificate(std::span<const Rational> probs, std::int64_t d,
                                                        std::int64_t k) {
  DerandomizedCertificate c;
  for (std::size_t y = 1; y < probs.size(); ++y)
    if (probs[y] > probs[static_cast<std::size_t>(c.prediction)]) c.prediction = static_cast<int>(y);
  for (std::size_t y = 0; y < probs.size(); ++y) {
    if (static_cast<int>(y) == c.prediction) continue;
    if (c.runner_up < 0 || probs[y] > probs[static_cast<std::size_t>(c.runner_up)]) c.runner_up = static_cast<int>(y);
  }
  const Rational top = probs[static_cast<std::size_t>(c.prediction)];
  const Rational second = c.runner_up < 0 ? Rational(0) : probs[static_cast<std::size_t>(c.runner_up)];
  const Rational half(1, 2);
  for (std::int64_t rho = 1; rho <= d; ++rho) {
    const Rational delta = retention_delta(d, k, rho);
    if (delta >= half || !(top - delta > second + delta)) break;
    c.radius = static_cast<int>(rho);
  }
  return c;
}

}  // namespace msgcert

#endif  // MSGCERT_DERANDOMIZER_HPP
