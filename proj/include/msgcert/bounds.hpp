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

// Probability that at least one adversarial message reaches the target node.
//
// Every certificate in this library reduces to a bound on this probability
// (called delta below). A node's message is intercepted when its features are
// ablated or when every simple path of length <= k from it to the target loses
// at least one edge. Exact values are available through inclusion-exclusion
// over paths or, for tree-shaped receptive fields, through a recursion over
// independent branches; the multiplicative and union bounds scale to any field.

#ifndef MSGCERT_BOUNDS_HPP
#define MSGCERT_BOUNDS_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "msgcert/combinatorics.hpp"
#include "msgcert/error.hpp"
#include "msgcert/random.hpp"
#include "msgcert/receptive_field.hpp"
#include "msgcert/smoothing.hpp"

namespace msgcert {

enum class DeltaMethod {
  kNodeAblationExact,
  kSingleSource,
  kMultiplicative,
  kUnion,
  kInclusionExclusion,
  kTree,
  kMonteCarlo,
};

inline std::string_view to_string(DeltaMethod m) {
  switch (m) {
    case DeltaMethod::kNodeAblationExact: return "node-ablation-exact";
    case DeltaMethod::kSingleSource: return "single-source";
    case DeltaMethod::kMultiplicative: return "multiplicative";
    case DeltaMethod::kUnion: return "union";
    case DeltaMethod::kInclusionExclusion: return "inclusion-exclusion-exact";
    case DeltaMethod::kTree: return "tree-exact";
    case DeltaMethod::kMonteCarlo: return "monte-carlo";
  }
  return "unknown";
}

struct DeltaBound {
  double value = 0.0;  ///< in [0, 1]; the union bound is clamped here
  double raw = 0.0;    ///< unclamped value (differs from `value` only for the union bound)
  DeltaMethod method = DeltaMethod::kMultiplicative;
  int rho = 0;
  int d_min = 0;
  std::vector<NodeId> adversaries;  ///< maximizing node set when an exact search ran
  double std_error = 0.0;           ///< Monte-Carlo only
};

/// Single-source bound of one candidate adversarial node.
struct SingleSource {
  NodeId node;
  double delta;
};

/// Worst-case search strategies over adversary sets of size rho.
enum class BoundMethod {
  kMultiplicative,
  kUnion,
  kExactEnumeration,
  kNodeAblationExact,
};

inline std::string_view to_string(BoundMethod m) {
  switch (m) {
    case BoundMethod::kMultiplicative: return "multiplicative";
    case BoundMethod::kUnion: return "union";
    case BoundMethod::kExactEnumeration: return "exact-enumeration";
    case BoundMethod::kNodeAblationExact: return "node-ablation-exact";
  }
  return "unknown";
}

inline std::optional<BoundMethod> parse_bound_method(std::string_view s) {
  for (auto m : {BoundMethod::kMultiplicative, BoundMethod::kUnion, BoundMethod::kExactEnumeration,
                 BoundMethod::kNodeAblationExact})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

struct BoundLimits {
  std::uint64_t max_terms = std::uint64_t{1} << 20;  ///< inclusion-exclusion terms
  std::uint64_t subset_cap = 50'000;                 ///< adversary subsets in exact search
};

namespace detail {

/// 1 - prod(1 - x_i), accurate for tiny and near-one factors alike.
inline double complement_of_product(std::span<const double> xs) {
  double log_sum = 0.0;
  for (double x : xs) {
    if (x >= 1.0) return 1.0;
    log_sum += std::log1p(-x);
  }
  return -std::expm1(log_sum);
}

inline double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

inline void sort_singles(std::vector<SingleSource>& singles) {
  std::stable_sort(singles.begin(), singles.end(), [](const SingleSource& a, const SingleSource& b) {
    if (a.delta != b.delta) return a.delta > b.delta;
    return a.node < b.node;
  });
}

}  // namespace detail

/// Node-ablation-only smoothing (no edge deletion): 1 - p_abl^rho.
inline DeltaBound delta_node_ablation_exact(double p_abl, int rho) {
  if (rho < 0) throw DomainError("rho must be non-negative");
  const double v = rho == 0 ? 0.0 : 1.0 - std::pow(p_abl, rho);
  return {v, v, DeltaMethod::kNodeAblationExact, rho, 0, {}, 0.0};
}

/// Upper bound on the probability that `w` alone reaches the target. Tight
/// whenever the simple paths from `w` share no edges (always true for k <= 2).
inline DeltaBound delta_single_source(const ReceptiveField& rf, NodeId w, const SmoothingConfig& cfg) {
  DeltaBound b{0.0, 0.0, DeltaMethod::kSingleSource, 1, 0, {w}, 0.0};
  if (!rf.contains(w)) return b;
  if (w == rf.target()) {
    b.value = b.raw = 1.0 - cfg.p_abl;
    return b;
  }
  std::vector<double> arrive;
  for (auto pid : rf.paths_from(w))
    arrive.push_back(std::pow(1.0 - cfg.p_del, static_cast<double>(rf.paths()[pid].length())));
  b.value = b.raw = detail::complement_of_product(arrive) * (1.0 - cfg.p_abl);
  return b;
}

/// Single-source bounds for all members at distance >= d_min, sorted
/// descending (ties by ascending node index).
inline std::vector<SingleSource> single_source_bounds(const ReceptiveField& rf, int d_min,
                                                      const SmoothingConfig& cfg) {
  std::vector<SingleSource> out;
  for (NodeId w : rf.candidates(d_min)) out.push_back({w, delta_single_source(rf, w, cfg).value});
  detail::sort_singles(out);
  return out;
}

/// 1 - prod_{i <= rho} (1 - delta_i) over the rho largest single-source values.
inline DeltaBound delta_multiplicative(std::vector<SingleSource> singles, int rho) {
  detail::sort_singles(singles);
  const auto r = std::min<std::size_t>(static_cast<std::size_t>(std::max(rho, 0)), singles.size());
  std::vector<double> top;
  DeltaBound b{0.0, 0.0, DeltaMethod::kMultiplicative, rho, 0, {}, 0.0};
  for (std::size_t i = 0; i < r; ++i) {
    top.push_back(singles[i].delta);
    b.adversaries.push_back(singles[i].node);
  }
  b.value = b.raw = detail::clamp01(detail::complement_of_product(top));
  return b;
}

/// Sum of the rho largest single-source values, clamped to 1 (`raw` keeps the sum).
inline DeltaBound delta_union(std::vector<SingleSource> singles, int rho) {
  detail::sort_singles(singles);
  const auto r = std::min<std::size_t>(static_cast<std::size_t>(std::max(rho, 0)), singles.size());
  DeltaBound b{0.0, 0.0, DeltaMethod::kUnion, rho, 0, {}, 0.0};
  for (std::size_t i = 0; i < r; ++i) {
    b.raw += singles[i].delta;
    b.adversaries.push_back(singles[i].node);
  }
  b.value = std::min(1.0, b.raw);
  return b;
}

/// Inclusion-exclusion over the simple paths of an attacked set, kept in
/// symbolic form: probability = sum_{a,b} coeff[a][b] (1-p_del)^a (1-p_abl)^b,
/// where a counts distinct deletion coins and b distinct source nodes of a
/// path subset. The integer coefficients are exact, so one expansion can be
/// evaluated for any smoothing probabilities.
class PathUnionPolynomial {
 public:
  PathUnionPolynomial() = default;

  PathUnionPolynomial(const ReceptiveField& rf, std::span<const NodeId> attacked,
                      std::uint64_t max_terms = BoundLimits{}.max_terms) {
    std::vector<NodeId> sources;
    std::vector<std::uint32_t> path_ids;
    for (NodeId w : attacked) {
      if (w == rf.target()) {
        target_attacked_ = true;
        continue;
      }
      if (!rf.contains(w) || std::find(sources.begin(), sources.end(), w) != sources.end()) continue;
      sources.push_back(w);
      for (auto pid : rf.paths_from(w)) path_ids.push_back(pid);
    }
    const auto num_paths = path_ids.size();
    if (num_paths >= 63 || (std::uint64_t{1} << num_paths) > max_terms)
      throw ResourceLimitError("inclusion-exclusion over " + std::to_string(num_paths) +
                               " paths exceeds the term budget of " + std::to_string(max_terms) +
                               "; use the tree or multiplicative method");
    if (num_paths == 0) return;

    // Dense renumbering of the coins used by these paths.
    std::vector<std::uint32_t> coin_ids;
    for (auto pid : path_ids)
      for (auto e : rf.paths()[pid].edges) coin_ids.push_back(rf.edges()[e].coin);
    std::sort(coin_ids.begin(), coin_ids.end());
    coin_ids.erase(std::unique(coin_ids.begin(), coin_ids.end()), coin_ids.end());
    words_ = (coin_ids.size() + 63) / 64;
    max_coins_ = coin_ids.size();
    max_sources_ = sources.size();

    coin_masks_.assign(num_paths * words_, 0);
    source_masks_.assign(num_paths, 0);
    for (std::size_t i = 0; i < num_paths; ++i) {
      const auto& p = rf.paths()[path_ids[i]];
      for (auto e : p.edges) {
        const auto c = static_cast<std::size_t>(
            std::lower_bound(coin_ids.begin(), coin_ids.end(), rf.edges()[e].coin) - coin_ids.begin());
        coin_masks_[i * words_ + c / 64] |= std::uint64_t{1} << (c % 64);
      }
      const auto s = static_cast<std::size_t>(std::find(sources.begin(), sources.end(), p.source) -
                                              sources.begin());
      source_masks_[i] = std::uint64_t{1} << s;
    }
    coeff_.assign((max_coins_ + 1) * (max_sources_ + 1), 0);
    num_paths_ = num_paths;

    std::vector<std::uint64_t> stack((num_paths + 1) * words_, 0);
    expand(0, 0, false, 0, stack);
  }

  bool target_attacked() const noexcept { return target_attacked_; }
  std::size_t num_paths() const noexcept { return num_paths_; }

  std::int64_t coefficient(std::size_t coins, std::size_t sources) const {
    return coeff_[coins * (max_sources_ + 1) + sources];
  }

  /// Probability that a message from the attacked set reaches the target.
  double evaluate(double p_del, double p_abl) const {
    const long double keep_edge = 1.0L - p_del;
    const long double keep_node = 1.0L - p_abl;
    long double total = 0.0L;
    for (std::size_t a = 0; a <= max_coins_; ++a) {
      const long double ea = std::pow(keep_edge, static_cast<long double>(a));
      for (std::size_t b = 0; b <= max_sources_; ++b) {
        const auto c = coefficient(a, b);
        if (c != 0) total += static_cast<long double>(c) * ea * std::pow(keep_node, static_cast<long double>(b));
      }
    }
    double via_paths = static_cast<double>(total);
    if (target_attacked_) via_paths = 1.0 - (1.0 - via_paths) * p_abl;
    return detail::clamp01(via_paths);
  }

 private:
  void expand(std::size_t i, std::uint64_t sources, bool nonempty, int parity,
              std::vector<std::uint64_t>& stack) {
    if (i == num_paths_) {
      if (!nonempty) return;
      std::size_t coins = 0;
      for (std::size_t w = 0; w < words_; ++w) coins += std::popcount(stack[i * words_ + w]);
      const auto b = static_cast<std::size_t>(std::popcount(sources));
      coeff_[coins * (max_sources_ + 1) + b] += parity ? 1 : -1;
      return;
    }
    // Exclude path i.
    std::copy_n(stack.begin() + static_cast<std::ptrdiff_t>(i * words_), words_,
                stack.begin() + static_cast<std::ptrdiff_t>((i + 1) * words_));
    expand(i + 1, sources, nonempty, parity, stack);
    // Include path i.
    for (std::size_t w = 0; w < words_; ++w)
      stack[(i + 1) * words_ + w] = stack[i * words_ + w] | coin_masks_[i * words_ + w];
    expand(i + 1, sources | source_masks_[i], true, parity ^ 1, stack);
  }

  bool target_attacked_ = false;
  std::size_t num_paths_ = 0;
  std::size_t words_ = 0;
  std::size_t max_coins_ = 0;
  std::size_t max_sources_ = 0;
  std::vector<std::uint64_t> coin_masks_;
  std::vector<std::uint64_t> source_masks_;
  std::vector<std::int64_t> coeff_{0};
};

/// Exact probability that a message from `attacked` reaches the target,
/// by inclusion-exclusion over all subsets of their simple paths.
inline DeltaBound delta_exact_ie(const ReceptiveField& rf, std::span<const NodeId> attacked,
                                 const SmoothingConfig& cfg,
                                 std::uint64_t max_terms = BoundLimits{}.max_terms) {
  const PathUnionPolynomial poly(rf, attacked, max_terms);
  const double v = poly.evaluate(cfg.p_del, cfg.p_abl);
  return {v, v, DeltaMethod::kInclusionExclusion, static_cast<int>(attacked.size()), 0,
          {attacked.begin(), attacked.end()}, 0.0};
}

/// Exact probability for tree-shaped receptive fields. Branches of a tree
/// are independent, which turns the union over paths into a product per node.
inline DeltaBound delta_tree_exact(const ReceptiveField& rf, std::span<const NodeId> attacked,
                                   const SmoothingConfig& cfg) {
  if (!rf.is_tree())
    throw ShapeError("receptive field of node " + std::to_string(rf.target()) + " is not a tree");
  const auto members = rf.members();
  std::vector<std::vector<std::size_t>> children(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] == rf.target()) continue;
    const auto& path = rf.paths()[rf.paths_from(members[i]).front()];
    const NodeId parent = rf.edges()[path.edges.front()].dst;
    children[*rf.index_of(parent)].push_back(i);
  }
  std::vector<char> is_attacked(members.size(), 0);
  for (NodeId w : attacked)
    if (auto i = rf.index_of(w)) is_attacked[*i] = 1;

  // reach(i): probability that node i receives an adversarial message
  // (its own features count when i is attacked).
  auto reach = [&](auto&& self, std::size_t i) -> double {
    std::vector<double> branch;
    for (auto j : children[i]) branch.push_back((1.0 - cfg.p_del) * self(self, j));
    const double via_children = detail::complement_of_product(branch);
    return is_attacked[i] ? 1.0 - cfg.p_abl * (1.0 - via_children) : via_children;
  };
  const double v = detail::clamp01(reach(reach, *rf.index_of(rf.target())));
  return {v, v, DeltaMethod::kTree, static_cast<int>(attacked.size()), 0,
          {attacked.begin(), attacked.end()}, 0.0};
}

/// Exact delta for a fixed attacked set: tree recursion when possible,
/// inclusion-exclusion otherwise.
inline DeltaBound delta_exact(const ReceptiveField& rf, std::span<const NodeId> attacked,
                              const SmoothingConfig& cfg,
                              std::uint64_t max_terms = BoundLimits{}.max_terms) {
  if (rf.is_tree()) return delta_tree_exact(rf, attacked, cfg);
  return delta_exact_ie(rf, attacked, cfg, max_terms);
}

/// Worst case over all adversary sets of at most `rho` members at distance
/// >= d_min.
inline DeltaBound delta_worst_case(const ReceptiveField& rf, int rho, int d_min, const SmoothingConfig& cfg,
                                   BoundMethod method, const BoundLimits& limits = {}) {
  if (rho < 0) throw DomainError("rho must be non-negative");
  DeltaBound out;
  switch (method) {
    case BoundMethod::kMultiplicative:
      out = delta_multiplicative(single_source_bounds(rf, d_min, cfg), rho);
      break;
    case BoundMethod::kUnion:
      out = delta_union(single_source_bounds(rf, d_min, cfg), rho);
      break;
    case BoundMethod::kNodeAblationExact: {
      if (cfg.p_del != 0.0) throw DomainError("node-ablation-exact delta requires p_del = 0");
      const auto m = static_cast<int>(rf.attack_surface(d_min));
      out = delta_node_ablation_exact(cfg.p_abl, std::min(rho, m));
      break;
    }
    case BoundMethod::kExactEnumeration: {
      const auto candidates = rf.candidates(d_min);
      const auto r = std::min<std::size_t>(static_cast<std::size_t>(rho), candidates.size());
      out.method = rf.is_tree() ? DeltaMethod::kTree : DeltaMethod::kInclusionExclusion;
      if (r == 0) break;
      const auto count = binomial_capped(candidates.size(), r, limits.subset_cap);
      if (count > limits.subset_cap)
        throw ResourceLimitError("exact worst-case search needs C(" + std::to_string(candidates.size()) + ", " +
                                 std::to_string(r) + ") subsets, above the cap of " +
                                 std::to_string(limits.subset_cap));
      std::vector<NodeId> set(r);
      double best = -1.0;
      for_each_combination(candidates.size(), r, [&](const std::vector<std::size_t>& idx) {
        for (std::size_t i = 0; i < r; ++i) set[i] = candidates[idx[i]];
        const double v = delta_exact(rf, set, cfg, limits.max_terms).value;
        if (v > best) {
          best = v;
          out.adversaries = set;
        }
        return true;
      });
      out.value = out.raw = best;
      break;
    }
  }
  out.rho = rho;
  out.d_min = d_min;
  return out;
}

/// Greedy adversary: repeatedly adds the candidate that increases the exact
/// delta the most. The result is the delta of one concrete adversary set, i.e.
/// a lower bound on the worst case. Useful to gauge how loose an upper bound
/// is; never use it as a certificate value.
inline DeltaBound greedy_adversary_lower_bound(const ReceptiveField& rf, int rho, int d_min,
                                               const SmoothingConfig& cfg, const BoundLimits& limits = {}) {
  auto candidates = rf.candidates(d_min);
  DeltaBound out;
  out.method = rf.is_tree() ? DeltaMethod::kTree : DeltaMethod::kInclusionExclusion;
  out.rho = rho;
  out.d_min = d_min;
  for (int step = 0; step < rho && !candidates.empty(); ++step) {
    double best = -1.0;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      auto trial = out.adversaries;
      trial.push_back(candidates[i]);
      const double v = delta_exact(rf, trial, cfg, limits.max_terms).value;
      if (v > best) {
        best = v;
        best_i = i;
      }
    }
    out.adversaries.push_back(candidates[best_i]);
    candidates.erase(candidates.begin() + static_cast<std::ptrdiff_t>(best_i));
    out.value = out.raw = best;
  }
  return out;
}

/// Delta as a function of rho for one receptive field; values()[rho] for
/// rho = 0..max_rho(). Exact curves stop early once delta reaches 1/2 since
/// nothing beyond that point is certifiable.
class DeltaCurve {
 public:
  DeltaCurve() = default;
  DeltaCurve(std::vector<double> values, DeltaMethod method, int d_min)
      : values_(std::move(values)), method_(method), d_min_(d_min) {}

  std::span<const double> values() const noexcept { return values_; }
  int max_rho() const noexcept { return static_cast<int>(values_.size()) - 1; }
  DeltaMethod method() const noexcept { return method_; }
  int d_min() const noexcept { return d_min_; }

  /// Delta at rho, or nullopt when the curve was not evaluated that far.
  std::optional<double> at(int rho) const {
    if (rho < 0 || rho > max_rho()) return std::nullopt;
    return values_[static_cast<std::size_t>(rho)];
  }

 private:
  std::vector<double> values_{0.0};
  DeltaMethod method_ = DeltaMethod::kMultiplicative;
  int d_min_ = 0;
};

inline DeltaCurve delta_curve(const ReceptiveField& rf, int d_min, const SmoothingConfig& cfg,
                              BoundMethod method, int max_rho, const BoundLimits& limits = {}) {
  std::vector<double> values{0.0};
  switch (method) {
    case BoundMethod::kMultiplicative:
    case BoundMethod::kUnion: {
      const auto singles = single_source_bounds(rf, d_min, cfg);
      std::vector<double> top;
      double sum = 0.0;
      for (int rho = 1; rho <= max_rho; ++rho) {
        if (static_cast<std::size_t>(rho) <= singles.size()) {
          top.push_back(singles[static_cast<std::size_t>(rho) - 1].delta);
          sum += top.back();
        }
        values.push_back(method == BoundMethod::kUnion
                             ? std::min(1.0, sum)
                             : detail::clamp01(detail::complement_of_product(top)));
      }
      return {std::move(values),
              method == BoundMethod::kUnion ? DeltaMethod::kUnion : DeltaMethod::kMultiplicative, d_min};
    }
    case BoundMethod::kNodeAblationExact: {
      for (int rho = 1; rho <= max_rho; ++rho)
        values.push_back(delta_worst_case(rf, rho, d_min, cfg, method, limits).value);
      return {std::move(values), DeltaMethod::kNodeAblationExact, d_min};
    }
    case BoundMethod::kExactEnumeration: {
      const auto m = static_cast<int>(rf.attack_surface(d_min));
      for (int rho = 1; rho <= max_rho; ++rho) {
        if (rho > m) {
          values.push_back(values.back());
          continue;
        }
        values.push_back(delta_worst_case(rf, rho, d_min, cfg, method, limits).value);
        if (values.back() >= 0.5) break;
      }
      return {std::move(values), rf.is_tree() ? DeltaMethod::kTree : DeltaMethod::kInclusionExclusion, d_min};
    }
  }
  return {};
}

/// Monte-Carlo estimate of the probability that a message from `attacked`
/// reaches the target, by sampling deletion/ablation and searching for a
/// surviving path of length <= k.
inline DeltaBound delta_monte_carlo(const ReceptiveField& rf, std::span<const NodeId> attacked,
                                    const SmoothingConfig& cfg, std::uint64_t samples) {
  if (samples == 0) throw DomainError("monte-carlo delta needs at least one sample");
  const auto members = rf.members();
  const auto m = members.size();
  std::vector<char> is_attacked(m, 0);
  for (NodeId w : attacked)
    if (auto i = rf.index_of(w)) is_attacked[*i] = 1;
  const auto target = *rf.index_of(rf.target());

  // Field edges grouped by destination member.
  std::vector<std::vector<std::pair<std::size_t, std::uint32_t>>> in(m);
  for (const auto& e : rf.edges()) in[*rf.index_of(e.dst)].push_back({*rf.index_of(e.src), e.coin});

  std::vector<char> kept(rf.num_coins());
  std::vector<int> depth(m);
  std::vector<std::size_t> frontier;
  std::vector<std::size_t> next;
  std::uint64_t hits = 0;
  const auto coins = static_cast<std::uint32_t>(rf.num_coins());
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (std::uint32_t c = 0; c < coins; ++c)
      kept[c] = !bernoulli(cfg.p_del, cfg.seed, Stream::kMonteCarlo, s, c);
    std::fill(depth.begin(), depth.end(), -1);
    depth[target] = 0;
    frontier.assign(1, target);
    for (int d = 1; d <= rf.layers() && !frontier.empty(); ++d) {
      next.clear();
      for (auto u : frontier)
        for (const auto& [src, coin] : in[u])
          if (kept[coin] && depth[src] < 0) {
            depth[src] = d;
            next.push_back(src);
          }
      frontier.swap(next);
    }
    bool hit = false;
    for (std::size_t i = 0; i < m && !hit; ++i) {
      if (!is_attacked[i] || depth[i] < 0) continue;
      hit = !bernoulli(cfg.p_abl, cfg.seed, Stream::kMonteCarlo, s, coins + static_cast<std::uint32_t>(i));
    }
    hits += hit;
  }
  const double p = static_cast<double>(hits) / static_cast<double>(samples);
  DeltaBound b{p, p, DeltaMethod::kMonteCarlo, static_cast<int>(attacked.size()), 0,
               {attacked.begin(), attacked.end()}, 0.0};
  b.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return b;
}

/// Largest rho with p_abl^rho > 1/2: beyond it no certificate exists under
/// node-ablation-only smoothing, whatever the base classifier.
inline int max_certifiable_radius(double p_abl) {
  if (!(p_abl >= 0.0 && p_abl < 1.0)) throw DomainError("p_abl must lie in [0, 1)");
  int rho = 0;
  double power = p_abl;
  while (power > 0.5) {
    ++rho;
    power = std::pow(p_abl, rho + 1);
  }
  return rho;
}

/// Delta of uniform "keep exactly `keep` of `n`" ablation with rho
/// adversarial nodes: 1 - C(n - rho, keep) / C(n, keep).
inline DeltaBound levine_delta(std::int64_t n, std::int64_t keep, int rho) {
  if (n < 0 || keep < 0 || keep > n || rho < 0) throw DomainError("levine_delta needs 0 <= keep <= n, rho >= 0");
  DeltaBound b{0.0, 0.0, DeltaMethod::kNodeAblationExact, rho, 0, {}, 0.0};
  if (rho == 0) return b;
  if (keep > n - rho) {
    b.value = b.raw = 1.0;
    return b;
  }
  const Rational survive(binomial(n - rho, keep), binomial(n, keep));
  b.value = b.raw = static_cast<double>(Rational(1) - survive);
  return b;
}

/// Largest rho with levine_delta(n, keep, rho) < 1/2.
inline int levine_certifiable_radius(std::int64_t n, std::int64_t keep) {
  int rho = 0;
  while (rho < n && levine_delta(n, keep, rho + 1).value < 0.5) ++rho;
  return rho;
}

}  // namespace msgcert

#endif  // MSGCERT_BOUNDS_HPP
