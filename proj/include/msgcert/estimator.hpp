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

// Monte-Carlo estimation of the smoothed classifier, Clopper-Pearson bounds,
// certificate decisions and summary curves.
//
// Sample indices [0, n0) select the majority class y* and the runner-up y~;
// the disjoint block [n0, n0 + n1) produces the tally both bounds are computed
// from. Each one-sided bound uses alpha / 2.

#ifndef MSGCERT_ESTIMATOR_HPP
#define MSGCERT_ESTIMATOR_HPP

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "msgcert/bounds.hpp"
#include "msgcert/error.hpp"
#include "msgcert/gnn.hpp"
#include "msgcert/parallel.hpp"
#include "msgcert/votes.hpp"

namespace msgcert {

enum class Side { kLower, kUpper };

/// Exact one-sided Clopper-Pearson bound for `successes` out of `n`, found by
/// bisection on the regularized incomplete beta function. The returned value
/// is the conservative end of the final bracket (width <= 1e-10).
inline double clopper_pearson(std::uint64_t successes, std::uint64_t n, double alpha_side, Side side) {
  if (n == 0 || successes > n) throw DomainError("clopper_pearson needs 0 <= successes <= n and n >= 1");
  if (!(alpha_side > 0.0 && alpha_side < 1.0)) throw DomainError("alpha_side must lie in (0, 1)");
  const auto k = static_cast<double>(successes);
  const auto m = static_cast<double>(n);
  if (side == Side::kLower && successes == 0) return 0.0;
  if (side == Side::kUpper && successes == n) return 1.0;
  // Lower: alpha-quantile of Beta(k, n-k+1). Upper: (1-alpha)-quantile of Beta(k+1, n-k).
  const double a = side == Side::kLower ? k : k + 1.0;
  const double b = side == Side::kLower ? m - k + 1.0 : m - k;
  const double target = side == Side::kLower ? alpha_side : 1.0 - alpha_side;
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (boost::math::ibeta(a, b, mid) < target ? lo : hi) = mid;
  }
  return side == Side::kLower ? lo : hi;
}

struct EstimateConfig {
  std::uint64_t n0 = 1000;
  std::uint64_t n1 = 3000;
  double alpha = 0.01;
  std::size_t workers = 1;

  void validate() const {
    if (n0 < 1 || n1 < 1) throw ConfigError("n0 and n1 must be at least 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  }
};

struct VoteTally {
  NodeId node = 0;
  std::vector<std::uint64_t> selection;  ///< per-class counts over the n0 selection draws
  std::vector<std::uint64_t> counts;     ///< per-class counts over the n1 certification draws
  int y_star = 0;
  int y_tilde = -1;  ///< -1 when there is a single class
  std::uint64_t n0 = 0;
  std::uint64_t n1 = 0;
  double alpha = 0.01;

  /// Lower bound on the probability of y*.
  double p_lower() const { return clopper_pearson(count(y_star), n1, alpha / 2.0, Side::kLower); }

  /// Upper bound on the probability of y~ (0 with a single class).
  double p_upper() const {
    return y_tilde < 0 ? 0.0 : clopper_pearson(count(y_tilde), n1, alpha / 2.0, Side::kUpper);
  }

  std::uint64_t count(int c) const { return counts[static_cast<std::size_t>(c)]; }
};

namespace detail {

/// Top class and runner-up; ties go to the lowest index.
inline std::pair<int, int> top_two(std::span<const std::uint64_t> counts) {
  int first = 0;
  for (std::size_t c = 1; c < counts.size(); ++c)
    if (counts[c] > counts[static_cast<std::size_t>(first)]) first = static_cast<int>(c);
  int second = -1;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (static_cast<int>(c) == first) continue;
    if (second < 0 || counts[c] > counts[static_cast<std::size_t>(second)]) second = static_cast<int>(c);
  }
  return {first, second};
}

inline VoteTally finish_tally(NodeId v, std::vector<std::uint64_t> selection, std::vector<std::uint64_t> counts,
                              const EstimateConfig& cfg) {
  VoteTally t;
  t.node = v;
  std::tie(t.y_star, t.y_tilde) = top_two(selection);
  t.selection = std::move(selection);
  t.counts = std::move(counts);
  t.n0 = cfg.n0;
  t.n1 = cfg.n1;
  t.alpha = cfg.alpha;
  return t;
}

}  // namespace detail

/// Tally for one node from any per-sample vote function `vote(sample_index) -> class`.
template <class VoteFn>
VoteTally estimate_with(NodeId v, std::size_t num_classes, const EstimateConfig& cfg, VoteFn&& vote) {
  cfg.validate();
  std::vector<std::uint64_t> selection(num_classes, 0);
  std::vector<std::uint64_t> counts(num_classes, 0);
  for (std::uint64_t s = 0; s < cfg.n0 + cfg.n1; ++s) {
    const int c = vote(s);
    if (c < 0 || static_cast<std::size_t>(c) >= num_classes)
      throw DomainError("vote " + std::to_string(c) + " outside [0, " + std::to_string(num_classes) + ")");
    ++(s < cfg.n0 ? selection : counts)[static_cast<std::size_t>(c)];
  }
  return detail::finish_tally(v, std::move(selection), std::move(counts), cfg);
}

/// Tally from a loaded vote table; every sample index in [0, n0 + n1) must be present.
inline VoteTally estimate(const VoteTable& table, NodeId v, const EstimateConfig& cfg,
                          std::size_t num_classes = 0) {
  num_classes = std::max({num_classes, table.num_classes(), std::size_t{2}});
  return estimate_with(v, num_classes, cfg, [&](std::uint64_t s) {
    const auto c = table.vote(v, s);
    if (!c)
      throw InsufficientDataError("vote table has no entry for node " + std::to_string(v) + ", sample " +
                                  std::to_string(s) + " (need samples 0.." + std::to_string(cfg.n0 + cfg.n1 - 1) +
                                  ")");
    return *c;
  });
}

/// Tallies for many nodes from live model sampling. Each draw is one forward
/// pass over the whole graph, shared by all requested nodes; draws are split
/// across workers and the integer counts merged, so results do not depend on
/// the worker count.
inline std::vector<VoteTally> estimate(const SmoothedPredictor& predictor, std::span<const NodeId> nodes,
                                       const EstimateConfig& cfg) {
  cfg.validate();
  const auto c = predictor.num_classes();
  const auto total = cfg.n0 + cfg.n1;
  const auto workers = std::min<std::size_t>(resolve_workers(cfg.workers), total);
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(2 * nodes.size() * c, 0));
  parallel_chunks(total, workers, [&](std::size_t w, std::size_t begin, std::size_t end) {
    auto& acc = partial[w];
    for (std::size_t s = begin; s < end; ++s) {
      const auto pred = predictor.predict(s);
      const std::size_t block = s < cfg.n0 ? 0 : nodes.size() * c;
      for (std::size_t i = 0; i < nodes.size(); ++i)
        ++acc[block + i * c + static_cast<std::size_t>(pred[nodes[i]])];
    }
  });
  std::vector<VoteTally> out;
  out.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    std::vector<std::uint64_t> sel(c, 0), cnt(c, 0);
    for (const auto& acc : partial)
      for (std::size_t k = 0; k < c; ++k) {
        sel[k] += acc[i * c + k];
        cnt[k] += acc[nodes.size() * c + i * c + k];
      }
    out.push_back(detail::finish_tally(nodes[i], std::move(sel), std::move(cnt), cfg));
  }
  return out;
}

inline VoteTally estimate(const SmoothedPredictor& predictor, NodeId v, const EstimateConfig& cfg) {
  const NodeId one[] = {v};
  return estimate(predictor, one, cfg).front();
}

/// Records the votes a model casts for `nodes` over sample indices [0, samples).
inline VoteTable record_votes(const SmoothedPredictor& predictor, std::span<const NodeId> nodes,
                              std::uint64_t samples) {
  VoteTable table;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const auto pred = predictor.predict(s);
    for (auto v : nodes) table.add(v, s, pred[v]);
  }
  return table;
}

// ---------------------------------------------------------------------------
// Certificates

struct CertificateResult {
  NodeId node = 0;
  std::optional<int> prediction;  ///< nullopt means abstain
  double p_lower = 0.0;
  double p_upper = 0.0;
  std::map<int, int> radius;               ///< d_min -> largest certified rho
  std::map<int, std::size_t> surface;      ///< d_min -> attack surface size
  std::optional<bool> correct;
  std::string error;  ///< non-empty when this node could not be processed

  bool abstained() const { return !prediction.has_value(); }
  bool failed() const { return !error.empty(); }
};

/// Largest rho in [1, rho_max_scan] such that every rho' <= rho satisfies the
/// certificate condition; 0 when none does.
///   multiclass: p_lower - delta(rho) > p_upper + delta(rho)
///   binary:     p_lower - delta(rho) > 1/2
/// Radii whose delta is >= 1/2 or was not evaluated are never certified.
inline int certified_radius(double p_lower, double p_upper, const DeltaCurve& curve, int rho_max_scan,
                            bool binary = false) {
  int radius = 0;
  for (int rho = 1; rho <= rho_max_scan; ++rho) {
    const double delta = curve.at(rho).value_or(1.0);
    if (delta >= 0.5) break;
    const bool ok = binary ? p_lower - delta > 0.5 : p_lower - delta > p_upper + delta;
    if (!ok) break;
    radius = rho;
  }
  return radius;
}

/// Prediction and bounds from a tally; abstains when the bounds overlap
/// (or, in binary mode, when p_lower <= 1/2).
inline CertificateResult decide(const VoteTally& tally, bool binary = false) {
  CertificateResult r;
  r.node = tally.node;
  r.p_lower = tally.p_lower();
  r.p_upper = tally.p_upper();
  const bool abstain = binary ? r.p_lower <= 0.5 : r.p_lower <= r.p_upper;
  if (!abstain) r.prediction = tally.y_star;
  return r;
}

/// Adds the certified radius for one delta curve (keyed by its d_min).
inline void certify_into(CertificateResult& r, const DeltaCurve& curve, int rho_max_scan, std::size_t surface,
                         bool binary = false) {
  r.surface[curve.d_min()] = surface;
  r.radius[curve.d_min()] =
      r.abstained() ? 0 : certified_radius(r.p_lower, r.p_upper, curve, rho_max_scan, binary);
}

inline CertificateResult certify(const VoteTally& tally, const DeltaCurve& curve, int rho_max_scan,
                                 bool binary = false) {
  auto r = decide(tally, binary);
  certify_into(r, curve, rho_max_scan, static_cast<std::size_t>(std::max(rho_max_scan, 0)), binary);
  return r;
}

// ---------------------------------------------------------------------------
// Summaries

struct Summary {
  int d_min = 0;
  std::size_t num_nodes = 0;   ///< nodes entering the curves
  std::size_t num_failed = 0;  ///< nodes skipped because of per-node errors
  double abstain_rate = 0.0;
  std::optional<double> clean_accuracy;

  /// certified_ratio[r]: fraction of nodes with a prediction and radius >= r.
  std::vector<double> certified_ratio;
  std::vector<double> certified_accuracy;  ///< same, restricted to correct predictions
  double aucrc = 0.0;                      ///< sum over r of certified_ratio[r]
  double aucrc_accuracy = 0.0;

  /// Step curves over normalized radius r / surface in [0, 1], as polylines
  /// whose breakpoints appear twice so that trapezoid integration is exact.
  std::vector<std::pair<double, double>> normalized_ratio;
  std::vector<std::pair<double, double>> normalized_accuracy;
  double normalized_aucrc = 0.0;
  double normalized_aucrc_accuracy = 0.0;

  double ratio_at(int r) const {
    return r >= 0 && static_cast<std::size_t>(r) < certified_ratio.size() ? certified_ratio[static_cast<std::size_t>(r)]
                                                                           : 0.0;
  }
};

namespace detail {

inline double trapezoid(std::span<const std::pair<double, double>> pts) {
  double area = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    area += (pts[i].first - pts[i - 1].first) * 0.5 * (pts[i].second + pts[i - 1].second);
  return area;
}

/// Step curve f(x) = #{values >= x} / total on [0, 1].
inline std::vector<std::pair<double, double>> step_polyline(std::vector<double> values, double total) {
  std::sort(values.begin(), values.end());
  std::vector<double> breaks{0.0};
  for (double x : values)
    if (x > breaks.back()) breaks.push_back(x);
  if (breaks.back() < 1.0) breaks.push_back(1.0);
  auto at_least = [&](double x) {
    return static_cast<double>(values.end() - std::lower_bound(values.begin(), values.end(), x)) / total;
  };
  std::vector<std::pair<double, double>> pts{{0.0, at_least(0.0)}};
  for (std::size_t j = 1; j < breaks.size(); ++j) {
    const double f = at_least(breaks[j]);
    pts.emplace_back(breaks[j - 1], f);
    pts.emplace_back(breaks[j], f);
  }
  return pts;
}

}  // namespace detail

/// Aggregate curves for one d_min. Abstained nodes count as uncertified and
/// incorrect; nodes with a per-node error are left out and counted separately.
inline Summary summarize(std::span<const CertificateResult> results, int d_min) {
  Summary s;
  s.d_min = d_min;
  std::vector<const CertificateResult*> ok;
  for (const auto& r : results) {
    if (r.failed()) {
      ++s.num_failed;
    } else {
      ok.push_back(&r);
      ++s.num_nodes;
    }
  }
  if (ok.empty()) return s;

  const auto total = static_cast<double>(ok.size());
  bool labeled = true;
  int max_radius = 0;
  std::size_t abstained = 0, correct = 0;
  std::vector<double> norm_all, norm_correct;
  for (const auto* r : ok) {
    labeled = labeled && r->correct.has_value();
    if (r->abstained()) {
      ++abstained;
      continue;
    }
    const auto it = r->radius.find(d_min);
    const int rad = it == r->radius.end() ? 0 : it->second;
    max_radius = std::max(max_radius, rad);
    const auto surf = r->surface.count(d_min) ? r->surface.at(d_min) : std::size_t{0};
    const double nr = surf == 0 ? 1.0 : std::min(1.0, static_cast<double>(rad) / static_cast<double>(surf));
    norm_all.push_back(nr);
    if (r->correct.value_or(false)) {
      ++correct;
      norm_correct.push_back(nr);
    }
  }
  s.abstain_rate = static_cast<double>(abstained) / total;
  if (labeled) s.clean_accuracy = static_cast<double>(correct) / total;

  std::vector<std::size_t> at_least(static_cast<std::size_t>(max_radius) + 1, 0);
  std::vector<std::size_t> correct_at_least(at_least.size(), 0);
  for (const auto* r : ok) {
    if (r->abstained()) continue;
    const auto it = r->radius.find(d_min);
    const int rad = it == r->radius.end() ? 0 : it->second;
    for (int q = 0; q <= rad; ++q) {
      ++at_least[static_cast<std::size_t>(q)];
      if (r->correct.value_or(false)) ++correct_at_least[static_cast<std::size_t>(q)];
    }
  }
  for (std::size_t q = 0; q < at_least.size(); ++q) {
    s.certified_ratio.push_back(static_cast<double>(at_least[q]) / total);
    s.certified_accuracy.push_back(static_cast<double>(correct_at_least[q]) / total);
  }
  for (double x : s.certified_ratio) s.aucrc += x;
  for (double x : s.certified_accuracy) s.aucrc_accuracy += x;

  s.normalized_ratio = detail::step_polyline(norm_all, total);
  s.normalized_aucrc = detail::trapezoid(s.normalized_ratio);
  s.normalized_accuracy = detail::step_polyline(norm_correct, total);
  s.normalized_aucrc_accuracy = detail::trapezoid(s.normalized_accuracy);
  if (!labeled) {
    s.certified_accuracy.clear();
    s.normalized_accuracy.clear();
    s.aucrc_accuracy = s.normalized_aucrc_accuracy = 0.0;
  }
  return s;
}

}  // namespace msgcert

#endif  // MSGCERT_ESTIMATOR_HPP
