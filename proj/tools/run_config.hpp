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

// JSON run configuration shared by every subcommand.

#ifndef MSGCERT_TOOLS_RUN_CONFIG_HPP
#define MSGCERT_TOOLS_RUN_CONFIG_HPP

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "msgcert/msgcert.hpp"

namespace msgcert::cli {

namespace fs = std::filesystem;
using nlohmann::json;

struct TargetSelection {
  std::string mode = "test";  // test | all | list | random
  std::vector<NodeId> nodes;
  std::size_t count = 0;
};

struct RunConfig {
  // Paths (absolute after resolution against the config directory).
  fs::path edges;
  std::optional<fs::path> features;
  std::optional<fs::path> labels;
  bool directed = false;
  std::optional<fs::path> model;
  std::optional<fs::path> votes;
  fs::path output_dir = "out";

  int k = 2;
  double p_del = 0.0;
  double p_abl = 0.0;
  TrainConfig train;
  int train_per_class = 20;
  int val_per_class = 20;

  EstimateConfig estimate;
  std::vector<int> d_min{0};
  BoundMethod bound = BoundMethod::kMultiplicative;
  bool binary = false;
  std::optional<int> rho_max_scan;
  std::size_t max_paths = kDefaultMaxPaths;
  BoundLimits limits;

  RetentionConfig retention;
  TargetSelection targets;
  std::uint64_t seed = 0;
  std::size_t workers = 1;

  SmoothingConfig smoothing() const {
    SmoothingConfig s;
    s.p_del = p_del;
    s.p_abl = p_abl;
    s.k = k;
    s.seed = seed;
    return s;
  }

  fs::path model_path() const { return model.value_or(output_dir / "model.json"); }

  void validate() const {
    smoothing().validate();
    train.validate();
    estimate.validate();
    retention.validate();
    if (d_min.empty()) throw ConfigError("d_min list must not be empty");
    for (int d : d_min)
      if (d < 0) throw ConfigError("d_min entries must be non-negative");
    if (rho_max_scan && *rho_max_scan < 0) throw ConfigError("rho_max_scan must be non-negative");
    if (train_per_class < 0 || val_per_class < 0) throw ConfigError("split sizes must be non-negative");
    if (targets.mode != "test" && targets.mode != "all" && targets.mode != "list" && targets.mode != "random")
      throw ConfigError("targets.mode must be one of test, all, list, random");
  }
};

namespace detail {

inline fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace detail

/// Reads a config document. Relative paths are resolved against `base`.
inline RunConfig parse_config(const json& j, const fs::path& base) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  using detail::get_or;
  using detail::resolve;

  const json graph = j.value("graph", json::object());
  if (!graph.contains("edges")) throw ConfigError("config needs graph.edges");
  c.edges = resolve(base, get_or<std::string>(graph, "edges", ""));
  if (auto f = get_or<std::string>(graph, "features", ""); !f.empty()) c.features = resolve(base, f);
  if (auto f = get_or<std::string>(graph, "labels", ""); !f.empty()) c.labels = resolve(base, f);
  c.directed = get_or(graph, "directed", c.directed);

  if (auto f = get_or<std::string>(j, "model", ""); !f.empty()) c.model = resolve(base, f);
  if (auto f = get_or<std::string>(j, "votes", ""); !f.empty()) c.votes = resolve(base, f);
  c.output_dir = resolve(base, get_or<std::string>(j, "output_dir", "out"));

  c.k = get_or(j, "k", c.k);
  const json smooth = j.value("smoothing", json::object());
  c.p_del = get_or(smooth, "p_del", c.p_del);
  c.p_abl = get_or(smooth, "p_abl", c.p_abl);

  try {
    c.train = j.value("train", json::object()).get<TrainConfig>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config section 'train': ") + e.what());
  }
  const json split = j.value("split", json::object());
  c.train_per_class = get_or(split, "train_per_class", c.train_per_class);
  c.val_per_class = get_or(split, "val_per_class", c.val_per_class);

  const json est = j.value("estimate", json::object());
  c.estimate.n0 = get_or(est, "n0", c.estimate.n0);
  c.estimate.n1 = get_or(est, "n1", c.estimate.n1);
  c.estimate.alpha = get_or(est, "alpha", c.estimate.alpha);

  const json cert = j.value("certify", json::object());
  c.d_min = get_or(cert, "d_min", c.d_min);
  const auto method = get_or<std::string>(cert, "bound", std::string(to_string(c.bound)));
  const auto parsed = parse_bound_method(method);
  if (!parsed) throw ConfigError("unknown bound method '" + method + "'");
  c.bound = *parsed;
  c.binary = get_or(cert, "binary", c.binary);
  if (cert.contains("rho_max_scan") && !cert.at("rho_max_scan").is_null())
    c.rho_max_scan = get_or(cert, "rho_max_scan", 0);
  c.max_paths = get_or(cert, "max_paths", c.max_paths);
  c.limits.max_terms = get_or(cert, "max_terms", c.limits.max_terms);
  c.limits.subset_cap = get_or(cert, "subset_cap", c.limits.subset_cap);

  const json der = j.value("derandomize", json::object());
  c.retention.k_rel = get_or(der, "k_rel", c.retention.k_rel);
  c.retention.tau = get_or(der, "tau", c.retention.tau);

  const json tgt = j.value("targets", json::object());
  c.targets.mode = get_or<std::string>(tgt, "mode", c.targets.mode);
  c.targets.nodes = get_or(tgt, "nodes", c.targets.nodes);
  c.targets.count = get_or(tgt, "count", c.targets.count);

  c.seed = get_or(j, "seed", c.seed);
  c.workers = get_or(j, "workers", c.workers);
  return c;
}

/// Fully resolved config, echoed into every output for provenance.
inline json to_json(const RunConfig& c) {
  auto opt = [](const std::optional<fs::path>& p) { return p ? json(p->string()) : json(nullptr); };
  return {
      {"graph", {{"edges", c.edges.string()}, {"features", opt(c.features)}, {"labels", opt(c.labels)},
                 {"directed", c.directed}}},
      {"model", c.model_path().string()},
      {"votes", opt(c.votes)},
      {"output_dir", c.output_dir.string()},
      {"k", c.k},
      {"smoothing", {{"p_del", c.p_del}, {"p_abl", c.p_abl}}},
      {"train", c.train},
      {"split", {{"train_per_class", c.train_per_class}, {"val_per_class", c.val_per_class}}},
      {"estimate", {{"n0", c.estimate.n0}, {"n1", c.estimate.n1}, {"alpha", c.estimate.alpha}}},
      {"certify",
       {{"d_min", c.d_min},
        {"bound", std::string(to_string(c.bound))},
        {"binary", c.binary},
        {"rho_max_scan", c.rho_max_scan ? json(*c.rho_max_scan) : json(nullptr)},
        {"max_paths", c.max_paths},
        {"max_terms", c.limits.max_terms},
        {"subset_cap", c.limits.subset_cap}}},
      {"derandomize", {{"k_rel", c.retention.k_rel}, {"tau", c.retention.tau}}},
      {"targets", {{"mode", c.targets.mode}, {"nodes", c.targets.nodes}, {"count", c.targets.count}}},
      {"seed", c.seed},
  };
}

}  // namespace msgcert::cli

#endif  // MSGCERT_TOOLS_RUN_CONFIG_HPP
