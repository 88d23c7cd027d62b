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

// msgcert: train, certify, derandomize, report, paths, synth.
//
// Exit codes: 0 success, 1 unexpected failure, 2 configuration or usage
// error, 3 some nodes failed (their rows carry an error message).

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "msgcert/msgcert.hpp"
#include "run_config.hpp"

namespace msgcert::cli {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitPartial = 3;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::string> out;
};

RunConfig load_config(const std::string& path, const Overrides& o) {
  json j;
  try {
    j = json::parse(msgcert::detail::read_file(path));
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  RunConfig c = parse_config(j, fs::absolute(path).parent_path());
  if (o.seed) c.seed = *o.seed;
  if (o.workers) c.workers = *o.workers;
  if (o.out) c.output_dir = fs::absolute(*o.out);
  c.train.seed = c.seed;
  c.estimate.workers = c.workers;
  c.validate();
  return c;
}

Graph load(const RunConfig& c) {
  for (const auto& p : {std::optional<fs::path>(c.edges), c.features, c.labels})
    if (p && !fs::exists(*p)) throw ConfigError("input file not found: " + p->string());
  return load_graph(c.edges, c.features, c.labels, c.directed);
}

std::string fmt(double x) { return msgcert::detail::format_double(x); }

std::string csv_safe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

std::string config_line(const RunConfig& c) { return "# config=" + to_json(c).dump() + "\n"; }

std::vector<NodeId> select_targets(const RunConfig& c, const Graph& g) {
  std::vector<NodeId> out;
  const auto& t = c.targets;
  if (t.mode == "all") {
    out.resize(g.num_nodes());
    std::iota(out.begin(), out.end(), NodeId{0});
  } else if (t.mode == "list") {
    for (auto v : t.nodes) {
      if (v >= g.num_nodes()) throw ConfigError("target node " + std::to_string(v) + " is outside the graph");
      out.push_back(v);
    }
  } else if (t.mode == "random") {
    std::vector<NodeId> all(g.num_nodes());
    std::iota(all.begin(), all.end(), NodeId{0});
    CounterStream(c.seed, Stream::kSplit, std::uint64_t{1} << 32).shuffle(all.begin(), all.end());
    all.resize(std::min(t.count, all.size()));
    out = std::move(all);
  } else {
    if (!g.labels()) throw ConfigError("targets.mode 'test' needs labels; use 'all' or 'list'");
    out = make_split(*g.labels(), c.train_per_class, c.val_per_class, c.seed).test;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------

int cmd_train(const RunConfig& c) {
  if (!c.labels) throw ConfigError("train needs graph.labels");
  const Graph g = load(c);
  const Split split = make_split(*g.labels(), c.train_per_class, c.val_per_class, c.seed);
  if (split.train.empty()) throw ConfigError("the split has no training nodes");
  const auto result = train(g, split, c.train);

  fs::create_directories(c.output_dir);
  const fs::path model_path = c.model_path();
  fs::create_directories(model_path.parent_path());
  auto ckpt = checkpoint_json(result.model, c.train);
  ckpt["run_config"] = to_json(c);
  ckpt["best_epoch"] = result.best_epoch;
  msgcert::detail::write_file(model_path, ckpt.dump(1) + "\n");

  std::string log = config_line(c) + "epoch,train_loss,train_accuracy,val_loss,val_accuracy\n";
  for (const auto& e : result.log)
    log += std::to_string(e.epoch) + ',' + fmt(e.train_loss) + ',' + fmt(e.train_accuracy) + ',' + fmt(e.val_loss) +
           ',' + fmt(e.val_accuracy) + '\n';
  msgcert::detail::write_file(c.output_dir / "train_log.csv", log);

  const auto& best = result.log[static_cast<std::size_t>(result.best_epoch)];
  std::cout << "trained " << result.log.size() << " epochs; best epoch " << result.best_epoch
            << " (val loss " << best.val_loss << ", val accuracy " << best.val_accuracy << ")\n"
            << "checkpoint: " << model_path.string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct NodeWork {
  std::optional<ReceptiveField> field;
  std::map<int, DeltaCurve> curves;
  std::map<int, int> scan;
  std::string error;
};

std::string results_csv(const RunConfig& c, std::span<const CertificateResult> results,
                        const std::optional<std::vector<int>>& labels) {
  std::map<int, int> max_radius;
  for (int d : c.d_min) max_radius[d] = 1;
  for (const auto& r : results)
    for (const auto& [d, rad] : r.radius) max_radius[d] = std::max(max_radius[d], rad);

  std::string out = config_line(c) + "node_id,prediction,abstain,p_lower,p_upper";
  if (labels) out += ",label,correct";
  for (int d : c.d_min) {
    out += ",radius_d" + std::to_string(d) + ",surface_d" + std::to_string(d);
    for (int q = 1; q <= max_radius[d]; ++q) out += ",cert_d" + std::to_string(d) + "_r" + std::to_string(q);
  }
  out += ",error\n";
  for (const auto& r : results) {
    out += std::to_string(r.node) + ',' + (r.prediction ? std::to_string(*r.prediction) : std::string("-1")) + ',' +
           (r.abstained() ? "1" : "0") + ',' + fmt(r.p_lower) + ',' + fmt(r.p_upper);
    if (labels) out += ',' + std::to_string((*labels)[r.node]) + ',' + (r.correct.value_or(false) ? "1" : "0");
    for (int d : c.d_min) {
      const int rad = r.radius.count(d) ? r.radius.at(d) : 0;
      const auto surf = r.surface.count(d) ? r.surface.at(d) : std::size_t{0};
      out += ',' + std::to_string(rad) + ',' + std::to_string(surf);
      for (int q = 1; q <= max_radius[d]; ++q) out += rad >= q ? ",1" : ",0";
    }
    out += ',' + csv_safe(r.error) + '\n';
  }
  return out;
}

json summary_json(const Summary& s) {
  json j = {{"d_min", s.d_min},
            {"num_nodes", s.num_nodes},
            {"num_failed", s.num_failed},
            {"abstain_rate", s.abstain_rate},
            {"clean_accuracy", s.clean_accuracy ? json(*s.clean_accuracy) : json(nullptr)},
            {"certified_ratio", s.certified_ratio},
            {"certified_accuracy", s.certified_accuracy},
            {"aucrc", s.aucrc},
            {"aucrc_accuracy", s.aucrc_accuracy},
            {"normalized_aucrc", s.normalized_aucrc},
            {"normalized_aucrc_accuracy", s.normalized_aucrc_accuracy}};
  auto pts = [](const std::vector<std::pair<double, double>>& v) {
    json a = json::array();
    for (const auto& [x, y] : v) a.push_back({x, y});
    return a;
  };
  j["normalized_ratio"] = pts(s.normalized_ratio);
  j["normalized_accuracy"] = pts(s.normalized_accuracy);
  return j;
}

const json kAucrcConvention = {
    {"aucrc", "sum over integer radii r >= 0 of certified_ratio[r] (unit-width step integral)"},
    {"normalized_aucrc",
     "integral over x in [0, 1] of the fraction of nodes with radius / attack_surface >= x; "
     "trapezoid rule on duplicated step breakpoints; attack surface 0 counts as normalized radius 1"},
    {"attack_surface", "receptive-field members at hop distance >= d_min"},
    {"abstain", "abstained nodes count as uncertified and incorrect"}};

int cmd_certify(const RunConfig& c) {
  const Graph g = load(c);
  const auto targets = select_targets(c, g);
  const SmoothingConfig smooth = c.smoothing();

  std::optional<GnnModel> model;
  std::optional<VoteTable> votes;
  if (c.votes) {
    if (!fs::exists(*c.votes)) throw ConfigError("vote file not found: " + c.votes->string());
    votes = load_votes(*c.votes);
  } else {
    if (!fs::exists(c.model_path())) throw ConfigError("model checkpoint not found: " + c.model_path().string());
    model = load_checkpoint(c.model_path());
    if (model->skip && std::find(c.d_min.begin(), c.d_min.end(), 0) != c.d_min.end())
      throw ConfigError("the skip connection passes the target's clean features; use d_min >= 1");
  }

  // Receptive fields and delta curves, one node per task.
  std::vector<NodeWork> work(targets.size());
  parallel_for(targets.size(), c.workers, [&](std::size_t i) {
    auto& w = work[i];
    try {
      w.field = receptive_field(g, targets[i], c.k, c.max_paths);
      for (int d : c.d_min) {
        const int surface = static_cast<int>(w.field->attack_surface(d));
        const int scan = c.rho_max_scan.value_or(surface);
        w.scan[d] = scan;
        w.curves[d] = delta_curve(*w.field, d, smooth, c.bound, scan, c.limits);
      }
    } catch (const Error& e) {
      w.error = e.what();
    }
  });

  // Votes.
  std::vector<std::optional<VoteTally>> tallies(targets.size());
  std::vector<std::string> vote_errors(targets.size());
  if (model) {
    const SmoothedPredictor predictor(*model, g, smooth);
    auto all = estimate(predictor, targets, c.estimate);
    for (std::size_t i = 0; i < targets.size(); ++i) tallies[i] = std::move(all[i]);
  } else {
    const auto classes = std::max<std::size_t>(votes->num_classes(), static_cast<std::size_t>(g.num_classes()));
    for (std::size_t i = 0; i < targets.size(); ++i) {
      try {
        tallies[i] = estimate(*votes, targets[i], c.estimate, classes);
      } catch (const InsufficientDataError& e) {
        vote_errors[i] = e.what();
      }
    }
  }

  std::vector<CertificateResult> results(targets.size());
  bool partial = false;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    auto& r = results[i];
    r.node = targets[i];
    const std::string error = !work[i].error.empty() ? work[i].error : vote_errors[i];
    if (!error.empty()) {
      r.error = error;
      partial = true;
      continue;
    }
    r = decide(*tallies[i], c.binary);
    for (int d : c.d_min)
      certify_into(r, work[i].curves.at(d), work[i].scan.at(d), work[i].field->attack_surface(d), c.binary);
    if (g.labels()) r.correct = r.prediction && *r.prediction == (*g.labels())[targets[i]];
  }

  fs::create_directories(c.output_dir);
  msgcert::detail::write_file(c.output_dir / "results.csv", results_csv(c, results, g.labels()));

  json summary = {{"config", to_json(c)}, {"conventions", kAucrcConvention}, {"num_targets", targets.size()},
                  {"per_d_min", json::array()}};
  for (int d : c.d_min) summary["per_d_min"].push_back(summary_json(summarize(results, d)));
  msgcert::detail::write_file(c.output_dir / "summary.json", summary.dump(2) + "\n");

  for (int d : c.d_min) {
    const auto s = summarize(results, d);
    std::cout << "d_min=" << d << ": nodes " << s.num_nodes << ", abstain rate " << s.abstain_rate;
    if (s.clean_accuracy) std::cout << ", clean accuracy " << *s.clean_accuracy;
    std::cout << ", AUCRC " << s.aucrc << ", normalized AUCRC " << s.normalized_aucrc << "\n";
  }
  if (partial) std::cerr << "some nodes failed; see the error column of results.csv\n";
  return partial ? kExitPartial : kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_derandomize(const RunConfig& c) {
  const Graph g = load(c);
  if (!fs::exists(c.model_path())) throw ConfigError("model checkpoint not found: " + c.model_path().string());
  const GnnModel model = load_checkpoint(c.model_path());
  const auto targets = select_targets(c, g);
  const auto classes = model.classes();

  struct Row {
    std::int64_t d = 0, k = 0;
    std::string total;
    std::size_t reps = 0;
    double savings = 1.0;
    bool derandomized = false;
    std::vector<Rational> probs;
    DerandomizedCertificate cert;
    std::string error;
  };
  std::vector<Row> rows(targets.size());
  parallel_for(targets.size(), c.workers, [&](std::size_t i) {
    auto& row = rows[i];
    try {
      const auto rf = receptive_field(g, targets[i], c.k, c.max_paths);
      row.d = static_cast<std::int64_t>(rf.size()) - 1;
      row.k = retention_count(row.d, c.retention.k_rel);
      const auto e = enumerate_representatives(rf, row.k, c.retention.tau);
      row.total = e.total.str();
      if (e.refused) return;
      row.derandomized = true;
      row.reps = e.reps.size();
      row.savings = e.savings();
      row.probs = exact_label_probs(e, classes, [&](std::span<const NodeId> nodes) {
        return classify_retained(model, g, nodes);
      });
      row.cert = derandomized_certificate(row.probs, row.d, row.k);
    } catch (const Error& e) {
      row.error = e.what();
    }
  });

  fs::create_directories(c.output_dir);
  std::string csv = config_line(c) + "node_id,d,k,binomial,representatives,savings,derandomized,prediction,radius";
  for (std::size_t y = 0; y < classes; ++y) csv += ",p_" + std::to_string(y);
  csv += ",error\n";
  std::size_t derandomized = 0, failed = 0;
  double savings_sum = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto& r = rows[i];
    failed += !r.error.empty();
    csv += std::to_string(targets[i]) + ',' + std::to_string(r.d) + ',' + std::to_string(r.k) + ',' + r.total + ',' +
           std::to_string(r.reps) + ',' + fmt(r.savings) + ',' + (r.derandomized ? "1" : "0") + ',' +
           (r.derandomized ? std::to_string(r.cert.prediction) : std::string("-1")) + ',' +
           std::to_string(r.derandomized ? r.cert.radius : 0);
    for (std::size_t y = 0; y < classes; ++y) csv += ',' + (r.derandomized ? r.probs[y].str() : std::string(""));
    csv += ',' + csv_safe(r.error) + '\n';
    if (r.derandomized) {
      ++derandomized;
      savings_sum += r.savings;
    }
  }
  msgcert::detail::write_file(c.output_dir / "derandomize.csv", csv);
  const double ratio = targets.empty() ? 0.0 : static_cast<double>(derandomized) / static_cast<double>(targets.size());
  const double mean_savings = derandomized ? savings_sum / static_cast<double>(derandomized) : 0.0;
  const json summary = {
      {"config", to_json(c)},
      {"num_targets", targets.size()},
      {"derandomized_ratio", ratio},
      {"mean_savings", mean_savings},
      {"num_failed", failed},
      {"radius_delta",
       "node retention keeps k of the d non-target field members uniformly; delta(rho) = 1 - C(d-rho, k) / C(d, k); "
       "radius = largest rho with p_top - delta > p_second + delta and delta < 1/2"}};
  msgcert::detail::write_file(c.output_dir / "derandomize_summary.json", summary.dump(2) + "\n");
  std::cout << "derandomized " << derandomized << " of " << targets.size() << " nodes (ratio " << ratio
            << "), mean savings " << mean_savings << "\n";
  return failed ? kExitPartial : kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_paths(const RunConfig& c) {
  const Graph g = load(c);
  const auto targets = select_targets(c, g);
  struct Row {
    std::size_t members = 0, paths = 0, edges = 0, coins = 0;
    bool tree = false;
    std::map<int, std::size_t> surface;
    std::string error;
  };
  std::vector<Row> rows(targets.size());
  parallel_for(targets.size(), c.workers, [&](std::size_t i) {
    try {
      const auto rf = receptive_field(g, targets[i], c.k, c.max_paths);
      rows[i] = {rf.size(), rf.paths().size(), rf.edges().size(), rf.num_coins(), rf.is_tree(), {}, {}};
      for (int d : c.d_min) rows[i].surface[d] = rf.attack_surface(d);
    } catch (const Error& e) {
      rows[i].error = e.what();
    }
  });
  fs::create_directories(c.output_dir);
  std::string csv = config_line(c) + "node_id,members,paths,edges,coins,tree";
  for (int d : c.d_min) csv += ",surface_d" + std::to_string(d);
  csv += ",error\n";
  bool partial = false;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto& r = rows[i];
    partial = partial || !r.error.empty();
    csv += std::to_string(targets[i]) + ',' + std::to_string(r.members) + ',' + std::to_string(r.paths) + ',' +
           std::to_string(r.edges) + ',' + std::to_string(r.coins) + ',' + (r.tree ? "1" : "0");
    for (int d : c.d_min) csv += ',' + (r.surface.count(d) ? std::to_string(r.surface.at(d)) : std::string(""));
    csv += ',' + csv_safe(r.error) + '\n';
  }
  msgcert::detail::write_file(c.output_dir / "paths.csv", csv);
  std::cout << "wrote receptive-field statistics for " << targets.size() << " nodes\n";
  return partial ? kExitPartial : kExitOk;
}

// ---------------------------------------------------------------------------

struct ParsedResults {
  std::string name;
  std::vector<int> d_mins;
  std::vector<CertificateResult> rows;
};

ParsedResults parse_results(const fs::path& path) {
  ParsedResults out;
  out.name = path.stem().string();
  if (path.has_parent_path() && path.stem() == "results") out.name = path.parent_path().filename().string();
  const std::string text = msgcert::detail::read_file(path);
  const auto lines = msgcert::detail::content_lines(text);
  if (lines.empty()) throw ConfigError(path.string() + ": no results header");
  const auto header = msgcert::detail::split(lines.front().second, ',');
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < header.size(); ++i) col[std::string(header[i])] = i;
  for (const char* need : {"node_id", "prediction", "abstain", "p_lower", "p_upper", "error"})
    if (!col.count(need)) throw FormatError(path.string() + ": missing column " + need);
  for (const auto& [name, i] : col)
    if (name.rfind("radius_d", 0) == 0) out.d_mins.push_back(std::stoi(name.substr(8)));
  std::sort(out.d_mins.begin(), out.d_mins.end());

  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto& [line_no, line] = lines[li];
    const auto cells = msgcert::detail::split(line, ',');
    if (cells.size() != header.size())
      throw ParseError(path.string(), line_no, "expected " + std::to_string(header.size()) + " cells");
    auto cell = [&](const std::string& name) { return cells[col.at(name)]; };
    CertificateResult r;
    r.node = msgcert::detail::parse_int<NodeId>(cell("node_id")).value_or(0);
    r.error = std::string(cell("error"));
    if (cell("abstain") != "1") r.prediction = msgcert::detail::parse_int<int>(cell("prediction"));
    r.p_lower = msgcert::detail::parse_double(cell("p_lower")).value_or(0.0);
    r.p_upper = msgcert::detail::parse_double(cell("p_upper")).value_or(0.0);
    if (col.count("correct")) r.correct = cell("correct") == "1";
    for (int d : out.d_mins) {
      r.radius[d] = msgcert::detail::parse_int<int>(cell("radius_d" + std::to_string(d))).value_or(0);
      r.surface[d] = msgcert::detail::parse_int<std::size_t>(cell("surface_d" + std::to_string(d))).value_or(0);
    }
    out.rows.push_back(std::move(r));
  }
  if (out.rows.empty()) throw ConfigError(path.string() + ": results file has no rows");
  return out;
}

int cmd_report(const std::vector<std::string>& inputs, const fs::path& out_dir) {
  if (inputs.empty()) throw ConfigError("report needs at least one results file");
  std::vector<ParsedResults> runs;
  for (const auto& p : inputs) {
    if (!fs::exists(p)) throw ConfigError("results file not found: " + p);
    runs.push_back(parse_results(p));
  }
  std::set<std::string> names;
  for (std::size_t i = 0; i < runs.size(); ++i)
    if (!names.insert(runs[i].name).second) runs[i].name += "_" + std::to_string(i);

  struct Column {
    std::string name;
    Summary s;
  };
  std::vector<Column> cols;
  for (const auto& run : runs)
    for (int d : run.d_mins) cols.push_back({run.name + "_d" + std::to_string(d), summarize(run.rows, d)});

  // Integer-radius step curves, side by side.
  std::size_t len = 1;
  for (const auto& c : cols) len = std::max(len, c.s.certified_ratio.size());
  std::string curves = "radius";
  for (const auto& c : cols) curves += ',' + c.name + "_ratio," + c.name + "_accuracy";
  curves += '\n';
  for (std::size_t r = 0; r < len; ++r) {
    curves += std::to_string(r);
    for (const auto& c : cols) {
      const double acc =
          r < c.s.certified_accuracy.size() ? c.s.certified_accuracy[r] : 0.0;
      curves += ',' + fmt(c.s.ratio_at(static_cast<int>(r))) + ',' +
                (c.s.clean_accuracy ? fmt(acc) : std::string(""));
    }
    curves += '\n';
  }

  // Normalized polylines in long form (their breakpoints differ per run).
  std::string normalized = "series,x,ratio\n";
  for (const auto& c : cols)
    for (const auto& [x, y] : c.s.normalized_ratio) normalized += c.name + ',' + fmt(x) + ',' + fmt(y) + '\n';
  std::string normalized_acc = "series,x,accuracy\n";
  for (const auto& c : cols)
    for (const auto& [x, y] : c.s.normalized_accuracy) normalized_acc += c.name + ',' + fmt(x) + ',' + fmt(y) + '\n';

  std::string table = "series,nodes,failed,abstain_rate,clean_accuracy,aucrc,aucrc_accuracy,normalized_aucrc,"
                      "normalized_aucrc_accuracy\n";
  for (const auto& c : cols)
    table += c.name + ',' + std::to_string(c.s.num_nodes) + ',' + std::to_string(c.s.num_failed) + ',' +
             fmt(c.s.abstain_rate) + ',' + (c.s.clean_accuracy ? fmt(*c.s.clean_accuracy) : std::string("")) + ',' +
             fmt(c.s.aucrc) + ',' + fmt(c.s.aucrc_accuracy) + ',' + fmt(c.s.normalized_aucrc) + ',' +
             fmt(c.s.normalized_aucrc_accuracy) + '\n';
  if (runs.size() >= 2 && !runs[0].d_mins.empty() && !runs[1].d_mins.empty()) {
    const auto& a = cols.front();
    const auto& b = cols[runs[0].d_mins.size()];
    table += "difference(" + b.name + " - " + a.name + "),,,,," + fmt(b.s.aucrc - a.s.aucrc) + ',' +
             fmt(b.s.aucrc_accuracy - a.s.aucrc_accuracy) + ',' + fmt(b.s.normalized_aucrc - a.s.normalized_aucrc) +
             ',' + fmt(b.s.normalized_aucrc_accuracy - a.s.normalized_aucrc_accuracy) + '\n';
  }

  fs::create_directories(out_dir);
  msgcert::detail::write_file(out_dir / "curves.csv", curves);
  msgcert::detail::write_file(out_dir / "normalized_curves.csv", normalized);
  msgcert::detail::write_file(out_dir / "normalized_accuracy_curves.csv", normalized_acc);
  msgcert::detail::write_file(out_dir / "aucrc.csv", table);
  std::cout << "wrote report for " << cols.size() << " curve set(s) to " << out_dir.string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_synth(const fs::path& out_dir, std::uint64_t seed, std::size_t nodes) {
  TwoBlockSpec spec;
  spec.seed = seed;
  spec.nodes = nodes;
  const Graph g = two_block_graph(spec);
  fs::create_directories(out_dir);
  std::string edges = "# two-block fixture, seed " + std::to_string(seed) + "\n";
  for (const auto& e : g.edges())
    if (e.src < e.dst) edges += std::to_string(e.src) + ' ' + std::to_string(e.dst) + '\n';
  std::string features;
  for (Eigen::Index v = 0; v < g.features().rows(); ++v) {
    for (Eigen::Index j = 0; j < g.features().cols(); ++j)
      features += (j ? "," : "") + fmt(g.features()(v, j));
    features += '\n';
  }
  std::string labels;
  for (int y : *g.labels()) labels += std::to_string(y) + '\n';
  msgcert::detail::write_file(out_dir / "edges.txt", edges);
  msgcert::detail::write_file(out_dir / "features.csv", features);
  msgcert::detail::write_file(out_dir / "labels.csv", labels);

  const json config = {{"graph", {{"edges", "edges.txt"}, {"features", "features.csv"}, {"labels", "labels.csv"}}},
                       {"output_dir", "run"},
                       {"k", 2},
                       {"smoothing", {{"p_del", 0.0}, {"p_abl", 0.85}}},
                       {"train", {{"p_abl", 0.85}, {"skip", true}, {"learning_rate", 0.01}, {"epochs", 300}}},
                       {"estimate", {{"n0", 1000}, {"n1", 3000}, {"alpha", 0.01}}},
                       {"certify", {{"d_min", {1, 2}}, {"bound", "multiplicative"}}},
                       {"derandomize", {{"k_rel", 0.1}, {"tau", 100000}}},
                       {"targets", {{"mode", "test"}}},
                       {"seed", seed}};
  msgcert::detail::write_file(out_dir / "config.json", config.dump(2) + "\n");
  std::cout << "wrote " << g.num_nodes() << "-node fixture with " << g.num_edges() / 2 << " edges to "
            << out_dir.string() << "\n";
  return kExitOk;
}

}  // namespace
}  // namespace msgcert::cli

int main(int argc, char** argv) {
  using namespace msgcert::cli;
  CLI::App app{"Certified robustness of graph neural networks via message-interception smoothing"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "override the configured seed");
    sub->add_option("--workers", o.workers, "worker threads (0 = all cores)");
    sub->add_option("--out", o.out, "override the output directory");
  };
  auto* train_cmd = app.add_subcommand("train", "train the base GCN with smoothing-time noise");
  auto* certify_cmd = app.add_subcommand("certify", "estimate, certify and summarize target nodes");
  auto* derand_cmd = app.add_subcommand("derandomize", "exact label probabilities under node retention");
  auto* paths_cmd = app.add_subcommand("paths", "dump receptive-field statistics");
  for (auto* sub : {train_cmd, certify_cmd, derand_cmd, paths_cmd}) add_common(sub);

  auto* report_cmd = app.add_subcommand("report", "turn results files into plot-ready curve CSVs");
  std::vector<std::string> report_inputs;
  std::string report_out = "report";
  report_cmd->add_option("results", report_inputs, "results.csv files")->required();
  report_cmd->add_option("--out", report_out, "output directory");

  auto* synth_cmd = app.add_subcommand("synth", "write the two-block synthetic fixture and a sample config");
  std::string synth_out = "fixture";
  std::uint64_t synth_seed = 0;
  std::size_t synth_nodes = 200;
  synth_cmd->add_option("--out", synth_out, "output directory");
  synth_cmd->add_option("--seed", synth_seed, "generator seed");
  synth_cmd->add_option("--nodes", synth_nodes, "node count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (report_cmd->parsed()) return cmd_report(report_inputs, report_out);
    if (synth_cmd->parsed()) return cmd_synth(synth_out, synth_seed, synth_nodes);
    const RunConfig c = load_config(config_path, o);
    if (train_cmd->parsed()) return cmd_train(c);
    if (certify_cmd->parsed()) return cmd_certify(c);
    if (derand_cmd->parsed()) return cmd_derandomize(c);
    if (paths_cmd->parsed()) return cmd_paths(c);
  } catch (const msgcert::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const msgcert::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
