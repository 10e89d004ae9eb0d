// Copyright 2026 The Simmap Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SIMMAP_CLI_HPP
#define SIMMAP_CLI_HPP

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "simmap/corpus.hpp"
#include "simmap/diagnostics.hpp"
#include "simmap/errors.hpp"
#include "simmap/map_document.hpp"
#include "simmap/mds.hpp"
#include "simmap/similarity.hpp"
#include "simmap/svg.hpp"
#include "simmap/vos.hpp"

namespace simmap {

enum class Method { kMdsOrdinal, kMdsInterval, kVos };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::kMdsOrdinal: return "mds-ordinal";
    case Method::kMdsInterval: return "mds-interval";
    case Method::kVos: return "vos";
  }
  return "?";
}

inline Method parse_method(const std::string& s) {
  if (s == "mds-ordinal") return Method::kMdsOrdinal;
  if (s == "mds-interval") return Method::kMdsInterval;
  if (s == "vos") return Method::kVos;
  throw config_error("unknown method '" + s + "' (expected mds-ordinal, mds-interval, or vos)");
}

inline SimilarityMeasure parse_similarity(const std::string& s) {
  if (s == "assoc") return SimilarityMeasure::kAssociationStrength;
  if (s == "cosine") return SimilarityMeasure::kCosineIndirect;
  throw config_error("unknown similarity '" + s + "' (expected assoc or cosine)");
}

/// Options shared by the layout and compare commands. eps defaults depend on
/// the engine (1e-8 for MDS, 1e-10 for VOS) unless set explicitly.
struct RunConfig {
  Method method = Method::kVos;
  SimilarityMeasure similarity = SimilarityMeasure::kAssociationStrength;
  std::size_t n_starts = 100;
  std::uint64_t master_seed = 1;
  std::optional<double> eps;
  std::size_t max_iter = 10000;
  bool drop_isolated = false;
  bool largest_component = false;
  std::size_t threads = 1;
  void (*progress)(std::size_t done, std::size_t total) = nullptr;

  double eps_for(Method m) const { return eps ? *eps : (m == Method::kVos ? 1e-10 : 1e-8); }
};

inline void validate(const RunConfig& config) {
  if (config.n_starts < 1) throw config_error("--starts must be at least 1");
  if (config.max_iter < 1) throw config_error("--max-iter must be at least 1");
  if (config.eps && !(*config.eps > 0.0)) throw config_error("--eps must be positive");
}

namespace detail {

/// Loads the corpus and applies the configured restrictions; rejects items
/// without any co-occurrences unless they were dropped on request.
inline Corpus prepare_corpus(const RunConfig& config, const std::string& edges_path,
                             const std::optional<std::string>& items_path, std::ostream* log) {
  Corpus corpus = load_edge_list(edges_path);
  if (items_path) load_items(*items_path, corpus);

  if (config.drop_isolated) {
    ComponentRestriction r = drop_zero_total_items(corpus);
    if (!r.dropped_ids.empty() && log) {
      *log << "warning: dropped " << r.dropped_ids.size() << " item(s) without co-occurrences:";
      for (const auto& id : r.dropped_ids) *log << ' ' << id;
      *log << '\n';
    }
    corpus = std::move(r.corpus);
  }
  if (config.largest_component) {
    ComponentRestriction r = restrict_to_largest_component(corpus);
    if (!r.dropped_ids.empty() && log)
      *log << "note: restricted to largest component, dropped " << r.dropped_ids.size()
           << " item(s)\n";
    corpus = std::move(r.corpus);
  }

  if (corpus.size() < 2) throw data_error("need at least 2 items to build a map");
  for (std::size_t i = 0; i < corpus.size(); ++i)
    if (corpus.matrix.total(i) == 0)
      throw data_error("item '" + corpus.items[i].id +
                       "' has no co-occurrences; rerun with --drop-isolated to remove such items");
  return corpus;
}

inline SimilarityMatrix compute_similarity(const Corpus& corpus, SimilarityMeasure measure) {
  return measure == SimilarityMeasure::kAssociationStrength ? association_strength(corpus)
                                                            : cosine_indirect(corpus);
}

inline std::vector<double> item_weights_of(const Corpus& corpus) {
  std::vector<double> w;
  w.reserve(corpus.size());
  for (const Item& item : corpus.items) w.push_back(item.weight);
  return w;
}

inline Layout run_engine(const RunConfig& config, Method method, const SimilarityMatrix& sim,
                         const Corpus& corpus) {
  MultiStartOptions options;
  options.n_starts = config.n_starts;
  options.master_seed = config.master_seed;
  options.max_iter = config.max_iter;
  options.eps = config.eps_for(method);
  options.threads = config.threads;
  options.progress = config.progress;

  if (method == Method::kVos) {
    VosProblem problem = vos_problem_from(sim);
    problem.item_weights = item_weights_of(corpus);
    try {
      return vos_multi_start(problem, options);
    } catch (const data_error& e) {
      throw data_error(std::string(e.what()) + "; rerun with --largest-component");
    }
  }

  const Family family = method == Method::kMdsInterval ? Family::kInterval : Family::kOrdinal;
  MdsProblem problem = mds_problem_from_similarity(sim, family);
  problem.item_weights = item_weights_of(corpus);
  return multi_start(problem, options);
}

inline MapDocument make_document(const RunConfig& config, Method method,
                                 SimilarityMeasure measure, const Corpus& corpus,
                                 const Layout& layout) {
  MapDocument doc;
  doc.method = to_string(method);
  doc.similarity = to_string(measure);
  doc.seed = config.master_seed;
  doc.starts = config.n_starts;
  doc.iterations = layout.iterations;
  doc.score = layout.score;
  doc.zero_pair_fraction = zero_pair_fraction(corpus.matrix);
  doc.items.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Item& item = corpus.items[i];
    doc.items.push_back({item.id, item.label, item.weight, layout.points[i].x,
                         layout.points[i].y, item.cluster});
  }
  return doc;
}

inline std::string json_opt(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string("null");
}

}  // namespace detail

/// layout subcommand: load, restrict, build similarities, run the chosen
/// engine, and write the map document.
inline MapDocument cmd_layout(const RunConfig& config, const std::string& edges_path,
                              const std::optional<std::string>& items_path,
                              const std::string& out_path, std::ostream* log = nullptr) {
  validate(config);
  Corpus corpus = detail::prepare_corpus(config, edges_path, items_path, log);
  SimilarityMatrix sim = detail::compute_similarity(corpus, config.similarity);
  Layout layout = detail::run_engine(config, config.method, sim, corpus);
  MapDocument doc = detail::make_document(config, config.method, config.similarity, corpus, layout);
  write_file(out_path, serialize(doc));
  return doc;
}

/// compare subcommand: the two MDS pipelines and VOS on the same corpus,
/// with per-method diagnostics, pairwise alignment residuals, and (on small
/// inputs) the equivalence check.
inline std::string cmd_compare(const RunConfig& config, Family mds_family,
                               const std::string& edges_path,
                               const std::optional<std::string>& items_path,
                               const std::string& out_path, std::ostream* log = nullptr) {
  validate(config);
  if (mds_family == Family::kRatio) throw config_error("compare supports ordinal or interval MDS");
  Corpus corpus = detail::prepare_corpus(config, edges_path, items_path, log);

  const Method mds_method =
      mds_family == Family::kInterval ? Method::kMdsInterval : Method::kMdsOrdinal;
  SimilarityMatrix assoc = association_strength(corpus);
  SimilarityMatrix cosine = cosine_indirect(corpus);

  struct Entry {
    const char* name;
    Method method;
    SimilarityMeasure measure;
    const SimilarityMatrix* sim;
    Layout layout;
  };
  std::vector<Entry> runs;
  runs.push_back({"mds-as", mds_method, SimilarityMeasure::kAssociationStrength, &assoc, {}});
  runs.push_back({"mds-cos", mds_method, SimilarityMeasure::kCosineIndirect, &cosine, {}});
  runs.push_back({"vos", Method::kVos, SimilarityMeasure::kAssociationStrength, &assoc, {}});
  for (Entry& run : runs) {
    if (log) *log << "running " << run.name << "...\n";
    run.layout = detail::run_engine(config, run.method, *run.sim, corpus);
  }

  std::vector<double> weights = detail::item_weights_of(corpus);
  std::vector<std::optional<int>> clusters;
  clusters.reserve(corpus.size());
  for (const Item& item : corpus.items) clusters.push_back(item.cluster);

  std::string out;
  out += "{\n  \"meta\": {\n";
  out += "    \"n_items\": " + std::to_string(corpus.size());
  out += ",\n    \"mds_family\": \"" + std::string(to_string(mds_family)) + "\"";
  out += ",\n    \"seed\": " + std::to_string(config.master_seed);
  out += ",\n    \"starts\": " + std::to_string(config.n_starts);
  out += ",\n    \"zero_pair_fraction\": " + detail::format_double(zero_pair_fraction(corpus.matrix));
  out += "\n  },\n  \"methods\": [\n";
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const Entry& run = runs[k];
    DiagnosticsReport report = diagnose_layout(run.layout.points, weights, clusters);
    out += "    {\"name\": \"" + std::string(run.name) + "\"";
    out += ", \"method\": \"" + std::string(to_string(run.method)) + "\"";
    out += ", \"similarity\": \"" + std::string(to_string(run.measure)) + "\"";
    out += ", \"score\": " + detail::format_double(run.layout.score);
    out += ", \"circularity\": " + detail::format_double(report.circularity);
    out += ", \"center_periphery_corr\": " + detail::json_opt(report.center_periphery_corr);
    out += ", \"separation_ratio\": " + detail::json_opt(report.separation_ratio);
    out += k + 1 < runs.size() ? "},\n" : "}\n";
  }
  out += "  ],\n  \"procrustes_disparity\": {\n";
  out += "    \"mds-as_vs_mds-cos\": " +
         detail::format_double(procrustes_disparity(runs[0].layout.points, runs[1].layout.points, true));
  out += ",\n    \"mds-as_vs_vos\": " +
         detail::format_double(procrustes_disparity(runs[0].layout.points, runs[2].layout.points, true));
  out += ",\n    \"mds-cos_vs_vos\": " +
         detail::format_double(procrustes_disparity(runs[1].layout.points, runs[2].layout.points, true));
  out += "\n  }";

  if (corpus.size() <= 50) {
    if (log) *log << "running scaling-equivalence check...\n";
    VosProblem problem = vos_problem_from(assoc);
    problem.item_weights = weights;
    EquivalenceOptions eq_options;
    eq_options.master_seed = config.master_seed;
    EquivalenceReport report = scaling_equivalence_check(problem, eq_options);
    out += ",\n  \"scaling_equivalence\": {\n";
    out += "    \"c_forward\": " + detail::format_double(report.c_forward);
    out += ",\n    \"c_backward\": " + detail::format_double(report.c_backward);
    out += ",\n    \"c_product\": " + detail::format_double(report.c_forward * report.c_backward);
    out += ",\n    \"objective_gap\": " + detail::format_double(report.objective_gap);
    out += ",\n    \"procrustes_disparity\": " + detail::format_double(report.procrustes_disparity);
    out += "\n  }";
  }
  out += "\n}\n";
  write_file(out_path, out);
  return out;
}

/// export-svg subcommand.
inline std::string cmd_export_svg(const std::string& map_path, const std::string& out_path,
                                  const SvgOptions& options = {}) {
  MapDocument doc = load_document(map_path);
  std::string svg = render_svg(doc, options);
  write_file(out_path, svg);
  return svg;
}

/// diagnose subcommand: artifact metrics for an existing map document,
/// optionally with weights overridden from an items file.
inline void cmd_diagnose(const std::string& map_path,
                         const std::optional<std::string>& items_path, std::ostream& out) {
  MapDocument doc = load_document(map_path);
  if (doc.items.size() < 3) throw data_error("diagnose requires at least 3 items");

  std::vector<Vec2> points;
  std::vector<double> weights;
  std::vector<std::optional<int>> clusters;
  for (const DocumentItem& item : doc.items) {
    points.push_back({item.x, item.y});
    weights.push_back(item.weight);
    clusters.push_back(item.cluster);
  }

  if (items_path) {
    Corpus shim;  // reuse the items-file parser against the document's ids
    shim.matrix = CoOccurrenceMatrix(doc.items.size());
    for (const DocumentItem& item : doc.items) shim.items.push_back({item.id, item.label, 0.0, {}});
    load_items(*items_path, shim);
    for (std::size_t i = 0; i < shim.items.size(); ++i)
      if (shim.items[i].weight > 0.0) weights[i] = shim.items[i].weight;
  }

  DiagnosticsReport report = diagnose_layout(points, weights, clusters);
  out << "items: " << doc.items.size() << "\n";
  out << "method: " << doc.method << "\n";
  out << "similarity: " << doc.similarity << "\n";
  out << "score: " << detail::format_double(doc.score) << "\n";
  out << "zero_pair_fraction: " << detail::format_double(doc.zero_pair_fraction) << "\n";
  out << "circularity: " << detail::format_double(report.circularity) << "\n";
  out << "center_periphery_corr: "
      << (report.center_periphery_corr ? detail::format_double(*report.center_periphery_corr)
                                       : std::string("n/a"))
      << "\n";
  out << "separation_ratio: "
      << (report.separation_ratio ? detail::format_double(*report.separation_ratio)
                                  : std::string("n/a"))
      << "\n";
}

}  // namespace simmap

#endif  // SIMMAP_CLI_HPP
