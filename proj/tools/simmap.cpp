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

#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "simmap/cli.hpp"

namespace {

void print_progress(std::size_t done, std::size_t total) {
  if (done == total || done % 10 == 0)
    std::cerr << "\rstarts: " << done << "/" << total << (done == total ? "\n" : "") << std::flush;
}

struct SharedFlags {
  std::string edges;
  std::string items;
  std::string out;
  std::size_t starts = 100;
  std::uint64_t seed = 1;
  double eps = 0.0;
  bool eps_set = false;
  std::size_t max_iter = 10000;
  bool largest_component = false;
  bool drop_isolated = false;
  std::size_t threads = 0;

  void add_to(CLI::App* cmd, bool needs_out) {
    cmd->add_option("--edges", edges, "edge list file (id_a,id_b,count per line)")->required();
    cmd->add_option("--items", items, "items file (CSV with header id,label,weight,cluster)");
    auto* out_opt = cmd->add_option("--out", out, "output path");
    if (needs_out) out_opt->required();
    cmd->add_option("--starts", starts, "number of random starts")->capture_default_str();
    cmd->add_option("--seed", seed, "master seed")->capture_default_str();
    cmd->add_option("--eps", eps, "relative convergence tolerance (default 1e-8, VOS 1e-10)")
        ->each([this](const std::string&) { eps_set = true; });
    cmd->add_option("--max-iter", max_iter, "iteration cap per start")->capture_default_str();
    cmd->add_flag("--largest-component", largest_component,
                  "restrict to the largest connected component");
    cmd->add_flag("--drop-isolated", drop_isolated, "drop items without any co-occurrences");
    cmd->add_option("--threads", threads, "worker threads for multi-start (default: all cores)");
  }

  simmap::RunConfig to_config() const {
    simmap::RunConfig config;
    config.n_starts = starts;
    config.master_seed = seed;
    if (eps_set) config.eps = eps;
    config.max_iter = max_iter;
    config.drop_isolated = drop_isolated;
    config.largest_component = largest_component;
    config.threads = threads > 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
    config.progress = &print_progress;
    return config;
  }

  std::optional<std::string> items_opt() const {
    return items.empty() ? std::nullopt : std::optional<std::string>(items);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simmap: similarity maps of co-occurrence data (MDS and VOS engines)"};
  app.require_subcommand(1);

  SharedFlags layout_flags, compare_flags;
  std::string method = "vos";
  std::string similarity = "assoc";
  std::string family = "ordinal";

  CLI::App* layout = app.add_subcommand("layout", "compute one map and write a map document");
  layout->add_option("--method", method, "mds-ordinal | mds-interval | vos")->capture_default_str();
  layout->add_option("--similarity", similarity, "assoc | cosine")->capture_default_str();
  layout_flags.add_to(layout, true);

  CLI::App* compare =
      app.add_subcommand("compare", "run MDS-AS, MDS-COS, and VOS and write a comparison report");
  compare->add_option("--family", family, "MDS transformation family: ordinal | interval")
      ->capture_default_str();
  compare_flags.add_to(compare, true);

  std::string map_path, svg_out;
  simmap::SvgOptions svg_options;
  CLI::App* export_svg = app.add_subcommand("export-svg", "render a map document to SVG");
  export_svg->add_option("--map", map_path, "map document path")->required();
  export_svg->add_option("--out", svg_out, "output SVG path")->required();
  export_svg->add_option("--width", svg_options.width, "canvas width in pixels")
      ->capture_default_str();
  export_svg->add_option("--labels", svg_options.labels, "label the top-k weighted items")
      ->capture_default_str();
  export_svg->add_option("--min-radius", svg_options.min_radius, "smallest circle radius")
      ->capture_default_str();
  export_svg->add_option("--max-radius", svg_options.max_radius, "largest circle radius")
      ->capture_default_str();

  std::string diag_map, diag_items;
  CLI::App* diagnose = app.add_subcommand("diagnose", "print artifact metrics for a map document");
  diagnose->add_option("--map", diag_map, "map document path")->required();
  diagnose->add_option("--weights-from-items", diag_items, "override weights from an items file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 1;
  }

  try {
    if (layout->parsed()) {
      simmap::RunConfig config = layout_flags.to_config();
      config.method = simmap::parse_method(method);
      config.similarity = simmap::parse_similarity(similarity);
      simmap::cmd_layout(config, layout_flags.edges, layout_flags.items_opt(), layout_flags.out,
                         &std::cerr);
    } else if (compare->parsed()) {
      simmap::Family mds_family;
      if (family == "ordinal")
        mds_family = simmap::Family::kOrdinal;
      else if (family == "interval")
        mds_family = simmap::Family::kInterval;
      else
        throw simmap::config_error("unknown family '" + family + "' (expected ordinal or interval)");
      simmap::cmd_compare(compare_flags.to_config(), mds_family, compare_flags.edges,
                          compare_flags.items_opt(), compare_flags.out, &std::cerr);
    } else if (export_svg->parsed()) {
      simmap::cmd_export_svg(map_path, svg_out, svg_options);
    } else if (diagnose->parsed()) {
      std::optional<std::string> items =
          diag_items.empty() ? std::nullopt : std::optional<std::string>(diag_items);
      simmap::cmd_diagnose(diag_map, items, std::cout);
    }
  } catch (const simmap::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const simmap::data_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const simmap::numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
