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

#ifndef SIMMAP_SVG_HPP
#define SIMMAP_SVG_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "simmap/errors.hpp"
#include "simmap/map_document.hpp"

namespace simmap {

struct SvgOptions {
  double width = 1000.0;    // square canvas, 5% margin
  double min_radius = 2.0;  // floor for tiny weights
  double max_radius = 16.0;
  std::size_t labels = 25;  // label the top-k weighted items, 0 disables
};

namespace detail {

// Qualitative palette for cluster fills; grey marks untagged items.
inline const char* cluster_color(std::optional<int> cluster) {
  static const char* palette[] = {
      "#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee",
      "#aa3377", "#bbbbbb", "#dd7788", "#44aa99", "#ddaa33",
  };
  if (!cluster) return "#999999";
  const int p = static_cast<int>(sizeof(palette) / sizeof(palette[0]));
  return palette[((*cluster % p) + p) % p];
}

inline std::string format_px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

/// Renders a map document to SVG: one circle per item, radius proportional
/// to sqrt(weight) with a floor, cluster-colored fills, labels for the
/// heaviest items. Identical documents yield byte-identical output.
inline std::string render_svg(const MapDocument& doc, const SvgOptions& options = {}) {
  if (doc.items.empty()) throw data_error("cannot render an empty map");
  if (!(options.width > 0.0) || !(options.min_radius > 0.0) ||
      options.max_radius < options.min_radius)
    throw config_error("invalid SVG options");

  const double w = options.width;
  const double margin = 0.05 * w;
  const double span = w - 2.0 * margin;

  double xmin = doc.items[0].x, xmax = xmin, ymin = doc.items[0].y, ymax = ymin;
  double wmax = 0.0;
  for (const DocumentItem& item : doc.items) {
    xmin = std::min(xmin, item.x);
    xmax = std::max(xmax, item.x);
    ymin = std::min(ymin, item.y);
    ymax = std::max(ymax, item.y);
    wmax = std::max(wmax, item.weight);
  }
  const double extent = std::max(xmax - xmin, ymax - ymin);
  const double scale = extent > 0.0 ? span / extent : 0.0;
  const double xmid = (xmin + xmax) / 2.0, ymid = (ymin + ymax) / 2.0;

  auto px = [&](double x) { return w / 2.0 + (x - xmid) * scale; };
  auto py = [&](double y) { return w / 2.0 - (y - ymid) * scale; };  // y axis points up
  const double radius_unit = wmax > 0.0 ? options.max_radius / std::sqrt(wmax) : 0.0;
  auto radius = [&](double weight) {
    const double r = weight > 0.0 ? radius_unit * std::sqrt(weight) : 0.0;
    return std::clamp(r, options.min_radius, options.max_radius);
  };

  // Large circles first so small ones stay visible; stable order keeps the
  // output deterministic.
  std::vector<std::size_t> draw_order(doc.items.size());
  for (std::size_t i = 0; i < draw_order.size(); ++i) draw_order[i] = i;
  std::stable_sort(draw_order.begin(), draw_order.end(), [&](std::size_t a, std::size_t b) {
    return doc.items[a].weight > doc.items[b].weight;
  });

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::format_px(w) +
         "\" height=\"" + detail::format_px(w) + "\" viewBox=\"0 0 " + detail::format_px(w) + " " +
         detail::format_px(w) + "\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t k : draw_order) {
    const DocumentItem& item = doc.items[k];
    out += "<circle cx=\"" + detail::format_px(px(item.x)) + "\" cy=\"" +
           detail::format_px(py(item.y)) + "\" r=\"" + detail::format_px(radius(item.weight)) +
           "\" fill=\"" + detail::cluster_color(item.cluster) +
           "\" fill-opacity=\"0.8\" stroke=\"#333333\" stroke-width=\"0.5\"/>\n";
  }

  const std::size_t n_labels = std::min(options.labels, doc.items.size());
  for (std::size_t k = 0; k < n_labels; ++k) {
    const DocumentItem& item = doc.items[draw_order[k]];
    out += "<text x=\"" + detail::format_px(px(item.x)) + "\" y=\"" +
           detail::format_px(py(item.y) - radius(item.weight) - 2.0) +
           "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\" "
           "fill=\"#111111\">" +
           detail::escape_xml(item.label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace simmap

#endif  // SIMMAP_SVG_HPP
