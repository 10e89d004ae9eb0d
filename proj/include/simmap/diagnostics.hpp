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

#ifndef SIMMAP_DIAGNOSTICS_HPP
#define SIMMAP_DIAGNOSTICS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "simmap/errors.hpp"
#include "simmap/layout.hpp"

namespace simmap {

namespace detail {

inline std::vector<double> radii_from_centroid(const std::vector<Vec2>& points) {
  const Vec2 c = centroid(points);
  std::vector<double> r(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) r[i] = distance(points[i], c);
  return r;
}

/// Ranks with ties replaced by their average rank.
inline std::vector<double> average_ranks(const std::vector<double>& values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j - 1)) / 2.0 + 1.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

}  // namespace detail

/// Coefficient of variation of the distances to the centroid: 0 for any
/// configuration whose points all lie on one circle around their centroid.
inline double circularity(const std::vector<Vec2>& points) {
  if (points.size() < 3) throw data_error("circularity requires at least 3 points");
  std::vector<double> r = detail::radii_from_centroid(points);
  double mean = 0.0;
  for (double v : r) mean += v;
  mean /= static_cast<double>(r.size());
  if (mean == 0.0) throw data_error("circularity undefined: all points coincide");
  double var = 0.0;
  for (double v : r) var += (v - mean) * (v - mean);
  var /= static_cast<double>(r.size());
  return std::sqrt(var) / mean;
}

/// Spearman rank correlation between item weight and distance from the map
/// center. Strongly negative values mean heavy items crowd the center.
/// Undefined (absent) when all radii or all weights are tied.
inline std::optional<double> center_periphery_correlation(const std::vector<Vec2>& points,
                                                          const std::vector<double>& weights) {
  if (points.size() < 3) throw data_error("center-periphery correlation requires at least 3 points");
  if (weights.size() != points.size())
    throw data_error("center-periphery correlation: weight count mismatch");

  std::vector<double> r = detail::radii_from_centroid(points);
  std::vector<double> rank_w = detail::average_ranks(weights);
  std::vector<double> rank_r = detail::average_ranks(r);

  const double n = static_cast<double>(points.size());
  double mean_w = 0.0, mean_r = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    mean_w += rank_w[i];
    mean_r += rank_r[i];
  }
  mean_w /= n;
  mean_r /= n;
  double sww = 0.0, srr = 0.0, swr = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double dw = rank_w[i] - mean_w;
    const double dr = rank_r[i] - mean_r;
    sww += dw * dw;
    srr += dr * dr;
    swr += dw * dr;
  }
  if (sww == 0.0 || srr == 0.0) return std::nullopt;
  return swr / std::sqrt(sww * srr);
}

/// Mean between-cluster pairwise distance over mean within-cluster pairwise
/// distance, computed over the items that carry a cluster tag. Requires at
/// least two clusters with at least two members each.
inline double separation_ratio(const std::vector<Vec2>& points,
                               const std::vector<std::optional<int>>& clusters) {
  if (clusters.size() != points.size()) throw data_error("separation ratio: cluster count mismatch");

  std::map<int, std::size_t> members;
  for (const auto& c : clusters)
    if (c) ++members[*c];
  if (members.size() < 2) throw data_error("separation ratio requires at least 2 clusters");
  for (const auto& [tag, count] : members)
    if (count < 2)
      throw data_error("separation ratio: cluster " + std::to_string(tag) +
                       " has fewer than 2 members");

  double within = 0.0, between = 0.0;
  std::size_t n_within = 0, n_between = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!clusters[i]) continue;
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (!clusters[j]) continue;
      const double d = distance(points[i], points[j]);
      if (*clusters[i] == *clusters[j]) {
        within += d;
        ++n_within;
      } else {
        between += d;
        ++n_between;
      }
    }
  }
  within /= static_cast<double>(n_within);
  between /= static_cast<double>(n_between);
  if (within == 0.0) throw data_error("separation ratio undefined: zero within-cluster mean distance");
  return between / within;
}

/// Residual misfit between two configurations after optimal translation,
/// rotation, reflection, and (optionally) uniform scaling of B onto A,
/// as root-mean-square residual over the root-mean-square radius of A.
/// Uses the closed form for planar alignment: rotations act as unit complex
/// multipliers and the reflected branch conjugates B.
inline double procrustes_disparity(const std::vector<Vec2>& a, const std::vector<Vec2>& b,
                                   bool allow_scaling) {
  if (a.size() != b.size()) throw data_error("procrustes: configurations differ in size");
  if (a.empty()) throw data_error("procrustes: empty configurations");
  const std::size_t n = a.size();

  const Vec2 ca = centroid(a), cb = centroid(b);
  std::vector<std::complex<double>> za(n), zb(n);
  for (std::size_t i = 0; i < n; ++i) {
    za[i] = {a[i].x - ca.x, a[i].y - ca.y};
    zb[i] = {b[i].x - cb.x, b[i].y - cb.y};
  }

  double norm_a = 0.0, norm_b = 0.0;
  std::complex<double> cross_direct{0.0, 0.0}, cross_reflected{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    norm_a += std::norm(za[i]);
    norm_b += std::norm(zb[i]);
    cross_direct += za[i] * std::conj(zb[i]);
    cross_reflected += za[i] * zb[i];  // reflected branch uses conj(zb)
  }
  if (norm_a == 0.0) throw data_error("procrustes: degenerate reference configuration");

  const double cross = std::max(std::abs(cross_direct), std::abs(cross_reflected));
  double residual_sq;
  if (allow_scaling) {
    residual_sq = (norm_b > 0.0) ? norm_a - cross * cross / norm_b : norm_a;
  } else {
    residual_sq = norm_a + norm_b - 2.0 * cross;
  }
  residual_sq = std::max(0.0, residual_sq);
  return std::sqrt(residual_sq / norm_a);
}

/// The per-layout artifact metrics bundled for reports.
struct DiagnosticsReport {
  double circularity = 0.0;
  std::optional<double> center_periphery_corr;
  std::optional<double> separation_ratio;
};

inline DiagnosticsReport diagnose_layout(const std::vector<Vec2>& points,
                                         const std::vector<double>& weights,
                                         const std::vector<std::optional<int>>& clusters) {
  DiagnosticsReport report;
  report.circularity = circularity(points);
  report.center_periphery_corr = center_periphery_correlation(points, weights);

  std::map<int, std::size_t> members;
  for (const auto& c : clusters)
    if (c) ++members[*c];
  bool ok = members.size() >= 2;
  for (const auto& [tag, count] : members)
    if (count < 2) ok = false;
  if (ok) report.separation_ratio = separation_ratio(points, clusters);
  return report;
}

}  // namespace simmap

#endif  // SIMMAP_DIAGNOSTICS_HPP
