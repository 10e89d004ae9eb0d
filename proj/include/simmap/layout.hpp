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

#ifndef SIMMAP_LAYOUT_HPP
#define SIMMAP_LAYOUT_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "simmap/errors.hpp"
#include "simmap/random.hpp"

namespace simmap {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Euclidean distance in the plane.
inline double distance(const Vec2& a, const Vec2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

/// A 2-D configuration together with the run that produced it.
struct Layout {
  std::vector<Vec2> points;
  double score = 0.0;          // final stress (MDS) or objective value (VOS)
  std::uint64_t seed = 0;      // RNG seed of the winning run
  std::size_t iterations = 0;  // majorization iterations of the winning run
  std::string method;

  std::size_t size() const { return points.size(); }
};

inline Vec2 centroid(const std::vector<Vec2>& points) {
  Vec2 c;
  for (const Vec2& p : points) {
    c.x += p.x;
    c.y += p.y;
  }
  if (!points.empty()) {
    c.x /= static_cast<double>(points.size());
    c.y /= static_cast<double>(points.size());
  }
  return c;
}

/// Seeded uniform start in [-0.5, 0.5]^2.
inline std::vector<Vec2> random_start(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<Vec2> points(n);
  for (Vec2& p : points) {
    p.x = uniform(gen, -0.5, 0.5);
    p.y = uniform(gen, -0.5, 0.5);
  }
  return points;
}

/// Puts a configuration into canonical pose: centroid at the origin, the
/// direction of largest variance on axis 1, and reflections chosen so the
/// item with the largest weight (lowest index on ties, index 0 when weights
/// are empty) has nonnegative coordinates on axis 1, then axis 2. Stress and
/// all pairwise distances are unchanged.
inline void canonicalize(std::vector<Vec2>& points, const std::vector<double>& item_weights = {}) {
  const std::size_t n = points.size();
  if (n == 0) return;

  const Vec2 c = centroid(points);
  for (Vec2& p : points) {
    p.x -= c.x;
    p.y -= c.y;
  }

  double cxx = 0.0, cyy = 0.0, cxy = 0.0;
  for (const Vec2& p : points) {
    cxx += p.x * p.x;
    cyy += p.y * p.y;
    cxy += p.x * p.y;
  }
  // Angle of the principal eigenvector of the covariance; atan2(0, 0) = 0
  // keeps the isotropic case deterministic.
  const double theta = 0.5 * std::atan2(2.0 * cxy, cxx - cyy);
  const double ct = std::cos(theta), st = std::sin(theta);
  for (Vec2& p : points) {
    const double x = ct * p.x + st * p.y;
    const double y = -st * p.x + ct * p.y;
    p.x = x;
    p.y = y;
  }

  std::size_t ref = 0;
  for (std::size_t i = 1; i < item_weights.size() && i < n; ++i)
    if (item_weights[i] > item_weights[ref]) ref = i;
  if (points[ref].x < 0.0)
    for (Vec2& p : points) p.x = -p.x;
  if (points[ref].y < 0.0)
    for (Vec2& p : points) p.y = -p.y;
}

/// Sum of all pairwise distances.
inline double sum_pairwise_distances(const std::vector<Vec2>& points) {
  double sum = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) sum += distance(points[i], points[j]);
  return sum;
}

}  // namespace simmap

#endif  // SIMMAP_LAYOUT_HPP
