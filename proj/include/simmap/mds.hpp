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

#ifndef SIMMAP_MDS_HPP
#define SIMMAP_MDS_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "simmap/detail/majorize.hpp"
#include "simmap/errors.hpp"
#include "simmap/layout.hpp"
#include "simmap/random.hpp"
#include "simmap/similarity.hpp"

namespace simmap {

/// Transformation family for the proximities: linear through the origin,
/// affine, or merely monotone.
enum class Family { kRatio, kInterval, kOrdinal };

inline const char* to_string(Family f) {
  switch (f) {
    case Family::kRatio: return "ratio";
    case Family::kInterval: return "interval";
    case Family::kOrdinal: return "ordinal";
  }
  return "?";
}

enum class ProximityKind { kSimilarity, kDissimilarity };

/// Weighted MDS problem in two dimensions. Weights default to 1 for every
/// pair; the graph over pairs with positive weight must be connected.
/// item_weights (optional) only orient the canonical pose of the result.
struct MdsProblem {
  std::size_t n = 0;
  std::vector<double> proximities;  // flat symmetric n*n
  ProximityKind kind = ProximityKind::kDissimilarity;
  std::vector<double> weights;  // flat symmetric n*n, zero diagonal
  Family family = Family::kOrdinal;
  std::vector<double> item_weights;  // optional, for canonical orientation

  double proximity(std::size_t i, std::size_t j) const { return proximities[i * n + j]; }
  double weight(std::size_t i, std::size_t j) const { return weights[i * n + j]; }
};

/// Builds the usual bibliometric problem: proximities are the similarities
/// themselves and every pair has weight 1.
inline MdsProblem mds_problem_from_similarity(const SimilarityMatrix& s, Family family) {
  MdsProblem p;
  p.n = s.size();
  p.kind = ProximityKind::kSimilarity;
  p.family = family;
  p.proximities.assign(p.n * p.n, 0.0);
  p.weights.assign(p.n * p.n, 1.0);
  for (std::size_t i = 0; i < p.n; ++i) {
    p.weights[i * p.n + i] = 0.0;
    for (std::size_t j = 0; j < p.n; ++j)
      if (i != j) p.proximities[i * p.n + j] = s.at(i, j);
  }
  return p;
}

/// Builds a weighted dissimilarity problem; absent pairs get weight 0.
inline MdsProblem mds_problem_from_dissimilarities(const Dissimilarities& d,
                                                   const std::vector<double>& weights,
                                                   Family family) {
  MdsProblem p;
  p.n = d.n;
  p.kind = ProximityKind::kDissimilarity;
  p.family = family;
  p.proximities = d.values;
  p.weights = weights;
  for (std::size_t i = 0; i < p.n; ++i) {
    p.weights[i * p.n + i] = 0.0;
    for (std::size_t j = 0; j < p.n; ++j)
      if (!d.has(i, j)) p.weights[i * p.n + j] = 0.0;
  }
  return p;
}

inline void validate(const MdsProblem& problem) {
  const std::size_t n = problem.n;
  if (n < 2) throw data_error("MDS requires at least 2 items");
  if (problem.proximities.size() != n * n || problem.weights.size() != n * n)
    throw data_error("MDS problem matrices have wrong size");
  if (problem.family == Family::kRatio && problem.kind == ProximityKind::kSimilarity)
    throw data_error("ratio MDS cannot be used with similarity proximities");

  bool any_positive = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (problem.weight(i, i) != 0.0) throw data_error("pair weights must have zero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      const double w = problem.weight(i, j);
      if (w < 0.0) throw data_error("pair weights must be nonnegative");
      if (w != problem.weight(j, i)) throw data_error("pair weights must be symmetric");
      if (w > 0.0) any_positive = true;
    }
  }
  if (!any_positive) throw data_error("at least one pair weight must be positive");

  // Connectivity of the positive-weight graph.
  std::vector<bool> reached(n, false);
  std::vector<std::size_t> stack{0};
  reached[0] = true;
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j)
      if (!reached[j] && problem.weight(i, j) > 0.0) {
        reached[j] = true;
        stack.push_back(j);
      }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!reached[i]) throw data_error("positive-weight graph is not connected");
}

/// Transformed proximities f(p_ij): the target distances the configuration
/// is fitted to.
struct Disparities {
  std::size_t n = 0;
  std::vector<double> values;  // flat symmetric n*n, zero diagonal

  double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

/// Normalized raw stress: weighted squared residuals over weighted squared
/// disparities.
inline double normalized_stress(const MdsProblem& problem, const Disparities& disparities,
                                const std::vector<Vec2>& points) {
  const std::size_t n = problem.n;
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = problem.weight(i, j);
      if (w == 0.0) continue;
      const double dhat = disparities.at(i, j);
      const double d = distance(points[i], points[j]);
      num += w * (dhat - d) * (dhat - d);
      den += w * dhat * dhat;
    }
  if (den == 0.0) throw data_error("normalized stress undefined: all disparities are zero");
  return num / den;
}

/// Unnormalized weighted sum of squared residuals.
inline double raw_stress(const MdsProblem& problem, const Disparities& disparities,
                         const std::vector<Vec2>& points) {
  const std::size_t n = problem.n;
  double num = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double w = problem.weight(i, j);
      const double r = disparities.at(i, j) - distance(points[i], points[j]);
      num += w * r * r;
    }
  return num;
}

/// One entry of a monotone regression: a proximity key defining the order,
/// the target distance, and its weight. Entries must be presorted so that
/// the fitted values are required to be nondecreasing in list order.
struct RegressionEntry {
  double key = 0.0;  // equal keys form a tie block (secondary approach)
  double target = 0.0;
  double weight = 1.0;
};

namespace detail {

struct PavBlock {
  double weight;
  double weighted_sum;
  std::size_t count;  // number of entries pooled into this block
  double mean() const { return weight > 0.0 ? weighted_sum / weight : 0.0; }
};

/// Pool-adjacent-violators core writing into reusable buffers.
inline void weighted_pav(const std::vector<RegressionEntry>& entries, std::vector<double>& fitted,
                         std::vector<PavBlock>& blocks) {
  if (entries.empty()) throw data_error("monotone regression on empty input");

  blocks.clear();
  std::size_t i = 0;
  while (i < entries.size()) {
    PavBlock b{0.0, 0.0, 0};
    std::size_t j = i;
    while (j < entries.size() && entries[j].key == entries[i].key) {
      b.weight += entries[j].weight;
      b.weighted_sum += entries[j].weight * entries[j].target;
      ++b.count;
      ++j;
    }
    blocks.push_back(b);
    while (blocks.size() >= 2 && blocks[blocks.size() - 2].mean() > blocks.back().mean()) {
      PavBlock last = blocks.back();
      blocks.pop_back();
      blocks.back().weight += last.weight;
      blocks.back().weighted_sum += last.weighted_sum;
      blocks.back().count += last.count;
    }
    i = j;
  }

  fitted.clear();
  fitted.reserve(entries.size());
  for (const PavBlock& b : blocks) fitted.insert(fitted.end(), b.count, b.mean());
}

}  // namespace detail

/// Weighted least-squares monotone (nondecreasing) fit by pool-adjacent-
/// violators. Entries with equal keys are pooled into a single block that
/// receives one common fitted value.
inline std::vector<double> monotone_regression(const std::vector<RegressionEntry>& entries) {
  std::vector<double> fitted;
  std::vector<detail::PavBlock> blocks;
  detail::weighted_pav(entries, fitted, blocks);
  return fitted;
}

namespace detail {

struct ActivePair {
  std::size_t i, j;
  double weight;
  double proximity;
};

/// Per-problem transformation state computed once: the active pairs and, for
/// the ordinal family, their fixed proximity order.
struct TransformPlan {
  Family family;
  ProximityKind kind;
  std::vector<ActivePair> pairs;
  std::vector<std::size_t> order;  // pair indices sorted by regression key
  double anchor = 0.0;             // extreme proximity pinning d >= 0 in interval fits

  // Regression key: disparities must be nondecreasing in dissimilarity,
  // nonincreasing in similarity.
  double key(const ActivePair& p) const {
    return kind == ProximityKind::kSimilarity ? -p.proximity : p.proximity;
  }
};

inline TransformPlan make_transform_plan(const MdsProblem& problem) {
  TransformPlan plan;
  plan.family = problem.family;
  plan.kind = problem.kind;
  for (std::size_t i = 0; i < problem.n; ++i)
    for (std::size_t j = i + 1; j < problem.n; ++j)
      if (problem.weight(i, j) > 0.0)
        plan.pairs.push_back({i, j, problem.weight(i, j), problem.proximity(i, j)});

  if (plan.family == Family::kOrdinal) {
    plan.order.resize(plan.pairs.size());
    for (std::size_t k = 0; k < plan.order.size(); ++k) plan.order[k] = k;
    std::stable_sort(plan.order.begin(), plan.order.end(), [&](std::size_t a, std::size_t b) {
      return plan.key(plan.pairs[a]) < plan.key(plan.pairs[b]);
    });
  }
  if (plan.family == Family::kInterval) {
    double extreme = plan.pairs.front().proximity;
    for (const ActivePair& p : plan.pairs)
      extreme = (plan.kind == ProximityKind::kSimilarity) ? std::max(extreme, p.proximity)
                                                          : std::min(extreme, p.proximity);
    plan.anchor = extreme;
  }
  return plan;
}

/// Weighted least-squares fit of d ~ a + b*p restricted to the cone where b
/// has the sign required by the proximity kind and every fitted value stays
/// nonnegative. Candidates: the unconstrained optimum when feasible, the
/// constant fit, and the fit anchored at the extreme proximity.
inline void fit_interval(const TransformPlan& plan, const std::vector<double>& dist,
                         std::vector<double>& out) {
  const bool similarity = plan.kind == ProximityKind::kSimilarity;
  double sw = 0, sp = 0, spp = 0, sd = 0, spd = 0;
  for (std::size_t k = 0; k < plan.pairs.size(); ++k) {
    const ActivePair& pr = plan.pairs[k];
    sw += pr.weight;
    sp += pr.weight * pr.proximity;
    spp += pr.weight * pr.proximity * pr.proximity;
    sd += pr.weight * dist[k];
    spd += pr.weight * pr.proximity * dist[k];
  }

  auto sse = [&](double a, double b) {
    double s = 0.0;
    for (std::size_t k = 0; k < plan.pairs.size(); ++k) {
      const double r = a + b * plan.pairs[k].proximity - dist[k];
      s += plan.pairs[k].weight * r * r;
    }
    return s;
  };

  double best_a = sd / sw, best_b = 0.0;  // constant fit, always feasible (d >= 0)
  double best = sse(best_a, best_b);

  const double det = sw * spp - sp * sp;
  if (det > 1e-12 * sw * std::max(spp, 1e-300)) {
    const double b = (sw * spd - sp * sd) / det;
    const double a = (sd - b * sp) / sw;
    const bool sign_ok = similarity ? (b <= 0.0) : (b >= 0.0);
    if (sign_ok && a + b * plan.anchor >= 0.0) {
      const double v = sse(a, b);
      if (v < best) {
        best = v;
        best_a = a;
        best_b = b;
      }
    }
    // Fit through the anchor: d = b * (p - anchor).
    double num = 0, den = 0;
    for (std::size_t k = 0; k < plan.pairs.size(); ++k) {
      const double q = plan.pairs[k].proximity - plan.anchor;
      num += plan.pairs[k].weight * q * dist[k];
      den += plan.pairs[k].weight * q * q;
    }
    if (den > 0.0) {
      double b2 = num / den;
      b2 = similarity ? std::min(b2, 0.0) : std::max(b2, 0.0);
      const double a2 = -b2 * plan.anchor;
      const double v = sse(a2, b2);
      if (v < best) {
        best = v;
        best_a = a2;
        best_b = b2;
      }
    }
  }

  for (std::size_t k = 0; k < plan.pairs.size(); ++k)
    out[k] = std::max(0.0, best_a + best_b * plan.pairs[k].proximity);
}

/// Reusable buffers for the inner fitting loop; per-iteration allocations
/// of pair-sized vectors dominate the system time on large problems.
struct FitScratch {
  std::vector<RegressionEntry> entries;
  std::vector<double> fitted;
  std::vector<PavBlock> blocks;
};

/// Fits disparities for the current distances and rescales them so that
/// sum w dhat^2 = sum w dist^2, which pins the free scale of the interval
/// and ordinal families. Writes the fitted values per active pair.
inline void fit_active_disparities_into(const TransformPlan& plan,
                                        const std::vector<double>& dist,
                                        std::vector<double>& dhat, FitScratch& scratch) {
  const std::size_t m = plan.pairs.size();
  dhat.assign(m, 0.0);

  switch (plan.family) {
    case Family::kRatio: {
      double num = 0, den = 0;
      for (std::size_t k = 0; k < m; ++k) {
        num += plan.pairs[k].weight * plan.pairs[k].proximity * dist[k];
        den += plan.pairs[k].weight * plan.pairs[k].proximity * plan.pairs[k].proximity;
      }
      const double b = den > 0.0 ? std::max(0.0, num / den) : 0.0;
      for (std::size_t k = 0; k < m; ++k) dhat[k] = b * plan.pairs[k].proximity;
      break;
    }
    case Family::kInterval:
      fit_interval(plan, dist, dhat);
      break;
    case Family::kOrdinal: {
      scratch.entries.resize(m);
      for (std::size_t k = 0; k < m; ++k) {
        const ActivePair& pr = plan.pairs[plan.order[k]];
        scratch.entries[k] = {plan.key(pr), dist[plan.order[k]], pr.weight};
      }
      weighted_pav(scratch.entries, scratch.fitted, scratch.blocks);
      for (std::size_t k = 0; k < m; ++k) dhat[plan.order[k]] = scratch.fitted[k];
      break;
    }
  }

  double target = 0, current = 0;
  for (std::size_t k = 0; k < m; ++k) {
    target += plan.pairs[k].weight * dist[k] * dist[k];
    current += plan.pairs[k].weight * dhat[k] * dhat[k];
  }
  if (target == 0.0) throw numeric_error("degenerate configuration: all active distances are zero");
  if (current == 0.0) throw numeric_error("transformation fit collapsed to zero disparities");
  const double scale = std::sqrt(target / current);
  for (double& v : dhat) v *= scale;
}

inline std::vector<double> fit_active_disparities(const TransformPlan& plan,
                                                  const std::vector<double>& dist) {
  std::vector<double> dhat;
  FitScratch scratch;
  fit_active_disparities_into(plan, dist, dhat, scratch);
  return dhat;
}

inline void pair_distances_into(const TransformPlan& plan, const std::vector<Vec2>& points,
                                std::vector<double>& dist) {
  dist.resize(plan.pairs.size());
  for (std::size_t k = 0; k < plan.pairs.size(); ++k)
    dist[k] = distance(points[plan.pairs[k].i], points[plan.pairs[k].j]);
}

inline std::vector<double> pair_distances(const TransformPlan& plan,
                                          const std::vector<Vec2>& points) {
  std::vector<double> dist;
  pair_distances_into(plan, points, dist);
  return dist;
}

inline Disparities expand_disparities(const MdsProblem& problem, const TransformPlan& plan,
                                      const std::vector<double>& active_dhat) {
  Disparities d;
  d.n = problem.n;
  d.values.assign(problem.n * problem.n, 0.0);
  for (std::size_t k = 0; k < plan.pairs.size(); ++k) {
    const ActivePair& pr = plan.pairs[k];
    d.values[pr.i * problem.n + pr.j] = active_dhat[k];
    d.values[pr.j * problem.n + pr.i] = active_dhat[k];
  }
  return d;
}

}  // namespace detail

/// Fits the transformation family to the current configuration: ratio and
/// interval by (sign-constrained) weighted least squares, ordinal by
/// monotone regression with the secondary approach to ties. Ratio MDS on
/// similarities is rejected.
inline Disparities fit_transformation(const MdsProblem& problem, const std::vector<Vec2>& points) {
  if (problem.family == Family::kRatio && problem.kind == ProximityKind::kSimilarity)
    throw data_error("ratio MDS cannot be used with similarity proximities");
  detail::TransformPlan plan = detail::make_transform_plan(problem);
  if (plan.pairs.empty()) throw data_error("no pairs with positive weight");
  std::vector<double> dist = detail::pair_distances(plan, points);
  return detail::expand_disparities(problem, plan, detail::fit_active_disparities(plan, dist));
}

/// The weighted Guttman transform: returns the configuration minimizing the
/// quadratic majorizer of raw stress at the current configuration. Never
/// increases raw stress for fixed disparities.
inline std::vector<Vec2> guttman_update(const MdsProblem& problem, const Disparities& disparities,
                                        const std::vector<Vec2>& points) {
  detail::LaplacianSolver solver(problem.n, problem.weights);
  std::vector<double> coeff(problem.n * problem.n, 0.0);
  for (std::size_t i = 0; i < problem.n; ++i)
    for (std::size_t j = 0; j < problem.n; ++j)
      if (i != j) coeff[i * problem.n + j] = problem.weight(i, j) * disparities.at(i, j);
  return detail::guttman_step(solver, coeff, points);
}

struct SmacofOptions {
  std::uint64_t seed = 1;
  std::size_t max_iter = 10000;
  double eps = 1e-8;                    // relative stress improvement
  std::vector<double>* trace = nullptr;  // per-iteration stress, if requested
};

namespace detail {

/// Shared per-problem state: the transformation plan and the factorized
/// weight Laplacian. Built once and reused across starts; both members are
/// immutable after construction and safe to share between threads.
struct SmacofWorkspace {
  TransformPlan plan;
  LaplacianSolver solver;

  explicit SmacofWorkspace(const MdsProblem& problem)
      : plan(make_transform_plan(problem)), solver(problem.n, problem.weights) {}
};

}  // namespace detail

namespace detail {
inline Layout smacof_run_with(const MdsProblem& problem, const SmacofWorkspace& workspace,
                              const SmacofOptions& options);
}

/// One SMACOF run from a seeded random start: alternates transformation
/// fitting and the Guttman transform until the relative stress improvement
/// drops below eps. Returns the canonicalized layout with its final
/// normalized stress.
inline Layout smacof_run(const MdsProblem& problem, const SmacofOptions& options = {}) {
  if (options.max_iter < 1) throw config_error("max_iter must be at least 1");
  if (!(options.eps > 0.0)) throw config_error("eps must be positive");
  validate(problem);
  detail::SmacofWorkspace workspace(problem);
  return detail::smacof_run_with(problem, workspace, options);
}

namespace detail {

inline Layout smacof_run_with(const MdsProblem& problem, const SmacofWorkspace& workspace,
                              const SmacofOptions& options) {
  const TransformPlan& plan = workspace.plan;
  const LaplacianSolver& solver = workspace.solver;

  std::vector<Vec2> points = random_start(problem.n, options.seed);
  std::vector<double> coeff(problem.n * problem.n, 0.0);
  std::vector<double> dist, dhat;
  FitScratch scratch;
  double sigma_prev = std::numeric_limits<double>::infinity();
  double sigma = sigma_prev;
  std::size_t iterations = 0;

  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    iterations = it;
    pair_distances_into(plan, points, dist);
    fit_active_disparities_into(plan, dist, dhat, scratch);

    std::fill(coeff.begin(), coeff.end(), 0.0);
    for (std::size_t k = 0; k < plan.pairs.size(); ++k) {
      const detail::ActivePair& pr = plan.pairs[k];
      coeff[pr.i * problem.n + pr.j] = pr.weight * dhat[k];
      coeff[pr.j * problem.n + pr.i] = pr.weight * dhat[k];
    }
    points = detail::guttman_step(solver, coeff, points);

    double num = 0, den = 0;
    for (std::size_t k = 0; k < plan.pairs.size(); ++k) {
      const detail::ActivePair& pr = plan.pairs[k];
      const double d = distance(points[pr.i], points[pr.j]);
      num += pr.weight * (dhat[k] - d) * (dhat[k] - d);
      den += pr.weight * dhat[k] * dhat[k];
    }
    sigma = num / den;
    if (!std::isfinite(sigma))
      throw numeric_error("non-finite stress at iteration " + std::to_string(it));
    if (options.trace) options.trace->push_back(sigma);

    if (sigma <= 1e-15) break;  // numerically perfect fit
    if (sigma_prev - sigma < options.eps * sigma) break;
    sigma_prev = sigma;
  }

  canonicalize(points, problem.item_weights);
  Layout layout;
  layout.points = std::move(points);
  layout.score = sigma;
  layout.seed = options.seed;
  layout.iterations = iterations;
  layout.method = std::string("mds-") + to_string(problem.family);
  return layout;
}

}  // namespace detail

struct MultiStartOptions {
  std::size_t n_starts = 100;
  std::uint64_t master_seed = 1;
  std::size_t max_iter = 10000;
  double eps = 1e-8;
  std::size_t threads = 1;
  void (*progress)(std::size_t done, std::size_t total) = nullptr;
};

namespace detail {

/// Runs `body(index)` for indices [0, total); results must be written to
/// per-index slots so concurrent execution is indistinguishable from serial.
template <typename Body>
void parallel_for_index(std::size_t total, std::size_t threads, Body&& body) {
  threads = std::max<std::size_t>(1, std::min(threads, total));
  if (threads == 1) {
    for (std::size_t k = 0; k < total; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t k = next.fetch_add(1);
        if (k >= total) return;
        try {
          body(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

/// Repeats smacof_run from deterministically derived per-start seeds and
/// returns the lowest-stress layout; ties go to the lowest start index.
/// Concurrent and serial execution give identical results.
inline Layout multi_start(const MdsProblem& problem, const MultiStartOptions& options = {}) {
  if (options.n_starts < 1) throw config_error("n_starts must be at least 1");
  if (options.max_iter < 1) throw config_error("max_iter must be at least 1");
  if (!(options.eps > 0.0)) throw config_error("eps must be positive");
  validate(problem);
  const detail::SmacofWorkspace workspace(problem);  // factorized once, shared by all starts

  std::vector<Layout> results(options.n_starts);
  std::atomic<std::size_t> done{0};
  detail::parallel_for_index(options.n_starts, options.threads, [&](std::size_t k) {
    SmacofOptions run;
    run.seed = derive_seed(options.master_seed, k);
    run.max_iter = options.max_iter;
    run.eps = options.eps;
    results[k] = detail::smacof_run_with(problem, workspace, run);
    const std::size_t d = done.fetch_add(1) + 1;
    if (options.progress) options.progress(d, options.n_starts);
  });

  std::size_t best = 0;
  for (std::size_t k = 1; k < results.size(); ++k)
    if (results[k].score < results[best].score) best = k;
  return results[best];
}

}  // namespace simmap

#endif  // SIMMAP_MDS_HPP
