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

#ifndef SIMMAP_VOS_HPP
#define SIMMAP_VOS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "simmap/detail/majorize.hpp"
#include "simmap/diagnostics.hpp"
#include "simmap/errors.hpp"
#include "simmap/layout.hpp"
#include "simmap/mds.hpp"
#include "simmap/random.hpp"
#include "simmap/similarity.hpp"

namespace simmap {

/// VOS layout problem: nonnegative similarities whose positive-similarity
/// graph is connected and where no item is isolated. Disconnected input
/// makes the objective unbounded below, so it is rejected up front.
struct VosProblem {
  std::size_t n = 0;
  std::vector<double> similarities;  // flat symmetric n*n, zero diagonal
  std::vector<double> item_weights;  // optional, for canonical orientation

  double similarity(std::size_t i, std::size_t j) const { return similarities[i * n + j]; }
};

inline VosProblem vos_problem_from(const SimilarityMatrix& s) {
  VosProblem p;
  p.n = s.size();
  p.similarities.assign(p.n * p.n, 0.0);
  for (std::size_t i = 0; i < p.n; ++i)
    for (std::size_t j = 0; j < p.n; ++j)
      if (i != j) p.similarities[i * p.n + j] = s.at(i, j);
  return p;
}

inline void validate(const VosProblem& problem) {
  const std::size_t n = problem.n;
  if (n < 2) throw data_error("VOS requires at least 2 items");
  if (problem.similarities.size() != n * n) throw data_error("VOS similarity matrix has wrong size");
  for (std::size_t i = 0; i < n; ++i) {
    if (problem.similarity(i, i) != 0.0) throw data_error("similarities must have zero diagonal");
    double strength = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double s = problem.similarity(i, j);
      if (s < 0.0) throw data_error("similarities must be nonnegative");
      if (s != problem.similarity(j, i)) throw data_error("similarities must be symmetric");
      strength += s;
    }
    if (strength == 0.0)
      throw data_error("item " + std::to_string(i) +
                       " has zero total similarity (objective would be unbounded)");
  }
  std::vector<bool> reached(n, false);
  std::vector<std::size_t> stack{0};
  reached[0] = true;
  while (!stack.empty()) {
    std::size_t i = stack.back();
    stack.pop_back();
    for (std::size_t j = 0; j < n; ++j)
      if (!reached[j] && problem.similarity(i, j) > 0.0) {
        reached[j] = true;
        stack.push_back(j);
      }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!reached[i])
      throw data_error("positive-similarity graph is not connected (objective would be unbounded)");
}

/// Similarity-weighted sum of squared distances.
inline double vos_objective(const VosProblem& problem, const std::vector<Vec2>& points) {
  double v = 0.0;
  for (std::size_t i = 0; i < problem.n; ++i)
    for (std::size_t j = i + 1; j < problem.n; ++j) {
      const double d = distance(points[i], points[j]);
      v += problem.similarity(i, j) * d * d;
    }
  return v;
}

/// Average distance over all unordered pairs; the VOS constraint requires
/// this to equal 1.
inline double constraint_mean(const std::vector<Vec2>& points) {
  const std::size_t n = points.size();
  if (n < 2) throw data_error("constraint mean requires at least 2 items");
  return 2.0 * sum_pairwise_distances(points) / (static_cast<double>(n) * (n - 1));
}

/// The similarity-weighted centroid of all other items: the location that
/// minimizes the objective over x_i with every other point fixed.
inline Vec2 ideal_location(const VosProblem& problem, const std::vector<Vec2>& points,
                           std::size_t i) {
  double sx = 0.0, sy = 0.0, sw = 0.0;
  for (std::size_t j = 0; j < problem.n; ++j) {
    if (j == i) continue;
    const double s = problem.similarity(i, j);
    sx += s * points[j].x;
    sy += s * points[j].y;
    sw += s;
  }
  if (sw == 0.0) throw data_error("ideal location undefined: item has zero total similarity");
  return {sx / sw, sy / sw};
}

/// The unconstrained objective: weighted squared attraction minus an
/// unweighted spreading term over all pairs.
inline double sigma_hat(const VosProblem& problem, const std::vector<Vec2>& points) {
  double quad = 0.0, spread = 0.0;
  for (std::size_t i = 0; i < problem.n; ++i)
    for (std::size_t j = i + 1; j < problem.n; ++j) {
      const double d = distance(points[i], points[j]);
      quad += problem.similarity(i, j) * d * d;
      spread += d;
    }
  return quad - 2.0 * spread;
}

struct VosOptions {
  std::uint64_t seed = 1;
  std::size_t max_iter = 10000;
  double eps = 1e-10;                    // relative sigma_hat improvement
  std::vector<double>* trace = nullptr;  // per-iteration sigma_hat, if requested
};

struct SigmaHatRun {
  std::vector<Vec2> points;  // pre-rescale configuration
  double sigma_hat = 0.0;
  std::size_t iterations = 0;
};

namespace detail {

inline SigmaHatRun minimize_sigma_hat_with(const VosProblem& problem,
                                           const LaplacianSolver& solver,
                                           const std::vector<double>& coeff,
                                           const VosOptions& options);

}  // namespace detail

/// Minimizes sigma_hat by majorization. Each step solves the same linear
/// system as a weighted Guttman transform with weights s_ij where every
/// pair, including zero-similarity ones, contributes an unweighted
/// spreading term to the right-hand side.
inline SigmaHatRun minimize_sigma_hat(const VosProblem& problem, const VosOptions& options = {}) {
  if (options.max_iter < 1) throw config_error("max_iter must be at least 1");
  if (!(options.eps > 0.0)) throw config_error("eps must be positive");
  validate(problem);

  detail::LaplacianSolver solver(problem.n, problem.similarities);
  std::vector<double> coeff(problem.n * problem.n, 1.0);
  for (std::size_t i = 0; i < problem.n; ++i) coeff[i * problem.n + i] = 0.0;
  return detail::minimize_sigma_hat_with(problem, solver, coeff, options);
}

namespace detail {

inline SigmaHatRun minimize_sigma_hat_with(const VosProblem& problem,
                                           const LaplacianSolver& solver,
                                           const std::vector<double>& coeff,
                                           const VosOptions& options) {
  SigmaHatRun run;
  run.points = random_start(problem.n, options.seed);
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    run.iterations = it;
    run.points = detail::guttman_step(solver, coeff, run.points);
    const double value = sigma_hat(problem, run.points);
    if (!std::isfinite(value))
      throw numeric_error("non-finite objective at iteration " + std::to_string(it));
    if (options.trace) options.trace->push_back(value);
    if (prev - value < options.eps * std::abs(value)) {
      run.sigma_hat = value;
      return run;
    }
    prev = value;
  }
  run.sigma_hat = prev;
  return run;
}

}  // namespace detail

/// VOS run: majorization of the unconstrained objective followed by the
/// exact rescale c = n(n-1) / (2 sum dist) that restores unit mean distance.
/// The returned score is the constrained objective value.
inline Layout vos_run(const VosProblem& problem, const VosOptions& options = {}) {
  SigmaHatRun run = minimize_sigma_hat(problem, options);

  const double total = sum_pairwise_distances(run.points);
  if (total <= 0.0) throw numeric_error("degenerate configuration: all points coincide");
  const double c = static_cast<double>(problem.n) * (problem.n - 1) / (2.0 * total);
  for (Vec2& p : run.points) {
    p.x *= c;
    p.y *= c;
  }
  canonicalize(run.points, problem.item_weights);

  Layout layout;
  layout.points = std::move(run.points);
  layout.score = vos_objective(problem, layout.points);
  layout.seed = options.seed;
  layout.iterations = run.iterations;
  layout.method = "vos";
  return layout;
}

struct VosMultiStartResult {
  Layout layout;
  std::vector<Vec2> raw_points;  // best pre-rescale configuration
  double raw_sigma_hat = 0.0;
};

/// Multi-start VOS: lowest constrained objective wins, ties go to the lowest
/// start index. Also keeps the winning pre-rescale configuration for the
/// equivalence check.
inline VosMultiStartResult vos_multi_start_full(const VosProblem& problem,
                                                const MultiStartOptions& options = {}) {
  if (options.n_starts < 1) throw config_error("n_starts must be at least 1");
  if (options.max_iter < 1) throw config_error("max_iter must be at least 1");
  if (!(options.eps > 0.0)) throw config_error("eps must be positive");
  validate(problem);

  // factorized once and shared by all starts
  const detail::LaplacianSolver solver(problem.n, problem.similarities);
  std::vector<double> coeff(problem.n * problem.n, 1.0);
  for (std::size_t i = 0; i < problem.n; ++i) coeff[i * problem.n + i] = 0.0;

  struct StartResult {
    Layout layout;
    std::vector<Vec2> raw_points;
    double raw_sigma_hat;
  };
  std::vector<StartResult> results(options.n_starts);
  std::atomic<std::size_t> done{0};
  detail::parallel_for_index(options.n_starts, options.threads, [&](std::size_t k) {
    VosOptions run_options;
    run_options.seed = derive_seed(options.master_seed, k);
    run_options.max_iter = options.max_iter;
    run_options.eps = options.eps;
    SigmaHatRun run = detail::minimize_sigma_hat_with(problem, solver, coeff, run_options);
    results[k].raw_points = run.points;
    results[k].raw_sigma_hat = run.sigma_hat;

    const double total = sum_pairwise_distances(run.points);
    if (total <= 0.0) throw numeric_error("degenerate configuration: all points coincide");
    const double c = static_cast<double>(problem.n) * (problem.n - 1) / (2.0 * total);
    std::vector<Vec2> scaled = run.points;
    for (Vec2& p : scaled) {
      p.x *= c;
      p.y *= c;
    }
    canonicalize(scaled, problem.item_weights);
    results[k].layout.points = std::move(scaled);
    results[k].layout.score = vos_objective(problem, results[k].layout.points);
    results[k].layout.seed = run_options.seed;
    results[k].layout.iterations = run.iterations;
    results[k].layout.method = "vos";
    const std::size_t d = done.fetch_add(1) + 1;
    if (options.progress) options.progress(d, options.n_starts);
  });

  std::size_t best = 0;
  for (std::size_t k = 1; k < results.size(); ++k)
    if (results[k].layout.score < results[best].layout.score) best = k;

  VosMultiStartResult out;
  out.layout = std::move(results[best].layout);
  out.raw_points = std::move(results[best].raw_points);
  out.raw_sigma_hat = results[best].raw_sigma_hat;
  return out;
}

inline Layout vos_multi_start(const VosProblem& problem, const MultiStartOptions& options = {}) {
  return vos_multi_start_full(problem, options).layout;
}

struct ReferenceOptions {
  std::uint64_t seed = 1;
  std::size_t n_starts = 20;
  std::size_t max_iter = 50000;
  double eps = 1e-13;  // relative objective improvement
};

namespace detail {

/// Gradient of the weighted sum of squared distances.
inline void vos_gradient(const VosProblem& problem, const std::vector<Vec2>& x,
                         std::vector<Vec2>& grad) {
  const std::size_t n = problem.n;
  for (std::size_t i = 0; i < n; ++i) grad[i] = {0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = problem.similarity(i, j);
      if (s == 0.0) continue;
      const double gx = 2.0 * s * (x[i].x - x[j].x);
      const double gy = 2.0 * s * (x[i].y - x[j].y);
      grad[i].x += gx;
      grad[i].y += gy;
      grad[j].x -= gx;
      grad[j].y -= gy;
    }
}

inline void rescale_to_constraint(std::vector<Vec2>& x) {
  const double mean = constraint_mean(x);
  if (mean <= 0.0) throw numeric_error("degenerate configuration: all points coincide");
  for (Vec2& p : x) {
    p.x /= mean;
    p.y /= mean;
  }
}

/// Gradient of the constrained problem seen as the scale-invariant quotient
/// V(X) / mean(X)^2, evaluated at a configuration with unit mean distance.
/// A raw step on V alone can point uphill for the constrained problem (the
/// rescale undoes pure shrinking), so the mean-distance term is needed for
/// the step direction to vanish exactly at constrained optima.
inline void constrained_gradient(const VosProblem& problem, const std::vector<Vec2>& x,
                                 std::vector<Vec2>& grad) {
  const std::size_t n = problem.n;
  const double objective = vos_objective(problem, x);
  const double mean_coeff = 2.0 / (static_cast<double>(n) * (n - 1));
  vos_gradient(problem, x, grad);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance(x[i], x[j]);
      if (d == 0.0) continue;
      const double f = 2.0 * objective * mean_coeff / d;
      grad[i].x -= f * (x[i].x - x[j].x);
      grad[i].y -= f * (x[i].y - x[j].y);
      grad[j].x += f * (x[i].x - x[j].x);
      grad[j].y += f * (x[i].y - x[j].y);
    }
}

/// One projected-descent solve: spectral (Barzilai-Borwein) gradient steps,
/// each followed by a rescale back onto the unit-mean-distance constraint,
/// with halving until the step decreases the constrained objective.
inline std::pair<std::vector<Vec2>, double> reference_descent(const VosProblem& problem,
                                                              std::uint64_t seed,
                                                              std::size_t max_iter, double eps) {
  const std::size_t n = problem.n;
  std::vector<Vec2> x;
  for (std::uint64_t attempt = 0;; ++attempt) {
    if (attempt >= 100) throw numeric_error("could not draw a non-degenerate start");
    x = random_start(n, mix64(seed + attempt));
    if (sum_pairwise_distances(x) > 0.0) break;
  }
  rescale_to_constraint(x);

  double max_strength = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += problem.similarity(i, j);
    max_strength = std::max(max_strength, s);
  }
  const double eta0 = 1.0 / (4.0 * max_strength);

  std::vector<Vec2> grad(n), grad_new(n), trial(n);
  constrained_gradient(problem, x, grad);
  double obj = vos_objective(problem, x);
  double eta = eta0;

  for (std::size_t it = 0; it < max_iter; ++it) {
    double step = eta;
    double trial_obj = std::numeric_limits<double>::infinity();
    bool improved = false;
    for (int halving = 0; halving < 60; ++halving) {
      for (std::size_t i = 0; i < n; ++i) {
        trial[i].x = x[i].x - step * grad[i].x;
        trial[i].y = x[i].y - step * grad[i].y;
      }
      const double mean = constraint_mean(trial);
      if (mean > 0.0) {
        for (Vec2& p : trial) {
          p.x /= mean;
          p.y /= mean;
        }
        trial_obj = vos_objective(problem, trial);
        if (trial_obj < obj) {
          improved = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!improved) break;

    constrained_gradient(problem, trial, grad_new);
    // BB1 step from the accepted move; fall back to the safe step when the
    // curvature estimate is unusable.
    double ss = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sxi = trial[i].x - x[i].x;
      const double syi = trial[i].y - x[i].y;
      ss += sxi * sxi + syi * syi;
      sy += sxi * (grad_new[i].x - grad[i].x) + syi * (grad_new[i].y - grad[i].y);
    }
    eta = (sy > 0.0) ? std::clamp(ss / sy, 1e-12, 1e6) : eta0;

    const double gain = obj - trial_obj;
    x.swap(trial);
    grad.swap(grad_new);
    obj = trial_obj;
    if (gain < eps * std::abs(obj)) break;
  }
  return {x, obj};
}

}  // namespace detail

/// Independent verification solver: minimizes the constrained problem
/// directly by multi-start projected descent. Intended for small instances;
/// the majorization path is the production solver.
inline Layout constrained_reference_solve(const VosProblem& problem,
                                          const ReferenceOptions& options = {}) {
  validate(problem);
  if (options.n_starts < 1) throw config_error("n_starts must be at least 1");

  std::vector<Vec2> best_points;
  double best_obj = std::numeric_limits<double>::infinity();
  std::uint64_t best_seed = 0;
  for (std::size_t k = 0; k < options.n_starts; ++k) {
    const std::uint64_t seed = derive_seed(options.seed, k);
    auto [points, obj] = detail::reference_descent(problem, seed, options.max_iter, options.eps);
    if (obj < best_obj) {
      best_obj = obj;
      best_points = std::move(points);
      best_seed = seed;
    }
  }

  canonicalize(best_points, problem.item_weights);
  Layout layout;
  layout.points = std::move(best_points);
  layout.score = best_obj;
  layout.seed = best_seed;
  layout.iterations = options.max_iter;
  layout.method = "vos-reference";
  return layout;
}

/// Numerical check of the equivalence between the unconstrained and the
/// constrained formulations: the scaling constant maps each solver's
/// optimum onto the other problem, and matched optima make the two scaling
/// constants reciprocal.
struct EquivalenceReport {
  double c_forward = 0.0;   // scale taking the unconstrained optimum onto the constraint
  double c_backward = 0.0;  // scale taking the constrained optimum to unconstrained scale
  double objective_gap = 0.0;
  double procrustes_disparity = 0.0;
};

struct EquivalenceOptions {
  std::uint64_t master_seed = 1;
  std::size_t vos_starts = 20;
  std::size_t reference_starts = 20;
  std::size_t max_iter = 50000;
};

inline EquivalenceReport scaling_equivalence_check(const VosProblem& problem, const EquivalenceOptions& options = {}) {
  const double pair_count = static_cast<double>(problem.n) * (problem.n - 1) / 2.0;

  MultiStartOptions vos_options;
  vos_options.n_starts = options.vos_starts;
  vos_options.master_seed = options.master_seed;
  vos_options.max_iter = options.max_iter;
  vos_options.eps = 1e-12;
  VosMultiStartResult vos = vos_multi_start_full(problem, vos_options);

  ReferenceOptions ref_options;
  ref_options.seed = options.master_seed;
  ref_options.n_starts = options.reference_starts;
  ref_options.max_iter = options.max_iter;
  Layout reference = constrained_reference_solve(problem, ref_options);

  EquivalenceReport report;
  const double sum_dist = sum_pairwise_distances(vos.raw_points);
  report.c_forward = pair_count / sum_dist;

  std::vector<Vec2> forward = vos.raw_points;
  for (Vec2& p : forward) {
    p.x *= report.c_forward;
    p.y *= report.c_forward;
  }
  const double forward_objective = vos_objective(problem, forward);
  const double reference_objective = vos_objective(problem, reference.points);
  const double gap_constrained = std::abs(forward_objective - reference_objective) /
                                 std::max(std::abs(reference_objective), 1e-300);

  // The constrained optimum rescaled to its own sigma_hat-optimal size is
  // the backward-mapped configuration; its scale constant must be the
  // reciprocal of c_forward when the two solvers agree.
  report.c_backward = pair_count / reference_objective;
  std::vector<Vec2> backward = reference.points;
  for (Vec2& p : backward) {
    p.x *= report.c_backward;
    p.y *= report.c_backward;
  }
  const double backward_sigma = sigma_hat(problem, backward);
  const double gap_sigma =
      std::abs(backward_sigma - vos.raw_sigma_hat) / std::max(std::abs(vos.raw_sigma_hat), 1e-300);

  report.objective_gap = std::max(gap_constrained, gap_sigma);
  report.procrustes_disparity = procrustes_disparity(forward, reference.points, true);
  return report;
}

}  // namespace simmap

#endif  // SIMMAP_VOS_HPP
