#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sellab/parallel.hpp"
#include "sellab/sets.hpp"

namespace sellab {

struct SelectionConfig {
  std::size_t max_n = 8;
  double hull_tol = 1e-9;
  double mp_tol = 1e-9;
  double cheb_tol = 1e-10;
  /// H_n by net size; select_cheb needs an entry for every size >= 3 it meets.
  std::map<std::size_t, double> holder_constants;
  /// Points closer than this are merged before selecting.
  double collapse_gap = 1e-9;

  void validate() const;
};

struct SelectionResult {
  Point point;
  /// "point", "midpoint", "mean_point" (all hull gaps at least diam/2) or
  /// "interpolated".
  std::string branch;
  double rho_or_lambda = 0.0;
};

/// Mean-point based selection.
///
/// With g_i = d(x_i, co(sigma \ x_i)) and D = diam(sigma): when min g_i >= D/2
/// the result is the mean point b(sigma). Otherwise the sub-selections
/// c(sigma \ x_i) are averaged with weights clamp(1 - 2 g_i / D, 0, 1) into
/// b(C), and the result is the point at fraction rho = 2 min g_i / D of the
/// geodesic from b(C) to b(sigma). The weights vanish exactly when a point
/// reaches the branch threshold, which keeps the map continuous.
SelectionResult select_mp(const GeodesicSpace& space, const Net& sigma,
                          const SelectionConfig& cfg);

/// Chebyshev based selection: the point at fraction
/// lambda = min_i (g_i / D)^{1/2} / max{1, H_n} (clamped to [0, 1]) of the
/// geodesic from the mean point of the sub-selections to cheb(sigma).
SelectionResult select_cheb(const GeodesicSpace& space, const Net& sigma,
                            const SelectionConfig& cfg);

/// Drops points within cfg.collapse_gap of an earlier point (canonical order).
Net collapse_net(const GeodesicSpace& space, const Net& sigma, double gap);

enum class Selector { select_mp, select_cheb, mean_point, cheb };
enum class PerturbMode {
  /// Every point moves by up to the trial scale.
  unconstrained,
  /// Moves capped below half the minimum gap, so Hd < gap/2.
  within_half_gap,
};

Selector parse_selector(const std::string& s);
std::string selector_name(Selector s);

struct LipschitzReport {
  double max_ratio = 0.0;
  double p99 = 0.0;
  std::size_t counted = 0;
  std::size_t excluded = 0;
  std::size_t worst_trial = 0;
  std::uint64_t worst_seed = 0;  // reproduces the worst pair via trial_seed
  std::vector<double> ratios;    // ratio per trial, NaN when excluded
};

/// Random n-nets and matched-cardinality perturbations at four scales
/// (scale, scale/4, scale/16, scale/64 cycling by trial). Pairs whose Hd is
/// below 10 solver tolerances are excluded.
LipschitzReport empirical_lipschitz(const GeodesicSpace& space, Selector selector, std::size_t n,
                                    int trials, double perturbation_scale, std::uint64_t seed,
                                    PerturbMode mode, const SelectionConfig& cfg,
                                    Exec exec = Exec::parallel);

/// Selected point for one of the four selectors.
Point apply_selector(const GeodesicSpace& space, Selector selector, const Net& sigma,
                     const SelectionConfig& cfg);

struct ConsistencyReport {
  double max_displacement = 0.0;
  double constant = 0.0;  // max_displacement / eps
  bool pass = true;       // constant <= 1/2 + 0.05
};

/// Moves sigma[index] by eps in `directions` evenly spread directions and
/// measures d(c(sigma), c(sigma')) for the mean-point selection.
ConsistencyReport subnet_consistency_check(const GeodesicSpace& space, const Net& sigma,
                                           std::size_t index, double eps,
                                           const SelectionConfig& cfg, int directions = 16);

}  // namespace sellab
