#pragma once

// Per-tau maximization of K3 over the measurement setting (theta, r).

#include <string>
#include <vector>

#include "lgi/types.hpp"

namespace lgi::opt {

enum class Execution { serial, parallel };

/// Thread count for parallel kernels: LGI_THREADS when set to a positive
/// integer, otherwise the OpenMP default.
int thread_limit();

struct SweepGrid {
  double tau_min = 0.025;
  double tau_max = 6.5;
  double d_tau = 0.025;
  int n_theta = 128;
  int n_r = 96;
  /// r_max(tau) = max(r_floor, r_margin * sqrt(pi / (12 tau))).
  double r_floor = 4.0;
  double r_margin = 1.5;
  double step_tol = 1e-6;      ///< refinement stops when both steps are below this
  int max_evaluations = 200000;  ///< per refinement, NonConvergence past it
  int grid_seeds = 8;          ///< best local maxima of the coarse grid used as seeds

  double r_max(double tau) const;
  std::vector<double> taus() const;
  void validate() const;
};

struct OptimumRecord {
  double tau = 0.0;
  double theta_star = 0.0;
  double r_star = 0.0;
  double k3_star = 0.0;
  bool degenerate_theta = false;
};

inline constexpr double kDegenerateR = 1e-6;
inline constexpr double kTieTolerance = 1e-9;

/// Theta period: 2 pi for the coherent state, pi for the cat.
double theta_period(StateKind kind);

/// K3 at (theta, r).
double k3_at(StateKind kind, Complex a, const ModeParams& p, double tau, double theta, double r);

/// K3 on the coarse grid, row-major [i_theta * n_r + i_r] with
/// theta_i = i * period / n_theta and r_j = j * r_max / (n_r - 1).
std::vector<double> coarse_grid(StateKind kind, Complex a, const ModeParams& p, double tau, const SweepGrid& grid,
                                Execution exec);

OptimumRecord optimize_at(double tau, StateKind kind, Complex a, const ModeParams& p, const SweepGrid& grid,
                          Execution exec = Execution::parallel);

struct SweepFailure {
  double tau = 0.0;
  std::string message;
};

struct SweepResult {
  std::vector<OptimumRecord> records;  ///< ordered by tau, failed points omitted
  std::vector<SweepFailure> failures;
};

SweepResult sweep(const SweepGrid& grid, StateKind kind, Complex a, const ModeParams& p,
                  Execution exec = Execution::parallel);

struct ConstRatio {
  double tau = 0.0;
  double r_star = 0.0;
  double ratio = 0.0;  ///< r_star^2 tau / (pi / 12)
};

/// Optimizes at gamma = 0 for every tau in (0, 0.01] and reports the
/// r^2 tau ratio.
std::vector<ConstRatio> singularity_probe(const std::vector<double>& taus, StateKind kind, Complex a,
                                          const SweepGrid& grid = {}, Execution exec = Execution::parallel);

}  // namespace lgi::opt
