#pragma once

// Datasets behind figures 1-14.

#include <string>

#include "lgi/optimizer.hpp"
#include "lgi/table.hpp"

namespace lgi::figures {

struct FigureOptions {
  opt::SweepGrid grid;  ///< tau grid and search settings of the optimization figures
  double curve_tau_min = 0.01;  ///< tau range of the fixed-beta curves (figures 1, 8)
  double curve_tau_max = 30.0;
  double curve_d_tau = 0.01;
  opt::Execution exec = opt::Execution::parallel;
};

inline constexpr int kFigureCount = 14;

std::string figure_title(int n);

/// Throws std::out_of_range for n outside 1..14.
Table figure_data(int n, const FigureOptions& opts = {});

/// d/dr K3 at gamma = 0, alpha = 1/2, theta = pi - tau by central difference.
double ridge_slope(double r, double tau = 0.05, double h = 1e-5);

/// Root of ridge_slope in [lo, hi] by bisection; the bracket must change sign.
double ridge_slope_root(double lo, double hi, double tau = 0.05, double tol = 1e-10);

}  // namespace lgi::figures
