#pragma once

// Closed-form limits and small-tau approximations of K3.

#include "lgi/types.hpp"

namespace lgi::asymptotics {

enum class Regime { tau_to_inf, tau_to_zero, two_level };

const char* to_string(Regime r);

struct LimitResult {
  double value = 0.0;
  Regime regime = Regime::tau_to_inf;
};

/// Long-time K3 for an initial coherent state: exp(-4 r^2).
LimitResult coherent_tau_inf_limit(const MeasurementSetting& s);

/// Long-time K3 for an initial cat state with a = s e^{i mu}, from the
/// closed expression in s and mu.
LimitResult cat_tau_inf_limit(Complex a, const MeasurementSetting& setting);

/// K3 of the coherent state a = 1/2 at gamma = 0 on the ridge theta = pi - tau.
double ridge_function_exact(double r, double tau);

/// Small-tau, large-r form of ridge_function_exact:
/// 2 exp(-2 r^2 tau^2) cos(4 r^2 tau) - exp(-8 r^2 tau^2) cos(8 r^2 tau).
double coherent_ridge_approx(double r, double tau);

/// 2 cos 4x - cos 8x, the tau -> 0 limit at fixed x = r^2 tau.
double scaled_limit_function(double x);

/// 2 cos(w0 tau) - cos(2 w0 tau).
LimitResult two_level_k3(double omega0, double tau);

/// Small-tau, large-r form of the cat K3 (a = 1/2, gamma = 0) on the ridge
/// theta = pi/2 - tau.
double cat_ridge_approx(double r, double tau);

/// Windows in which the approximations track the exact ridge values, for
/// 1 <= r <= 10: relative error below kCoherentApproxRelErr and
/// kCatApproxRelErr while r * tau <= kApproxMaxRTau.
inline constexpr double kApproxMaxRTau = 0.01;
inline constexpr double kCoherentApproxRelErr = 1.5e-2;
inline constexpr double kCatApproxRelErr = 2e-2;

}  // namespace lgi::asymptotics
