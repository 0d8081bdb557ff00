#include "lgi/asymptotics.hpp"

#include <cmath>

namespace lgi::asymptotics {

const char* to_string(Regime r) {
  switch (r) {
    case Regime::tau_to_inf: return "tau_to_inf";
    case Regime::tau_to_zero: return "tau_to_zero";
    case Regime::two_level: return "two_level";
  }
  return "?";
}

LimitResult coherent_tau_inf_limit(const MeasurementSetting& s) {
  return {std::exp(-4.0 * s.r() * s.r()), Regime::tau_to_inf};
}

LimitResult cat_tau_inf_limit(Complex a, const MeasurementSetting& setting) {
  checked_amplitude(a, "alpha");
  const double s = std::abs(a);
  const double mu = std::arg(a);
  const double r = setting.r();
  const double c = std::cos(setting.theta() - mu);
  const double sn = std::sin(setting.theta() - mu);
  const double e2r = std::exp(2.0 * r * r);
  const double e2s = std::exp(2.0 * s * s);
  const double pref = std::exp(-2.0 * r * (2.0 * r + s * c)) / (4.0 * (1.0 + e2s));
  const double body = std::exp(2.0 * r * s * c) * (3.0 + e2r + 4.0 * e2s) + (1.0 - e2r) * std::cos(2.0 * r * s * sn);
  return {pref * body, Regime::tau_to_inf};
}

double ridge_function_exact(double r, double tau) {
  require_positive_time(tau);
  const double st = std::sin(tau);
  const double ct = std::cos(tau);
  return 2.0 * std::exp(4.0 * r * r * (ct - 1.0)) * std::cos(2.0 * r * (1.0 + 2.0 * r) * st) -
         std::exp(-8.0 * r * r * st * st) * std::cos(4.0 * r * (1.0 + 2.0 * r * ct) * st);
}

double coherent_ridge_approx(double r, double tau) {
  const double x = r * r * tau;
  return 2.0 * std::exp(-2.0 * x * tau) * std::cos(4.0 * x) - std::exp(-8.0 * x * tau) * std::cos(8.0 * x);
}

double scaled_limit_function(double x) { return 2.0 * std::cos(4.0 * x) - std::cos(8.0 * x); }

LimitResult two_level_k3(double omega0, double tau) {
  const double phi = omega0 * tau;
  return {2.0 * std::cos(phi) - std::cos(2.0 * phi), Regime::two_level};
}

double cat_ridge_approx(double r, double tau) {
  const double x = r * r * tau;
  const double rt = r * tau;
  const double first = 1.0 + std::exp(4.0 * rt) + 2.0 * std::exp(0.5 + 2.0 * rt);
  const double second = 1.0 + std::exp(0.5 + 16.0 * rt * rt);
  return std::exp(-2.0 * rt) / (1.0 + std::sqrt(std::numbers::e)) *
         (first * std::cos(4.0 * x) - second * std::cos(8.0 * x));
}

}  // namespace lgi::asymptotics
