#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lgi {

using Complex = std::complex<double>;

/// Thrown when a Fock-space truncation cannot represent a state to the
/// requested tolerance.
struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when a closed-form probability leaves [0, 1] by more than float
/// noise. Signals a broken formula, never a user error.
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Complex checked_amplitude(Complex z, const char* what = "amplitude") {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::invalid_argument(std::string(what) + " must be finite");
  return z;
}

inline void require_nonnegative_time(double t, const char* what = "time") {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw std::invalid_argument(std::string(what) + " must be finite and >= 0");
}

inline void require_positive_time(double t, const char* what = "tau") {
  if (!(t > 0.0) || !std::isfinite(t))
    throw std::invalid_argument(std::string(what) + " must be finite and > 0");
}

/// Mode frequency and spontaneous emission rate in units where the
/// frequency multiplies tau directly.
class ModeParams {
 public:
  ModeParams(double omega, double gamma) : omega_(omega), gamma_(gamma) {
    if (!std::isfinite(omega)) throw std::invalid_argument("omega must be finite");
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
      throw std::invalid_argument("gamma must be finite and >= 0");
  }

  double omega() const { return omega_; }
  double gamma() const { return gamma_; }

  /// Complex frequency omega - i*gamma.
  Complex big_omega() const { return {omega_, -gamma_}; }

  /// exp(-i * Omega * t): the factor every coherent label picks up.
  Complex label_factor(double t) const {
    return std::exp(Complex{-gamma_ * t, -omega_ * t});
  }

  /// 1 - exp(-2 gamma t), computed without cancellation for small gamma*t.
  double decay_fraction(double t) const { return -std::expm1(-2.0 * gamma_ * t); }

 private:
  double omega_;
  double gamma_;
};

/// Displaced-parity parameter beta = r e^{i theta}. theta is kept as given;
/// reduction happens only when reporting.
class MeasurementSetting {
 public:
  MeasurementSetting(double r, double theta) : r_(r), theta_(theta) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("r must be finite and >= 0");
    if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
    beta_ = std::polar(r_, theta_);
  }

  static MeasurementSetting from_beta(Complex beta) {
    checked_amplitude(beta, "beta");
    return {std::abs(beta), std::arg(beta)};
  }

  double r() const { return r_; }
  double theta() const { return theta_; }
  Complex beta() const { return beta_; }

  /// theta folded into [0, 2 pi).
  double reduced_theta() const {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double t = std::fmod(theta_, two_pi);
    if (t < 0.0) t += two_pi;
    if (t >= two_pi) t = 0.0;
    return t;
  }

 private:
  double r_;
  double theta_;
  Complex beta_;
};

enum class Parity : int { plus = 1, minus = -1 };

inline double sign_of(Parity p) { return p == Parity::plus ? 1.0 : -1.0; }

enum class StateKind { coherent, cat };

inline const char* to_string(StateKind k) { return k == StateKind::coherent ? "coherent" : "cat"; }

inline StateKind parse_state_kind(const std::string& s) {
  if (s == "coherent") return StateKind::coherent;
  if (s == "cat") return StateKind::cat;
  throw std::invalid_argument("unknown state kind '" + s + "' (expected coherent|cat)");
}

inline constexpr double kViolationSlack = 1e-12;

/// One evaluation of the three two-time correlators and their combination.
struct LgiPoint {
  double tau = 0.0;
  double c21 = 0.0;
  double c32 = 0.0;
  double c31 = 0.0;
  double k3 = 0.0;

  /// K3 above the macrorealist bound 1 by more than float noise.
  bool violates() const { return k3 > 1.0 + kViolationSlack; }
};

inline LgiPoint make_point(double tau, double c21, double c32, double c31) {
  return {tau, c21, c32, c31, c21 + c32 - c31};
}

}  // namespace lgi
