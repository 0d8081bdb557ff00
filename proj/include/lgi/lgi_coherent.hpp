#pragma once

#include "lgi/types.hpp"

namespace lgi {

/// Joint probabilities p(first, second) of two parity measurements separated
/// by tau. Index order: (+,+), (+,-), (-,+), (-,-).
struct JointProbs {
  double pp = 0.0;
  double pm = 0.0;
  double mp = 0.0;
  double mm = 0.0;

  double correlation() const { return pp - pm - mp + mm; }
  double total() const { return pp + pm + mp + mm; }
  double first_marginal(Parity p) const { return p == Parity::plus ? pp + pm : mp + mm; }
  double second_marginal(Parity p) const { return p == Parity::plus ? pp + mp : pm + mm; }
};

/// Probabilities further than this outside [0, 1] are reported as a
/// ConsistencyError; closer ones are clipped.
inline constexpr double kProbabilitySlack = 1e-10;

double checked_probability(double p, const char* what);

/// Coherent initial state |a>: measure at 0, evolve tau, measure again.
JointProbs joint_probs_step(Complex a, const MeasurementSetting& s, const ModeParams& p, double tau);

/// C(a, beta, omega, gamma, tau) = p++ - p+- - p-+ + p--.
double correlator(Complex a, const MeasurementSetting& s, const ModeParams& p, double tau);

/// K3 for the coherent initial state. C32 restarts the two-time pipeline
/// from the freely evolved label a e^{-i Omega tau}.
LgiPoint k3_coherent(Complex a, const MeasurementSetting& s, const ModeParams& p, double tau);

}  // namespace lgi
