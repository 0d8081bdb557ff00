#include "lgi/lgi_coherent.hpp"

#include <algorithm>
#include <sstream>

#include "lgi/coherent_algebra.hpp"

namespace lgi {

double checked_probability(double p, const char* what) {
  if (!(p >= -kProbabilitySlack && p <= 1.0 + kProbabilitySlack)) {
    std::ostringstream os;
    os.precision(17);
    os << what << " = " << p << " outside [0, 1]";
    throw ConsistencyError(os.str());
  }
  return std::clamp(p, 0.0, 1.0);
}

JointProbs joint_probs_step(Complex a, const MeasurementSetting& s, const ModeParams& p, double tau) {
  require_nonnegative_time(tau, "tau");
  checked_amplitude(a, "alpha");

  // w1(+/-)(0) = 1/4 [ |a><a| +- c|m><a| +- conj(c)|a><m| + |m><m| ] with m = 2 beta - a.
  // Both outcomes share the same four dyads; only the cross-term sign differs.
  const auto split = parity_split(a, s, Parity::plus);
  std::array<Dyad, 3> dyads = {
      Dyad{split[0].label, split[0].label, split[0].coeff * std::conj(split[0].coeff)},
      Dyad{split[1].label, split[0].label, split[1].coeff * std::conj(split[0].coeff)},
      Dyad{split[1].label, split[1].label, split[1].coeff * std::conj(split[1].coeff)},
  };
  evolve_in_place(dyads, p, tau);

  const Complex beta = s.beta();
  const ParityTraces diag_a = parity_traces(dyads[0], beta);
  const ParityTraces cross = parity_traces(dyads[1], beta);
  const ParityTraces diag_m = parity_traces(dyads[2], beta);

  auto prob = [&](double first, Parity second, const char* what) {
    const double v = diag_a[second].real() + diag_m[second].real() + first * 2.0 * cross[second].real();
    return checked_probability(v, what);
  };
  return {prob(+1.0, Parity::plus, "p(+,+)"), prob(+1.0, Parity::minus, "p(+,-)"),
          prob(-1.0, Parity::plus, "p(-,+)"), prob(-1.0, Parity::minus, "p(-,-)")};
}

double correlator(Complex a, const MeasurementSetting& s, const ModeParams& p, double tau) {
  return joint_probs_step(a, s, p, tau).correlation();
}

LgiPoint k3_coherent(Complex a, const MeasurementSetting& s, const ModeParams& p, double tau) {
  require_positive_time(tau);
  const double c21 = correlator(a, s, p, tau);
  const double c31 = correlator(a, s, p, 2.0 * tau);
  const double c32 = correlator(a * p.label_factor(tau), s, p, tau);
  return make_point(tau, c21, c32, c31);
}

}  // namespace lgi
