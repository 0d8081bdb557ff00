#include "lgi/lgi_cat.hpp"

namespace lgi {

double cat_norm(Complex a) { return 2.0 * (1.0 + std::exp(-2.0 * std::norm(checked_amplitude(a, "alpha")))); }

namespace {

// 4 * Pi^(+) d Pi^(+) reordered as X^(1..4): (a,a), (a,mirror), (mirror,a), (mirror,mirror).
std::array<Dyad, 4> split_family(const Dyad& d, const MeasurementSetting& s) {
  auto out = project_dyad(d, s, Parity::plus);
  for (Dyad& x : out) x.coeff *= 4.0;
  return out;
}

// (1/4q) ( K1 +- 2Re K2 + K4 + 2 w Re{L1 +- L2 +- L3 + L4} + M1 +- 2Re M2 + M4 )
double assemble(const TraceTable& t, Parity first, Parity second, double q, double cross_weight) {
  const double s = sign_of(first);
  const auto& row = second == Parity::plus ? t.plus : t.minus;
  const auto& k = row[static_cast<int>(Family::K)];
  const auto& l = row[static_cast<int>(Family::L)];
  const auto& m = row[static_cast<int>(Family::M)];
  const double kk = k[0].real() + s * 2.0 * k[1].real() + k[3].real();
  const double mm = m[0].real() + s * 2.0 * m[1].real() + m[3].real();
  const double ll = 2.0 * cross_weight * (l[0] + s * l[1] + s * l[2] + l[3]).real();
  return (kk + ll + mm) / (4.0 * q);
}

JointProbs assemble_all(const TraceTable& t, double q, double cross_weight) {
  auto prob = [&](Parity f, Parity s, const char* what) {
    return checked_probability(assemble(t, f, s, q, cross_weight), what);
  };
  return {prob(Parity::plus, Parity::plus, "p(+,+)"), prob(Parity::plus, Parity::minus, "p(+,-)"),
          prob(Parity::minus, Parity::plus, "p(-,+)"), prob(Parity::minus, Parity::minus, "p(-,-)")};
}

}  // namespace

CatDecomposition decompose_cat(Complex a, const MeasurementSetting& s) {
  checked_amplitude(a, "alpha");
  return {split_family(Dyad{a, a, 1.0}, s), split_family(Dyad{a, -a, 1.0}, s),
          split_family(Dyad{-a, -a, 1.0}, s)};
}

CatDecomposition evolve(const CatDecomposition& d, const ModeParams& p, double t) {
  CatDecomposition out = d;
  evolve_in_place(out.k, p, t);
  evolve_in_place(out.l, p, t);
  evolve_in_place(out.m, p, t);
  return out;
}

TraceTable trace_tables(Complex a, const MeasurementSetting& s, const ModeParams& p, double tau) {
  require_nonnegative_time(tau, "tau");
  const CatDecomposition d = evolve(decompose_cat(a, s), p, tau);
  const Complex beta = s.beta();
  TraceTable t;
  for (Family f : {Family::K, Family::L, Family::M}) {
    const auto i = static_cast<int>(f);
    // Both parities come out of the same overlaps.
    for (int j = 0; j < 4; ++j) {
      const ParityTraces pt = parity_traces(d.family(f)[j], beta);
      t.plus[i][j] = pt.plus;
      t.minus[i][j] = pt.minus;
    }
  }
  return t;
}

JointProbs cat_joint_probs_first(Complex a, const MeasurementSetting& s, const ModeParams& p, double tau) {
  return assemble_all(trace_tables(a, s, p, tau), cat_norm(a), 1.0);
}

JointProbs cat_joint_probs_second(Complex a, const MeasurementSetting& s, const ModeParams& p, double tau) {
  require_nonnegative_time(tau, "tau");
  // Tilde quantities: every table entry with a -> a e^{-i Omega tau}; the
  // L family keeps the coherence lost during the first interval.
  const Complex a_tilde = a * p.label_factor(tau);
  const double cross_weight = std::exp(-2.0 * std::norm(a) * p.decay_fraction(tau));
  return assemble_all(trace_tables(a_tilde, s, p, tau), cat_norm(a), cross_weight);
}

LgiPoint k3_cat(Complex a, const MeasurementSetting& s, const ModeParams& p, double tau) {
  require_positive_time(tau);
  const double c21 = cat_joint_probs_first(a, s, p, tau).correlation();
  const double c31 = cat_joint_probs_first(a, s, p, 2.0 * tau).correlation();
  const double c32 = cat_joint_probs_second(a, s, p, tau).correlation();
  return make_point(tau, c21, c32, c31);
}

}  // namespace lgi
