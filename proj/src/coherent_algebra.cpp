#include "lgi/coherent_algebra.hpp"

namespace lgi {

Complex coherent_overlap(Complex a, Complex b) {
  return std::exp(-0.5 * (std::norm(a) + std::norm(b)) + std::conj(a) * b);
}

Complex parity_phase(Complex a, Complex beta) {
  // conj(beta) a - beta conj(a) = 2i Im(conj(beta) a)
  return std::exp(Complex{0.0, 2.0 * (std::conj(beta) * a).imag()});
}

Dyad dissipative_dyad_map(const Dyad& d, const ModeParams& p, double t) {
  require_nonnegative_time(t, "t");
  if (t == 0.0) return d;
  const Complex u = p.label_factor(t);
  const double lost = p.decay_fraction(t);
  const Complex exponent =
      -0.5 * (std::norm(d.ket) + std::norm(d.bra) - 2.0 * d.ket * std::conj(d.bra)) * lost;
  return {d.ket * u, d.bra * u, d.coeff * std::exp(exponent)};
}

void evolve_in_place(std::span<Dyad> dyads, const ModeParams& p, double t) {
  require_nonnegative_time(t, "t");
  if (t == 0.0) return;
  const Complex u = p.label_factor(t);
  const double lost = p.decay_fraction(t);
  for (Dyad& d : dyads) {
    const Complex exponent =
        -0.5 * (std::norm(d.ket) + std::norm(d.bra) - 2.0 * d.ket * std::conj(d.bra)) * lost;
    d.coeff *= std::exp(exponent);
    d.ket *= u;
    d.bra *= u;
  }
}

std::array<KetTerm, 2> parity_split(Complex a, const MeasurementSetting& s, Parity sign) {
  const Complex beta = s.beta();
  return {KetTerm{a, 0.5},
          KetTerm{2.0 * beta - a, 0.5 * sign_of(sign) * parity_phase(a, beta)}};
}

double parity_probability(Complex a, const MeasurementSetting& s, Parity sign) {
  // exp(-x) cosh(x) = (1 + exp(-2x)) / 2, exp(-x) sinh(x) = (1 - exp(-2x)) / 2
  const double x = std::norm(a - s.beta());
  return 0.5 * (1.0 + sign_of(sign) * std::exp(-2.0 * x));
}

std::array<Dyad, 4> project_dyad(const Dyad& d, const MeasurementSetting& s, Parity sign) {
  const auto k = parity_split(d.ket, s, sign);
  const auto b = parity_split(d.bra, s, sign);
  std::array<Dyad, 4> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out[2 * i + j] = {k[i].label, b[j].label, d.coeff * k[i].coeff * std::conj(b[j].coeff)};
  return out;
}

ParityTraces parity_traces(const Dyad& d, Complex beta) {
  // Tr[Pi c|a><b|] = c <b|Pi|a> = c/2 [ <b|a> +- e^{phase(a)} <b|2 beta - a> ]
  const Complex direct = coherent_overlap(d.bra, d.ket);
  const Complex mirrored = parity_phase(d.ket, beta) * coherent_overlap(d.bra, 2.0 * beta - d.ket);
  const Complex half = 0.5 * d.coeff;
  return {half * (direct + mirrored), half * (direct - mirrored)};
}

Complex dyad_trace(const Dyad& d) { return d.coeff * coherent_overlap(d.bra, d.ket); }

}  // namespace lgi
