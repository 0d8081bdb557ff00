#pragma once

// Exact algebra of coherent-state dyads coeff * |ket><bra|.
//
// Every state met in the three-time protocol is a short sum of such dyads:
// displaced-parity projectors map a coherent ket onto two coherent kets, and
// zero-temperature damping maps a dyad onto a single dyad. All exponents
// involved have non-positive real part, so plain complex exponentials never
// overflow, however large |beta| gets.

#include <array>
#include <span>
#include <vector>

#include "lgi/types.hpp"

namespace lgi {

struct Dyad {
  Complex ket;
  Complex bra;
  Complex coeff{1.0, 0.0};

  Dyad adjoint() const { return {bra, ket, std::conj(coeff)}; }
};

/// One weighted coherent ket, coeff * |label>.
struct KetTerm {
  Complex label;
  Complex coeff;
};

/// <a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b).
Complex coherent_overlap(Complex a, Complex b);

/// exp(conj(beta) a - beta conj(a)); unimodular.
Complex parity_phase(Complex a, Complex beta);

/// Exact zero-temperature damping of a dyad over time t.
Dyad dissipative_dyad_map(const Dyad& d, const ModeParams& p, double t);

void evolve_in_place(std::span<Dyad> dyads, const ModeParams& p, double t);

/// Pi^(sign)(beta)|a> = 1/2 [ |a> +- e^{conj(beta) a - beta conj(a)} |2 beta - a> ].
std::array<KetTerm, 2> parity_split(Complex a, const MeasurementSetting& s, Parity sign);

/// <a|Pi^(sign)(beta)|a>.
double parity_probability(Complex a, const MeasurementSetting& s, Parity sign);

/// Pi d Pi as four dyads.
std::array<Dyad, 4> project_dyad(const Dyad& d, const MeasurementSetting& s, Parity sign);

/// Tr[Pi^(+) d] and Tr[Pi^(-) d] from one pair of overlaps.
struct ParityTraces {
  Complex plus;
  Complex minus;

  Complex operator[](Parity p) const { return p == Parity::plus ? plus : minus; }
};

ParityTraces parity_traces(const Dyad& d, Complex beta);

/// Tr[d] = coeff <bra|ket>.
Complex dyad_trace(const Dyad& d);

}  // namespace lgi
