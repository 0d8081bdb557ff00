#pragma once

// Even cat state q(a)^{-1/2} (|a> + |-a>) measured with displaced parity.
//
// The density matrix is split as (K + L + L^dag + M) / q with K = |a><a|,
// L = |a><-a|, M = |-a><-a|. Sandwiching each piece between Pi^(+-) gives
// four dyads X^(1..4) with
//   Pi X Pi = 1/4 [ X^(1) +- X^(2) +- X^(3) + X^(4) ],
// and X^(3) = X^(2)^dag for X = K, M. Those dyads evolve and are traced
// one at a time.

#include <array>

#include "lgi/coherent_algebra.hpp"
#include "lgi/lgi_coherent.hpp"

namespace lgi {

/// q(a) = 2 [1 + exp(-2|a|^2)].
double cat_norm(Complex a);

enum class Family { K = 0, L = 1, M = 2 };

/// The twelve dyads X^(j), stored at index j-1. Coefficients exclude the
/// overall 1/4 and 1/q factors.
struct CatDecomposition {
  std::array<Dyad, 4> k;
  std::array<Dyad, 4> l;
  std::array<Dyad, 4> m;

  const std::array<Dyad, 4>& family(Family f) const { return f == Family::K ? k : f == Family::L ? l : m; }
  std::array<Dyad, 4>& family(Family f) { return f == Family::K ? k : f == Family::L ? l : m; }
};

CatDecomposition decompose_cat(Complex a, const MeasurementSetting& s);

/// Applies the damping map to every dyad of the decomposition.
CatDecomposition evolve(const CatDecomposition& d, const ModeParams& p, double t);

/// Tr[X^(j)(tau) Pi^(+-)(beta)] for every family X and j = 1..4.
struct TraceTable {
  std::array<std::array<Complex, 4>, 3> plus{};
  std::array<std::array<Complex, 4>, 3> minus{};

  Complex at(Family f, int j, Parity sign) const {
    const auto& t = sign == Parity::plus ? plus : minus;
    return t[static_cast<int>(f)][j - 1];
  }
};

TraceTable trace_tables(Complex a, const MeasurementSetting& s, const ModeParams& p, double tau);

/// p(first, second) with the first measurement on the cat at t = 0 and the
/// second after tau.
JointProbs cat_joint_probs_first(Complex a, const MeasurementSetting& s, const ModeParams& p, double tau);

/// p(second, third): first measurement at t = tau on the freely damped cat,
/// second at 2 tau. The damped cat keeps a reduced cross term and is not a
/// cat state of the evolved amplitude.
JointProbs cat_joint_probs_second(Complex a, const MeasurementSetting& s, const ModeParams& p, double tau);

LgiPoint k3_cat(Complex a, const MeasurementSetting& s, const ModeParams& p, double tau);

}  // namespace lgi
