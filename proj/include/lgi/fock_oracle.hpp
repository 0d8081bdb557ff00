#pragma once

// Brute-force reference: truncated Fock basis, numerically integrated master
// equation, matrix displaced-parity projectors and explicit
// project-evolve-project bookkeeping. Shares nothing with the dyad algebra.

#include <Eigen/Dense>

#include "lgi/types.hpp"

namespace lgi::oracle {

using FockMatrix = Eigen::MatrixXcd;
using FockVector = Eigen::VectorXcd;

struct OracleConfig {
  int n_max = 64;          ///< highest retained photon number
  double dt = 1e-3;        ///< largest integrator step
  double trunc_tol = 1e-10;
  /// Bound on step * (2 gamma n_max e^{-2 gamma s}), the fastest jump rate
  /// left after the diagonal part is integrated exactly.
  double stiffness_cfl = 0.025;
  /// Rerun with halved steps and flag a shift above step_tol.
  bool check_step_size = false;
  double step_tol = 1e-8;

  int dim() const { return n_max + 1; }

  /// Smallest n_max whose truncation of |label> loses less than trunc_tol,
  /// plus `margin` extra levels.
  static OracleConfig sized_for(double max_label, int margin = 16, double trunc_tol = 1e-10);
};

/// 1 - sum_{n <= n_max} |<n|a>|^2.
double truncation_defect(Complex a, int n_max);

/// |a> in the truncated basis; throws TruncationError when the norm defect
/// exceeds cfg.trunc_tol.
FockVector coherent_vector(Complex a, const OracleConfig& cfg);

/// D(beta) = exp(beta a^dag - conj(beta) a) from the matrix exponential of
/// the generator in a padded basis, cut back to dim x dim.
FockMatrix displacement_matrix(Complex beta, int dim);

/// D(gamma) from its associated-Laguerre matrix elements.
FockMatrix displacement_matrix_analytic(Complex gamma, int dim);

/// Pi^(sign)(beta) = D(beta) P_sign D(beta)^dag via the matrix exponential.
FockMatrix displaced_parity_matrix(const MeasurementSetting& s, Parity sign, const OracleConfig& cfg);

/// Second construction: Pi^(sign)(beta) = (1 +- D(2 beta) (-1)^N) / 2 with
/// analytic matrix elements.
FockMatrix displaced_parity_matrix_analytic(const MeasurementSetting& s, Parity sign, const OracleConfig& cfg);

/// One fourth-order Lawson (integrating-factor Runge-Kutta) step of
///   d rho/dt = -i[omega N, rho] + gamma (2 a rho a^dag - N rho - rho N).
/// The diagonal part is exponentiated exactly, the jump term by RK4.
void lindblad_step(FockMatrix& rho, const ModeParams& p, double dt);

/// Integrates over [0, t] with steps bounded by cfg.dt and the stiffness rule.
/// `step_scale` multiplies both bounds. Returns the number of steps taken.
int evolve(FockMatrix& rho, const ModeParams& p, double t, const OracleConfig& cfg, double step_scale = 1.0);

struct OracleDiagnostics {
  double tree_mass_21 = 0.0;  ///< sum of all p(o1, o2) at tau
  double tree_mass_31 = 0.0;
  double tree_mass_32 = 0.0;
  bool step_size_warning = false;
  double step_shift = 0.0;    ///< |K3(dt) - K3(dt/2)| when checked
  int steps = 0;
};

/// Sequential-measurement K3 computed entirely in the Fock basis.
LgiPoint k3_oracle(StateKind kind, Complex a, const MeasurementSetting& s, const ModeParams& p, double tau,
                   const OracleConfig& cfg, OracleDiagnostics* diag = nullptr);

/// Largest coherent label the protocol touches: max(|a|, |2 beta +- a|).
double max_label(Complex a, const MeasurementSetting& s);

/// c |x><y| as a dense matrix.
FockMatrix dyad_matrix(Complex ket, Complex bra, Complex coeff, const OracleConfig& cfg);

/// Tr[Pi rho].
Complex trace_product(const FockMatrix& pi, const FockMatrix& rho);

}  // namespace lgi::oracle
