#pragma once

// Randomized closed-form vs Fock-oracle comparison.

#include <cstdint>
#include <vector>

#include "lgi/fock_oracle.hpp"

namespace lgi::oracle {

struct AuditDraw {
  StateKind kind = StateKind::coherent;
  Complex alpha;
  double r = 0.0;
  double theta = 0.0;
  double omega = 1.0;
  double gamma = 0.0;
  double tau = 1.0;
};

struct AuditOptions {
  int draws = 200;          ///< per state kind
  std::uint32_t seed = 20240611;
  double tol = 1e-8;
  double dt = 0.05;
  bool stability = true;    ///< rerun with n_max + 16
  bool check_step = false;  ///< rerun with halved steps
  double max_alpha = 1.5;
  double max_r = 3.0;
  double max_gamma = 1.0;
};

struct AuditResult {
  AuditDraw draw;
  int n_max = 0;
  double closed_form = 0.0;
  double oracle = 0.0;
  double difference = 0.0;       ///< |closed_form - oracle|
  double stability_shift = 0.0;  ///< |K3(n_max) - K3(n_max + 16)|, 0 when not run
  double step_shift = 0.0;
  double tree_mass_defect = 0.0;  ///< largest |sum of branch probabilities - 1|

  bool passed(double tol) const { return difference < tol && stability_shift < tol && step_shift < tol; }
};

/// Draws |alpha| <= max_alpha, r <= max_r, gamma in [0, max_gamma],
/// omega in [0.5, 1.5] and tau in (0, 2 pi], with uniform phases.
std::vector<AuditDraw> audit_draws(StateKind kind, const AuditOptions& opts);

AuditResult audit_one(const AuditDraw& d, const AuditOptions& opts);

std::vector<AuditResult> run_audit(const AuditOptions& opts);

}  // namespace lgi::oracle
