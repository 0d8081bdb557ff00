#include "lgi/oracle_audit.hpp"

#include <algorithm>
#include <numbers>
#include <random>

#include "lgi/lgi_cat.hpp"
#include "lgi/lgi_coherent.hpp"

namespace lgi::oracle {

std::vector<AuditDraw> audit_draws(StateKind kind, const AuditOptions& opts) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  std::mt19937 rng(opts.seed + (kind == StateKind::cat ? 1u : 0u));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<AuditDraw> out(opts.draws);
  for (AuditDraw& d : out) {
    d.kind = kind;
    d.alpha = std::polar(opts.max_alpha * unit(rng), two_pi * unit(rng));
    d.r = opts.max_r * unit(rng);
    d.theta = two_pi * unit(rng);
    d.omega = 0.5 + unit(rng);
    d.gamma = opts.max_gamma * unit(rng);
    d.tau = two_pi * (1.0 - unit(rng));
  }
  return out;
}

AuditResult audit_one(const AuditDraw& d, const AuditOptions& opts) {
  const MeasurementSetting s(d.r, d.theta);
  const ModeParams p(d.omega, d.gamma);
  OracleConfig cfg = OracleConfig::sized_for(max_label(d.alpha, s));
  cfg.dt = opts.dt;
  cfg.check_step_size = opts.check_step;
  cfg.step_tol = opts.tol;

  AuditResult res;
  res.draw = d;
  res.n_max = cfg.n_max;
  res.closed_form = d.kind == StateKind::coherent ? k3_coherent(d.alpha, s, p, d.tau).k3 : k3_cat(d.alpha, s, p, d.tau).k3;
  OracleDiagnostics diag;
  res.oracle = k3_oracle(d.kind, d.alpha, s, p, d.tau, cfg, &diag).k3;
  res.difference = std::abs(res.closed_form - res.oracle);
  res.step_shift = diag.step_shift;
  res.tree_mass_defect = std::max({std::abs(diag.tree_mass_21 - 1.0), std::abs(diag.tree_mass_31 - 1.0),
                                   std::abs(diag.tree_mass_32 - 1.0)});
  if (opts.stability) {
    OracleConfig wide = cfg;
    wide.n_max += 16;
    wide.check_step_size = false;
    res.stability_shift = std::abs(k3_oracle(d.kind, d.alpha, s, p, d.tau, wide).k3 - res.oracle);
  }
  return res;
}

std::vector<AuditResult> run_audit(const AuditOptions& opts) {
  std::vector<AuditDraw> draws = audit_draws(StateKind::coherent, opts);
  const std::vector<AuditDraw> cat = audit_draws(StateKind::cat, opts);
  draws.insert(draws.end(), cat.begin(), cat.end());
  std::vector<AuditResult> out(draws.size());
  const int n = static_cast<int>(draws.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) out[i] = audit_one(draws[i], opts);
  return out;
}

}  // namespace lgi::oracle
