// lgi: evaluate, sweep and optimize K3; emit figure datasets; audit the
// closed forms against the Fock-space oracle.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "lgi/figures.hpp"
#include "lgi/lgi_cat.hpp"
#include "lgi/lgi_coherent.hpp"
#include "lgi/optimizer.hpp"
#include "lgi/oracle_audit.hpp"
#include "lgi/table.hpp"

namespace {

using namespace lgi;

enum Exit { kOk = 0, kUsage = 1, kNumerical = 2, kIo = 3 };

struct Common {
  std::string state = "coherent";
  std::optional<double> alpha;
  std::optional<double> alpha_mod;
  double alpha_arg = 0.0;
  double gamma = 0.0;
  double omega = 1.0;
  std::string format = "csv";
  std::string output = "-";

  Complex amplitude() const {
    if (alpha && alpha_mod) throw std::invalid_argument("--alpha and --alpha-mod are mutually exclusive");
    if (alpha_mod) return std::polar(*alpha_mod, alpha_arg);
    return alpha.value_or(0.5);
  }

  std::vector<std::pair<std::string, std::string>> echo() const {
    const Complex a = amplitude();
    return {{"state", state},
            {"alpha_re", format_number(a.real())},
            {"alpha_im", format_number(a.imag())},
            {"gamma", format_number(gamma)},
            {"omega", format_number(omega)}};
  }
};

void add_common(CLI::App* cmd, Common& c, bool with_state = true) {
  if (with_state) cmd->add_option("--state", c.state, "coherent | cat")->check(CLI::IsMember({"coherent", "cat"}));
  cmd->add_option("--alpha", c.alpha, "real amplitude (default 0.5)");
  cmd->add_option("--alpha-mod", c.alpha_mod, "amplitude modulus");
  cmd->add_option("--alpha-arg", c.alpha_arg, "amplitude phase (with --alpha-mod)");
  cmd->add_option("--gamma", c.gamma, "spontaneous emission rate");
  cmd->add_option("--omega", c.omega, "mode frequency");
  cmd->add_option("--format", c.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("-o,--output", c.output, "output path, - for stdout");
}

void add_grid(CLI::App* cmd, opt::SweepGrid& g) {
  cmd->add_option("--tau-min", g.tau_min);
  cmd->add_option("--tau-max", g.tau_max);
  cmd->add_option("--d-tau", g.d_tau);
  cmd->add_option("--n-theta", g.n_theta, "coarse theta points");
  cmd->add_option("--n-r", g.n_r, "coarse r points");
  cmd->add_option("--max-evaluations", g.max_evaluations, "refinement cap per tau point");
}

LgiPoint evaluate(StateKind kind, Complex a, const MeasurementSetting& s, const ModeParams& p, double tau) {
  return kind == StateKind::coherent ? k3_coherent(a, s, p, tau) : k3_cat(a, s, p, tau);
}

Table point_table(const Common& c, double r, double theta) {
  Table t;
  t.columns = {{"tau"}, {"c21"}, {"c32"}, {"c31"}, {"k3"}, {"violates", true}};
  t.config = c.echo();
  t.config.push_back({"beta_r", format_number(r)});
  t.config.push_back({"beta_theta", format_number(theta)});
  return t;
}

void add_point(Table& t, const LgiPoint& pt) {
  t.add_row({pt.tau, pt.c21, pt.c32, pt.c31, pt.k3, pt.violates() ? 1.0 : 0.0});
}

int run(int argc, char** argv) {
  CLI::App app{"Leggett-Garg K3 for a damped bosonic mode under displaced-parity measurement"};
  app.require_subcommand(1);

  Common k3c;
  double beta_r = 0.5, beta_theta = 0.0, tau = 0.0;
  auto* k3 = app.add_subcommand("k3", "single K3 evaluation");
  add_common(k3, k3c);
  k3->add_option("--beta-r", beta_r);
  k3->add_option("--beta-theta", beta_theta);
  k3->add_option("--tau", tau)->required();

  Common swc;
  double sw_r = 0.5, sw_theta = 0.0;
  double sw_tau_min = 0.01, sw_tau_max = 20.0, sw_d_tau = 0.01;
  auto* sw = app.add_subcommand("sweep", "K3 over a tau grid at fixed beta");
  add_common(sw, swc);
  sw->add_option("--beta-r", sw_r);
  sw->add_option("--beta-theta", sw_theta);
  sw->add_option("--tau-min", sw_tau_min);
  sw->add_option("--tau-max", sw_tau_max);
  sw->add_option("--d-tau", sw_d_tau);

  Common opc;
  opt::SweepGrid og;
  bool serial = false;
  auto* op = app.add_subcommand("optimize", "maximize K3 over beta at every tau");
  add_common(op, opc);
  add_grid(op, og);
  op->add_flag("--serial", serial, "run the serial reference path");

  Common fgc;
  figures::FigureOptions fo;
  int figure = 0;
  auto* fg = app.add_subcommand("figure", "dataset behind figure n (1-14)");
  fg->add_option("n", figure)->required();
  fg->add_option("--format", fgc.format)->check(CLI::IsMember({"csv", "json"}));
  fg->add_option("-o,--output", fgc.output);
  add_grid(fg, fo.grid);
  fg->add_option("--curve-tau-max", fo.curve_tau_max, "tau range of figures 1 and 8");
  fg->add_option("--curve-d-tau", fo.curve_d_tau);

  Common auc;
  oracle::AuditOptions ao;
  bool no_stability = false;
  auto* au = app.add_subcommand("oracle-audit", "randomized closed-form vs Fock-oracle comparison");
  au->add_option("--draws", ao.draws, "draws per state kind");
  au->add_option("--seed", ao.seed);
  au->add_option("--tol", ao.tol);
  au->add_option("--dt", ao.dt, "largest oracle step");
  au->add_flag("--no-stability", no_stability, "skip the n_max + 16 rerun");
  au->add_flag("--check-step", ao.check_step, "rerun with halved steps");
  au->add_option("--format", auc.format)->check(CLI::IsMember({"csv", "json"}));
  au->add_option("-o,--output", auc.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (k3->parsed()) {
    if (!(tau > 0.0)) throw std::invalid_argument("--tau must be > 0");
    const StateKind kind = parse_state_kind(k3c.state);
    Table t = point_table(k3c, beta_r, beta_theta);
    add_point(t, evaluate(kind, k3c.amplitude(), MeasurementSetting(beta_r, beta_theta),
                          ModeParams(k3c.omega, k3c.gamma), tau));
    write_table(t, parse_format(k3c.format), k3c.output);
    return kOk;
  }

  if (sw->parsed()) {
    if (!(sw_d_tau > 0.0) || !(sw_tau_min > 0.0) || sw_tau_max < sw_tau_min)
      throw std::invalid_argument("need 0 < tau-min <= tau-max and d-tau > 0");
    const StateKind kind = parse_state_kind(swc.state);
    const Complex a = swc.amplitude();
    const MeasurementSetting s(sw_r, sw_theta);
    const ModeParams p(swc.omega, swc.gamma);
    Table t = point_table(swc, sw_r, sw_theta);
    for (int n = 0;; ++n) {
      const double tn = sw_tau_min + n * sw_d_tau;
      if (tn > sw_tau_max + 1e-9 * sw_d_tau) break;
      add_point(t, evaluate(kind, a, s, p, tn));
    }
    write_table(t, parse_format(swc.format), swc.output);
    return kOk;
  }

  if (op->parsed()) {
    const StateKind kind = parse_state_kind(opc.state);
    const opt::SweepResult res = opt::sweep(og, kind, opc.amplitude(), ModeParams(opc.omega, opc.gamma),
                                            serial ? opt::Execution::serial : opt::Execution::parallel);
    Table t;
    t.columns = {{"tau"}, {"theta_star"}, {"r_star"}, {"k3_star"}, {"degenerate_theta", true}};
    t.config = opc.echo();
    t.config.push_back({"n_theta", std::to_string(og.n_theta)});
    t.config.push_back({"n_r", std::to_string(og.n_r)});
    for (const auto& r : res.records)
      t.add_row({r.tau, r.theta_star, r.r_star, r.k3_star, r.degenerate_theta ? 1.0 : 0.0});
    write_table(t, parse_format(opc.format), opc.output);
    for (const auto& f : res.failures) std::cerr << "tau " << format_number(f.tau) << ": " << f.message << '\n';
    return res.failures.empty() ? kOk : kNumerical;
  }

  if (fg->parsed()) {
    const Table t = figures::figure_data(figure, fo);
    write_table(t, parse_format(fgc.format), fgc.output);
    return kOk;
  }

  ao.stability = !no_stability;
  const auto results = oracle::run_audit(ao);
  Table t;
  t.columns = {{"cat", true}, {"alpha_re"}, {"alpha_im"}, {"r"},          {"theta"},           {"omega"},
               {"gamma"},     {"tau"},      {"n_max"},    {"closed_form"}, {"oracle"},          {"difference"},
               {"stability_shift"}, {"step_shift"}, {"tree_mass_defect"}, {"passed", true}};
  t.config = {{"draws", std::to_string(ao.draws)}, {"seed", std::to_string(ao.seed)}, {"tol", format_number(ao.tol)},
              {"dt", format_number(ao.dt)}, {"stability", ao.stability ? "1" : "0"}};
  int failed = 0;
  double worst = 0.0;
  for (const auto& r : results) {
    const auto& d = r.draw;
    const bool ok = r.passed(ao.tol);
    failed += ok ? 0 : 1;
    worst = std::max(worst, r.difference);
    t.add_row({d.kind == StateKind::cat ? 1.0 : 0.0, d.alpha.real(), d.alpha.imag(), d.r, d.theta, d.omega, d.gamma,
               d.tau, static_cast<double>(r.n_max), r.closed_form, r.oracle, r.difference, r.stability_shift,
               r.step_shift, r.tree_mass_defect, ok ? 1.0 : 0.0});
  }
  write_table(t, parse_format(auc.format), auc.output);
  std::cerr << results.size() << " draws, " << failed << " above tolerance, worst |difference| "
            << format_number(worst) << '\n';
  return failed == 0 ? kOk : kNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const lgi::ConsistencyError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const lgi::NonConvergence& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const lgi::TruncationError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  }
}
