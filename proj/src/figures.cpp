#include "lgi/figures.hpp"

#include <numbers>
#include <stdexcept>

#include "lgi/asymptotics.hpp"
#include "lgi/lgi_cat.hpp"
#include "lgi/lgi_coherent.hpp"

namespace lgi::figures {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAlpha = 0.5;
constexpr double kOmega = 1.0;

using Config = std::vector<std::pair<std::string, std::string>>;

Config base_config(int n, const std::string& state) {
  return {{"figure", std::to_string(n)}, {"state", state}, {"omega", format_number(kOmega)}};
}

std::vector<double> curve_taus(const FigureOptions& o) {
  if (!(o.curve_d_tau > 0.0) || !(o.curve_tau_min > 0.0) || o.curve_tau_max < o.curve_tau_min)
    throw std::invalid_argument("bad curve tau range");
  std::vector<double> out;
  for (int n = 0;; ++n) {
    const double t = o.curve_tau_min + n * o.curve_d_tau;
    if (t > o.curve_tau_max + 1e-9 * o.curve_d_tau) break;
    out.push_back(t);
  }
  return out;
}

Table fixed_beta_curves(int n, StateKind kind, const FigureOptions& o) {
  Table t;
  t.columns = {{"tau"}, {"c21"}, {"c32"}, {"c31"}, {"k3"}, {"violates", true}, {"gamma"}};
  t.config = base_config(n, to_string(kind));
  t.config.push_back({"alpha", format_number(kAlpha)});
  t.config.push_back({"beta_r", "0.5"});
  t.config.push_back({"beta_theta", "0"});
  const MeasurementSetting s(0.5, 0.0);
  for (double gamma : {0.0, 0.05, 0.2}) {
    const ModeParams p(kOmega, gamma);
    for (double tau : curve_taus(o)) {
      const LgiPoint pt = kind == StateKind::coherent ? k3_coherent(kAlpha, s, p, tau) : k3_cat(kAlpha, s, p, tau);
      t.add_row({pt.tau, pt.c21, pt.c32, pt.c31, pt.k3, pt.violates() ? 1.0 : 0.0, gamma});
    }
  }
  return t;
}

void add_grid_config(Table& t, const FigureOptions& o) {
  t.config.push_back({"tau_min", format_number(o.grid.tau_min)});
  t.config.push_back({"tau_max", format_number(o.grid.tau_max)});
  t.config.push_back({"d_tau", format_number(o.grid.d_tau)});
  t.config.push_back({"n_theta", std::to_string(o.grid.n_theta)});
  t.config.push_back({"n_r", std::to_string(o.grid.n_r)});
}

opt::SweepResult checked_sweep(const FigureOptions& o, StateKind kind, double alpha, double gamma) {
  opt::SweepResult res = opt::sweep(o.grid, kind, alpha, ModeParams(kOmega, gamma), o.exec);
  if (!res.failures.empty())
    throw NonConvergence("sweep failed at tau = " + format_number(res.failures.front().tau) + ": " +
                         res.failures.front().message);
  return res;
}

Table optimum_sweeps(int n, StateKind kind, const FigureOptions& o) {
  Table t;
  t.columns = {{"tau"}, {"theta_star"}, {"r_star"}, {"k3_star"}, {"degenerate_theta", true}, {"gamma"}};
  t.config = base_config(n, to_string(kind));
  t.config.push_back({"alpha", format_number(kAlpha)});
  add_grid_config(t, o);
  for (double gamma : {0.0, 0.1, 1.0}) {
    for (const opt::OptimumRecord& r : checked_sweep(o, kind, kAlpha, gamma).records)
      t.add_row({r.tau, r.theta_star, r.r_star, r.k3_star, r.degenerate_theta ? 1.0 : 0.0, gamma});
  }
  return t;
}

Table theta_with_lines(int n, StateKind kind, const FigureOptions& o) {
  Table t;
  t.config = base_config(n, to_string(kind));
  t.config.push_back({"alpha", format_number(kAlpha)});
  t.config.push_back({"gamma", "0"});
  add_grid_config(t, o);
  std::vector<std::pair<std::string, double>> lines;
  if (kind == StateKind::coherent)
    lines = {{"line_2pi_minus_tau", 2.0 * kPi}, {"line_pi_minus_tau", kPi}, {"line_minus_tau", 0.0}};
  else
    lines = {{"line_5pi_2_minus_tau", 2.5 * kPi},
             {"line_2pi_minus_tau", 2.0 * kPi},
             {"line_pi_minus_tau", kPi},
             {"line_pi_2_minus_tau", 0.5 * kPi}};
  t.columns = {{"tau"}, {"theta_star"}, {"r_star"}, {"degenerate_theta", true}};
  for (const auto& l : lines) t.columns.push_back({l.first});
  for (const opt::OptimumRecord& r : checked_sweep(o, kind, kAlpha, 0.0).records) {
    std::vector<double> row = {r.tau, r.theta_star, r.r_star, r.degenerate_theta ? 1.0 : 0.0};
    for (const auto& l : lines) row.push_back(l.second - r.tau);
    t.add_row(std::move(row));
  }
  return t;
}

Table slope_curve(int n) {
  Table t;
  t.columns = {{"r"}, {"f"}};
  t.config = base_config(n, "coherent");
  t.config.push_back({"alpha", format_number(kAlpha)});
  t.config.push_back({"gamma", "0"});
  t.config.push_back({"tau", "0.05"});
  t.config.push_back({"theta", "pi-tau"});
  t.config.push_back({"h", "1e-05"});
  for (int i = 0; i <= 600; ++i) {
    const double r = i * 0.005;
    t.add_row({r, ridge_slope(r)});
  }
  return t;
}

Table ridge_surface(int n) {
  Table t;
  t.columns = {{"tau"}, {"r"}, {"g"}};
  t.config = base_config(n, "coherent");
  t.config.push_back({"alpha", format_number(kAlpha)});
  t.config.push_back({"gamma", "0"});
  for (int i = 1; i <= 200; ++i) {
    const double tau = i * 0.005;
    for (int j = 0; j <= 200; ++j) {
      const double r = j * 0.05;
      t.add_row({tau, r, asymptotics::ridge_function_exact(r, tau)});
    }
  }
  return t;
}

Table comparison(int n, double alpha, const FigureOptions& o) {
  Table t;
  t.columns = {{"tau"}, {"k3_coherent"}, {"k3_cat"}, {"gamma"}};
  t.config = base_config(n, "coherent+cat");
  t.config.push_back({"alpha", format_number(alpha)});
  add_grid_config(t, o);
  for (double gamma : {0.0, 0.1, 1.0}) {
    const auto co = checked_sweep(o, StateKind::coherent, alpha, gamma).records;
    const auto ca = checked_sweep(o, StateKind::cat, alpha, gamma).records;
    for (std::size_t i = 0; i < co.size(); ++i) t.add_row({co[i].tau, co[i].k3_star, ca[i].k3_star, gamma});
  }
  return t;
}

}  // namespace

std::string figure_title(int n) {
  switch (n) {
    case 1: return "K3 vs tau, coherent state, beta = 1/2";
    case 2: return "optimal theta vs tau, coherent state";
    case 3: return "optimal theta at gamma = 0 with ridge lines, coherent state";
    case 4: return "optimal r vs tau, coherent state";
    case 5: return "maximized K3 vs tau, coherent state";
    case 6: return "f(r) = dK3/dr on theta = pi - tau, tau = 0.05";
    case 7: return "ridge function g(r, tau)";
    case 8: return "K3 vs tau, cat state, beta = 1/2";
    case 9: return "optimal theta vs tau, cat state";
    case 10: return "optimal theta at gamma = 0 with ridge lines, cat state";
    case 11: return "optimal r vs tau, cat state";
    case 12: return "maximized K3 vs tau, cat state";
    case 13: return "maximized K3, coherent vs cat, alpha = 1/2";
    case 14: return "maximized K3, coherent vs cat, alpha = 1";
    default: throw std::out_of_range("figure index must be in 1..14, got " + std::to_string(n));
  }
}

Table figure_data(int n, const FigureOptions& o) {
  Table t;
  switch (n) {
    case 1: t = fixed_beta_curves(n, StateKind::coherent, o); break;
    case 2:
    case 4:
    case 5: t = optimum_sweeps(n, StateKind::coherent, o); break;
    case 3: t = theta_with_lines(n, StateKind::coherent, o); break;
    case 6: t = slope_curve(n); break;
    case 7: t = ridge_surface(n); break;
    case 8: t = fixed_beta_curves(n, StateKind::cat, o); break;
    case 9:
    case 11:
    case 12: t = optimum_sweeps(n, StateKind::cat, o); break;
    case 10: t = theta_with_lines(n, StateKind::cat, o); break;
    case 13: t = comparison(n, 0.5, o); break;
    case 14: t = comparison(n, 1.0, o); break;
    default: throw std::out_of_range("figure index must be in 1..14, got " + std::to_string(n));
  }
  t.config.insert(t.config.begin() + 1, {"title", figure_title(n)});
  return t;
}

double ridge_slope(double r, double tau, double h) {
  const MeasurementSetting plus(r + h, kPi - tau);
  const MeasurementSetting minus(std::max(0.0, r - h), kPi - tau);
  const ModeParams p(kOmega, 0.0);
  const double span = plus.r() - minus.r();
  return (k3_coherent(kAlpha, plus, p, tau).k3 - k3_coherent(kAlpha, minus, p, tau).k3) / span;
}

double ridge_slope_root(double lo, double hi, double tau, double tol) {
  double flo = ridge_slope(lo, tau);
  const double fhi = ridge_slope(hi, tau);
  if (flo * fhi > 0.0) throw std::invalid_argument("ridge_slope does not change sign on the bracket");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double fm = ridge_slope(mid, tau);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace lgi::figures
