#include "lgi/optimizer.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <optional>
#include <sstream>

#include "lgi/lgi_cat.hpp"
#include "lgi/lgi_coherent.hpp"

namespace lgi::opt {

namespace {

constexpr double kPi = std::numbers::pi;

struct Candidate {
  double theta = 0.0;
  double r = 0.0;
  double value = 0.0;
};

double fold(double x, double period) {
  double t = std::fmod(x, period);
  if (t < 0.0) t += period;
  if (t >= period) t = 0.0;
  return t;
}

// Compass search; both steps are halved whenever no neighbour improves.
Candidate refine(StateKind kind, Complex a, const ModeParams& p, double tau, Candidate c, double h_theta, double h_r,
                 const SweepGrid& g) {
  int evaluations = 0;
  while (h_theta >= g.step_tol || h_r >= g.step_tol) {
    const Candidate moves[4] = {{c.theta + h_theta, c.r, 0.0},
                                {c.theta - h_theta, c.r, 0.0},
                                {c.theta, c.r + h_r, 0.0},
                                {c.theta, std::max(0.0, c.r - h_r), 0.0}};
    Candidate best = c;
    for (Candidate m : moves) {
      if (m.r == c.r && m.theta == c.theta) continue;
      m.value = k3_at(kind, a, p, tau, m.theta, m.r);
      ++evaluations;
      if (m.value > best.value) best = m;
    }
    if (best.value > c.value) {
      c = best;
    } else {
      h_theta *= 0.5;
      h_r *= 0.5;
    }
    if (evaluations > g.max_evaluations) {
      std::ostringstream os;
      os << "pattern search exceeded " << g.max_evaluations << " evaluations at tau = " << tau;
      throw NonConvergence(os.str());
    }
  }
  return c;
}

std::vector<double> ridge_thetas(StateKind kind, double tau) {
  if (kind == StateKind::coherent) return {kPi - tau, -tau};
  return {kPi / 2.0 - tau, kPi - tau};
}

template <class F>
void parallel_for(int n, Execution exec, F&& body) {
  if (exec == Execution::serial) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  // Exceptions may not leave an OpenMP region; the first one is rethrown after it.
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) num_threads(thread_limit())
  for (int i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
#pragma omp critical(lgi_parallel_for_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

int thread_limit() {
  if (const char* env = std::getenv("LGI_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return omp_get_max_threads();
}

double SweepGrid::r_max(double tau) const {
  return std::max(r_floor, r_margin * std::sqrt(kPi / (12.0 * tau)));
}

std::vector<double> SweepGrid::taus() const {
  validate();
  std::vector<double> out;
  for (int n = 0;; ++n) {
    const double t = tau_min + n * d_tau;
    if (t > tau_max + 1e-9 * d_tau) break;
    out.push_back(t);
  }
  return out;
}

void SweepGrid::validate() const {
  if (!(d_tau > 0.0)) throw std::invalid_argument("d_tau must be > 0");
  if (!(tau_min > 0.0)) throw std::invalid_argument("tau_min must be > 0");
  if (!(tau_max >= tau_min)) throw std::invalid_argument("tau_max must be >= tau_min");
  if (n_theta < 4 || n_r < 3) throw std::invalid_argument("coarse grid needs n_theta >= 4 and n_r >= 3");
  if (!(step_tol > 0.0)) throw std::invalid_argument("step_tol must be > 0");
  if (grid_seeds < 1) throw std::invalid_argument("grid_seeds must be >= 1");
}

double theta_period(StateKind kind) { return kind == StateKind::coherent ? 2.0 * kPi : kPi; }

double k3_at(StateKind kind, Complex a, const ModeParams& p, double tau, double theta, double r) {
  const MeasurementSetting s(r, theta);
  return kind == StateKind::coherent ? k3_coherent(a, s, p, tau).k3 : k3_cat(a, s, p, tau).k3;
}

std::vector<double> coarse_grid(StateKind kind, Complex a, const ModeParams& p, double tau, const SweepGrid& grid,
                                Execution exec) {
  grid.validate();
  require_positive_time(tau);
  const double period = theta_period(kind);
  const double r_max = grid.r_max(tau);
  std::vector<double> values(static_cast<std::size_t>(grid.n_theta) * grid.n_r);
  parallel_for(grid.n_theta, exec, [&](int i) {
    const double theta = i * period / grid.n_theta;
    for (int j = 0; j < grid.n_r; ++j)
      values[static_cast<std::size_t>(i) * grid.n_r + j] = k3_at(kind, a, p, tau, theta, j * r_max / (grid.n_r - 1));
  });
  return values;
}

OptimumRecord optimize_at(double tau, StateKind kind, Complex a, const ModeParams& p, const SweepGrid& grid,
                          Execution exec) {
  require_positive_time(tau);
  grid.validate();
  const double period = theta_period(kind);
  const double r_max = grid.r_max(tau);
  const double h_theta = period / grid.n_theta;
  const double h_r = r_max / (grid.n_r - 1);
  const std::vector<double> values = coarse_grid(kind, a, p, tau, grid, exec);
  auto at = [&](int i, int j) { return values[static_cast<std::size_t>(i) * grid.n_r + j]; };

  std::vector<Candidate> seeds;
  for (int i = 0; i < grid.n_theta; ++i) {
    for (int j = 0; j < grid.n_r; ++j) {
      const double v = at(i, j);
      const int up = (i + 1) % grid.n_theta;
      const int down = (i + grid.n_theta - 1) % grid.n_theta;
      const bool peak = v >= at(up, j) && v >= at(down, j) && (j == 0 || v >= at(i, j - 1)) &&
                        (j + 1 == grid.n_r || v >= at(i, j + 1));
      if (peak) seeds.push_back({i * h_theta, j * h_r, v});
    }
  }
  std::stable_sort(seeds.begin(), seeds.end(), [](const Candidate& x, const Candidate& y) { return x.value > y.value; });
  if (static_cast<int>(seeds.size()) > grid.grid_seeds) seeds.resize(grid.grid_seeds);

  const int n_line = 4 * grid.n_r;
  for (double theta : ridge_thetas(kind, tau)) {
    Candidate best{theta, 0.0, k3_at(kind, a, p, tau, theta, 0.0)};
    for (int j = 1; j < n_line; ++j) {
      const double r = j * r_max / (n_line - 1);
      const double v = k3_at(kind, a, p, tau, theta, r);
      if (v > best.value) best = {theta, r, v};
    }
    seeds.push_back(best);
  }

  std::vector<Candidate> refined(seeds.size());
  parallel_for(static_cast<int>(seeds.size()), exec, [&](int k) {
    refined[k] = refine(kind, a, p, tau, seeds[k], h_theta, h_r / 4.0, grid);
  });

  double top = refined.front().value;
  for (const Candidate& c : refined) top = std::max(top, c.value);
  std::optional<Candidate> pick;
  for (const Candidate& c : refined) {
    if (c.value < top - kTieTolerance) continue;
    if (!pick || c.r < pick->r || (c.r == pick->r && fold(c.theta, period) < fold(pick->theta, period))) pick = c;
  }

  OptimumRecord rec;
  rec.tau = tau;
  rec.r_star = pick->r;
  rec.k3_star = pick->value;
  rec.degenerate_theta = pick->r < kDegenerateR;
  if (rec.degenerate_theta) {
    rec.theta_star = 0.0;
  } else if (kind == StateKind::coherent) {
    double t = fold(pick->theta, period);
    if (t > kPi) t -= 2.0 * kPi;
    rec.theta_star = t;
  } else {
    rec.theta_star = fold(pick->theta, period);
  }
  return rec;
}

SweepResult sweep(const SweepGrid& grid, StateKind kind, Complex a, const ModeParams& p, Execution exec) {
  const std::vector<double> taus = grid.taus();
  const int n = static_cast<int>(taus.size());
  std::vector<std::optional<OptimumRecord>> slots(n);
  std::vector<std::string> errors(n);
  parallel_for(n, exec, [&](int i) {
    try {
      slots[i] = optimize_at(taus[i], kind, a, p, grid, Execution::serial);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  SweepResult out;
  for (int i = 0; i < n; ++i) {
    if (slots[i])
      out.records.push_back(*slots[i]);
    else
      out.failures.push_back({taus[i], errors[i]});
  }
  return out;
}

std::vector<ConstRatio> singularity_probe(const std::vector<double>& taus, StateKind kind, Complex a,
                                          const SweepGrid& grid, Execution exec) {
  for (double t : taus)
    if (!(t > 0.0 && t <= 0.01)) throw std::invalid_argument("singularity_probe needs every tau in (0, 0.01]");
  const ModeParams p(1.0, 0.0);
  std::vector<ConstRatio> out(taus.size());
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const OptimumRecord rec = optimize_at(taus[i], kind, a, p, grid, exec);
    out[i] = {taus[i], rec.r_star, rec.r_star * rec.r_star * taus[i] / (kPi / 12.0)};
  }
  return out;
}

}  // namespace lgi::opt
