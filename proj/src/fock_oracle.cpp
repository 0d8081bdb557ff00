#include "lgi/fock_oracle.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#if defined(__SSE2__)
#include <xmmintrin.h>
#endif

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace lgi::oracle {

namespace {

// Poisson tail sum_{n > n_max} e^{-lambda} lambda^n / n!, summed directly so
// that tiny defects keep their relative accuracy.
double poisson_tail(double lambda, int n_max) {
  if (lambda == 0.0) return 0.0;
  const double log_lambda = std::log(lambda);
  double tail = 0.0;
  for (int n = n_max + 1;; ++n) {
    const double term = std::exp(-lambda + n * log_lambda - std::lgamma(n + 1.0));
    tail += term;
    if (n > lambda && term < 1e-18 * std::max(tail, 1e-300)) break;
    if (n > n_max + 4000) break;
  }
  return tail;
}

// Basis size needed so that D(beta) applied to levels < dim is unaffected by
// the cut of the generator.
int padded_dim(Complex beta, int dim) {
  const double reach = std::sqrt(static_cast<double>(dim)) + std::abs(beta) + 3.0;
  return static_cast<int>(std::ceil(reach * reach)) + 20;
}

Eigen::VectorXd parity_diagonal(int dim, Parity sign) {
  Eigen::VectorXd d(dim);
  for (int n = 0; n < dim; ++n) {
    const bool even = (n % 2) == 0;
    d[n] = (even == (sign == Parity::plus)) ? 1.0 : 0.0;
  }
  return d;
}

}  // namespace

OracleConfig OracleConfig::sized_for(double max_label, int margin, double trunc_tol) {
  OracleConfig cfg;
  cfg.trunc_tol = trunc_tol;
  const double lambda = max_label * max_label;
  int n = std::max(1, static_cast<int>(lambda));
  while (poisson_tail(lambda, n) >= trunc_tol) ++n;
  cfg.n_max = n + margin;
  return cfg;
}

double truncation_defect(Complex a, int n_max) { return poisson_tail(std::norm(a), n_max); }

FockVector coherent_vector(Complex a, const OracleConfig& cfg) {
  const double defect = truncation_defect(a, cfg.n_max);
  if (defect > cfg.trunc_tol) {
    std::ostringstream os;
    os << "coherent label |" << std::abs(a) << "| needs more than n_max = " << cfg.n_max
       << " levels (norm defect " << defect << ")";
    throw TruncationError(os.str());
  }
  FockVector v(cfg.dim());
  v[0] = std::exp(-0.5 * std::norm(a));
  for (int n = 1; n < cfg.dim(); ++n) v[n] = v[n - 1] * a / std::sqrt(static_cast<double>(n));
  return v;
}

namespace {

// Rows [0, rows) of D(beta) over a padded basis of size big. Uses
// D(r e^{i theta}) = U D(r) U^dag with U = e^{i theta N}; the inner generator
// r (a^dag - a) is real.
FockMatrix displacement_rows(Complex beta, int rows, int big) {
  const double r = std::abs(beta);
  const double theta = std::arg(beta);
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(big, big);
  for (int n = 0; n + 1 < big; ++n) {
    const double v = r * std::sqrt(static_cast<double>(n + 1));
    gen(n + 1, n) = v;   // a^dag
    gen(n, n + 1) = -v;  // -a
  }
  const Eigen::MatrixXd real_d = gen.exp();
  FockMatrix out(rows, big);
  for (int m = 0; m < rows; ++m)
    for (int k = 0; k < big; ++k) out(m, k) = real_d(m, k) * std::polar(1.0, theta * (m - k));
  return out;
}

}  // namespace

FockMatrix displacement_matrix(Complex beta, int dim) {
  return displacement_rows(beta, dim, padded_dim(beta, dim)).leftCols(dim);
}

FockMatrix displacement_matrix_analytic(Complex gamma, int dim) {
  // <m|D|n> = sqrt(n!/m!) g^{m-n} e^{-x/2} L_n^{(m-n)}(x), x = |g|^2, for m >= n,
  // and the adjoint relation for m < n. The normalized Laguerre functions
  //   f_j = sqrt(j!/(j+k)!) x^{k/2} e^{-x/2} L_j^{(k)}(x)
  // obey sqrt((j+1)(j+k+1)) f_{j+1} = (2j+1+k-x) f_j - sqrt(j(j+k)) f_{j-1}.
  FockMatrix d = FockMatrix::Zero(dim, dim);
  const double x = std::norm(gamma);
  if (x == 0.0) return FockMatrix::Identity(dim, dim);
  const Complex phase = gamma / std::abs(gamma);
  const Complex back = -std::conj(phase);
  for (int k = 0; k < dim; ++k) {
    double prev = 0.0;
    double cur = std::exp(0.5 * k * std::log(x) - 0.5 * x - 0.5 * std::lgamma(k + 1.0));
    const Complex down = std::pow(phase, k);
    const Complex up = std::pow(back, k);
    for (int j = 0; j + k < dim; ++j) {
      d(j + k, j) = down * cur;
      if (k > 0) d(j, j + k) = up * cur;
      const double next = ((2.0 * j + 1.0 + k - x) * cur - std::sqrt(static_cast<double>(j) * (j + k)) * prev) /
                          std::sqrt((j + 1.0) * (j + k + 1.0));
      prev = cur;
      cur = next;
    }
  }
  return d;
}

FockMatrix displaced_parity_matrix(const MeasurementSetting& s, Parity sign, const OracleConfig& cfg) {
  const int dim = cfg.dim();
  const int big = padded_dim(s.beta(), dim);
  const FockMatrix rows = displacement_rows(s.beta(), dim, big);
  const Eigen::VectorXd p = parity_diagonal(big, sign);
  return rows * p.asDiagonal() * rows.adjoint();
}

FockMatrix displaced_parity_matrix_analytic(const MeasurementSetting& s, Parity sign, const OracleConfig& cfg) {
  const int dim = cfg.dim();
  FockMatrix dp = displacement_matrix_analytic(2.0 * s.beta(), dim);
  for (int n = 1; n < dim; n += 2) dp.col(n) = -dp.col(n);
  const double sg = sign_of(sign);
  FockMatrix pi = 0.5 * sg * dp;
  pi.diagonal().array() += 0.5;
  return pi;
}

namespace {

// Late in a decay the upper Fock levels hold subnormal numbers, which are
// orders of magnitude slower to multiply; they are flushed to zero.
class FlushSubnormals {
 public:
#if defined(__SSE2__)
  FlushSubnormals() : saved_(_mm_getcsr()) { _mm_setcsr(saved_ | 0x8040); }
  ~FlushSubnormals() { _mm_setcsr(saved_); }

 private:
  unsigned saved_;
#endif
};

// Lawson RK4 for d rho/dt = L rho + J rho with the diagonal part
// (L rho)_{mn} = (-i omega (m - n) - gamma (m + n)) rho_{mn} exponentiated
// exactly and the jump term J(rho)_{mn} = 2 gamma sqrt((m+1)(n+1)) rho_{m+1,n+1}.
//
// J keeps d = n - m, and the phase e^{i omega d t} is constant along each
// diagonal, so the matrix is stored diagonal by diagonal in the frame rotating
// with that phase. What is left has real coefficients and acts on the real and
// imaginary parts separately. A Hermitian state stays Hermitian, so only the
// diagonals with d >= 0 are integrated for it.
class LawsonStepper {
 public:
  LawsonStepper(const ModeParams& p, int dim, bool hermitian)
      : p_(p), dim_(dim), first_(hermitian ? 0 : -(dim - 1)), hermitian_(hermitian) {
    std::size_t total = 0;
    for (int d = first_; d < dim; ++d) {
      const int len = dim - std::abs(d);
      for (int k = 0; k < len; ++k) {
        expo_.push_back(2 * k + std::abs(d));
        weight_.push_back(k + 1 < len ? 2.0 * p.gamma() * std::sqrt((k + 1.0) * (k + std::abs(d) + 1.0)) : 0.0);
      }
      total += len;
    }
    for (auto* v : {&re_, &im_, &tmp_, &acc_}) v->assign(total + 1, 0.0);
    for (auto* v : {&full_, &half_}) v->assign(total, 0.0);
    pow_full_.resize(2 * dim);
    pow_half_.resize(2 * dim);
  }

  void load(const FockMatrix& rho) {
    std::size_t i = 0;
    for (int d = first_; d < dim_; ++d)
      for (int k = 0; k < dim_ - std::abs(d); ++k, ++i) {
        const Complex z = rho(row(d, k), col(d, k));
        re_[i] = z.real();
        im_[i] = z.imag();
      }
  }

  /// Writes the state back after `elapsed` of evolution, restoring the phases.
  void store(FockMatrix& rho, double elapsed) const {
    std::size_t i = 0;
    for (int d = first_; d < dim_; ++d) {
      const Complex phase = std::polar(1.0, p_.omega() * d * elapsed);
      for (int k = 0; k < dim_ - std::abs(d); ++k, ++i) {
        const Complex z = phase * Complex(re_[i], im_[i]);
        rho(row(d, k), col(d, k)) = z;
        if (hermitian_) rho(col(d, k), row(d, k)) = std::conj(z);
      }
    }
    if (hermitian_) rho.diagonal() = rho.diagonal().real().cast<Complex>();
  }

  void step(double h) {
    if (p_.gamma() == 0.0) return;
    for (int j = 0; j < 2 * dim_; ++j) {
      pow_full_[j] = std::exp(-p_.gamma() * j * h);
      pow_half_[j] = std::exp(-0.5 * p_.gamma() * j * h);
    }
    const std::size_t n = full_.size();
    for (std::size_t i = 0; i < n; ++i) {
      full_[i] = pow_full_[expo_[i]];
      half_[i] = pow_half_[expo_[i]];
    }
    advance(re_, h);
    advance(im_, h);
  }

 private:
  static int row(int d, int k) { return d >= 0 ? k : k - d; }
  static int col(int d, int k) { return d >= 0 ? k + d : k; }

  // v <- E v + h/6 (E k1 + 2 E_half (k2 + k3) + k4). Each stage reads entry
  // i + 1 before entry i is overwritten, so the scratch arrays are reused in place.
  void advance(std::vector<double>& v, double h) {
    const std::size_t n = full_.size();
    const double* w = weight_.data();
    const double* ef = full_.data();
    const double* eh = half_.data();
    double* t = tmp_.data();
    double* acc = acc_.data();
    double* x = v.data();
    for (std::size_t i = 0; i < n; ++i) {
      const double k1 = w[i] * x[i + 1];
      t[i] = eh[i] * (x[i] + 0.5 * h * k1);
      acc[i] = ef[i] * k1;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double k2 = w[i] * t[i + 1];
      acc[i] += 2.0 * eh[i] * k2;
      t[i] = eh[i] * x[i] + 0.5 * h * k2;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double k3 = w[i] * t[i + 1];
      acc[i] += 2.0 * eh[i] * k3;
      t[i] = ef[i] * x[i] + h * eh[i] * k3;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double k4 = w[i] * t[i + 1];
      x[i] = ef[i] * x[i] + (h / 6.0) * (acc[i] + k4);
    }
  }

  ModeParams p_;
  int dim_;
  int first_;
  bool hermitian_;
  std::vector<int> expo_;
  std::vector<double> weight_;
  std::vector<double> re_, im_, tmp_, acc_, full_, half_, pow_full_, pow_half_;
};

bool is_hermitian(const FockMatrix& rho) {
  const double scale = rho.cwiseAbs().maxCoeff();
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff() <= 1e-14 * scale;
}

}  // namespace

void lindblad_step(FockMatrix& rho, const ModeParams& p, double h) {
  LawsonStepper stepper(p, static_cast<int>(rho.rows()), false);
  stepper.load(rho);
  stepper.step(h);
  stepper.store(rho, h);
}

int evolve(FockMatrix& rho, const ModeParams& p, double t, const OracleConfig& cfg, double step_scale) {
  require_nonnegative_time(t, "t");
  if (t == 0.0) return 0;
  const FlushSubnormals guard;
  LawsonStepper stepper(p, static_cast<int>(rho.rows()), is_hermitian(rho));
  stepper.load(rho);
  if (p.gamma() == 0.0) {
    // Without the jump term the free evolution is exact in one step.
    stepper.store(rho, t);
    return 1;
  }
  const double n_top = static_cast<double>(rho.rows() - 1);
  int steps = 0;
  double s = 0.0;
  while (s < t) {
    const double rate = 2.0 * p.gamma() * n_top * std::exp(-2.0 * p.gamma() * s);
    double h = std::min(cfg.dt, rate > 0.0 ? cfg.stiffness_cfl / rate : cfg.dt) * step_scale;
    if (s + h > t || t - (s + h) < 1e-12 * t) h = t - s;
    stepper.step(h);
    s += h;
    ++steps;
  }
  stepper.store(rho, s);
  return steps;
}

double max_label(Complex a, const MeasurementSetting& s) {
  const Complex two_beta = 2.0 * s.beta();
  return std::max({std::abs(a), std::abs(two_beta - a), std::abs(two_beta + a)});
}

FockMatrix dyad_matrix(Complex ket, Complex bra, Complex coeff, const OracleConfig& cfg) {
  return coeff * coherent_vector(ket, cfg) * coherent_vector(bra, cfg).adjoint();
}

Complex trace_product(const FockMatrix& pi, const FockMatrix& rho) {
  return pi.cwiseProduct(rho.transpose()).sum();
}

namespace {

struct Correlators {
  double c21 = 0.0, c32 = 0.0, c31 = 0.0;
  double mass21 = 0.0, mass31 = 0.0, mass32 = 0.0;
  int steps = 0;
};

Correlators run_protocol(const FockVector& psi, const FockMatrix& pi_plus, const FockMatrix& pi_minus,
                         const ModeParams& p, double tau, const OracleConfig& cfg, double step_scale) {
  const FockMatrix* pis[2] = {&pi_plus, &pi_minus};
  const double signs[2] = {1.0, -1.0};
  Correlators out;

  for (int i = 0; i < 2; ++i) {
    const FockVector collapsed = (*pis[i]) * psi;
    FockMatrix w = collapsed * collapsed.adjoint();
    out.steps += evolve(w, p, tau, cfg, step_scale);
    for (int j = 0; j < 2; ++j) {
      const double prob = trace_product(*pis[j], w).real();
      out.c21 += signs[i] * signs[j] * prob;
      out.mass21 += prob;
    }
    out.steps += evolve(w, p, tau, cfg, step_scale);
    for (int j = 0; j < 2; ++j) {
      const double prob = trace_product(*pis[j], w).real();
      out.c31 += signs[i] * signs[j] * prob;
      out.mass31 += prob;
    }
  }

  FockMatrix rho = psi * psi.adjoint();
  out.steps += evolve(rho, p, tau, cfg, step_scale);
  for (int i = 0; i < 2; ++i) {
    FockMatrix w = (*pis[i]) * rho * (*pis[i]);
    out.steps += evolve(w, p, tau, cfg, step_scale);
    for (int j = 0; j < 2; ++j) {
      const double prob = trace_product(*pis[j], w).real();
      out.c32 += signs[i] * signs[j] * prob;
      out.mass32 += prob;
    }
  }
  return out;
}

}  // namespace

LgiPoint k3_oracle(StateKind kind, Complex a, const MeasurementSetting& s, const ModeParams& p, double tau,
                   const OracleConfig& cfg, OracleDiagnostics* diag) {
  require_positive_time(tau);
  checked_amplitude(a, "alpha");
  // Every label the protocol produces must fit the basis.
  coherent_vector(max_label(a, s), cfg);

  FockVector psi = coherent_vector(a, cfg);
  if (kind == StateKind::cat) {
    psi += coherent_vector(-a, cfg);
    psi /= psi.norm();
  }
  const FockMatrix pi_plus = displaced_parity_matrix(s, Parity::plus, cfg);
  const FockMatrix pi_minus = displaced_parity_matrix(s, Parity::minus, cfg);

  const Correlators c = run_protocol(psi, pi_plus, pi_minus, p, tau, cfg, 1.0);
  const LgiPoint point = make_point(tau, c.c21, c.c32, c.c31);

  if (diag) {
    diag->tree_mass_21 = c.mass21;
    diag->tree_mass_31 = c.mass31;
    diag->tree_mass_32 = c.mass32;
    diag->steps = c.steps;
    diag->step_size_warning = false;
    diag->step_shift = 0.0;
  }
  if (cfg.check_step_size) {
    const Correlators fine = run_protocol(psi, pi_plus, pi_minus, p, tau, cfg, 0.5);
    const double shift = std::abs(make_point(tau, fine.c21, fine.c32, fine.c31).k3 - point.k3);
    if (diag) {
      diag->step_shift = shift;
      diag->step_size_warning = shift > cfg.step_tol;
    }
  }
  return point;
}

}  // namespace lgi::oracle
