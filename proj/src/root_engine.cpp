#include "root_engine.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace vlock {

namespace {

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t out = 1;
  for (int i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
  }
  return out;
}

Complex trinomial_value(Complex g, const Params& pr) {
  const double a = pr.a();
  const double b = pr.b();
  return a + b * g + a * g * g;
}

// Diagonal similarity scaling by radix powers until row and column norms
// agree. The companion matrix of a trinomial power is badly scaled for
// small migration rates and the eigensolver loses the tiny roots without
// this step.
void balance(Eigen::MatrixXcd& mat) {
  const int n = static_cast<int>(mat.rows());
  const double radix = 2.0;
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double col = 0.0;
      double row = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        col += std::abs(mat(j, i));
        row += std::abs(mat(i, j));
      }
      if (col == 0.0 || row == 0.0) continue;
      const double total = col + row;
      double f = 1.0;
      double g = row / radix;
      while (col < g) {
        f *= radix;
        col *= radix * radix;
      }
      g = row * radix;
      while (col > g) {
        f /= radix;
        col /= radix * radix;
      }
      if ((col + row) / f < 0.95 * total) {
        done = false;
        mat.row(i) *= 1.0 / f;
        mat.col(i) *= f;
      }
    }
  }
}

}  // namespace

Complex cpow_int(Complex z, int e) {
  Complex out = 1.0;
  Complex base = z;
  for (int n = e; n > 0; n >>= 1) {
    if (n & 1) out *= base;
    base *= base;
  }
  return out;
}

std::int64_t trinomial_multinomial(int q, int k, int l) {
  return binomial(q, l) * binomial(q - l, k - 2 * l);
}

std::vector<double> trinomial_coefficients(const Params& pr, int q) {
  const double a = pr.a();
  const double b = pr.b();
  std::vector<double> coeffs(2 * q + 1, 0.0);
  for (int k = 0; k <= 2 * q; ++k) {
    double sum = 0.0;
    for (int l = std::max(0, k - q); 2 * l <= k && l <= q; ++l) {
      sum += static_cast<double>(trinomial_multinomial(q, k, l)) *
             std::pow(a, q - k + 2 * l) * std::pow(b, k - 2 * l);
    }
    coeffs[k] = sum;
  }
  return coeffs;
}

double char_residual(Complex gamma, Complex lambda, const Params& pr,
                     const Speed& sp) {
  const Complex A = trinomial_value(gamma, pr);
  const Complex f = cpow_int(A, sp.q) - lambda * cpow_int(gamma, sp.N());
  const double scale = std::pow(std::abs(A), sp.q) +
                       std::abs(lambda) * std::pow(std::abs(gamma), sp.N());
  return std::abs(f) / scale;
}

std::vector<Complex> char_roots(const Params& pr, const Speed& sp,
                                Complex lambda) {
  validate_speed(sp);
  require_front_params(pr);
  if (lambda == 0.0) {
    throw Error(kInvalid, "characteristic polynomial needs lambda != 0");
  }
  const int q = sp.q;
  const int N = sp.N();
  const int deg = 2 * q;

  const std::vector<double> tri = trinomial_coefficients(pr, q);
  std::vector<Complex> coeffs(tri.begin(), tri.end());
  coeffs[N] -= lambda;

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) {
    companion(i, i - 1) = 1.0;
  }
  for (int i = 0; i < deg; ++i) {
    companion(i, deg - 1) = -coeffs[i] / coeffs[deg];
  }
  balance(companion);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) {
    throw Error(kNoConverge, "companion eigenvalue iteration failed");
  }

  const double a = pr.a();
  const double b = pr.b();
  const double tol = tolerances().root_residual;
  std::vector<Complex> roots(deg);
  for (int i = 0; i < deg; ++i) {
    Complex g = solver.eigenvalues()(i);
    for (int it = 0; it < 30; ++it) {
      const Complex A = trinomial_value(g, pr);
      const Complex f = cpow_int(A, q) - lambda * cpow_int(g, N);
      const Complex fp = static_cast<double>(q) * cpow_int(A, q - 1) *
                             (b + 2.0 * a * g) -
                         lambda * static_cast<double>(N) * cpow_int(g, N - 1);
      if (fp == 0.0) break;
      const Complex step = f / fp;
      g -= step;
      if (std::abs(step) <= 1e-16 * std::abs(g)) break;
    }
    if (char_residual(g, lambda, pr, sp) > tol) {
      std::ostringstream msg;
      msg << "root residual above tolerance at gamma = " << g;
      throw Error(kNoConverge, msg.str());
    }
    if (std::abs(g.imag()) <= 1e-13 * std::abs(g)) {
      g = Complex(g.real(), 0.0);
    }
    roots[i] = g;
  }
  std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) {
    const double ax = std::abs(x);
    const double ay = std::abs(y);
    if (ax != ay) return ax < ay;
    return std::arg(x) < std::arg(y);
  });
  return roots;
}

void diophantine(int q, int N, int* ell1, int* ell2) {
  if (N < 1 || q <= N || std::gcd(q, N) != 1) {
    std::ostringstream msg;
    msg << "branch exponents need coprime q > N >= 1, got q=" << q
        << " N=" << N;
    throw Error(kInvalid, msg.str());
  }
  if (N == 1) {
    *ell1 = 1;
    *ell2 = q + 1;
    return;
  }
  for (int l1 = 1; l1 < N; ++l1) {
    const std::int64_t num = static_cast<std::int64_t>(q) * l1 + 1;
    if (num % N == 0) {
      *ell1 = l1;
      *ell2 = static_cast<int>(num / N);
      return;
    }
  }
  throw Error(kInternal, "no branch exponents found");
}

Complex fractional_root(Complex gamma, const Params& pr, const Speed& sp,
                        int ell1, int ell2) {
  if (sp.N() == 1) {
    if (!(gamma.real() > 0.0)) {
      throw Error(kInvalid, "single-root case needs a positive real root");
    }
    return std::pow(gamma.real(), -1.0 / sp.q);
  }
  const Complex A = trinomial_value(gamma, pr);
  if (A == 0.0) {
    throw Error(kInvalid, "trinomial vanishes at the root");
  }
  return cpow_int(gamma, ell1) / cpow_int(A, ell2);
}

FrontRoots select_front_roots(const std::vector<Complex>& all_roots,
                              const DecayPair& rates, const Params& pr,
                              const Speed& sp) {
  const int N = sp.N();
  const Tolerances& tol = tolerances();
  const double disk = rates.gamma_s * (1.0 + tol.inside_slack);

  std::vector<Complex> sorted = all_roots;
  std::sort(sorted.begin(), sorted.end(), [](Complex x, Complex y) {
    const double ax = std::abs(x);
    const double ay = std::abs(y);
    if (ax != ay) return ax < ay;
    return std::arg(x) < std::arg(y);
  });

  int inside = 0;
  for (const Complex& g : sorted) {
    if (std::abs(g) <= disk) ++inside;
  }
  if (inside != N) {
    std::ostringstream msg;
    msg << "expected " << N << " roots inside the strong-decay disk, found "
        << inside;
    throw Error(kDegenerate, msg.str());
  }
  if (static_cast<int>(sorted.size()) > N &&
      std::abs(sorted[N]) - std::abs(sorted[N - 1]) < tol.degenerate_gap) {
    throw Error(kDegenerate, "modulus gap at the selection boundary collapsed");
  }

  std::vector<Complex> sel(sorted.begin(), sorted.begin() + N);

  Complex strong = sel.back();
  if (!(std::abs(strong.imag()) <= tol.pair_match && strong.real() > 0.0)) {
    throw Error(kDegenerate, "largest selected root is not real positive");
  }
  if (std::abs(strong.real() - rates.gamma_s) >
      tol.root_match * std::max(1.0, rates.gamma_s)) {
    std::ostringstream msg;
    msg << "strong root " << strong.real() << " disagrees with bisected rate "
        << rates.gamma_s;
    throw Error(kDegenerate, msg.str());
  }
  strong = Complex(strong.real(), 0.0);

  for (const Complex& g : sel) {
    if (std::abs(g.imag()) <= tol.pair_match) continue;
    bool paired = false;
    for (const Complex& h : sel) {
      if (std::abs(std::abs(g) - std::abs(h)) <=
              tol.pair_match * (1.0 + std::abs(g)) &&
          std::abs(std::arg(g) + std::arg(h)) <= tol.pair_match) {
        paired = true;
        break;
      }
    }
    if (!paired) {
      std::ostringstream msg;
      msg << "unpaired non-real root " << g;
      throw Error(kDegenerate, msg.str());
    }
  }

  FrontRoots out;
  out.gamma_s = rates.gamma_s;
  out.gamma_w = rates.gamma_w;
  out.gammas.reserve(N);
  out.gammas.push_back(strong);
  for (int i = 0; i + 1 < N; ++i) {
    out.gammas.push_back(sel[i]);
  }

  diophantine(sp.q, N, &out.ell1, &out.ell2);
  out.zetas.reserve(N);
  for (const Complex& g : out.gammas) {
    const Complex z = fractional_root(g, pr, sp, out.ell1, out.ell2);
    if (std::abs(cpow_int(z, sp.q) * g - 1.0) > tol.zeta_identity) {
      throw Error(kInternal, "inverse-root identity zeta^q * gamma = 1 failed");
    }
    if (std::abs(1.0 / cpow_int(z, N) - trinomial_value(g, pr)) >
        tol.zeta_identity * std::abs(trinomial_value(g, pr))) {
      throw Error(kInternal, "inverse-root identity zeta^-N = A failed");
    }
    out.zetas.push_back(z);
  }
  return out;
}

FrontRoots build_front_roots(const Params& pr, const Speed& sp) {
  const DecayPair rates = decay_rates_for_speed(pr, sp);
  const std::vector<Complex> roots = char_roots(pr, sp, 1.0);
  return select_front_roots(roots, rates, pr, sp);
}

}  // namespace vlock
