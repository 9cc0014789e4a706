#include "front_builder.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "model.hpp"

namespace vlock {

namespace {

constexpr double kCoeffSumTol = 1e-12;
constexpr int kCertificateCap = 200000;

int default_left(const Speed& sp) { return sp.q + 2; }
int default_right(const Speed& sp) { return std::max(40, 4 * sp.q); }

double real_checked(Complex z, const char* what) {
  if (std::abs(z.imag()) > tolerances().imag_residue) {
    std::ostringstream msg;
    msg << what << " has imaginary residue " << z.imag();
    throw Error(kInternal, msg.str());
  }
  return z.real();
}

}  // namespace

void solve_coefficients(const FrontRoots& roots, std::vector<Complex>* ks,
                        std::vector<Complex>* ks_solve, double* deviation,
                        double* condition) {
  const int N = static_cast<int>(roots.zetas.size());
  if (N == 1) {
    *ks = {1.0};
    *ks_solve = {1.0};
    *deviation = 0.0;
    *condition = 1.0;
    return;
  }
  const std::vector<Complex>& z = roots.zetas;
  double min_dist = std::abs(z[1] - z[0]);
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      min_dist = std::min(min_dist, std::abs(z[i] - z[j]));
    }
  }
  if (min_dist <= tolerances().degenerate_gap) {
    std::ostringstream msg;
    msg << "near-coincident inverse roots, min pairwise distance " << min_dist;
    throw Error(kDegenerate, msg.str());
  }

  ks->assign(N, 1.0);
  for (int j = 0; j < N; ++j) {
    for (int n = 0; n < N; ++n) {
      if (n == j) continue;
      (*ks)[j] *= (z[n] - 1.0) / (z[n] - z[j]);
    }
  }

  Eigen::MatrixXcd V(N, N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      V(i, j) = cpow_int(z[j], i);
    }
  }
  const Eigen::VectorXcd rhs = Eigen::VectorXcd::Ones(N);
  const Eigen::VectorXcd sol = V.partialPivLu().solve(rhs);
  ks_solve->resize(N);
  double max_k = 0.0;
  double max_diff = 0.0;
  for (int j = 0; j < N; ++j) {
    (*ks_solve)[j] = sol(j);
    max_k = std::max(max_k, std::abs((*ks)[j]));
    max_diff = std::max(max_diff, std::abs((*ks)[j] - sol(j)));
  }
  *deviation = max_diff / max_k;

  *condition = 1.0;
  if (N > 8) {
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V);
    const auto& sv = svd.singularValues();
    *condition = sv(0) / sv(N - 1);
  }
}

double gamma_sum(const FrontCore& core, int n) {
  if (n < 0) {
    throw Error(kInvalid, "gamma sum index must be nonnegative");
  }
  const int q = core.speed.q;
  const int d = n / q;
  const int rem = n % q;
  Complex sum = 0.0;
  for (size_t j = 0; j < core.ks.size(); ++j) {
    const Complex frac = cpow_int(core.roots.zetas[j], rem);
    sum += core.ks[j] * cpow_int(core.roots.gammas[j], d) / frac;
  }
  return real_checked(sum, "gamma sum");
}

FrontCore build_front_core(const Params& pr, const Speed& sp) {
  validate_speed(sp);
  require_front_params(pr);
  FrontCore core;
  core.params = pr;
  core.speed = sp;
  core.roots = build_front_roots(pr, sp);
  solve_coefficients(core.roots, &core.ks, &core.ks_solve,
                     &core.coeff_deviation, &core.condition);

  Complex sum = 0.0;
  for (const Complex& k : core.ks) sum += k;
  if (std::abs(sum - 1.0) > kCoeffSumTol) {
    std::ostringstream msg;
    msg << "coefficient sum " << sum << " deviates from 1";
    throw Error(kInternal, msg.str());
  }
  const double pair_tol = tolerances().pair_match;
  for (size_t i = 0; i < core.ks.size(); ++i) {
    if (std::abs(core.ks[i].imag()) <= pair_tol) continue;
    bool paired = false;
    for (size_t j = 0; j < core.ks.size(); ++j) {
      if (std::abs(core.ks[i] - std::conj(core.ks[j])) <=
          pair_tol * (1.0 + std::abs(core.ks[i]))) {
        paired = true;
        break;
      }
    }
    if (!paired) {
      throw Error(kInternal, "coefficient conjugate pairing failed");
    }
  }

  core.gamma_sums.resize(3 * sp.q + 2);
  for (int n = 0; n < static_cast<int>(core.gamma_sums.size()); ++n) {
    core.gamma_sums[n] = gamma_sum(core, n);
  }
  for (int n = 1; n + 1 < static_cast<int>(core.gamma_sums.size()); ++n) {
    if (!(core.gamma_sums[n + 1] < core.gamma_sums[n] &&
          core.gamma_sums[n + 1] > 0.0)) {
      std::ostringstream msg;
      msg << "power sums not strictly decreasing at n = " << n;
      throw Error(kInternal, msg.str());
    }
  }
  return core;
}

double profile_value(const FrontCore& core, int i) {
  if (i <= 0) return 1.0;
  Complex sum = 0.0;
  for (size_t j = 0; j < core.ks.size(); ++j) {
    sum += core.ks[j] * cpow_int(core.roots.gammas[j], i);
  }
  return real_checked(sum, "profile value");
}

double fixed_point_residual(const FrontCore& core, double c, int left,
                            int right) {
  const Speed& sp = core.speed;
  if (left == 0 && right == 0) {
    left = default_left(sp);
    right = default_right(sp);
  }
  if (left < 1 || right < sp.q + sp.p + 1) {
    throw Error(kWindow, "residual window too small for the locked map");
  }
  Params pr = core.params;
  pr.c = c;
  validate_params(pr);

  const int n = left + right + 1;
  std::vector<double> u(n);
  for (int i = -left; i <= right; ++i) {
    u[i + left] = profile_value(core, i);
  }

  // Per-generation multipliers of each tail mode: one generation scales
  // the gamma_j^i term by A_j / gamma_j while the tail stays subcritical.
  const int N = sp.N();
  std::vector<Complex> mu(N), mu_pow(N, 1.0);
  for (int j = 0; j < N; ++j) {
    const Complex g = core.roots.gammas[j];
    const Complex A = pr.a() + pr.b() * g + pr.a() * g * g;
    mu[j] = A / g;
  }

  std::vector<double> cur = u;
  std::vector<double> next(u.size());
  for (int t = 0; t < sp.q; ++t) {
    Complex tail = 0.0;
    for (int j = 0; j < N; ++j) {
      tail += core.ks[j] * mu_pow[j] * cpow_int(core.roots.gammas[j], right + 1);
    }
    const double clamp = real_checked(tail, "tail clamp");
    if (!(clamp < pr.c)) {
      throw Error(kWindow, "window tail reaches the critical density");
    }
    generation_into(cur.data(), next.data(), n, pr, 1.0, clamp);
    cur.swap(next);
    for (int j = 0; j < N; ++j) mu_pow[j] *= mu[j];
  }

  double sup = 0.0;
  for (int i = -left; i <= right - sp.q - sp.p; ++i) {
    sup = std::max(sup, std::abs(cur[i + sp.p + left] - u[i + left]));
  }
  return sup;
}

PositivityCertificate positivity_certificate(const FrontCore& core,
                                             int window_right) {
  PositivityCertificate cert;
  const int N = static_cast<int>(core.ks.size());
  const double k1 = core.ks[0].real();
  const double g1 = core.roots.gammas[0].real();

  auto window_check = [&]() {
    for (int i = 1; i <= window_right; ++i) {
      if (!(profile_value(core, i) > 0.0)) return false;
    }
    return true;
  };

  if (N == 1) {
    cert.certified = k1 > 0.0;
    cert.i_star = 1;
    cert.window_positive = cert.certified || window_check();
    return cert;
  }

  double rho_max = 0.0;
  for (int j = 1; j < N; ++j) {
    rho_max = std::max(rho_max, std::abs(core.roots.gammas[j]) / g1);
  }
  if (!(k1 > 0.0) || !(rho_max < 1.0)) {
    cert.certified = false;
    cert.window_positive = window_check();
    return cert;
  }

  // Smallest i with sum_{j>=2} |k_j| (|gamma_j|/gamma_1)^i < k_1: from
  // there on the strong mode dominates and the tail is positive.
  std::vector<double> rho(N), rho_pow(N);
  for (int j = 1; j < N; ++j) {
    rho[j] = std::abs(core.roots.gammas[j]) / g1;
    rho_pow[j] = rho[j];
  }
  int i_star = -1;
  for (int i = 1; i <= kCertificateCap; ++i) {
    double bound = 0.0;
    for (int j = 1; j < N; ++j) bound += std::abs(core.ks[j]) * rho_pow[j];
    if (bound < k1) {
      i_star = i;
      break;
    }
    for (int j = 1; j < N; ++j) rho_pow[j] *= rho[j];
  }
  if (i_star < 0) {
    cert.certified = false;
    cert.window_positive = window_check();
    return cert;
  }

  // Explicit positivity below the certified index, in the scaled form
  // sum_j k_j (gamma_j/gamma_1)^i to avoid underflow of gamma_1^i.
  std::vector<Complex> scaled(N), scaled_pow(N);
  for (int j = 0; j < N; ++j) {
    scaled[j] = core.roots.gammas[j] / g1;
    scaled_pow[j] = scaled[j];
  }
  for (int i = 1; i <= i_star; ++i) {
    Complex sum = 0.0;
    for (int j = 0; j < N; ++j) sum += core.ks[j] * scaled_pow[j];
    if (!(sum.real() > 0.0)) {
      std::ostringstream msg;
      msg << "profile nonpositive at site " << i;
      throw Error(kInternal, msg.str());
    }
    for (int j = 0; j < N; ++j) scaled_pow[j] *= scaled[j];
  }
  cert.certified = true;
  cert.i_star = i_star;
  cert.window_positive = true;
  return cert;
}

Front build_front(const Params& pr, const Speed& sp) {
  validate_params(pr);
  Front front;
  front.core = build_front_core(pr, sp);
  front.c = pr.c;
  front.left = default_left(sp);
  front.right = default_right(sp);
  front.phi.resize(front.left + front.right + 1);
  for (int i = -front.left; i <= front.right; ++i) {
    const double v = profile_value(front.core, i);
    if (i >= 1 && !(v < 1.0)) {
      std::ostringstream msg;
      msg << "profile not below capacity at site " << i;
      throw Error(kInternal, msg.str());
    }
    front.phi[i + front.left] = v;
  }
  front.residual = fixed_point_residual(front.core, pr.c, front.left,
                                        front.right);
  front.positivity = positivity_certificate(front.core, front.right);
  return front;
}

}  // namespace vlock
