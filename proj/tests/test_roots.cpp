#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "root_engine.hpp"

using vlock::Complex;
using vlock::Params;
using vlock::Speed;

namespace {

Params params(double r, double m) { return Params{r, m, 1.0 / r}; }

}  // namespace

TEST_CASE("trinomial expansion sums to r^q at gamma = 1") {
  for (int q : {2, 3, 5, 8, 20}) {
    const Params pr = params(1.2, 0.3);
    const auto coeffs = vlock::trinomial_coefficients(pr, q);
    REQUIRE(static_cast<int>(coeffs.size()) == 2 * q + 1);
    const double sum = std::accumulate(coeffs.begin(), coeffs.end(), 0.0);
    CHECK(sum == doctest::Approx(std::pow(1.2, q)).epsilon(1e-12));
    // palindromic: the two outer growth terms carry the same factor
    for (int k = 0; k <= 2 * q; ++k) {
      CHECK(coeffs[k] == doctest::Approx(coeffs[2 * q - k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("integer multinomials match the closed binomial product") {
  CHECK(vlock::trinomial_multinomial(3, 2, 1) == 3);
  CHECK(vlock::trinomial_multinomial(2, 2, 0) == 1);
  CHECK(vlock::trinomial_multinomial(2, 2, 1) == 2);
  CHECK(vlock::trinomial_multinomial(20, 20, 10) == 184756);
}

TEST_CASE("characteristic roots carry small residuals and contain gamma_s") {
  const Params pr = params(1.2, 0.1);
  const Speed sp{1, 3};
  const auto rates = vlock::decay_rates_for_speed(pr, sp);
  const auto roots = vlock::char_roots(pr, sp, 1.0);
  REQUIRE(static_cast<int>(roots.size()) == 2 * sp.q);
  double best = 1e9;
  for (const Complex& g : roots) {
    CHECK(vlock::char_residual(g, 1.0, pr, sp) <= 1e-9);
    best = std::min(best, std::abs(g - Complex{rates.gamma_s, 0.0}));
  }
  CHECK(best <= 1e-10 * std::max(1.0, rates.gamma_s));
}

TEST_CASE("speed 1/2 keeps a single real root inside the strong disk") {
  const Params pr = params(1.2, 0.25);
  const Speed sp{1, 2};
  const auto rates = vlock::decay_rates_for_speed(pr, sp);
  const auto roots = vlock::char_roots(pr, sp, 1.0);
  int inside = 0;
  for (const Complex& g : roots) {
    if (std::abs(g) <= rates.gamma_s * (1.0 + 1e-9)) ++inside;
  }
  CHECK(inside == 1);
  const auto sel = vlock::select_front_roots(roots, rates, pr, sp);
  REQUIRE(sel.gammas.size() == 1);
  CHECK(sel.gammas[0].imag() == 0.0);
  CHECK(sel.gammas[0].real() ==
        doctest::Approx(0.03203616604905809).epsilon(1e-9));
}

TEST_CASE("speed 1/3 selection orders the negative root second") {
  const Params pr = params(1.3, 0.099174);
  const Speed sp{1, 3};
  const auto sel = vlock::select_front_roots(
      vlock::char_roots(pr, sp, 1.0), vlock::decay_rates_for_speed(pr, sp),
      pr, sp);
  REQUIRE(sel.gammas.size() == 2);
  const double g1 = sel.gammas[0].real();
  const double g2 = sel.gammas[1].real();
  CHECK(g1 > 0.0);
  CHECK(g2 < 0.0);
  CHECK(-g2 < g1);
  CHECK(sel.gammas[0].imag() == 0.0);
  CHECK(std::abs(sel.gammas[1].imag()) <= 1e-12);
}

TEST_CASE("selected roots close under conjugation across random draws") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int done = 0;
  while (done < 40) {
    const double r = 1.05 + unit(rng) * 0.85;
    const int q = 2 + static_cast<int>(unit(rng) * 11);
    const int p = 1 + static_cast<int>(unit(rng) * (q - 1));
    if (std::gcd(p, q) != 1 || p >= q) continue;
    const Speed sp{p, q};
    double ms = 0.0;
    try {
      ms = vlock::m_star(r, sp);
    } catch (const vlock::Error&) {
      continue;
    }
    const double m = (0.05 + 0.9 * unit(rng)) * ms;
    const Params pr = params(r, m);
    vlock::FrontRoots sel;
    try {
      sel = vlock::build_front_roots(pr, sp);
    } catch (const vlock::Error&) {
      continue;  // tip-adjacent draws may be degenerate
    }
    ++done;
    REQUIRE(static_cast<int>(sel.gammas.size()) == sp.N());
    for (const Complex& g : sel.gammas) {
      if (std::abs(g.imag()) <= 1e-12) continue;
      bool paired = false;
      for (const Complex& h : sel.gammas) {
        if (std::abs(std::conj(g) - h) <= 1e-8 * (1.0 + std::abs(g))) {
          paired = true;
        }
      }
      CHECK(paired);
    }
    for (size_t j = 0; j < sel.zetas.size(); ++j) {
      CHECK(std::abs(vlock::cpow_int(sel.zetas[j], sp.q) * sel.gammas[j] -
                     1.0) <= 1e-10);
    }
  }
}

TEST_CASE("branch exponents solve q*ell1 - N*ell2 = -1 minimally") {
  int l1 = 0, l2 = 0;
  vlock::diophantine(3, 2, &l1, &l2);
  CHECK(l1 == 1);
  CHECK(l2 == 2);
  vlock::diophantine(5, 3, &l1, &l2);
  CHECK(l1 == 1);
  CHECK(l2 == 2);
  vlock::diophantine(8, 5, &l1, &l2);
  CHECK(l1 == 3);
  CHECK(l2 == 5);
  vlock::diophantine(7, 2, &l1, &l2);
  CHECK(l1 == 1);
  CHECK(l2 == 4);
  vlock::diophantine(19, 2, &l1, &l2);
  CHECK(l1 == 1);
  CHECK(l2 == 10);
  vlock::diophantine(5, 1, &l1, &l2);
  CHECK(l1 == 1);
  CHECK(l2 == 6);
  CHECK_THROWS_AS(vlock::diophantine(6, 3, &l1, &l2), vlock::Error);
}

TEST_CASE("inverse roots respect conjugation and the real branch") {
  const Params pr = params(1.3, 0.151343);
  const Speed sp{2, 5};
  const auto sel = vlock::build_front_roots(pr, sp);
  REQUIRE(sel.gammas.size() == 3);
  CHECK(sel.zetas[0].imag() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(sel.zetas[0].real() > 0.0);
  for (size_t i = 0; i < sel.gammas.size(); ++i) {
    if (std::abs(sel.gammas[i].imag()) <= 1e-12) continue;
    const Complex direct = vlock::fractional_root(
        std::conj(sel.gammas[i]), pr, sp, sel.ell1, sel.ell2);
    CHECK(std::abs(direct - std::conj(sel.zetas[i])) <= 1e-12);
  }
}

TEST_CASE("speed 1/3 inverse roots follow the small-m expansions") {
  const double m = 1e-4;
  const Params pr = params(1.2, m);
  const Speed sp{1, 3};
  const auto sel = vlock::build_front_roots(pr, sp);
  const double a = pr.a();
  const double b = pr.b();
  const double z1_leading = 1.0 / std::sqrt(a) - b / 2.0;
  const double z2_leading = -1.0 / std::sqrt(a) - b / 2.0;
  CHECK(sel.zetas[0].real() ==
        doctest::Approx(z1_leading).epsilon(1e-3));
  CHECK(sel.zetas[1].real() ==
        doctest::Approx(z2_leading).epsilon(1e-3));
}
