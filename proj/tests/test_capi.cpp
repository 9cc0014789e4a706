#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "vlock.h"

static_assert(VLOCK_OK == 0);
static_assert(VLOCK_EINVAL == 1);

TEST_CASE("version and error text are always available") {
  CHECK(vlock_version() != nullptr);
  CHECK(std::string(vlock_version()).find("vlock") != std::string::npos);
  CHECK(vlock_last_error() != nullptr);
}

TEST_CASE("tolerance registry round-trips and rejects unknown names") {
  double before = 0.0;
  REQUIRE(vlock_get_tolerance("fixed_point", &before) == VLOCK_OK);
  CHECK(before == 1e-10);
  REQUIRE(vlock_set_tolerance("fixed_point", 1e-8) == VLOCK_OK);
  double after = 0.0;
  REQUIRE(vlock_get_tolerance("fixed_point", &after) == VLOCK_OK);
  CHECK(after == 1e-8);
  REQUIRE(vlock_set_tolerance("fixed_point", before) == VLOCK_OK);

  CHECK(vlock_set_tolerance("no_such_tolerance", 1.0) == VLOCK_EINVAL);
  CHECK(std::string(vlock_last_error()).find("no_such_tolerance") !=
        std::string::npos);
  CHECK(vlock_set_tolerance(nullptr, 1.0) == VLOCK_EINVAL);
  CHECK(vlock_get_tolerance("fixed_point", nullptr) == VLOCK_EINVAL);
}

TEST_CASE("reproduction follows the piecewise rule and validates r") {
  double out = 0.0;
  REQUIRE(vlock_reproduction(1.2, 0.5, 0.25, &out) == VLOCK_OK);
  CHECK(out == 0.3);
  REQUIRE(vlock_reproduction(1.2, 0.5, 0.5, &out) == VLOCK_OK);
  CHECK(out == 1.0);
  CHECK(vlock_reproduction(0.9, 0.5, 0.25, &out) == VLOCK_EINVAL);
  CHECK(vlock_reproduction(1.2, 0.5, 0.25, nullptr) == VLOCK_EINVAL);
}

TEST_CASE("one generation matches the hand-evaluated update") {
  const double u[3] = {1.0, 0.2, 0.01};
  double next[3] = {0.0, 0.0, 0.0};
  const double r = 1.2, m = 0.1, c = 0.4;
  REQUIRE(vlock_generation(r, m, c, u, 3, 1.0, 0.0, next) == VLOCK_OK);
  // interior site: r * (m/2 u0 + (1-m) u1 + m/2 u2)
  CHECK(next[1] ==
        doctest::Approx(r * (0.05 * 1.0 + 0.9 * 0.2 + 0.05 * 0.01))
            .epsilon(1e-15));
  CHECK(next[0] == 1.0);  // mixed value crosses c with the left clamp at 1
  CHECK(vlock_generation(r, m, c, nullptr, 3, 1.0, 0.0, next) ==
        VLOCK_EINVAL);
  CHECK(vlock_generation(r, m, c, u, 0, 1.0, 0.0, next) == VLOCK_EINVAL);
}

TEST_CASE("linear spreading speed for r=1.1, m=0.1 is near 0.1443") {
  double s_lin = 0.0, gamma_lin = 0.0;
  REQUIRE(vlock_linear_spreading_speed(1.1, 0.1, &s_lin, &gamma_lin) ==
          VLOCK_OK);
  CHECK(s_lin == doctest::Approx(0.1443).epsilon(5e-4 / 0.1443));
  double s_env = 0.0;
  REQUIRE(vlock_envelope_speed(1.1, 0.1, gamma_lin, &s_env) == VLOCK_OK);
  CHECK(s_env == doctest::Approx(s_lin).epsilon(1e-12));
  CHECK(vlock_envelope_speed(1.1, 0.1, 0.0, &s_env) != VLOCK_OK);
  CHECK(vlock_envelope_speed(1.1, 0.1, 1.0, &s_env) != VLOCK_OK);
}

TEST_CASE("decay rates bracket the minimizer and need a supercritical speed") {
  double gs = 0.0, gw = 0.0;
  REQUIRE(vlock_decay_rates(1.2, 0.25, 1, 2, &gs, &gw) == VLOCK_OK);
  CHECK(0.0 < gs);
  CHECK(gs < gw);
  CHECK(gw < 1.0);
  // 1/3 sits below s_lin at this migration rate
  double s_lin = 0.0;
  REQUIRE(vlock_linear_spreading_speed(1.2, 0.45, &s_lin, nullptr) ==
          VLOCK_OK);
  REQUIRE(s_lin > 1.0 / 3.0);
  CHECK(vlock_decay_rates(1.2, 0.45, 1, 3, &gs, &gw) == VLOCK_EDOMAIN);
}

TEST_CASE("largest migration rate for speed one third at r=1.2") {
  double m_star = 0.0;
  int saturated = -1;
  REQUIRE(vlock_m_star(1.2, 1, 3, &m_star, &saturated) == VLOCK_OK);
  CHECK(m_star == doctest::Approx(0.3028320830001048).epsilon(1e-6));
  CHECK(saturated == 0);
}

TEST_CASE("characteristic roots satisfy their polynomial") {
  const double r = 1.3, m = 0.151343;
  const int p = 2, q = 5;
  std::vector<double> re(2 * q), im(2 * q);
  REQUIRE(vlock_char_roots(r, m, p, q, 1.0, 0.0, re.data(), im.data()) ==
          VLOCK_OK);
  const double a = r * m / 2.0, b = r * (1.0 - m);
  for (int i = 0; i < 2 * q; ++i) {
    const std::complex<double> g{re[i], im[i]};
    const std::complex<double> trinomial = a + b * g + a * g * g;
    const std::complex<double> value =
        std::pow(trinomial, q) - std::pow(g, q - p);
    const double scale =
        std::pow(std::abs(trinomial), q) + std::pow(std::abs(g), q - p);
    CHECK(std::abs(value) <= 1e-9 * scale);
  }
}

TEST_CASE("construction roots start with the strong real root") {
  const double r = 1.3, m = 0.151343;
  const int p = 2, q = 5;
  const int n = q - p;
  std::vector<double> g_re(n), g_im(n), z_re(n), z_im(n);
  int ell1 = 0, ell2 = 0;
  double gs = 0.0, gw = 0.0;
  REQUIRE(vlock_front_roots(r, m, p, q, g_re.data(), g_im.data(), z_re.data(),
                            z_im.data(), &ell1, &ell2, &gs, &gw) == VLOCK_OK);
  CHECK(g_im[0] == 0.0);
  CHECK(g_re[0] == doctest::Approx(gs).epsilon(1e-9));
  // zeta^q gamma = 1 for the chosen branch exponents
  CHECK(q * ell1 - n * ell2 == -1);
  for (int j = 0; j < n; ++j) {
    const std::complex<double> g{g_re[j], g_im[j]};
    const std::complex<double> z{z_re[j], z_im[j]};
    CHECK(std::abs(std::pow(z, q) * g - 1.0) < 1e-9);
  }
}

TEST_CASE("front handle reports profile, residual, and positivity") {
  vlock_front* f = nullptr;
  REQUIRE(vlock_front_build(1.3, 0.099174, 0.165853, 1, 3, &f) == VLOCK_OK);
  REQUIRE(f != nullptr);

  int n = 0;
  REQUIRE(vlock_front_count(f, &n) == VLOCK_OK);
  CHECK(n == 2);

  std::vector<double> k_re(n), k_im(n);
  REQUIRE(vlock_front_data(f, nullptr, nullptr, nullptr, nullptr, k_re.data(),
                           k_im.data()) == VLOCK_OK);
  double sum = 0.0;
  for (int j = 0; j < n; ++j) sum += k_re[j];
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<double> s_re(n), s_im(n);
  REQUIRE(vlock_front_coeffs_solve(f, s_re.data(), s_im.data()) == VLOCK_OK);
  double deviation = 0.0;
  REQUIRE(vlock_front_coeff_deviation(f, &deviation) == VLOCK_OK);
  CHECK(deviation < 1e-10);
  double condition = 0.0;
  REQUIRE(vlock_front_condition(f, &condition) == VLOCK_OK);
  CHECK(condition >= 1.0);

  double value = 0.0;
  REQUIRE(vlock_front_profile(f, 0, &value) == VLOCK_OK);
  CHECK(value == 1.0);
  REQUIRE(vlock_front_profile(f, -5, &value) == VLOCK_OK);
  CHECK(value == 1.0);
  REQUIRE(vlock_front_profile(f, 1, &value) == VLOCK_OK);
  CHECK(0.0 < value);
  CHECK(value < 1.0);

  double g1 = 0.0, g2 = 0.0;
  REQUIRE(vlock_front_gamma_sum(f, 1, &g1) == VLOCK_OK);
  REQUIRE(vlock_front_gamma_sum(f, 2, &g2) == VLOCK_OK);
  CHECK(g1 > g2);
  CHECK(vlock_front_gamma_sum(f, -1, &g1) != VLOCK_OK);

  int left = 0, right = 0;
  REQUIRE(vlock_front_window(f, &left, &right) == VLOCK_OK);
  CHECK(right > 3 * 3);

  double residual = 0.0;
  REQUIRE(vlock_front_residual(f, &residual) == VLOCK_OK);
  CHECK(residual < 1e-10);

  int certified = 0, i_star = 0, window_positive = 0;
  REQUIRE(vlock_front_positivity(f, &certified, &i_star, &window_positive) ==
          VLOCK_OK);
  CHECK(certified == 1);

  int ell1 = 0, ell2 = 0;
  REQUIRE(vlock_front_diophantine(f, &ell1, &ell2) == VLOCK_OK);
  CHECK(ell1 == 1);
  CHECK(ell2 == 2);

  vlock_front_free(f);
}

TEST_CASE("front handle calls reject null handles and bad parameters") {
  vlock_front* f = nullptr;
  CHECK(vlock_front_build(1.3, 0.099174, 0.165853, 1, 3, nullptr) ==
        VLOCK_EINVAL);
  CHECK(vlock_front_build(0.8, 0.1, 0.2, 1, 3, &f) == VLOCK_EINVAL);
  CHECK(f == nullptr);
  int n = 0;
  CHECK(vlock_front_count(nullptr, &n) == VLOCK_EINVAL);
  double value = 0.0;
  CHECK(vlock_front_residual(nullptr, &value) == VLOCK_EINVAL);
  vlock_front_free(nullptr);  // must be a no-op
}

TEST_CASE("existence band for r=1.2, m=0.001, speed 1/3") {
  double c_min = 0.0, c_max = 0.0;
  REQUIRE(vlock_c_bounds(1.2, 0.001, 1, 3, &c_min, &c_max) == VLOCK_OK);
  CHECK(c_min / 0.001 == doctest::Approx(1.1008690801200685).epsilon(1e-10));
  CHECK(c_max / 0.001 == doctest::Approx(1.8197220342870197).epsilon(1e-10));
}

TEST_CASE("small-m slopes for speed 1/3 at r=1.2") {
  double lo = 0.0, hi = 0.0;
  REQUIRE(vlock_asymptotic_slopes(1.2, 3, &lo, &hi) == VLOCK_OK);
  CHECK(lo == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(hi == doctest::Approx(1.82).epsilon(1e-15));
  CHECK(vlock_asymptotic_slopes(1.2, 1, &lo, &hi) != VLOCK_OK);
}

TEST_CASE("band width scales linearly in m for speed 1/2 at r=1.2") {
  double exponent = 0.0;
  REQUIRE(vlock_width_scaling_exponent(1.2, 1, 2, 1e-4, 1e-2, 9, &exponent) ==
          VLOCK_OK);
  CHECK(exponent == doctest::Approx(1.0).epsilon(0.1));
  CHECK(vlock_width_scaling_exponent(1.2, 1, 2, 1e-2, 1e-4, 9, &exponent) !=
        VLOCK_OK);
}

TEST_CASE("migration interval of the one-third band at c=0.4") {
  double m_lo = 0.0, m_hi = 0.0;
  int exists = -1;
  REQUIRE(vlock_band_m_interval(1.2, 0.4, 1, 3, &m_lo, &m_hi, &exists) ==
          VLOCK_OK);
  CHECK(exists == 1);
  CHECK(m_lo == doctest::Approx(0.22824385592508634).epsilon(1e-6));
  CHECK(m_hi == doctest::Approx(0.281596963821495).epsilon(1e-6));
  REQUIRE(vlock_band_m_interval(1.2, 0.95, 1, 3, &m_lo, &m_hi, &exists) ==
          VLOCK_OK);
  CHECK(exists == 0);
  CHECK(vlock_band_m_interval(1.2, 1.5, 1, 3, &m_lo, &m_hi, &exists) !=
        VLOCK_OK);
}

TEST_CASE("band sweep handle walks an increasing migration grid") {
  vlock_band* band = nullptr;
  REQUIRE(vlock_band_sweep(1.2, 1, 3, 24, &band) == VLOCK_OK);
  REQUIRE(band != nullptr);
  int n = 0;
  REQUIRE(vlock_band_size(band, &n) == VLOCK_OK);
  CHECK(n == 24);
  double prev = 0.0;
  for (int i = 0; i < n; ++i) {
    double m = 0.0, c_min = 0.0, c_max = 0.0;
    int flags = -1;
    REQUIRE(vlock_band_point(band, i, &m, &c_min, &c_max, &flags) == VLOCK_OK);
    CHECK(m > prev);
    prev = m;
    CHECK(flags == 0);
    CHECK(c_min < c_max);
  }
  double m_star = 0.0;
  int saturated = -1;
  REQUIRE(vlock_band_tip(band, &m_star, &saturated) == VLOCK_OK);
  CHECK(m_star == doctest::Approx(0.3028320830001048).epsilon(1e-6));
  CHECK(saturated == 0);
  double m = 0.0;
  CHECK(vlock_band_point(band, n, &m, nullptr, nullptr, nullptr) ==
        VLOCK_EINVAL);
  vlock_band_free(band);
}

TEST_CASE("spectrum normalization at the strong decay rate") {
  const double r = 1.3, m = 0.151343;
  const int p = 2, q = 5;
  double gs = 0.0, gw = 0.0;
  REQUIRE(vlock_decay_rates(r, m, p, q, &gs, &gw) == VLOCK_OK);
  CHECK(gs == doctest::Approx(0.03788822927938543).epsilon(1e-10));

  double value = 0.0;
  REQUIRE(vlock_lambda_max(r, m, p, q, gs, &value) == VLOCK_OK);
  CHECK(value == doctest::Approx(1.0).epsilon(1e-10));
  REQUIRE(vlock_lambda_max(r, m, p, q, gw, &value) == VLOCK_OK);
  CHECK(value == doctest::Approx(1.0).epsilon(1e-10));

  double re = 0.0, im = 0.0;
  REQUIRE(vlock_spectrum_value(r, m, p, q, 1.0, 0.0, &re, &im) == VLOCK_OK);
  CHECK(re == doctest::Approx(std::pow(1.3, 5)).epsilon(1e-12));
  CHECK(im == 0.0);

  double margin = 0.0, gamma_bar = 0.0;
  REQUIRE(vlock_stability_margin(r, m, p, q, &margin, &gamma_bar) == VLOCK_OK);
  CHECK(margin == doctest::Approx(0.6105154757172637).epsilon(1e-8));
  CHECK(gamma_bar == doctest::Approx(std::sqrt(gs * gw)).epsilon(1e-12));

  CHECK(vlock_lambda_max(r, m, p, q, 1.5, &value) != VLOCK_OK);
}

TEST_CASE("point spectrum scan excludes eigenvalues on and outside the circle") {
  const double radii[2] = {1.0, 1.5};
  vlock_spectrum* scan = nullptr;
  REQUIRE(vlock_point_spectrum_scan(1.3, 0.099174, 1, 3, radii, 2, 16,
                                    &scan) == VLOCK_OK);
  REQUIRE(scan != nullptr);
  int n = 0;
  REQUIRE(vlock_spectrum_size(scan, &n) == VLOCK_OK);
  CHECK(n == 32);
  for (int i = 0; i < n; ++i) {
    double re = 0.0, im = 0.0, min_dist = 0.0;
    int inside = -1, excluded = -1;
    REQUIRE(vlock_spectrum_sample(scan, i, &re, &im, &inside, &excluded,
                                  &min_dist) == VLOCK_OK);
    CHECK(excluded == 1);
    CHECK(inside == 2);
    CHECK(min_dist > 0.0);
  }
  double re = 0.0;
  CHECK(vlock_spectrum_sample(scan, n, &re, nullptr, nullptr, nullptr,
                              nullptr) == VLOCK_EINVAL);
  vlock_spectrum_free(scan);
  CHECK(vlock_point_spectrum_scan(1.3, 0.099174, 1, 3, radii, 0, 16, &scan) ==
        VLOCK_EINVAL);
}

TEST_CASE("simulation measures an exactly locked speed") {
  vlock_sim_config cfg;
  REQUIRE(vlock_sim_config_default(&cfg) == VLOCK_OK);
  CHECK(cfg.lattice_size == 400);
  CHECK(cfg.transient_generations == 10000);
  CHECK(cfg.measure_generations == 10000);
  CHECK(cfg.capacity_seed_width == 3);
  CHECK(cfg.shift_trigger_site == 3);

  cfg.transient_generations = 4000;
  cfg.measure_generations = 2000;
  double speed = 0.0;
  long shifts = 0, generations = 0;
  REQUIRE(vlock_simulate_speed(1.2, 0.5, 0.4, &cfg, &speed, &shifts,
                               &generations) == VLOCK_OK);
  CHECK(speed == 0.5);
  CHECK(shifts == 1000);
  CHECK(generations == 2000);

  int locked = -1;
  REQUIRE(vlock_classify_speed(speed, 1, 2, 0.0, 2000, &locked) == VLOCK_OK);
  CHECK(locked == 1);
  REQUIRE(vlock_classify_speed(speed, 2, 5, 0.0, 2000, &locked) == VLOCK_OK);
  CHECK(locked == 0);
  CHECK(vlock_classify_speed(speed, 1, 2, 0.0, 0, &locked) == VLOCK_EINVAL);

  CHECK(vlock_simulate_speed(1.2, 0.5, 0.4, nullptr, &speed, nullptr,
                             nullptr) == VLOCK_EINVAL);
  cfg.lattice_size = 10;
  CHECK(vlock_simulate_speed(1.2, 0.5, 0.4, &cfg, &speed, nullptr, nullptr) ==
        VLOCK_EINVAL);
  CHECK(std::strlen(vlock_last_error()) > 0);
}
