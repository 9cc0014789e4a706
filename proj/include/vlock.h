/* vlock - velocity-locked invasion fronts in a lattice population model.
 *
 * C interface to the vlock shared library.  All functions return a status
 * code (VLOCK_OK on success); results are written through out-pointers.
 * On failure vlock_last_error() describes what went wrong (thread-local).
 *
 * Handles returned by *_build / *_sweep / *_scan own their data and must be
 * released with the matching *_free.  All computations are deterministic.
 */
#ifndef VLOCK_H
#define VLOCK_H

/* The library is compiled with hidden visibility; this marks the exported
 * surface. */
#ifndef VLOCK_API
#if defined(__GNUC__)
#define VLOCK_API __attribute__((visibility("default")))
#else
#define VLOCK_API
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define VLOCK_OK 0          /* success */
#define VLOCK_EINVAL 1      /* invalid argument or parameter record */
#define VLOCK_EDOMAIN 2     /* parameters outside the regime of the operation */
#define VLOCK_EDEGENERATE 3 /* degenerate configuration (tongue tip, root collision) */
#define VLOCK_ECONVERGE 4   /* iteration failed to reach tolerance */
#define VLOCK_EWINDOW 5     /* window too small for the requested evaluation */
#define VLOCK_ESIM 6        /* simulation failure (front hit the boundary, runaway) */
#define VLOCK_EINTERNAL 7   /* internal consistency check failed */

/* Message for the most recent failure on this thread. Never NULL. */
VLOCK_API const char* vlock_last_error(void);

/* Library version string. */
VLOCK_API const char* vlock_version(void);

/* Named tolerance registry.  Known names: root_residual, imag_residue,
 * coeff_cross, fixed_point, bisection, degenerate_gap, pair_match,
 * root_match, inside_slack, spectrum_unit, zeta_identity.
 * Setting affects subsequent calls on all threads. */
VLOCK_API int vlock_set_tolerance(const char* name, double value);
VLOCK_API int vlock_get_tolerance(const char* name, double* value);

/* ---- model ---- */

/* Piecewise-linear reproduction: r*u below c, 1 at or above c. */
VLOCK_API int vlock_reproduction(double r, double c, double u, double* out);

/* One synchronous generation on a window of n sites with boundary clamps. */
VLOCK_API int vlock_generation(double r, double m, double c, const double* u,
                               int n, double left, double right, double* out);

/* ---- linear analysis ---- */

/* Envelope speed of the decaying exponential with rate gamma in (0,1). */
VLOCK_API int vlock_envelope_speed(double r, double m, double gamma,
                                   double* s_env);

/* Linear spreading speed: minimum of the envelope speed over (0,1). */
VLOCK_API int vlock_linear_spreading_speed(double r, double m, double* s_lin,
                                           double* gamma_lin);

/* Strong/weak decay rates at which the envelope speed equals p/q.
 * Requires p/q > s_lin(r, m). */
VLOCK_API int vlock_decay_rates(double r, double m, int p, int q,
                                double* gamma_s, double* gamma_w);

/* Largest migration rate at which a speed-p/q front exists.
 * saturated is set to 1 when the admissible m range ends before s_lin
 * reaches p/q (m_star = min(1, 2/r)). */
VLOCK_API int vlock_m_star(double r, int p, int q, double* m_star,
                           int* saturated);

/* ---- roots ---- */

/* All 2q roots of (a + b g + a g^2)^q - lambda g^(q-p).
 * roots_re/roots_im must hold 2q entries. */
VLOCK_API int vlock_char_roots(double r, double m, int p, int q,
                               double lambda_re, double lambda_im,
                               double* roots_re, double* roots_im);

/* The q-p construction roots (strong real root first, then by modulus and
 * argument) together with their q-th inverse roots and the branch exponents.
 * Arrays must hold q-p entries; any out-pointer may be NULL. */
VLOCK_API int vlock_front_roots(double r, double m, int p, int q,
                                double* gammas_re, double* gammas_im,
                                double* zetas_re, double* zetas_im, int* ell1,
                                int* ell2, double* gamma_s, double* gamma_w);

/* ---- front construction ---- */

typedef struct vlock_front vlock_front;

/* Builds the speed-p/q locked front at (r, m, c): roots, coefficients,
 * profile window, fixed-point residual, and positivity certificate. */
VLOCK_API int vlock_front_build(double r, double m, double c, int p, int q,
                                vlock_front** out);
VLOCK_API void vlock_front_free(vlock_front* f);

/* Number of construction roots N = q - p. */
VLOCK_API int vlock_front_count(const vlock_front* f, int* n);

/* Component arrays, each of length N.  Any pointer may be NULL. */
VLOCK_API int vlock_front_data(const vlock_front* f, double* gammas_re,
                               double* gammas_im, double* zetas_re,
                               double* zetas_im, double* ks_re,
                               double* ks_im);

/* Coefficients from the direct linear solve (cross-check path). */
VLOCK_API int vlock_front_coeffs_solve(const vlock_front* f, double* ks_re,
                                       double* ks_im);

/* Max relative deviation between product-formula and solved coefficients. */
VLOCK_API int vlock_front_coeff_deviation(const vlock_front* f, double* rel);

/* Condition estimate of the coefficient system (1 when N == 1). */
VLOCK_API int vlock_front_condition(const vlock_front* f, double* cond);

/* Gamma_n: the weighted root-power sum at fractional exponent n/q, n >= 0. */
VLOCK_API int vlock_front_gamma_sum(const vlock_front* f, int n,
                                    double* value);

/* Profile value at lattice site i (1 for i <= 0, the root expansion else). */
VLOCK_API int vlock_front_profile(const vlock_front* f, int i, double* value);

/* Profile window bounds used at build time. */
VLOCK_API int vlock_front_window(const vlock_front* f, int* left, int* right);

/* Sup-norm residual of the front under q generations + p-site shift. */
VLOCK_API int vlock_front_residual(const vlock_front* f, double* sup);

/* Positivity: certified = 1 when the tail dominance bound holds from
 * i_star on and all earlier profile values checked positive; when the
 * certificate is unavailable, certified = 0 and window_positive reports
 * the explicit window check. */
VLOCK_API int vlock_front_positivity(const vlock_front* f, int* certified,
                                     int* i_star, int* window_positive);

/* Branch exponents used for the q-th inverse roots. */
VLOCK_API int vlock_front_diophantine(const vlock_front* f, int* ell1,
                                      int* ell2);

/* ---- locking regions ---- */

/* Existence band in c at fixed (r, m) for speed p/q. */
VLOCK_API int vlock_c_bounds(double r, double m, int p, int q, double* c_min,
                             double* c_max);

/* Closed-form small-m slopes of c_min and c_max for speed 1/q. */
VLOCK_API int vlock_asymptotic_slopes(double r, int q, double* c_min_slope,
                                      double* c_max_slope);

/* Least-squares slope of log(c_max - c_min) vs log(m) on a log-spaced grid. */
VLOCK_API int vlock_width_scaling_exponent(double r, int p, int q,
                                           double m_lo, double m_hi,
                                           int points, double* exponent);

/* m-interval of the speed-p/q band at fixed c; exists = 0 when the band
 * never contains c. */
VLOCK_API int vlock_band_m_interval(double r, double c, int p, int q,
                                    double* m_lo, double* m_hi, int* exists);

typedef struct vlock_band vlock_band;

#define VLOCK_BAND_DEGENERATE 1 /* point failed to evaluate */
#define VLOCK_BAND_CAPPED 2     /* c_max exceeds 1/r */

/* Sweeps c_min/c_max over an m grid from near 0 to near m_star. */
VLOCK_API int vlock_band_sweep(double r, int p, int q, int m_count,
                               vlock_band** out);
VLOCK_API void vlock_band_free(vlock_band* b);
VLOCK_API int vlock_band_size(const vlock_band* b, int* n);
VLOCK_API int vlock_band_point(const vlock_band* b, int i, double* m,
                               double* c_min, double* c_max, int* flags);
VLOCK_API int vlock_band_tip(const vlock_band* b, double* m_star,
                             int* saturated);

/* ---- spectral ---- */

/* Linearization symbol at wavenumber k in the weight gamma_bar. */
VLOCK_API int vlock_spectrum_value(double r, double m, int p, int q,
                                   double gamma_bar, double k, double* re,
                                   double* im);

/* Largest modulus over the spectrum curve (attained at k = 0). */
VLOCK_API int vlock_lambda_max(double r, double m, int p, int q,
                               double gamma_bar, double* value);

/* 1 - lambda_max at the geometric-mean weight between the decay rates. */
VLOCK_API int vlock_stability_margin(double r, double m, int p, int q,
                                     double* margin, double* gamma_bar);

typedef struct vlock_spectrum vlock_spectrum;

/* Point-spectrum exclusion scan over rings of lambda samples.
 * radii: n_radii moduli >= 1; angles: samples per ring. */
VLOCK_API int vlock_point_spectrum_scan(double r, double m, int p, int q,
                                        const double* radii, int n_radii,
                                        int angles, vlock_spectrum** out);
VLOCK_API void vlock_spectrum_free(vlock_spectrum* s);
VLOCK_API int vlock_spectrum_size(const vlock_spectrum* s, int* n);
/* excluded = 1 when exactly N roots lie inside the reference disk and they
 * are pairwise distinct; inside_count and min_dist report the evidence. */
VLOCK_API int vlock_spectrum_sample(const vlock_spectrum* s, int i,
                                    double* lambda_re, double* lambda_im,
                                    int* inside_count, int* excluded,
                                    double* min_dist);

/* ---- simulation ---- */

typedef struct {
  int lattice_size;           /* number of sites, >= 50 */
  int transient_generations;  /* discarded before measuring, >= 0 */
  int measure_generations;    /* counted generations, >= 1 */
  int capacity_seed_width;    /* leading sites initialized to 1 */
  int shift_trigger_site;     /* window shifts when this site reaches 1 */
} vlock_sim_config;

/* Fills cfg with the defaults (400 sites, 10000+10000 generations,
 * 3-site seed, trigger at index 3). */
VLOCK_API int vlock_sim_config_default(vlock_sim_config* cfg);

/* Domain-shifting speed measurement.  shifts/generations may be NULL. */
VLOCK_API int vlock_simulate_speed(double r, double m, double c,
                                   const vlock_sim_config* cfg, double* speed,
                                   long* shifts, long* generations);

/* Locked-at-p/q test.  tol <= 0 selects the counting-resolution default
 * 1/(2*measure_generations). */
VLOCK_API int vlock_classify_speed(double measured, int p, int q, double tol,
                                   int measure_generations, int* locked);

#ifdef __cplusplus
}
#endif

#endif /* VLOCK_H */
