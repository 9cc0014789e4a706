#include "model.hpp"

namespace vlock {

double reproduction(double u, const Params& pr) {
  if (u < 0.0) {
    throw Error(kInvalid, "reproduction input must be nonnegative");
  }
  return u >= pr.c ? 1.0 : pr.r * u;
}

void generation_into(const double* u, double* out, int n, const Params& pr,
                     double left, double right) {
  const double half = pr.m / 2.0;
  const double stay = 1.0 - pr.m;
  for (int i = 0; i < n; ++i) {
    const double lo = i > 0 ? u[i - 1] : left;
    const double hi = i + 1 < n ? u[i + 1] : right;
    const double w = half * lo + stay * u[i] + half * hi;
    out[i] = w >= pr.c ? 1.0 : pr.r * w;
  }
}

std::vector<double> generation(const std::vector<double>& u, const Params& pr,
                               double left, double right) {
  std::vector<double> out(u.size());
  generation_into(u.data(), out.data(), static_cast<int>(u.size()), pr, left,
                  right);
  return out;
}

std::vector<double> locked_map(const std::vector<double>& u, const Params& pr,
                               const Speed& sp, double left, double right) {
  const int n = static_cast<int>(u.size());
  if (n < sp.q + sp.p + 1) {
    throw Error(kWindow, "window shorter than the q-generation stencil plus shift");
  }
  std::vector<double> cur = u;
  std::vector<double> next(u.size());
  for (int t = 0; t < sp.q; ++t) {
    generation_into(cur.data(), next.data(), n, pr, left, right);
    cur.swap(next);
  }
  std::vector<double> shifted(u.size());
  for (int i = 0; i < n; ++i) {
    shifted[i] = i + sp.p < n ? cur[i + sp.p] : right;
  }
  return shifted;
}

}  // namespace vlock
