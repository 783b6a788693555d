#ifndef SANCTION_TEST_UTIL_HPP
#define SANCTION_TEST_UTIL_HPP

#include <cmath>

#include "sanction/params.hpp"
#include "sanction/rng.hpp"

namespace sanction::testutil {

// Absolute-tolerance comparison; doctest's Approx is relative-only.
inline bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

// Random market with a viable cooperative region: alpha(u-p) > u - p(1+rho)
// and alpha p > c by construction.
inline MarketParams random_viable_params(Rng& rng) {
  const double p = 0.5 + 1.5 * rng.u01();
  const double u = p * (1.2 + 1.3 * rng.u01());
  const double alpha = 0.7 + 0.295 * rng.u01();
  const double c = alpha * p * (0.1 + 0.7 * rng.u01());
  const double rho_min = (u - p) * (1.0 - alpha) / p;
  const double rho = rho_min * 1.05 + 0.4 * rng.u01() + 1e-3;
  const double eps = 0.05 * p * rng.u01();
  const double eps_bar = 3.0 * p * rng.u01();
  const double delta = 0.5 + 0.45 * rng.u01();
  const double n = 1.0 + std::floor(10.0 * rng.u01());
  const double delta_hat = std::pow(delta, 1.0 / n);
  return MarketParams::validated(p, u, c, alpha, rho, eps, eps_bar, delta_hat, n, delta);
}

// Unconstrained (possibly non-viable) market, still satisfying the hard
// constructor invariants. rho stays below u/p so the outside option is never
// dominated by paying for nothing.
inline MarketParams random_params(Rng& rng) {
  const double p = 0.2 + 2.0 * rng.u01();
  const double u = 0.2 + 3.0 * rng.u01();
  const double alpha = 0.05 + 0.9 * rng.u01();
  const double c = alpha * p * (0.95 * rng.u01());
  const double rho = std::min(0.6, 0.9 * u / p) * rng.u01();
  const double eps = 0.1 * rng.u01();
  const double eps_bar = 3.0 * rng.u01();
  const double delta = 0.1 + 0.85 * rng.u01();
  return MarketParams::validated(p, u, c, alpha, rho, eps, eps_bar, delta, 1.0, delta);
}

}  // namespace sanction::testutil

#endif
