#include "sanction/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sanction {

namespace {

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

long ceil_with_tol(double x, double tol = 1e-9) {
  return static_cast<long>(std::ceil(x - tol));
}

}  // namespace

double delta_threshold(const MarketParams& m) {
  const double den = m.p * (1.0 + m.alpha) - m.c;
  if (!(den > 0.0))
    throw ValidationError("delta_threshold undefined: p(1+alpha) <= c, cooperation never enforceable");
  return m.p / den;  // below 1 whenever alpha p > c
}

double gamma_bound_raw(const MarketParams& m) {
  if (m.p * m.rho <= m.u * (1.0 - m.alpha))
    return ((1.0 - m.alpha) * (m.p - m.u) + m.p * m.rho) / m.p;
  return m.p * m.rho / m.u;
}

double gamma_bound(const MarketParams& m) { return clamp01(gamma_bound_raw(m)); }

double pi_bar(const MarketParams& m) {
  if (!(m.eps_bar > 0.0)) return std::numeric_limits<double>::infinity();
  const double d = m.delta;
  const double margin = d * (provider_max_ppe_payoff(m) - m.alpha * m.p + m.c);
  const double den = margin + (1.0 - d) * m.eps_bar;
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return (margin + (1.0 - d) * m.p) / den;
}

std::optional<long> n_pi(double mu_star, double pi) {
  if (!(mu_star > 0.0 && mu_star <= 1.0))
    throw ValidationError("n_pi: mu_star must be in (0,1]");
  if (pi >= 1.0) return std::nullopt;
  if (!(pi > 0.0)) throw ValidationError("n_pi: pi must be positive");
  const double r = std::log(mu_star) / std::log(pi);
  return static_cast<long>(std::floor(std::max(0.0, r)));
}

std::optional<long> k_p(const MarketParams& m, double mu_star) {
  const double pb = pi_bar(m);
  if (pb <= 0.0) return 0;  // testing already unprofitable at any belief
  return n_pi(mu_star, pb);
}

double v_hat_c_threshold(const MarketParams& m, long k_p) {
  if (k_p < 1) throw ValidationError("v_hat_c_threshold: k_p must be >= 1");
  const double d = m.delta;
  const double dk1 = std::pow(d, static_cast<double>(k_p - 1));
  return dk1 * m.alpha * (m.u - m.p) - (1.0 - dk1) * (m.p + m.eps) - (1.0 - d) / d * m.eps;
}

double gamma_hat_raw(const MarketParams& m, double v_hat_c) {
  if (v_hat_c >= m.alpha * m.u - m.p) return (m.alpha * (m.u - m.p) - v_hat_c) / m.p;
  return (m.u - m.p - v_hat_c) / m.u;
}

double gamma_hat(const MarketParams& m, double v_hat_c) {
  return clamp01(gamma_hat_raw(m, v_hat_c));
}

ReportingValues reporting_decision_values(const MarketParams& m, long k_p, double v_hat_c) {
  if (k_p < 1) throw ValidationError("reporting_decision_values: k_p must be >= 1");
  const double d = m.delta;
  const double dk1 = std::pow(d, static_cast<double>(k_p - 1));
  ReportingValues v;
  v.report0 = (1.0 - d) * (-m.p - m.eps) + d * (1.0 - dk1) * (-m.p - m.eps) +
              d * dk1 * m.alpha * (m.u - m.p);
  v.report1 = (1.0 - d) * (-m.p) + d * v_hat_c;
  return v;
}

double malicious_nu_bound(const MarketParams& m) {
  if (!(m.eps_bar > 0.0)) return 1.0;  // no deterrent: clamp at certainty
  return clamp01((m.alpha * m.p - m.c) / m.eps_bar);
}

double provider_payoff_under_noise(const MarketParams& m, double nu) {
  return m.alpha * m.p - m.c - nu * m.eps_bar;
}

InterleaveReport interleave_and_lifetimes(const MarketParams& m) {
  InterleaveReport r;
  const double dt = delta_threshold(m);
  r.n_max = static_cast<long>(std::floor(std::log(dt) / std::log(m.delta_hat)));
  r.lifetime_provider = 1.0 / (1.0 - m.delta_hat);
  r.lifetime_client = 1.0 / (1.0 - m.delta);
  r.lifetime_provider_ceil = ceil_with_tol(r.lifetime_provider);
  r.lifetime_client_ceil = ceil_with_tol(r.lifetime_client);
  return r;
}

BoundReport bound_report(const MarketParams& m, std::optional<double> mu_star,
                         std::optional<double> v_hat_c) {
  BoundReport r;
  try {
    r.delta_threshold = delta_threshold(m);
    r.interleave = interleave_and_lifetimes(m);
  } catch (const ValidationError&) {
    // p(1+alpha) <= c: threshold-dependent rows stay empty.
  }
  r.gamma = gamma_bound(m);
  r.gamma_clamped = gamma_bound_raw(m) != r.gamma;
  r.v_p_max = provider_max_ppe_payoff(m);
  r.pi_bar = pi_bar(m);
  r.nu_max = malicious_nu_bound(m);
  r.mu_star = mu_star;
  if (mu_star) {
    r.k_p = k_p(m, *mu_star);
    r.k_p_unbounded = !r.k_p.has_value();
    if (r.k_p && *r.k_p >= 1 && !v_hat_c) v_hat_c = v_hat_c_threshold(m, *r.k_p);
  }
  if (v_hat_c) {
    r.v_hat_c = v_hat_c;
    r.gamma_hat = gamma_hat(m, *v_hat_c);
    if (r.k_p && *r.k_p >= 1)
      r.reporting = reporting_decision_values(m, *r.k_p, *v_hat_c);
  }
  return r;
}

}  // namespace sanction
