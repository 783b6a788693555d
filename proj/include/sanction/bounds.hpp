#ifndef SANCTION_BOUNDS_HPP
#define SANCTION_BOUNDS_HPP

#include <optional>

#include "sanction/stage_game.hpp"

namespace sanction {

// Discount factor above which the grim cooperative profile is an equilibrium:
// p / (p(1+alpha) - c). Throws ValidationError when p(1+alpha) <= c, in which
// case cooperation is never enforceable by this profile.
double delta_threshold(const MarketParams& m);

// Prop.-3 ceiling on the discount-weighted share of false (positive) reports
// the mechanism can record in any PPE, before reputation building:
//   p*rho <= u(1-alpha) : ((1-alpha)(p-u) + p*rho) / p
//   otherwise           : p*rho / u
// Negative values mean "no cheating supportable" and clamp to 0.
double gamma_bound(const MarketParams& m);
double gamma_bound_raw(const MarketParams& m);

// Belief threshold above which testing the client is unprofitable:
//   [d(Vp_max - alpha p + c) + (1-d)p] / [d(Vp_max - alpha p + c) + (1-d)eb]
// Strictly below 1 iff eps_bar > p; values >= 1 mean testing is never
// deterred and k_p is unbounded.
double pi_bar(const MarketParams& m);

// floor(ln mu_star / ln pi): rounds of sanctioned low quality before the next
// one is expected sanctioned with probability above pi. nullopt = unbounded
// (pi >= 1).
std::optional<long> n_pi(double mu_star, double pi);

// Ceiling on low-quality deliveries against a client who always reports
// honestly, given prior commitment mass mu_star. nullopt = unbounded.
std::optional<long> k_p(const MarketParams& m, double mu_star);

// Continuation payoff above which a client prefers to tolerate low quality
// rather than build a reporting reputation:
//   d^(k-1) alpha(u-p) - (1 - d^(k-1))(p+eps) - ((1-d)/d) eps
double v_hat_c_threshold(const MarketParams& m, long k_p);

// Reputation-refined false-report ceiling for equilibria granting the client
// at least v_hat_c:
//   v_hat_c >= alpha u - p : (alpha(u-p) - v_hat_c) / p
//   otherwise              : (u - p - v_hat_c) / u
// Clamped to [0,1]; v_hat_c above alpha(u-p) yields 0.
double gamma_hat(const MarketParams& m, double v_hat_c);
double gamma_hat_raw(const MarketParams& m, double v_hat_c);

// Client value of reporting 0 (build a reputation, worst case k_p punishment
// rounds) versus reporting 1 (reveal rationality, continuation v_hat_c) after
// a first delivered low quality.
struct ReportingValues {
  double report0 = 0.0;  // V_C|0
  double report1 = 0.0;  // V_C|1
};
ReportingValues reporting_decision_values(const MarketParams& m, long k_p, double v_hat_c);

// Largest per-round false-negative rate a provider can absorb while keeping
// a nonnegative payoff: (alpha p - c) / eps_bar, clamped to [0,1].
double malicious_nu_bound(const MarketParams& m);
// Provider payoff against a noisy reporter: alpha p - c - nu eps_bar.
double provider_payoff_under_noise(const MarketParams& m, double nu);

struct InterleaveReport {
  long n_max = 0;                  // floor(ln delta_threshold / ln delta_hat)
  double lifetime_provider = 0.0;  // 1 / (1 - delta_hat)
  double lifetime_client = 0.0;    // 1 / (1 - delta)
  long lifetime_provider_ceil = 0;
  long lifetime_client_ceil = 0;
};
InterleaveReport interleave_and_lifetimes(const MarketParams& m);

// Everything above in one bundle, as printed by the CLI.
struct BoundReport {
  std::optional<double> delta_threshold;
  double gamma = 0.0;
  bool gamma_clamped = false;
  double v_p_max = 0.0;
  double pi_bar = 0.0;
  std::optional<double> mu_star;
  std::optional<long> k_p;  // only populated when mu_star was supplied
  bool k_p_unbounded = false;
  std::optional<double> v_hat_c;
  std::optional<double> gamma_hat;
  std::optional<ReportingValues> reporting;
  double nu_max = 0.0;
  std::optional<InterleaveReport> interleave;
};
BoundReport bound_report(const MarketParams& m, std::optional<double> mu_star = {},
                         std::optional<double> v_hat_c = {});

}  // namespace sanction

#endif
