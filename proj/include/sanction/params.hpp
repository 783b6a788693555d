#ifndef SANCTION_PARAMS_HPP
#define SANCTION_PARAMS_HPP

#include <string>

#include "sanction/errors.hpp"

namespace sanction {

// All scalar market and mechanism constants. Money amounts are plain doubles;
// the closed forms are exact rationals only for special inputs, so no rounding
// is applied anywhere.
struct MarketParams {
  double p = 0;           // price of one service round
  double u = 0;           // utility of delivered high quality
  double c = 0;           // cost of high effort
  double alpha = 0;       // P(high quality | high effort), in (0,1)
  double rho = 0;         // outside option costs p*(1+rho)
  double eps = 0;         // client fine for a negative report
  double eps_bar = 0;     // provider penalty per negative report
  double delta_hat = 0;   // per-round market discount factor
  double interleave = 1;  // N: rounds between one client's successive visits
  double delta = 0;       // client's effective discount factor

  // Validates ranges and returns the params. delta < 0 means "derive it as
  // delta_hat^N". An explicitly supplied delta is authoritative even when it
  // disagrees with delta_hat^N; see delta_matches_interleave().
  static MarketParams validated(double p, double u, double c, double alpha,
                                double rho, double eps, double eps_bar,
                                double delta_hat, double interleave,
                                double delta = -1.0);

  double minimax_client() const { return u - p * (1.0 + rho); }

  // True when the feasible, individually rational payoff set has more than
  // the single outside-option point. Stored as a predicate, not enforced:
  // degenerate markets are valid inputs for the bound formulas.
  bool market_viable() const {
    return alpha * (u - p) > minimax_client() && alpha * p - c > 0.0;
  }

  double delta_from_interleave() const;
  bool delta_matches_interleave(double tol = 1e-9) const;

  MarketParams with_delta(double d) const;
};

// Pizza delivery numbers used as the canonical regression fixture
// (p=1, u=2, c=0.8, alpha=0.99, rho=0.2, eps=0.01, eps_bar=2.5,
//  delta_hat=0.996, N=43, delta=0.84).
MarketParams pizza_params();

// Flat key-value parameter file. Keys: p, u, c, alpha, rho, eps, eps_bar,
// delta_hat, N, delta. `delta` is optional and derived as delta_hat^N when
// absent. Lines may be blank or start with '#'; separators are '=' or blanks.
MarketParams load_params(const std::string& path);
MarketParams parse_params(const std::string& text, const std::string& origin);

}  // namespace sanction

#endif
