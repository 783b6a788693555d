#ifndef SANCTION_STAGE_GAME_HPP
#define SANCTION_STAGE_GAME_HPP

#include <array>
#include <string_view>
#include <vector>

#include "sanction/params.hpp"

namespace sanction {

// Client pure strategies. In<x><y> = enter, report x after delivered low
// quality, report y after delivered high quality. The four out-variants are
// collapsed into Out since they generate identical outcomes. In01 is the
// honest commitment strategy.
enum class ClientStrategy : int { Out = 0, In11, In10, In01, In00 };

// Provider pure strategies: effort level, then deliver (D) or roll back (L)
// per realized quality. E1LD exerts effort, rolls back low quality and
// delivers high quality: the socially desired strategy.
enum class ProviderStrategy : int { E0L = 0, E0D, E1LL, E1LD, E1DL, E1DD };

// Public outcomes Y: client stayed out, provider rolled back, or quality
// q0/q1 delivered followed by report 1/0.
enum class Outcome : int { Out = 0, Rollback, Q0R1, Q0R0, Q1R1, Q1R0 };

inline constexpr int kClientStrategies = 5;
inline constexpr int kProviderStrategies = 6;
inline constexpr int kOutcomes = 6;

std::string_view name(ClientStrategy s);
std::string_view name(ProviderStrategy s);
std::string_view name(Outcome y);

struct PayoffPair {
  double client = 0.0;
  double provider = 0.0;
};

inline PayoffPair operator+(PayoffPair a, PayoffPair b) { return {a.client + b.client, a.provider + b.provider}; }
inline PayoffPair operator*(double w, PayoffPair a) { return {w * a.client, w * a.provider}; }

// Probability weights over the pure strategies of one side.
struct MixedClient {
  std::array<double, kClientStrategies> w{};
  static MixedClient pure(ClientStrategy s);
  static MixedClient validated(const std::array<double, kClientStrategies>& w);
};

struct MixedProvider {
  std::array<double, kProviderStrategies> w{};
  static MixedProvider pure(ProviderStrategy s);
  static MixedProvider validated(const std::array<double, kProviderStrategies>& w);
};

using OutcomeDist = std::array<double, kOutcomes>;

// Expected stage payoffs g(s) of the one-shot game, hand-encoded normal form.
// tree_payoffs() must agree cell by cell; the tree is the oracle, this is the
// fast path.
PayoffPair stage_payoffs(const MarketParams& m, ClientStrategy sc, ProviderStrategy sp);
PayoffPair stage_payoffs(const MarketParams& m, const MixedClient& sc, const MixedProvider& sp);

// Distribution over public outcomes induced by a strategy profile.
OutcomeDist outcome_distribution(const MarketParams& m, ClientStrategy sc, ProviderStrategy sp);
OutcomeDist outcome_distribution(const MarketParams& m, const MixedClient& sc, const MixedProvider& sp);

// Expected payoffs computed by walking the extensive form directly from the
// monetary flow rules (entry payment, refund on rollback, u on delivered high
// quality, c on effort, eps / eps_bar on a negative report).
PayoffPair tree_payoffs(const MarketParams& m, ClientStrategy sc, ProviderStrategy sp);

// (u - p(1+rho), 0): the client's outside option and the provider's e0-l floor.
PayoffPair minimax(const MarketParams& m);

// Maximum provider payoff among feasible, individually rational profiles.
//   rho <= u(1-alpha)/p : alpha*u - c - u + p(1+rho)
//   otherwise           : p + c(p*rho - u) / (alpha*u)
double provider_max_ppe_payoff(const MarketParams& m);

// Vertices of the pareto-optimal frontier of the feasible, individually
// rational payoff set, ordered from client-best to provider-best. Segments
// between consecutive vertices are attained by mixing. A non-viable market
// collapses to the single minimax point.
std::vector<PayoffPair> pareto_frontier(const MarketParams& m);

}  // namespace sanction

#endif
