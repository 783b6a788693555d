#include "sanction/deviation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace sanction {

namespace {

// Dense Gaussian elimination with partial pivoting; A is n x n row major.
std::vector<double> solve_linear(std::vector<double> A, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(A[r * n + col]) > std::fabs(A[piv * n + col])) piv = r;
    if (std::fabs(A[piv * n + col]) < 1e-14)
      throw NumericError("value solve: singular linear system");
    if (piv != col) {
      for (int k = col; k < n; ++k) std::swap(A[piv * n + k], A[col * n + k]);
      std::swap(b[piv], b[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      const double f = A[r * n + col] / A[col * n + col];
      if (f == 0.0) continue;
      for (int k = col; k < n; ++k) A[r * n + k] -= f * A[col * n + k];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < n; ++k) s -= A[r * n + k] * x[k];
    x[r] = s / A[r * n + r];
  }
  return x;
}

}  // namespace

DeviationCheck one_shot_deviation_check(const MarketParams& m, const StrategyProfile& profile,
                                        double delta, double tol) {
  if (!(delta > 0.0 && delta < 1.0))
    throw ValidationError("one_shot_deviation_check: delta must be in (0,1)");

  const ClientAutomaton& C = profile.client;
  const ProviderAutomaton& P = profile.provider;

  // Joint states reachable under arbitrary public outcome sequences.
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> states;
  states.emplace_back(C.initial, P.initial);
  index[states[0]] = 0;
  for (size_t i = 0; i < states.size(); ++i) {
    for (int y = 0; y < kOutcomes; ++y) {
      std::pair<int, int> nxt{C.next[states[i].first][y], P.next[states[i].second][y]};
      if (index.emplace(nxt, static_cast<int>(states.size())).second) states.push_back(nxt);
    }
  }
  const int n = static_cast<int>(states.size());

  // next_state[s][y] and per-state stage data.
  std::vector<std::array<int, kOutcomes>> nxt(n);
  std::vector<PayoffPair> g(n);
  std::vector<OutcomeDist> dist(n);
  for (int s = 0; s < n; ++s) {
    const auto [cs, ps] = states[s];
    for (int y = 0; y < kOutcomes; ++y)
      nxt[s][y] = index.at({C.next[cs][y], P.next[ps][y]});
    g[s] = stage_payoffs(m, C.act[cs], P.act[ps]);
    dist[s] = outcome_distribution(m, C.act[cs], P.act[ps]);
  }

  // V = (1-d) g + d T V with T[s][s'] = sum_y dist[s][y] [nxt[s][y] = s'].
  std::vector<double> A(static_cast<size_t>(n) * n, 0.0);
  for (int s = 0; s < n; ++s) {
    A[static_cast<size_t>(s) * n + s] += 1.0;
    for (int y = 0; y < kOutcomes; ++y)
      A[static_cast<size_t>(s) * n + nxt[s][y]] -= delta * dist[s][y];
  }
  std::vector<double> bc(n), bp(n);
  for (int s = 0; s < n; ++s) {
    bc[s] = (1.0 - delta) * g[s].client;
    bp[s] = (1.0 - delta) * g[s].provider;
  }
  const std::vector<double> vc = solve_linear(A, bc);
  const std::vector<double> vp = solve_linear(A, bp);

  DeviationCheck result;
  result.states = states;
  result.values.resize(n);
  for (int s = 0; s < n; ++s) result.values[s] = {vc[s], vp[s]};

  auto deviation_value = [&](int s, const MixedClient& ca, const MixedProvider& pa, bool provider) {
    const PayoffPair stage = stage_payoffs(m, ca, pa);
    const OutcomeDist d = outcome_distribution(m, ca, pa);
    double cont = 0.0;
    for (int y = 0; y < kOutcomes; ++y)
      cont += d[y] * (provider ? vp[nxt[s][y]] : vc[nxt[s][y]]);
    return (1.0 - delta) * (provider ? stage.provider : stage.client) + delta * cont;
  };

  for (int s = 0; s < n; ++s) {
    const auto [cs, ps] = states[s];
    for (int a = 0; a < kClientStrategies; ++a) {
      const double dv =
          deviation_value(s, MixedClient::pure(static_cast<ClientStrategy>(a)), P.act[ps], false);
      if (dv - vc[s] > tol) result.failures.push_back({s, false, a, dv - vc[s]});
    }
    for (int a = 0; a < kProviderStrategies; ++a) {
      const double dv =
          deviation_value(s, C.act[cs], MixedProvider::pure(static_cast<ProviderStrategy>(a)), true);
      if (dv - vp[s] > tol) result.failures.push_back({s, true, a, dv - vp[s]});
    }
  }
  std::sort(result.failures.begin(), result.failures.end(),
            [](const DeviationFinding& a, const DeviationFinding& b) { return a.gain > b.gain; });
  result.pass = result.failures.empty();
  return result;
}

double deviation_threshold(const MarketParams& m, const StrategyProfile& profile, double lo,
                           double hi, double delta_tol, double tol) {
  if (one_shot_deviation_check(m, profile, lo, tol).pass)
    throw ValidationError("deviation_threshold: check already passes at lo");
  if (!one_shot_deviation_check(m, profile, hi, tol).pass)
    throw ValidationError("deviation_threshold: check still fails at hi");
  while (hi - lo > delta_tol) {
    const double mid = 0.5 * (lo + hi);
    if (one_shot_deviation_check(m, profile, mid, tol).pass)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace sanction
