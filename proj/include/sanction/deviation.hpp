#ifndef SANCTION_DEVIATION_HPP
#define SANCTION_DEVIATION_HPP

#include "sanction/automata.hpp"

namespace sanction {

// A profitable single-state, single-action deviation found by the checker.
struct DeviationFinding {
  int state = 0;        // index into DeviationCheck::states
  bool provider = false;
  int action = 0;       // deviating pure strategy (ClientStrategy/ProviderStrategy)
  double gain = 0.0;    // deviation value minus prescribed value
};

struct DeviationCheck {
  bool pass = false;
  std::vector<DeviationFinding> failures;        // largest gain first
  std::vector<std::pair<int, int>> states;       // reachable (client, provider) automaton states
  std::vector<PayoffPair> values;                // exact discounted values per joint state
};

// Verifies the one-shot deviation principle on the joint automaton: state
// values come from solving the linear recursion V = (1-d) g + d P V exactly,
// then every reachable state is checked against every pure one-round
// deviation of either player. States are those reachable under arbitrary
// public outcome sequences, i.e. all public histories.
DeviationCheck one_shot_deviation_check(const MarketParams& m, const StrategyProfile& profile,
                                        double delta, double tol = 1e-9);

// Bisects the pass/fail boundary of the check over delta in [lo, hi].
// Requires fail at lo and pass at hi.
double deviation_threshold(const MarketParams& m, const StrategyProfile& profile, double lo,
                           double hi, double delta_tol = 1e-9, double tol = 1e-9);

}  // namespace sanction

#endif
