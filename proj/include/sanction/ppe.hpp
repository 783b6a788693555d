#ifndef SANCTION_PPE_HPP
#define SANCTION_PPE_HPP

#include <optional>

#include "sanction/stage_game.hpp"

namespace sanction {

// Candidate equilibrium payoff set on a money grid anchored at the static
// equilibrium corner (minimax client payoff, 0). Membership is stored as an
// indicator; the continuation family used for enforcement is the convex hull
// of the member points (public randomization supplies the convexification).
struct PayoffSet {
  double grid = 0.02;
  double vc0 = 0.0, vp0 = 0.0;
  int nc = 0, np = 0;
  std::vector<uint8_t> member;
  std::vector<uint8_t> direct;    // enforceable without randomization (set by aps_step)
  std::vector<int16_t> profile;   // pure profile index enforcing a direct point, -1 otherwise

  size_t idx(int i, int j) const { return static_cast<size_t>(j) * nc + i; }
  bool at(int i, int j) const { return member[idx(i, j)] != 0; }
  PayoffPair point(int i, int j) const { return {vc0 + grid * i, vp0 + grid * j}; }
  int count() const;
  std::vector<PayoffPair> members() const;
  std::vector<PayoffPair> hull() const;  // convex hull of members, counterclockwise

  bool contains_exact(PayoffPair v, double tol = 1e-9) const;
  bool contains_within_cells(PayoffPair v, int cells) const;

  // Feasible rectangle [minimax_C, max cell client payoff] x [0, frontier
  // provider maximum], fully populated.
  static PayoffSet full_rectangle(const MarketParams& m, double grid);
  // Just the static equilibrium point (u - p(1+rho), 0).
  static PayoffSet singleton_static(const MarketParams& m, double grid);
};

// Pure stage profile with explicit continuation payoffs per public outcome.
struct ProfileCertificate {
  ClientStrategy sc = ClientStrategy::Out;
  ProviderStrategy sp = ProviderStrategy::E0D;
  std::array<PayoffPair, kOutcomes> w{};
};

// Public-randomization mixture of directly enforceable points; a single
// component of weight 1 is plain enforcement.
struct EnforcementCertificate {
  struct Component {
    double weight = 1.0;
    PayoffPair value{};
    ProfileCertificate cert{};
  };
  std::vector<Component> components;
};

// Searches for continuation payoffs in the convex hull of `cont` that enforce
// payoff v when (sc, sp) is played: promise keeping holds exactly and no
// unilateral pure deviation gains more than ic_tol.
std::optional<ProfileCertificate> enforce_at(const PayoffSet& cont, const MarketParams& m,
                                             double delta, PayoffPair v, ClientStrategy sc,
                                             ProviderStrategy sp, double ic_tol = 1e-9);

// One application of the enforcement operator: keeps every grid point for
// which some pure profile plus hull continuations works, then convexifies.
// An empty result degrades to the static equilibrium singleton.
PayoffSet aps_step(const PayoffSet& set, const MarketParams& m, double delta,
                   double ic_tol = 1e-9);

struct PpeResult {
  PayoffSet set;
  bool converged = false;
  int iterations = 0;
};

// Iterates aps_step from the full feasible rectangle until the set stops
// changing (the sequence is decreasing) or max_iters is hit, in which case
// the result is flagged non-converged. Outer approximation at this grid.
PpeResult compute_ppe_set(const MarketParams& m, double delta, double grid, int max_iters,
                          double ic_tol = 1e-9);

// Rebuilds a certificate for a member of a converged set: direct enforcement
// when possible, otherwise a convex decomposition over directly enforceable
// points.
std::optional<EnforcementCertificate> reconstruct_certificate(const PayoffSet& set,
                                                              const MarketParams& m, double delta,
                                                              PayoffPair v, double ic_tol = 1e-9);

// Probability the certificate's stage play records a negative report
// (outcomes q0r0 or q1r0).
double certificate_report0_prob(const MarketParams& m, const EnforcementCertificate& cert);

struct Prop2Result {
  bool pass = false;
  struct Counterexample {
    PayoffPair point{};
    ClientStrategy sc = ClientStrategy::Out;
    ProviderStrategy sp = ProviderStrategy::E0D;
    double report0_prob = 0.0;
  };
  std::optional<Counterexample> counterexample;
};

// At every client-payoff-maximal member (per provider payoff level), no
// enforcing profile may put more than tol probability on negative-report
// outcomes.
Prop2Result check_prop2(const PayoffSet& set, const MarketParams& m, double delta,
                        double tol = 1e-9);

struct Prop3Result {
  double min_client_payoff = 0.0;
  double implied_gamma = 0.0;
  double gamma_limit = 0.0;   // gamma_bound + grid tolerance
  bool pass = false;
};

// The set's worst client payoff must respect the minimax floor, and the
// false-report share it implies must respect the closed-form ceiling.
Prop3Result check_prop3(const PayoffSet& set, const MarketParams& m);

}  // namespace sanction

#endif
