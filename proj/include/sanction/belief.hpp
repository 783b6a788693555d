#ifndef SANCTION_BELIEF_HPP
#define SANCTION_BELIEF_HPP

#include "sanction/bounds.hpp"
#include "sanction/sim.hpp"

namespace sanction {

enum class ClientTypeKind { Normal, Commitment, Malicious, NoisyNormal };

std::string_view name(ClientTypeKind t);
ClientTypeKind client_type_from_name(const std::string& s);

// Prior (or posterior) mass per client type, plus the type parameters.
// malicious_beta is the external reward a malicious client collects per
// negative report and must exceed eps to matter; noisy_nu is the per-round
// false-negative rate a noisy-but-honest client produces against a provider
// playing e1-l-d.
struct TypeSpace {
  double normal = 0.0;
  double commitment = 0.0;
  double malicious = 0.0;
  double noisy = 0.0;
  double malicious_beta = 1.0;
  double noisy_nu = 0.0;

  double mass(ClientTypeKind t) const;
  double total() const { return normal + commitment + malicious + noisy; }
  static TypeSpace validated(const MarketParams& m, TypeSpace t);
};

// The noisy type's intent follows the normal type; an intended 1 flips to 0
// with this probability. Scaled by 1/alpha so that a provider delivering high
// quality at rate alpha records false negatives at rate nu per round, which
// is what V_P = alpha p - c - nu eps_bar prices in.
double noisy_flip_prob(const MarketParams& m, double nu);

// Reporting model for one type: probability of reporting 0 after a delivered
// low / high quality service. Commitment is (1,0), malicious (1,1); the noisy
// model derives from the conjectured normal one. The normal type's model must
// be supplied by the caller; nothing is assumed about it.
struct ReportModel {
  double report0_given_q0 = 0.0;
  double report0_given_q1 = 0.0;
};

struct Conjecture {
  ReportModel normal;
};

ReportModel report_model(const MarketParams& m, ClientTypeKind t, const Conjecture& conj,
                         const TypeSpace& types);

struct BeliefState {
  TypeSpace posterior;
  double pi_next = 0.0;  // predicted P(report 0 | next delivered low quality)
};

BeliefState initial_belief(const MarketParams& m, const TypeSpace& prior, const Conjecture& conj);

// Standard Bayesian update on one public outcome. Out and rollback are
// uninformative and leave the posterior untouched; zero-likelihood outcomes
// remove types; an outcome impossible under every type throws.
BeliefState bayes_update(const MarketParams& m, const BeliefState& belief, Outcome y,
                         const Conjecture& conj);

enum class TestingSchedule { Earliest, Randomized };
enum class BeliefAccounting { WorstCase, ExactBayes };

struct TestingOptions {
  TestingSchedule schedule = TestingSchedule::Earliest;
  BeliefAccounting accounting = BeliefAccounting::WorstCase;
  Conjecture conjecture;  // normal type reports 1 everywhere unless overridden
  int horizon = 2000;
};

struct TestingRun {
  SimTrace trace;
  int test_count = 0;        // delivered low-quality rounds
  bool testing_stopped = false;
  double mu_star_final = 0.0;
};

// The Theorem-1 provider: plays e1-l-d, except that while the predicted
// sanction probability stays at or below pi_bar he tests the client's type by
// delivering low quality. A test answered by 0 raises mu* by worst case
// factor 1/pi_bar (or by exact Bayes); a test answered by 1 reveals a
// rational client and ends testing. Requires eps_bar > p, otherwise testing
// is never deterred and the run is refused.
TestingRun testing_provider(const MarketParams& m, const TypeSpace& prior, double delta,
                            uint64_t seed, ClientTypeKind actual_type,
                            const TestingOptions& opts = {});

struct CampaignRun {
  SimTrace trace;
  int false_negatives = 0;  // recorded q1r0 outcomes
};

// Malicious-client dynamics in the three-type space {normal, commitment,
// malicious}: the provider cooperates until the first false negative exposes
// the malicious type (no other type reports 0 on high quality), then defends
// with e0-l forever; the exposed client's best response is to leave. At most
// one false negative is ever recorded per client identity.
CampaignRun malicious_campaign_sim(const MarketParams& m, const TypeSpace& prior, uint64_t seed,
                                   int horizon = 500);

// Mean per-round provider payoff against a noisy reporter when playing the
// efficient strategy; converges to alpha p - c - nu eps_bar.
double noisy_provider_mean_payoff(const MarketParams& m, double nu, uint64_t seed, int horizon);

enum class ReportDecision { Report0, Report1, Indifferent };
std::string_view name(ReportDecision d);

// Whether a client facing her first delivered low quality prefers to build a
// reporting reputation (report 0) or to cave (report 1), given the complete
// information continuation v_hat_c. Ties within tol are indifferent.
ReportDecision reputation_building_value(const MarketParams& m, long k_p, double v_hat_c,
                                         double tol = 1e-12);

}  // namespace sanction

#endif
