#include <doctest.h>

#include <cmath>

#include "sanction/belief.hpp"
#include "test_util.hpp"

using namespace sanction;
using testutil::near;

namespace {
const MarketParams pizza = pizza_params();
const MarketParams pizza95 = pizza_params().with_delta(0.95);

TypeSpace three_type(double normal, double commitment, double malicious) {
  TypeSpace t;
  t.normal = normal;
  t.commitment = commitment;
  t.malicious = malicious;
  t.malicious_beta = 1.0;
  return TypeSpace::validated(pizza_params(), t);
}
}  // namespace

TEST_CASE("a false negative exposes the malicious type") {
  const TypeSpace prior = three_type(0.7, 0.2, 0.1);
  Conjecture conj;  // normal reports 1 everywhere
  BeliefState b = initial_belief(pizza, prior, conj);
  b = bayes_update(pizza, b, Outcome::Q1R0, conj);
  CHECK(near(b.posterior.malicious, 1.0, 1e-12));
  CHECK(b.posterior.normal == 0.0);
  CHECK(b.posterior.commitment == 0.0);
}

TEST_CASE("out and rollback are uninformative") {
  const TypeSpace prior = three_type(0.7, 0.2, 0.1);
  Conjecture conj;
  conj.normal = {0.3, 0.0};
  const BeliefState b0 = initial_belief(pizza, prior, conj);
  for (Outcome y : {Outcome::Out, Outcome::Rollback}) {
    const BeliefState b1 = bayes_update(pizza, b0, y, conj);
    CHECK(b1.posterior.normal == b0.posterior.normal);
    CHECK(b1.posterior.commitment == b0.posterior.commitment);
    CHECK(b1.posterior.malicious == b0.posterior.malicious);
    CHECK(b1.pi_next == b0.pi_next);
  }
}

TEST_CASE("zero likelihood removes the conjectured type") {
  TypeSpace prior;
  prior.normal = 0.8;
  prior.commitment = 0.2;
  prior = TypeSpace::validated(pizza, prior);
  Conjecture conj;
  conj.normal = {0.0, 0.0};  // conjectured to always report 1
  BeliefState b = initial_belief(pizza, prior, conj);
  b = bayes_update(pizza, b, Outcome::Q0R0, conj);
  CHECK(near(b.posterior.commitment, 1.0, 1e-12));

  // q1r0 is impossible under both types here: inconsistency.
  CHECK_THROWS_AS(bayes_update(pizza, b, Outcome::Q1R0, conj), NumericError);
}

TEST_CASE("honest-consistent observations never lower the commitment mass") {
  Rng rng(8080, 21);
  Conjecture conj;
  conj.normal = {0.4, 0.0};  // a normal type that lies on 40% of q0 rounds
  for (int trial = 0; trial < 200; ++trial) {
    TypeSpace prior;
    prior.normal = 0.5 + 0.4 * rng.u01();
    prior.commitment = 1.0 - prior.normal;
    prior = TypeSpace::validated(pizza, prior);
    BeliefState b = initial_belief(pizza, prior, conj);
    for (int step = 0; step < 30; ++step) {
      const Outcome y = rng.u01() < 0.3   ? Outcome::Q0R0
                        : rng.u01() < 0.5 ? Outcome::Q1R1
                                          : Outcome::Rollback;
      const BeliefState nb = bayes_update(pizza, b, y, conj);
      REQUIRE(nb.posterior.commitment >= b.posterior.commitment - 1e-12);
      REQUIRE(nb.pi_next >= nb.posterior.commitment - 1e-12);
      b = nb;
    }
  }
}

TEST_CASE("testing provider respects the k_p cap against a commitment client") {
  TypeSpace prior;
  prior.commitment = 0.2;
  prior.normal = 0.8;
  prior = TypeSpace::validated(pizza, prior);
  const long cap = k_p(pizza95, 0.2).value();
  REQUIRE(cap == 3);

  int max_tests = 0;
  for (uint64_t seed = 0; seed < 500; ++seed) {
    const TestingRun run = testing_provider(pizza, prior, 0.95, seed, ClientTypeKind::Commitment);
    REQUIRE(run.test_count <= cap);
    max_tests = std::max(max_tests, run.test_count);
  }
  CHECK(max_tests == cap);  // the earliest schedule exhausts the budget
}

TEST_CASE("testing provider cap holds under the randomized schedule and exact bayes") {
  TypeSpace prior;
  prior.commitment = 0.4;
  prior.normal = 0.6;
  prior = TypeSpace::validated(pizza, prior);
  const long cap = k_p(pizza95, 0.4).value();
  REQUIRE(cap == 1);

  TestingOptions random_sched;
  random_sched.schedule = TestingSchedule::Randomized;
  TestingOptions bayes;
  bayes.accounting = BeliefAccounting::ExactBayes;
  for (uint64_t seed = 0; seed < 500; ++seed) {
    CHECK(testing_provider(pizza, prior, 0.95, seed, ClientTypeKind::Commitment, random_sched)
              .test_count <= cap);
    CHECK(testing_provider(pizza, prior, 0.95, seed, ClientTypeKind::Commitment, bayes)
              .test_count <= cap);
  }
}

TEST_CASE("prior commitment mass above pi_bar means no tests at all") {
  TypeSpace prior;
  prior.commitment = 0.7;  // pi_bar at delta 0.95 is 0.6316
  prior.normal = 0.3;
  prior = TypeSpace::validated(pizza, prior);
  for (uint64_t seed = 0; seed < 50; ++seed) {
    const TestingRun run = testing_provider(pizza, prior, 0.95, seed, ClientTypeKind::Commitment);
    REQUIRE(run.test_count == 0);
  }
}

TEST_CASE("testing provider refuses the unbounded regime") {
  MarketParams weak = pizza;
  weak.eps_bar = 0.5;
  TypeSpace prior;
  prior.commitment = 0.2;
  prior.normal = 0.8;
  prior = TypeSpace::validated(weak, prior);
  CHECK_THROWS_AS(testing_provider(weak, prior, 0.95, 1, ClientTypeKind::Commitment),
                  ValidationError);
}

TEST_CASE("reporting decision against the complete information continuation") {
  // At the minimax continuation honesty wins: 0.89 > 0.05*(-1) + 0.95*0.8.
  CHECK(reputation_building_value(pizza95, 1, 0.8) == ReportDecision::Report0);
  // At the exact threshold the client is indifferent.
  CHECK(reputation_building_value(pizza95, 1, v_hat_c_threshold(pizza95, 1)) ==
        ReportDecision::Indifferent);
  // A generous continuation makes caving strictly better (k_p = 2 case).
  CHECK(reputation_building_value(pizza95, 2, 0.99) == ReportDecision::Report1);
}

TEST_CASE("malicious campaign records at most one false negative") {
  const TypeSpace prior = three_type(0.7, 0.2, 0.1);
  for (uint64_t seed = 0; seed < 500; ++seed) {
    const CampaignRun run = malicious_campaign_sim(pizza, prior, seed, 400);
    REQUIRE(run.false_negatives <= 1);

    // After the exposure round everything is rollback or out.
    bool seen = false;
    for (const auto& r : run.trace.rounds) {
      if (seen) REQUIRE((r.outcome == Outcome::Out || r.outcome == Outcome::Rollback));
      if (r.outcome == Outcome::Q1R0) seen = true;
    }
  }
}

TEST_CASE("commitment clients never produce false negatives") {
  // Via the testing provider: an honest client reports 0 only on delivered
  // low quality, never on q1.
  TypeSpace prior;
  prior.commitment = 0.2;
  prior.normal = 0.8;
  prior = TypeSpace::validated(pizza, prior);
  for (uint64_t seed = 0; seed < 200; ++seed) {
    const TestingRun run = testing_provider(pizza, prior, 0.95, seed, ClientTypeKind::Commitment);
    for (const auto& r : run.trace.rounds) REQUIRE(r.outcome != Outcome::Q1R0);
  }
}

TEST_CASE("noisy reporter at the nu bound drives the provider payoff to zero") {
  const double nu = malicious_nu_bound(pizza);
  REQUIRE(near(nu, 0.076, 1e-12));

  const int seeds = 200, rounds = 2000;
  double mean = 0.0;
  std::vector<double> vals(seeds);
  for (int s = 0; s < seeds; ++s)
    mean += (vals[s] = noisy_provider_mean_payoff(pizza, nu, s, rounds));
  mean /= seeds;
  double var = 0.0;
  for (double v : vals) var += (v - mean) * (v - mean);
  const double se = std::sqrt(var / (seeds - 1) / seeds);
  CHECK(std::fabs(mean - 0.0) <= 3.0 * se);

  // Below the bound the payoff stays positive.
  double mean_half = 0.0;
  for (int s = 0; s < seeds; ++s) mean_half += noisy_provider_mean_payoff(pizza, nu / 2, s, rounds);
  mean_half /= seeds;
  CHECK(mean_half > 0.0);
  CHECK(near(mean_half, provider_payoff_under_noise(pizza, nu / 2), 0.02));
}

TEST_CASE("belief simulations are deterministic given the seed") {
  TypeSpace prior;
  prior.commitment = 0.2;
  prior.normal = 0.7;
  prior.malicious = 0.1;
  prior.malicious_beta = 1.0;
  prior = TypeSpace::validated(pizza, prior);

  TestingOptions opts;
  opts.schedule = TestingSchedule::Randomized;
  TypeSpace two;
  two.commitment = 0.2;
  two.normal = 0.8;
  two = TypeSpace::validated(pizza, two);
  const TestingRun a = testing_provider(pizza, two, 0.95, 77, ClientTypeKind::Commitment, opts);
  const TestingRun b = testing_provider(pizza, two, 0.95, 77, ClientTypeKind::Commitment, opts);
  REQUIRE(a.trace.rounds.size() == b.trace.rounds.size());
  for (size_t i = 0; i < a.trace.rounds.size(); ++i) {
    REQUIRE(a.trace.rounds[i].outcome == b.trace.rounds[i].outcome);
    REQUIRE(a.trace.rounds[i].g_provider == b.trace.rounds[i].g_provider);
  }
  CHECK(a.test_count == b.test_count);

  const CampaignRun c1 = malicious_campaign_sim(pizza, prior, 5, 200);
  const CampaignRun c2 = malicious_campaign_sim(pizza, prior, 5, 200);
  REQUIRE(c1.false_negatives == c2.false_negatives);
  for (size_t i = 0; i < c1.trace.rounds.size(); ++i)
    REQUIRE(c1.trace.rounds[i].outcome == c2.trace.rounds[i].outcome);

  CHECK(noisy_provider_mean_payoff(pizza, 0.05, 11, 500) ==
        noisy_provider_mean_payoff(pizza, 0.05, 11, 500));
}

TEST_CASE("type space validation") {
  TypeSpace t;
  t.normal = 0.5;
  t.commitment = 0.4;
  CHECK_THROWS_AS(TypeSpace::validated(pizza, t), ValidationError);  // sums to 0.9
  t.malicious = 0.1;
  t.malicious_beta = 0.005;  // below eps
  CHECK_THROWS_AS(TypeSpace::validated(pizza, t), ValidationError);
  t.malicious_beta = 1.0;
  CHECK_NOTHROW(TypeSpace::validated(pizza, t));
}
