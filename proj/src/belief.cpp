#include "sanction/belief.hpp"

#include <algorithm>
#include <cmath>

#include "sanction/rng.hpp"

namespace sanction {

std::string_view name(ClientTypeKind t) {
  switch (t) {
    case ClientTypeKind::Normal: return "normal";
    case ClientTypeKind::Commitment: return "commitment";
    case ClientTypeKind::Malicious: return "malicious";
    case ClientTypeKind::NoisyNormal: return "noisy";
  }
  return "?";
}

ClientTypeKind client_type_from_name(const std::string& s) {
  if (s == "normal") return ClientTypeKind::Normal;
  if (s == "commitment") return ClientTypeKind::Commitment;
  if (s == "malicious") return ClientTypeKind::Malicious;
  if (s == "noisy") return ClientTypeKind::NoisyNormal;
  throw ValidationError("unknown client type: " + s);
}

double TypeSpace::mass(ClientTypeKind t) const {
  switch (t) {
    case ClientTypeKind::Normal: return normal;
    case ClientTypeKind::Commitment: return commitment;
    case ClientTypeKind::Malicious: return malicious;
    case ClientTypeKind::NoisyNormal: return noisy;
  }
  return 0.0;
}

TypeSpace TypeSpace::validated(const MarketParams& m, TypeSpace t) {
  if (t.normal < 0 || t.commitment < 0 || t.malicious < 0 || t.noisy < 0)
    throw ValidationError("type space: masses must be nonnegative");
  if (std::fabs(t.total() - 1.0) > 1e-12)
    throw ValidationError("type space: masses must sum to 1");
  if (t.malicious > 0 && !(t.malicious_beta > m.eps))
    throw ValidationError("type space: malicious beta must exceed eps");
  if (t.noisy_nu < 0 || t.noisy_nu > 1)
    throw ValidationError("type space: nu must be in [0,1]");
  return t;
}

double noisy_flip_prob(const MarketParams& m, double nu) {
  return std::min(1.0, nu / m.alpha);
}

ReportModel report_model(const MarketParams& m, ClientTypeKind t, const Conjecture& conj,
                         const TypeSpace& types) {
  switch (t) {
    case ClientTypeKind::Normal: return conj.normal;
    case ClientTypeKind::Commitment: return {1.0, 0.0};
    case ClientTypeKind::Malicious: return {1.0, 1.0};
    case ClientTypeKind::NoisyNormal: {
      const double f = noisy_flip_prob(m, types.noisy_nu);
      const ReportModel n = conj.normal;
      return {n.report0_given_q0 + (1.0 - n.report0_given_q0) * f,
              n.report0_given_q1 + (1.0 - n.report0_given_q1) * f};
    }
  }
  return {};
}

namespace {

constexpr ClientTypeKind kAllTypes[] = {ClientTypeKind::Normal, ClientTypeKind::Commitment,
                                        ClientTypeKind::Malicious, ClientTypeKind::NoisyNormal};

double predicted_report0_after_q0(const MarketParams& m, const TypeSpace& post,
                                  const Conjecture& conj) {
  double pi = 0.0;
  for (ClientTypeKind t : kAllTypes) {
    const double mass = post.mass(t);
    if (mass > 0.0) pi += mass * report_model(m, t, conj, post).report0_given_q0;
  }
  return pi;
}

}  // namespace

BeliefState initial_belief(const MarketParams& m, const TypeSpace& prior, const Conjecture& conj) {
  BeliefState b;
  b.posterior = TypeSpace::validated(m, prior);
  b.pi_next = predicted_report0_after_q0(m, b.posterior, conj);
  return b;
}

BeliefState bayes_update(const MarketParams& m, const BeliefState& belief, Outcome y,
                         const Conjecture& conj) {
  if (y == Outcome::Out || y == Outcome::Rollback) return belief;

  const bool q1 = y == Outcome::Q1R1 || y == Outcome::Q1R0;
  const bool r0 = y == Outcome::Q0R0 || y == Outcome::Q1R0;

  TypeSpace post = belief.posterior;
  double total = 0.0;
  for (ClientTypeKind t : kAllTypes) {
    const double mass = belief.posterior.mass(t);
    if (mass == 0.0) continue;
    const ReportModel rm = report_model(m, t, conj, belief.posterior);
    const double p0 = q1 ? rm.report0_given_q1 : rm.report0_given_q0;
    const double like = r0 ? p0 : 1.0 - p0;
    const double w = mass * like;
    switch (t) {
      case ClientTypeKind::Normal: post.normal = w; break;
      case ClientTypeKind::Commitment: post.commitment = w; break;
      case ClientTypeKind::Malicious: post.malicious = w; break;
      case ClientTypeKind::NoisyNormal: post.noisy = w; break;
    }
    total += w;
  }
  if (total <= 0.0)
    throw NumericError("bayes_update: observation has zero likelihood under every type");
  post.normal /= total;
  post.commitment /= total;
  post.malicious /= total;
  post.noisy /= total;

  BeliefState next;
  next.posterior = post;
  next.pi_next = predicted_report0_after_q0(m, post, conj);
  return next;
}

namespace {

// Actual reporting behavior of a client type in simulation; the behavior
// stream drives the noisy flips.
bool reports_zero(const MarketParams& m, ClientTypeKind t, bool q1, const TypeSpace& types,
                  Rng& behavior) {
  switch (t) {
    case ClientTypeKind::Normal: return false;  // caves to avoid the fine
    case ClientTypeKind::Commitment: return !q1;
    case ClientTypeKind::Malicious: return true;
    case ClientTypeKind::NoisyNormal:
      // intends 1 like the normal type, flips to 0 at the calibrated rate
      return behavior.bernoulli(noisy_flip_prob(m, types.noisy_nu));
  }
  return false;
}

// Deterministic report intent at an information set the round never reached;
// only used to label the realized pure strategy in the trace.
bool intends_zero(ClientTypeKind t, bool q1) {
  switch (t) {
    case ClientTypeKind::Normal: return false;
    case ClientTypeKind::Commitment: return !q1;
    case ClientTypeKind::Malicious: return true;
    case ClientTypeKind::NoisyNormal: return false;
  }
  return false;
}

ClientStrategy in_strategy(bool report0_q0, bool report0_q1) {
  if (report0_q0) return report0_q1 ? ClientStrategy::In00 : ClientStrategy::In01;
  return report0_q1 ? ClientStrategy::In10 : ClientStrategy::In11;
}

}  // namespace

TestingRun testing_provider(const MarketParams& m, const TypeSpace& prior, double delta,
                            uint64_t seed, ClientTypeKind actual_type,
                            const TestingOptions& opts) {
  const MarketParams md = m.with_delta(delta);
  const double pb = pi_bar(md);
  if (!(pb < 1.0))
    throw ValidationError(
        "testing_provider: eps_bar <= p puts k_p out of reach (testing is never deterred); "
        "refusing the unbounded regime");
  TypeSpace types = TypeSpace::validated(m, prior);
  if (!(types.commitment > 0.0))
    throw ValidationError("testing_provider: commitment type needs positive prior mass");

  Rng nature(seed, stream::nature);
  Rng schedule_rng(seed, stream::strategy);
  Rng behavior(seed, stream::behavior);
  DirectFineBackend fine(m.eps_bar);

  TestingRun run;
  run.trace.seed = seed;
  run.trace.horizon = opts.horizon;
  run.trace.delta = delta;

  double mu = types.commitment;          // worst-case accounting
  BeliefState belief = initial_belief(md, types, opts.conjecture);  // exact accounting
  auto predicted = [&] {
    return opts.accounting == BeliefAccounting::WorstCase ? std::max(mu, pb) : belief.pi_next;
  };
  bool testing = predicted() <= pb;

  for (int t = 0; t < opts.horizon; ++t) {
    const bool q1 = nature.bernoulli(m.alpha);
    bool test_round = testing;
    if (test_round && opts.schedule == TestingSchedule::Randomized)
      test_round = schedule_rng.bernoulli(0.5);

    // e1-d-d in a test round, e1-l-d otherwise.
    const ProviderStrategy pa = test_round ? ProviderStrategy::E1DD : ProviderStrategy::E1LD;
    const bool delivered = q1 || test_round;
    const bool r0 = delivered && reports_zero(m, actual_type, q1, types, behavior);
    const bool plan_q0 = (delivered && !q1) ? r0 : intends_zero(actual_type, false);
    const bool plan_q1 = (delivered && q1) ? r0 : intends_zero(actual_type, true);
    const ClientStrategy ca = in_strategy(plan_q0, plan_q1);

    const RoundRealization rr = realize_round(m, ca, pa, q1);
    run.trace.rounds.push_back(
        {t, ca, pa, rr.outcome, rr.client_flow, rr.provider_flow + fine.on_feedback(rr.feedback)});

    if (rr.outcome == Outcome::Q0R0 || rr.outcome == Outcome::Q0R1) {
      ++run.test_count;  // a delivered low-quality round is a type test
      if (rr.outcome == Outcome::Q0R0) {
        mu = std::min(1.0, mu / pb);
        belief = bayes_update(md, belief, rr.outcome, opts.conjecture);
      } else {
        testing = false;  // reported 1: revealed rational, no further tests
        if (opts.accounting == BeliefAccounting::ExactBayes)
          belief = bayes_update(md, belief, rr.outcome, opts.conjecture);
      }
    } else if (rr.outcome == Outcome::Q1R0 || rr.outcome == Outcome::Q1R1) {
      if (opts.accounting == BeliefAccounting::ExactBayes)
        belief = bayes_update(md, belief, rr.outcome, opts.conjecture);
    }
    testing = testing && predicted() <= pb;
  }
  run.testing_stopped = !testing;
  run.mu_star_final = opts.accounting == BeliefAccounting::WorstCase ? mu : belief.posterior.commitment;
  return run;
}

CampaignRun malicious_campaign_sim(const MarketParams& m, const TypeSpace& prior, uint64_t seed,
                                   int horizon) {
  TypeSpace types = TypeSpace::validated(m, prior);
  if (types.noisy > 0.0)
    throw ValidationError("malicious_campaign_sim: type space must be {normal, commitment, malicious}");

  Rng nature(seed, stream::nature);
  DirectFineBackend fine(m.eps_bar);

  CampaignRun run;
  run.trace.seed = seed;
  run.trace.horizon = horizon;
  run.trace.delta = m.delta;

  bool exposed = false;   // provider saw q1r0 and plays e0-l forever
  bool attacking = true;  // malicious client stays until exposed

  for (int t = 0; t < horizon; ++t) {
    const bool q1 = nature.bernoulli(m.alpha);
    const ProviderStrategy pa = exposed ? ProviderStrategy::E0L : ProviderStrategy::E1LD;
    ClientStrategy ca;
    if (exposed && !attacking)
      ca = ClientStrategy::Out;
    else
      ca = ClientStrategy::In00;  // reports 0 on anything delivered

    const RoundRealization rr = realize_round(m, ca, pa, q1);
    // g_client records the malicious type's total utility: market flows plus
    // the external beta collected on each negative report.
    double g_client = rr.client_flow;
    if (rr.outcome == Outcome::Q1R0 || rr.outcome == Outcome::Q0R0)
      g_client += types.malicious_beta;
    run.trace.rounds.push_back(
        {t, ca, pa, rr.outcome, g_client, rr.provider_flow + fine.on_feedback(rr.feedback)});

    if (rr.outcome == Outcome::Q1R0) {
      ++run.false_negatives;
      exposed = true;    // public outcome: both sides act on it
      attacking = false;
    }
  }
  return run;
}

double noisy_provider_mean_payoff(const MarketParams& m, double nu, uint64_t seed, int horizon) {
  Rng nature(seed, stream::nature);
  Rng behavior(seed, stream::behavior);
  const double flip = noisy_flip_prob(m, nu);
  double total = 0.0;
  for (int t = 0; t < horizon; ++t) {
    const bool q1 = nature.bernoulli(m.alpha);
    if (!q1) {
      total -= m.c;  // e1-l-d rolls the round back
      continue;
    }
    total += m.p - m.c;
    if (behavior.bernoulli(flip)) total -= m.eps_bar;
  }
  return total / horizon;
}

std::string_view name(ReportDecision d) {
  switch (d) {
    case ReportDecision::Report0: return "report0";
    case ReportDecision::Report1: return "report1";
    case ReportDecision::Indifferent: return "indifferent";
  }
  return "?";
}

ReportDecision reputation_building_value(const MarketParams& m, long k_p, double v_hat_c,
                                         double tol) {
  const ReportingValues v = reporting_decision_values(m, k_p, v_hat_c);
  if (std::fabs(v.report0 - v.report1) <= tol) return ReportDecision::Indifferent;
  return v.report0 > v.report1 ? ReportDecision::Report0 : ReportDecision::Report1;
}

}  // namespace sanction
