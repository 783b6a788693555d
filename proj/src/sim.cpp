#include "sanction/sim.hpp"

#include <cmath>

#include "sanction/rng.hpp"
#include "sanction/text.hpp"

namespace sanction {

std::unique_ptr<ReputationBackend> make_backend(std::string_view name, const MarketParams& m) {
  if (name == "direct") return std::make_unique<DirectFineBackend>(m.eps_bar);
  if (name == "license") return std::make_unique<LicenseBackend>(m.eps_bar);
  throw ValidationError("unknown backend: " + std::string(name) + " (expected direct|license)");
}

RoundRealization realize_round(const MarketParams& m, ClientStrategy sc, ProviderStrategy sp,
                               bool nature_q1) {
  RoundRealization r;
  if (sc == ClientStrategy::Out) {
    r.outcome = Outcome::Out;
    r.feedback = Feedback::None;
    r.client_flow = m.u - m.p * (1.0 + m.rho);
    return r;
  }

  const bool effort = sp == ProviderStrategy::E1LL || sp == ProviderStrategy::E1LD ||
                      sp == ProviderStrategy::E1DL || sp == ProviderStrategy::E1DD;
  const bool q1 = effort && nature_q1;
  bool deliver = false;
  switch (sp) {
    case ProviderStrategy::E0L: deliver = false; break;
    case ProviderStrategy::E0D: deliver = true; break;
    case ProviderStrategy::E1LL: deliver = false; break;
    case ProviderStrategy::E1LD: deliver = q1; break;
    case ProviderStrategy::E1DL: deliver = !q1; break;
    case ProviderStrategy::E1DD: deliver = true; break;
  }

  r.client_flow = -m.p;
  r.provider_flow = m.p - (effort ? m.c : 0.0);
  if (!deliver) {
    r.client_flow += m.p;
    r.provider_flow -= m.p;
    r.outcome = Outcome::Rollback;
    r.feedback = Feedback::Neutral;
    return r;
  }
  if (q1) r.client_flow += m.u;

  const bool report0 = q1 ? (sc == ClientStrategy::In10 || sc == ClientStrategy::In00)
                          : (sc == ClientStrategy::In01 || sc == ClientStrategy::In00);
  if (report0) {
    r.client_flow -= m.eps;
    r.outcome = q1 ? Outcome::Q1R0 : Outcome::Q0R0;
    r.feedback = Feedback::Negative;
  } else {
    r.outcome = q1 ? Outcome::Q1R1 : Outcome::Q0R1;
    r.feedback = Feedback::Positive;
  }
  return r;
}

namespace {

ClientStrategy draw_client(const MixedClient& mix, Rng& rng) {
  for (int i = 0; i < kClientStrategies; ++i)
    if (mix.w[i] == 1.0) return static_cast<ClientStrategy>(i);
  double x = rng.u01(), acc = 0.0;
  for (int i = 0; i < kClientStrategies; ++i) {
    acc += mix.w[i];
    if (x < acc) return static_cast<ClientStrategy>(i);
  }
  return ClientStrategy::In00;
}

ProviderStrategy draw_provider(const MixedProvider& mix, Rng& rng) {
  for (int i = 0; i < kProviderStrategies; ++i)
    if (mix.w[i] == 1.0) return static_cast<ProviderStrategy>(i);
  double x = rng.u01(), acc = 0.0;
  for (int i = 0; i < kProviderStrategies; ++i) {
    acc += mix.w[i];
    if (x < acc) return static_cast<ProviderStrategy>(i);
  }
  return ProviderStrategy::E1DD;
}

}  // namespace

SimTrace simulate(const MarketParams& m, const StrategyProfile& profile,
                  ReputationBackend& backend, uint64_t seed, int horizon) {
  if (horizon < 1) throw ValidationError("simulate: horizon must be >= 1");
  backend.reset();
  Rng nature(seed, stream::nature);
  Rng mixing(seed, stream::strategy);

  SimTrace trace;
  trace.seed = seed;
  trace.horizon = horizon;
  trace.delta = m.delta;
  trace.rounds.reserve(static_cast<size_t>(horizon));

  int cs = profile.client.initial;
  int ps = profile.provider.initial;
  for (int t = 0; t < horizon; ++t) {
    const bool q1 = nature.bernoulli(m.alpha);  // drawn every round, used on effort
    const ClientStrategy ca = draw_client(profile.client.act[cs], mixing);
    const ProviderStrategy pa = draw_provider(profile.provider.act[ps], mixing);
    const RoundRealization rr = realize_round(m, ca, pa, q1);
    const double adj = backend.on_feedback(rr.feedback);
    trace.rounds.push_back({t, ca, pa, rr.outcome, rr.client_flow, rr.provider_flow + adj});
    cs = profile.client.next[cs][static_cast<int>(rr.outcome)];
    ps = profile.provider.next[ps][static_cast<int>(rr.outcome)];
  }
  trace.backend_settlement = backend.settle();
  return trace;
}

PayoffPair continuation_payoff(const SimTrace& trace, int t, double delta) {
  if (t < 0 || t >= static_cast<int>(trace.rounds.size()))
    throw ValidationError("continuation_payoff: round index out of range");
  if (!(delta > 0.0 && delta < 1.0))
    throw ValidationError("continuation_payoff: delta must be in (0,1)");
  PayoffPair v{};
  double w = 1.0 - delta;
  for (size_t tau = static_cast<size_t>(t); tau < trace.rounds.size(); ++tau) {
    v.client += w * trace.rounds[tau].g_client;
    v.provider += w * trace.rounds[tau].g_provider;
    w *= delta;
  }
  return v;
}

PayoffPair normalized_payoff(const SimTrace& trace, double delta) {
  if (trace.rounds.empty()) return {};
  return continuation_payoff(trace, 0, delta);
}

double empirical_gamma(const SimTrace& trace) {
  double g = 0.0;
  double w = 1.0 - trace.delta;
  for (const auto& r : trace.rounds) {
    if (r.outcome == Outcome::Q0R1) g += w;
    w *= trace.delta;
  }
  return g;
}

int truncation_horizon(double delta, double tail_mass) {
  if (!(delta > 0.0 && delta < 1.0))
    throw ValidationError("truncation_horizon: delta must be in (0,1)");
  return static_cast<int>(std::ceil(std::log(tail_mass) / std::log(delta)));
}

void write_trace_csv(std::ostream& os, const SimTrace& trace) {
  os << "round,client_action,provider_action,outcome,g_client,g_provider\n";
  for (const auto& r : trace.rounds) {
    os << r.round << ',' << name(r.client_action) << ',' << name(r.provider_action) << ','
       << name(r.outcome) << ',' << fmt9(r.g_client) << ',' << fmt9(r.g_provider) << '\n';
  }
}

}  // namespace sanction
