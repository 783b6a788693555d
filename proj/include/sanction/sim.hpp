#ifndef SANCTION_SIM_HPP
#define SANCTION_SIM_HPP

#include <cstdint>
#include <memory>
#include <ostream>
#include <string_view>

#include "sanction/automata.hpp"

namespace sanction {

enum class Feedback { None, Positive, Neutral, Negative };

// The reputation mechanism seen from the provider's side: a payoff adjustment
// per recorded signal. Positive and neutral feedback are worth 0; the value
// destroyed by negative feedback depends on the concrete mechanism.
class ReputationBackend {
 public:
  virtual ~ReputationBackend() = default;
  virtual void reset() = 0;
  // Provider payoff adjustment realized in the round the signal is recorded.
  virtual double on_feedback(Feedback f) = 0;
  // End-of-trace settlement (0 unless the mechanism holds provider capital).
  virtual double settle() { return 0.0; }
  virtual std::string_view name() const = 0;
};

// Fines the provider eps_bar immediately on every negative report; this is
// exactly the normal-form game's eps_bar column.
class DirectFineBackend final : public ReputationBackend {
 public:
  explicit DirectFineBackend(double eps_bar) : eps_bar_(eps_bar) {}
  void reset() override {}
  double on_feedback(Feedback f) override { return f == Feedback::Negative ? -eps_bar_ : 0.0; }
  std::string_view name() const override { return "direct"; }

 private:
  double eps_bar_;
};

// Operating licence partially destroyed by every negative report: each
// negative burns d of the balance, a balance at or below zero forces an
// immediate restore payment R, and the remaining balance is sold back when
// the trace ends. The upfront purchase is sunk capital, so per-round cash is
// lumpy but the settled total equals -d per negative; with d = eps_bar the
// expected cost per negative matches the direct fine. Defaults: d = eps_bar,
// R = L = 10 eps_bar.
class LicenseBackend final : public ReputationBackend {
 public:
  explicit LicenseBackend(double eps_bar)
      : LicenseBackend(10.0 * eps_bar, eps_bar, 10.0 * eps_bar) {}
  LicenseBackend(double value, double burn, double restore)
      : value_(value), burn_(burn), restore_(restore) {
    if (burn_ > 0.0 && !(restore_ > 0.0))
      throw ValidationError("license backend: restore payment must be positive");
    reset();
  }
  void reset() override { balance_ = value_; }
  double on_feedback(Feedback f) override {
    if (f != Feedback::Negative || burn_ <= 0.0) return 0.0;
    balance_ -= burn_;
    double cash = 0.0;
    while (balance_ <= 0.0) {  // never operate on an exhausted licence
      cash -= restore_;
      balance_ += restore_;
    }
    return cash;
  }
  double settle() override { return balance_ - value_; }
  double balance() const { return balance_; }
  std::string_view name() const override { return "license"; }

 private:
  double value_, burn_, restore_;
  double balance_ = 0.0;
};

std::unique_ptr<ReputationBackend> make_backend(std::string_view name, const MarketParams& m);

struct RoundRecord {
  int round = 0;
  ClientStrategy client_action = ClientStrategy::Out;
  ProviderStrategy provider_action = ProviderStrategy::E0L;
  Outcome outcome = Outcome::Out;
  double g_client = 0.0;
  double g_provider = 0.0;
};

struct SimTrace {
  uint64_t seed = 0;
  int horizon = 0;
  double delta = 0.0;
  std::vector<RoundRecord> rounds;
  double backend_settlement = 0.0;  // licence liquidation; not part of Eq.-1 payoffs
};

// One realized round: resolves actions and nature's draw into the public
// outcome, the recorded feedback signal and the monetary flows. The provider
// flow excludes the reputation penalty, which the backend supplies.
struct RoundRealization {
  Outcome outcome = Outcome::Out;
  Feedback feedback = Feedback::None;
  double client_flow = 0.0;
  double provider_flow = 0.0;
};
RoundRealization realize_round(const MarketParams& m, ClientStrategy sc, ProviderStrategy sp,
                               bool nature_q1);

// Seeded rollout of T rounds. Deterministic given (params, profile, seed, T):
// nature's coin has its own stream and is drawn every round whether or not
// effort was exerted.
SimTrace simulate(const MarketParams& m, const StrategyProfile& profile,
                  ReputationBackend& backend, uint64_t seed, int horizon);

// (1-d) sum d^tau g^tau, summed over the recorded rounds.
PayoffPair normalized_payoff(const SimTrace& trace, double delta);
// (1-d) sum_{tau>=t} d^(tau-t) g^tau. Throws on t out of range.
PayoffPair continuation_payoff(const SimTrace& trace, int t, double delta);

// Discount-weighted mass of the false-positive outcome q0r1 along the trace.
double empirical_gamma(const SimTrace& trace);

// Smallest T with delta^T below tail_mass; rollouts of this length carry the
// whole discounted payoff up to tail_mass.
int truncation_horizon(double delta, double tail_mass = 1e-12);

// CSV columns: round, client_action, provider_action, outcome, g_client, g_provider.
void write_trace_csv(std::ostream& os, const SimTrace& trace);

}  // namespace sanction

#endif
