#ifndef SANCTION_AUTOMATA_HPP
#define SANCTION_AUTOMATA_HPP

#include <string>
#include <vector>

#include "sanction/stage_game.hpp"

namespace sanction {

// Public strategies as finite-state automata over the outcome set Y: every
// strategy analyzed here (grim, commitment, always-X, testing) is finite
// state, which keeps value solving exact. Transitions are total over Y and
// deterministic given the outcome.
struct ClientAutomaton {
  std::string name;
  int initial = 0;
  std::vector<MixedClient> act;                     // per state
  std::vector<std::array<int, kOutcomes>> next;     // per state, per outcome

  int states() const { return static_cast<int>(act.size()); }
};

struct ProviderAutomaton {
  std::string name;
  int initial = 0;
  std::vector<MixedProvider> act;
  std::vector<std::array<int, kOutcomes>> next;

  int states() const { return static_cast<int>(act.size()); }
};

struct StrategyProfile {
  std::string name;
  ClientAutomaton client;
  ProviderAutomaton provider;
};

ClientAutomaton constant_client(ClientStrategy s);
ProviderAutomaton constant_provider(ProviderStrategy s);

// Grim cooperative pair: on path the provider plays e1-l-d and the client
// in-1-1, so the only on-path outcomes are q1r1 and rollback. Any other
// outcome is someone's deviation and sends both sides to the breakdown state
// (client out forever, provider e0-d forever), which is a static equilibrium.
// The client's trigger covers both delivered-low-quality outcomes (q0r1 and
// q0r0): rollback rounds are on path and must not trip it.
ClientAutomaton grim_client();
ProviderAutomaton grim_provider();

// Named pairs selectable from the CLI:
//   grim        grim_client + grim_provider
//   commitment  honest reporter (in01 always) + efficient provider (e1ld)
//   defect      in11 always + e0d always
//   out         out forever + e0d always
const std::vector<StrategyProfile>& builtin_profiles();
const StrategyProfile* find_profile(const std::string& name);

}  // namespace sanction

#endif
