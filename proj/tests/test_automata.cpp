#include <doctest.h>

#include "sanction/automata.hpp"

using namespace sanction;

TEST_CASE("grim pair structure") {
  const StrategyProfile& grim = *find_profile("grim");

  // On path: client in11, provider e1ld, so outcomes stay in {q1r1, rollback}.
  CHECK(grim.client.act[0].w[static_cast<int>(ClientStrategy::In11)] == 1.0);
  CHECK(grim.provider.act[0].w[static_cast<int>(ProviderStrategy::E1LD)] == 1.0);
  CHECK(grim.client.next[0][static_cast<int>(Outcome::Q1R1)] == 0);
  CHECK(grim.client.next[0][static_cast<int>(Outcome::Rollback)] == 0);
  CHECK(grim.provider.next[0][static_cast<int>(Outcome::Q1R1)] == 0);
  CHECK(grim.provider.next[0][static_cast<int>(Outcome::Rollback)] == 0);

  // Delivered low quality sends the client out for good.
  const int c_after_q0r1 = grim.client.next[0][static_cast<int>(Outcome::Q0R1)];
  CHECK(grim.client.act[c_after_q0r1].w[static_cast<int>(ClientStrategy::Out)] == 1.0);
  CHECK(grim.client.next[c_after_q0r1][static_cast<int>(Outcome::Out)] == c_after_q0r1);

  // A negative report sends the provider to e0d for good.
  const int p_after_q0r0 = grim.provider.next[0][static_cast<int>(Outcome::Q0R0)];
  CHECK(grim.provider.act[p_after_q0r0].w[static_cast<int>(ProviderStrategy::E0D)] == 1.0);
  CHECK(grim.provider.next[p_after_q0r0][static_cast<int>(Outcome::Q0R1)] == p_after_q0r0);

  // Both sides also break down on the remaining off-path outcomes.
  for (Outcome y : {Outcome::Out, Outcome::Q0R0, Outcome::Q1R0}) {
    CHECK(grim.client.next[0][static_cast<int>(y)] == c_after_q0r1);
    CHECK(grim.provider.next[0][static_cast<int>(y)] == p_after_q0r0);
  }
}

TEST_CASE("profile registry") {
  REQUIRE(find_profile("grim") != nullptr);
  REQUIRE(find_profile("commitment") != nullptr);
  REQUIRE(find_profile("defect") != nullptr);
  REQUIRE(find_profile("out") != nullptr);
  CHECK(find_profile("nope") == nullptr);

  const StrategyProfile& commitment = *find_profile("commitment");
  CHECK(commitment.client.act[0].w[static_cast<int>(ClientStrategy::In01)] == 1.0);
  CHECK(commitment.provider.act[0].w[static_cast<int>(ProviderStrategy::E1LD)] == 1.0);
  CHECK(commitment.client.states() == 1);

  const StrategyProfile& defect = *find_profile("defect");
  CHECK(defect.provider.act[0].w[static_cast<int>(ProviderStrategy::E0D)] == 1.0);

  // Transitions are total over the outcome set in every builtin automaton.
  for (const auto& profile : builtin_profiles()) {
    for (int s = 0; s < profile.client.states(); ++s)
      for (int y = 0; y < kOutcomes; ++y) {
        REQUIRE(profile.client.next[s][y] >= 0);
        REQUIRE(profile.client.next[s][y] < profile.client.states());
      }
    for (int s = 0; s < profile.provider.states(); ++s)
      for (int y = 0; y < kOutcomes; ++y) {
        REQUIRE(profile.provider.next[s][y] >= 0);
        REQUIRE(profile.provider.next[s][y] < profile.provider.states());
      }
  }
}
