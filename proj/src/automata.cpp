#include "sanction/automata.hpp"

namespace sanction {

namespace {

std::array<int, kOutcomes> stay(int s) { return {s, s, s, s, s, s}; }

bool on_path_grim(Outcome y) { return y == Outcome::Q1R1 || y == Outcome::Rollback; }

}  // namespace

ClientAutomaton constant_client(ClientStrategy s) {
  ClientAutomaton a;
  a.name = std::string(name(s)) + "-always";
  a.act = {MixedClient::pure(s)};
  a.next = {stay(0)};
  return a;
}

ProviderAutomaton constant_provider(ProviderStrategy s) {
  ProviderAutomaton a;
  a.name = std::string(name(s)) + "-always";
  a.act = {MixedProvider::pure(s)};
  a.next = {stay(0)};
  return a;
}

ClientAutomaton grim_client() {
  ClientAutomaton a;
  a.name = "grim-client";
  a.act = {MixedClient::pure(ClientStrategy::In11), MixedClient::pure(ClientStrategy::Out)};
  a.next.resize(2);
  for (int y = 0; y < kOutcomes; ++y)
    a.next[0][y] = on_path_grim(static_cast<Outcome>(y)) ? 0 : 1;
  a.next[1] = stay(1);
  return a;
}

ProviderAutomaton grim_provider() {
  ProviderAutomaton a;
  a.name = "grim-provider";
  a.act = {MixedProvider::pure(ProviderStrategy::E1LD), MixedProvider::pure(ProviderStrategy::E0D)};
  a.next.resize(2);
  for (int y = 0; y < kOutcomes; ++y)
    a.next[0][y] = on_path_grim(static_cast<Outcome>(y)) ? 0 : 1;
  a.next[1] = stay(1);
  return a;
}

const std::vector<StrategyProfile>& builtin_profiles() {
  static const std::vector<StrategyProfile> profiles = [] {
    std::vector<StrategyProfile> v;
    v.push_back({"grim", grim_client(), grim_provider()});
    v.push_back({"commitment", constant_client(ClientStrategy::In01),
                 constant_provider(ProviderStrategy::E1LD)});
    v.push_back({"defect", constant_client(ClientStrategy::In11),
                 constant_provider(ProviderStrategy::E0D)});
    v.push_back({"out", constant_client(ClientStrategy::Out),
                 constant_provider(ProviderStrategy::E0D)});
    return v;
  }();
  return profiles;
}

const StrategyProfile* find_profile(const std::string& name) {
  for (const auto& p : builtin_profiles())
    if (p.name == name) return &p;
  return nullptr;
}

}  // namespace sanction
