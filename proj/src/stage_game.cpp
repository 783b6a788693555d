#include "sanction/stage_game.hpp"

#include <cmath>

namespace sanction {

std::string_view name(ClientStrategy s) {
  switch (s) {
    case ClientStrategy::Out: return "out";
    case ClientStrategy::In11: return "in11";
    case ClientStrategy::In10: return "in10";
    case ClientStrategy::In01: return "in01";
    case ClientStrategy::In00: return "in00";
  }
  return "?";
}

std::string_view name(ProviderStrategy s) {
  switch (s) {
    case ProviderStrategy::E0L: return "e0l";
    case ProviderStrategy::E0D: return "e0d";
    case ProviderStrategy::E1LL: return "e1ll";
    case ProviderStrategy::E1LD: return "e1ld";
    case ProviderStrategy::E1DL: return "e1dl";
    case ProviderStrategy::E1DD: return "e1dd";
  }
  return "?";
}

std::string_view name(Outcome y) {
  switch (y) {
    case Outcome::Out: return "out";
    case Outcome::Rollback: return "rollback";
    case Outcome::Q0R1: return "q0r1";
    case Outcome::Q0R0: return "q0r0";
    case Outcome::Q1R1: return "q1r1";
    case Outcome::Q1R0: return "q1r0";
  }
  return "?";
}

namespace {

void check_weights(const double* w, int n, const char* side) {
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    if (w[i] < 0.0) throw ValidationError(std::string(side) + " mixture has a negative weight");
    sum += w[i];
  }
  if (std::fabs(sum - 1.0) > 1e-12)
    throw ValidationError(std::string(side) + " mixture weights must sum to 1");
}

// Client report after delivered quality: true = report 0.
bool reports_zero_after_q0(ClientStrategy s) {
  return s == ClientStrategy::In01 || s == ClientStrategy::In00;
}
bool reports_zero_after_q1(ClientStrategy s) {
  return s == ClientStrategy::In10 || s == ClientStrategy::In00;
}

}  // namespace

MixedClient MixedClient::pure(ClientStrategy s) {
  MixedClient m;
  m.w[static_cast<int>(s)] = 1.0;
  return m;
}

MixedClient MixedClient::validated(const std::array<double, kClientStrategies>& w) {
  check_weights(w.data(), kClientStrategies, "client");
  return MixedClient{w};
}

MixedProvider MixedProvider::pure(ProviderStrategy s) {
  MixedProvider m;
  m.w[static_cast<int>(s)] = 1.0;
  return m;
}

MixedProvider MixedProvider::validated(const std::array<double, kProviderStrategies>& w) {
  check_weights(w.data(), kProviderStrategies, "provider");
  return MixedProvider{w};
}

PayoffPair stage_payoffs(const MarketParams& m, ClientStrategy sc, ProviderStrategy sp) {
  const double p = m.p, u = m.u, c = m.c, a = m.alpha, e = m.eps, eb = m.eps_bar;

  if (sc == ClientStrategy::Out) return {u - p * (1.0 + m.rho), 0.0};

  const bool z0 = reports_zero_after_q0(sc);  // reports 0 on delivered low quality
  const bool z1 = reports_zero_after_q1(sc);  // reports 0 on delivered high quality

  switch (sp) {
    case ProviderStrategy::E0L:
      return {0.0, 0.0};
    case ProviderStrategy::E0D:
      return z0 ? PayoffPair{-p - e, p - eb} : PayoffPair{-p, p};
    case ProviderStrategy::E1LL:
      return {0.0, -c};
    case ProviderStrategy::E1LD:
      return z1 ? PayoffPair{a * (u - p - e), a * (p - eb) - c}
                : PayoffPair{a * (u - p), a * p - c};
    case ProviderStrategy::E1DL:
      return z0 ? PayoffPair{-(1.0 - a) * (p + e), (1.0 - a) * (p - eb) - c}
                : PayoffPair{-(1.0 - a) * p, (1.0 - a) * p - c};
    case ProviderStrategy::E1DD:
      if (!z0 && !z1) return {a * u - p, p - c};
      if (!z0 && z1) return {a * (u - e) - p, p - a * eb - c};
      if (z0 && !z1) return {a * u - (1.0 - a) * e - p, p - (1.0 - a) * eb - c};
      return {a * u - e - p, p - eb - c};
  }
  return {};
}

PayoffPair stage_payoffs(const MarketParams& m, const MixedClient& sc, const MixedProvider& sp) {
  PayoffPair g{};
  for (int i = 0; i < kClientStrategies; ++i) {
    if (sc.w[i] == 0.0) continue;
    for (int j = 0; j < kProviderStrategies; ++j) {
      if (sp.w[j] == 0.0) continue;
      g = g + (sc.w[i] * sp.w[j]) *
                  stage_payoffs(m, static_cast<ClientStrategy>(i), static_cast<ProviderStrategy>(j));
    }
  }
  return g;
}

OutcomeDist outcome_distribution(const MarketParams& m, ClientStrategy sc, ProviderStrategy sp) {
  OutcomeDist d{};
  auto add = [&](Outcome y, double pr) { d[static_cast<int>(y)] += pr; };

  if (sc == ClientStrategy::Out) {
    add(Outcome::Out, 1.0);
    return d;
  }
  const double a = m.alpha;
  const bool z0 = reports_zero_after_q0(sc);
  const bool z1 = reports_zero_after_q1(sc);
  const Outcome low = z0 ? Outcome::Q0R0 : Outcome::Q0R1;
  const Outcome high = z1 ? Outcome::Q1R0 : Outcome::Q1R1;

  switch (sp) {
    case ProviderStrategy::E0L:
    case ProviderStrategy::E1LL:
      add(Outcome::Rollback, 1.0);
      break;
    case ProviderStrategy::E0D:
      add(low, 1.0);
      break;
    case ProviderStrategy::E1LD:
      add(high, a);
      add(Outcome::Rollback, 1.0 - a);
      break;
    case ProviderStrategy::E1DL:
      add(low, 1.0 - a);
      add(Outcome::Rollback, a);
      break;
    case ProviderStrategy::E1DD:
      add(high, a);
      add(low, 1.0 - a);
      break;
  }
  return d;
}

OutcomeDist outcome_distribution(const MarketParams& m, const MixedClient& sc, const MixedProvider& sp) {
  OutcomeDist d{};
  for (int i = 0; i < kClientStrategies; ++i) {
    if (sc.w[i] == 0.0) continue;
    for (int j = 0; j < kProviderStrategies; ++j) {
      if (sp.w[j] == 0.0) continue;
      OutcomeDist cell =
          outcome_distribution(m, static_cast<ClientStrategy>(i), static_cast<ProviderStrategy>(j));
      for (int y = 0; y < kOutcomes; ++y) d[y] += sc.w[i] * sp.w[j] * cell[y];
    }
  }
  return d;
}

PayoffPair tree_payoffs(const MarketParams& m, ClientStrategy sc, ProviderStrategy sp) {
  if (sc == ClientStrategy::Out) return {m.u - m.p * (1.0 + m.rho), 0.0};

  const bool effort = sp == ProviderStrategy::E1LL || sp == ProviderStrategy::E1LD ||
                      sp == ProviderStrategy::E1DL || sp == ProviderStrategy::E1DD;
  auto delivers = [&](bool q1) {
    switch (sp) {
      case ProviderStrategy::E0L: return false;
      case ProviderStrategy::E0D: return true;
      case ProviderStrategy::E1LL: return false;
      case ProviderStrategy::E1LD: return q1;
      case ProviderStrategy::E1DL: return !q1;
      case ProviderStrategy::E1DD: return true;
    }
    return false;
  };

  // Terminal payoffs of the Fig.-1 branch where nature produced quality q1/q0.
  auto terminal = [&](bool q1) -> PayoffPair {
    double vc = -m.p, vp = m.p;  // the client pays on entry
    if (effort) vp -= m.c;
    if (!delivers(q1)) {
      vc += m.p;  // rollback: full reimbursement
      vp -= m.p;
      return {vc, vp};
    }
    if (q1) vc += m.u;
    const bool report0 = q1 ? reports_zero_after_q1(sc) : reports_zero_after_q0(sc);
    if (report0) {
      vc -= m.eps;
      vp -= m.eps_bar;
    }
    return {vc, vp};
  };

  if (!effort) return terminal(false);  // low effort yields low quality surely
  return m.alpha * terminal(true) + (1.0 - m.alpha) * terminal(false);
}

PayoffPair minimax(const MarketParams& m) { return {m.minimax_client(), 0.0}; }

double provider_max_ppe_payoff(const MarketParams& m) {
  if (m.rho <= m.u * (1.0 - m.alpha) / m.p)
    return m.alpha * m.u - m.c - m.u + m.p * (1.0 + m.rho);
  return m.p + m.c * (m.p * m.rho - m.u) / (m.alpha * m.u);
}

std::vector<PayoffPair> pareto_frontier(const MarketParams& m) {
  const PayoffPair floor = minimax(m);
  if (!m.market_viable()) return {floor};

  // Fig.-2 polyline: (in11,e1ld) -> (in11,e1dd) -> (in11,e0d), clipped to the
  // individually rational region v_client >= minimax.
  const PayoffPair raw[3] = {
      stage_payoffs(m, ClientStrategy::In11, ProviderStrategy::E1LD),
      stage_payoffs(m, ClientStrategy::In11, ProviderStrategy::E1DD),
      stage_payoffs(m, ClientStrategy::In11, ProviderStrategy::E0D),
  };

  std::vector<PayoffPair> out;
  for (int i = 0; i < 3; ++i) {
    const PayoffPair& v = raw[i];
    if (v.client >= floor.client) {
      out.push_back(v);
      continue;
    }
    // Crossed below the client floor: emit the intersection point and stop.
    const PayoffPair& prev = raw[i - 1];
    const double t = (prev.client - floor.client) / (prev.client - v.client);
    out.push_back({floor.client, prev.provider + t * (v.provider - prev.provider)});
    break;
  }
  return out;
}

}  // namespace sanction
