#include "sanction/ppe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sanction/bounds.hpp"
#include "sanction/linprog.hpp"
#include "sanction/parallel.hpp"

namespace sanction {

namespace {

double cross(PayoffPair o, PayoffPair a, PayoffPair b) {
  return (a.client - o.client) * (b.provider - o.provider) -
         (a.provider - o.provider) * (b.client - o.client);
}

// Andrew's monotone chain, counterclockwise, collinear points dropped.
std::vector<PayoffPair> convex_hull(std::vector<PayoffPair> pts) {
  std::sort(pts.begin(), pts.end(), [](PayoffPair a, PayoffPair b) {
    return a.client < b.client || (a.client == b.client && a.provider < b.provider);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](PayoffPair a, PayoffPair b) {
                          return a.client == b.client && a.provider == b.provider;
                        }),
            pts.end());
  const int n = static_cast<int>(pts.size());
  if (n <= 2) return pts;
  std::vector<PayoffPair> h(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  const int lower = k + 1;
  for (int i = n - 2; i >= 0; --i) {
    while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

bool in_hull(const std::vector<PayoffPair>& hull, PayoffPair p, double tol) {
  if (hull.empty()) return false;
  if (hull.size() == 1)
    return std::fabs(p.client - hull[0].client) <= tol &&
           std::fabs(p.provider - hull[0].provider) <= tol;
  if (hull.size() == 2) {
    const double c = cross(hull[0], hull[1], p);
    const double len = std::hypot(hull[1].client - hull[0].client,
                                  hull[1].provider - hull[0].provider);
    if (std::fabs(c) > tol * std::max(1.0, len)) return false;
    const double t = ((p.client - hull[0].client) * (hull[1].client - hull[0].client) +
                      (p.provider - hull[0].provider) * (hull[1].provider - hull[0].provider)) /
                     (len * len);
    return t >= -tol && t <= 1.0 + tol;
  }
  for (size_t i = 0; i < hull.size(); ++i) {
    const PayoffPair a = hull[i];
    const PayoffPair b = hull[(i + 1) % hull.size()];
    if (cross(a, b, p) < -tol) return false;
  }
  return true;
}

struct PureProfile {
  ClientStrategy sc;
  ProviderStrategy sp;
};

const std::array<PureProfile, 30>& all_profiles() {
  static const std::array<PureProfile, 30> ps = [] {
    std::array<PureProfile, 30> v{};
    int k = 0;
    for (int i = 0; i < kClientStrategies; ++i)
      for (int j = 0; j < kProviderStrategies; ++j)
        v[k++] = {static_cast<ClientStrategy>(i), static_cast<ProviderStrategy>(j)};
    return v;
  }();
  return ps;
}

}  // namespace

int PayoffSet::count() const {
  int n = 0;
  for (uint8_t b : member) n += b != 0;
  return n;
}

std::vector<PayoffPair> PayoffSet::members() const {
  std::vector<PayoffPair> pts;
  for (int j = 0; j < np; ++j)
    for (int i = 0; i < nc; ++i)
      if (at(i, j)) pts.push_back(point(i, j));
  return pts;
}

std::vector<PayoffPair> PayoffSet::hull() const { return convex_hull(members()); }

bool PayoffSet::contains_exact(PayoffPair v, double tol) const {
  for (int j = 0; j < np; ++j)
    for (int i = 0; i < nc; ++i)
      if (at(i, j) && std::fabs(point(i, j).client - v.client) <= tol &&
          std::fabs(point(i, j).provider - v.provider) <= tol)
        return true;
  return false;
}

bool PayoffSet::contains_within_cells(PayoffPair v, int cells) const {
  const double reach = grid * cells + 1e-12;
  for (int j = 0; j < np; ++j)
    for (int i = 0; i < nc; ++i)
      if (at(i, j) && std::fabs(point(i, j).client - v.client) <= reach &&
          std::fabs(point(i, j).provider - v.provider) <= reach)
        return true;
  return false;
}

PayoffSet PayoffSet::full_rectangle(const MarketParams& m, double grid) {
  if (!(grid >= 1e-3)) throw ValidationError("ppe: grid must be >= 1e-3");
  PayoffSet s;
  s.grid = grid;
  s.vc0 = m.minimax_client();
  s.vp0 = 0.0;

  double vc_max = s.vc0;
  for (const auto& pr : all_profiles())
    vc_max = std::max(vc_max, stage_payoffs(m, pr.sc, pr.sp).client);
  double vp_max = 0.0;
  for (const PayoffPair& v : pareto_frontier(m)) vp_max = std::max(vp_max, v.provider);

  s.nc = static_cast<int>(std::floor((vc_max - s.vc0) / grid + 1e-9)) + 1;
  s.np = static_cast<int>(std::floor((vp_max - s.vp0) / grid + 1e-9)) + 1;
  s.member.assign(static_cast<size_t>(s.nc) * s.np, 1);
  s.direct.assign(s.member.size(), 0);
  s.profile.assign(s.member.size(), -1);
  return s;
}

PayoffSet PayoffSet::singleton_static(const MarketParams& m, double grid) {
  PayoffSet s = full_rectangle(m, grid);
  std::fill(s.member.begin(), s.member.end(), 0);
  std::fill(s.direct.begin(), s.direct.end(), 0);
  s.member[s.idx(0, 0)] = 1;
  s.direct[s.idx(0, 0)] = 1;
  s.profile[s.idx(0, 0)] =
      static_cast<int16_t>(static_cast<int>(ClientStrategy::Out) * kProviderStrategies +
                           static_cast<int>(ProviderStrategy::E0D));
  return s;
}

namespace {

std::optional<ProfileCertificate> enforce_with_hull(const std::vector<PayoffPair>& hull,
                                                    const MarketParams& m, double delta,
                                                    PayoffPair v, ClientStrategy sc,
                                                    ProviderStrategy sp, double ic_tol) {
  if (hull.empty()) return std::nullopt;
  const int K = static_cast<int>(hull.size());

  const PayoffPair g = stage_payoffs(m, sc, sp);
  const OutcomeDist pi = outcome_distribution(m, sc, sp);
  const PayoffPair target{(v.client - (1.0 - delta) * g.client) / delta,
                          (v.provider - (1.0 - delta) * g.provider) / delta};
  if (!in_hull(hull, target, 1e-7)) return std::nullopt;

  // Variables: lambda[y][k] >= 0 with sum_k lambda[y][k] = 1; W(y) is the
  // induced hull point. Promise keeping is an equality, deviations are
  // one-sided.
  LpProblem lp;
  lp.nvars = kOutcomes * K;
  auto var = [K](int y, int k) { return y * K + k; };

  for (int coord = 0; coord < 2; ++coord) {
    std::vector<double> row(lp.nvars, 0.0);
    for (int y = 0; y < kOutcomes; ++y) {
      if (pi[y] == 0.0) continue;
      for (int k = 0; k < K; ++k)
        row[var(y, k)] = pi[y] * (coord == 0 ? hull[k].client : hull[k].provider);
    }
    lp.add_eq(std::move(row), coord == 0 ? target.client : target.provider);
  }
  for (int y = 0; y < kOutcomes; ++y) {
    std::vector<double> row(lp.nvars, 0.0);
    for (int k = 0; k < K; ++k) row[var(y, k)] = 1.0;
    lp.add_eq(std::move(row), 1.0);
  }
  for (int a = 0; a < kClientStrategies; ++a) {
    const auto dev = static_cast<ClientStrategy>(a);
    if (dev == sc) continue;
    const OutcomeDist dd = outcome_distribution(m, dev, sp);
    std::vector<double> row(lp.nvars, 0.0);
    for (int y = 0; y < kOutcomes; ++y) {
      if (dd[y] == 0.0) continue;
      for (int k = 0; k < K; ++k) row[var(y, k)] = delta * dd[y] * hull[k].client;
    }
    lp.add_le(std::move(row), v.client - (1.0 - delta) * stage_payoffs(m, dev, sp).client + ic_tol);
  }
  for (int b = 0; b < kProviderStrategies; ++b) {
    const auto dev = static_cast<ProviderStrategy>(b);
    if (dev == sp) continue;
    const OutcomeDist dd = outcome_distribution(m, sc, dev);
    std::vector<double> row(lp.nvars, 0.0);
    for (int y = 0; y < kOutcomes; ++y) {
      if (dd[y] == 0.0) continue;
      for (int k = 0; k < K; ++k) row[var(y, k)] = delta * dd[y] * hull[k].provider;
    }
    lp.add_le(std::move(row),
              v.provider - (1.0 - delta) * stage_payoffs(m, sc, dev).provider + ic_tol);
  }

  const auto x = lp_feasible_point(lp, 1e-9);
  if (!x) return std::nullopt;

  ProfileCertificate cert;
  cert.sc = sc;
  cert.sp = sp;
  for (int y = 0; y < kOutcomes; ++y) {
    PayoffPair w{};
    for (int k = 0; k < K; ++k) w = w + (*x)[var(y, k)] * hull[k];
    cert.w[y] = w;
  }
  return cert;
}

}  // namespace

std::optional<ProfileCertificate> enforce_at(const PayoffSet& cont, const MarketParams& m,
                                             double delta, PayoffPair v, ClientStrategy sc,
                                             ProviderStrategy sp, double ic_tol) {
  return enforce_with_hull(cont.hull(), m, delta, v, sc, sp, ic_tol);
}

namespace {

PayoffSet aps_step_impl(const PayoffSet& set, const MarketParams& m, double delta, double ic_tol,
                        bool members_only) {
  if (set.count() == 0) throw ValidationError("aps_step: input set is empty");

  PayoffSet out = set;
  std::fill(out.member.begin(), out.member.end(), 0);
  out.direct.assign(out.member.size(), 0);
  out.profile.assign(out.member.size(), -1);

  const std::vector<PayoffPair> hull = set.hull();
  const int total = set.nc * set.np;
  parallel_for(total, [&](int cell) {
    const int i = cell % set.nc;
    const int j = cell / set.nc;
    if (members_only && !set.at(i, j)) return;
    const PayoffPair v = set.point(i, j);
    for (int pidx = 0; pidx < 30; ++pidx) {
      const auto& pr = all_profiles()[pidx];
      if (enforce_with_hull(hull, m, delta, v, pr.sc, pr.sp, ic_tol)) {
        out.member[out.idx(i, j)] = 1;
        out.direct[out.idx(i, j)] = 1;
        out.profile[out.idx(i, j)] = static_cast<int16_t>(pidx);
        return;
      }
    }
  });

  if (out.count() == 0) return PayoffSet::singleton_static(m, set.grid);

  // Public randomization: grid points inside the hull of the enforceable
  // points join the set.
  const std::vector<PayoffPair> dhull = convex_hull(out.members());
  for (int j = 0; j < set.np; ++j) {
    for (int i = 0; i < set.nc; ++i) {
      if (out.at(i, j)) continue;
      if (members_only && !set.at(i, j)) continue;
      if (in_hull(dhull, set.point(i, j), 1e-9)) out.member[out.idx(i, j)] = 1;
    }
  }
  return out;
}

}  // namespace

PayoffSet aps_step(const PayoffSet& set, const MarketParams& m, double delta, double ic_tol) {
  return aps_step_impl(set, m, delta, ic_tol, false);
}

PpeResult compute_ppe_set(const MarketParams& m, double delta, double grid, int max_iters,
                          double ic_tol) {
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("ppe: delta must be in (0,1)");
  PpeResult r;
  r.set = PayoffSet::full_rectangle(m, grid);
  for (int it = 0; it < max_iters; ++it) {
    PayoffSet next = aps_step_impl(r.set, m, delta, ic_tol, true);
    ++r.iterations;
    const bool fixed = next.member == r.set.member;
    r.set = std::move(next);
    if (fixed) {
      r.converged = true;
      return r;
    }
  }
  r.converged = false;
  return r;
}

std::optional<EnforcementCertificate> reconstruct_certificate(const PayoffSet& set,
                                                              const MarketParams& m, double delta,
                                                              PayoffPair v, double ic_tol) {
  const std::vector<PayoffPair> hull = set.hull();
  for (const auto& pr : all_profiles()) {
    if (auto cert = enforce_with_hull(hull, m, delta, v, pr.sc, pr.sp, ic_tol)) {
      EnforcementCertificate ec;
      ec.components.push_back({1.0, v, *cert});
      return ec;
    }
  }

  // Not directly enforceable: decompose over the directly enforceable points
  // via a triangle fan of their hull.
  std::vector<PayoffPair> direct_pts;
  for (int j = 0; j < set.np; ++j)
    for (int i = 0; i < set.nc; ++i)
      if (set.direct[set.idx(i, j)]) direct_pts.push_back(set.point(i, j));
  const std::vector<PayoffPair> dhull = convex_hull(direct_pts);
  if (dhull.size() < 3 || !in_hull(dhull, v, 1e-9)) return std::nullopt;

  for (size_t t = 1; t + 1 < dhull.size(); ++t) {
    const PayoffPair a = dhull[0], b = dhull[t], c = dhull[t + 1];
    const double det = cross(a, b, c);
    if (std::fabs(det) < 1e-15) continue;
    const double wb = cross(a, v, c) / det;    // barycentric weights
    const double wc = cross(a, b, v) / det;
    const double wa = 1.0 - wb - wc;
    if (wa < -1e-9 || wb < -1e-9 || wc < -1e-9) continue;

    EnforcementCertificate ec;
    for (auto [w, pt] : {std::pair{wa, a}, std::pair{wb, b}, std::pair{wc, c}}) {
      if (w <= 1e-12) continue;
      std::optional<ProfileCertificate> cert;
      for (const auto& pr : all_profiles()) {
        cert = enforce_with_hull(hull, m, delta, pt, pr.sc, pr.sp, ic_tol);
        if (cert) break;
      }
      if (!cert) return std::nullopt;
      ec.components.push_back({w, pt, *cert});
    }
    return ec;
  }
  return std::nullopt;
}

double certificate_report0_prob(const MarketParams& m, const EnforcementCertificate& cert) {
  double pr = 0.0;
  for (const auto& comp : cert.components) {
    const OutcomeDist d = outcome_distribution(m, comp.cert.sc, comp.cert.sp);
    pr += comp.weight *
          (d[static_cast<int>(Outcome::Q0R0)] + d[static_cast<int>(Outcome::Q1R0)]);
  }
  return pr;
}

Prop2Result check_prop2(const PayoffSet& set, const MarketParams& m, double delta, double tol) {
  Prop2Result res;
  const std::vector<PayoffPair> hull = set.hull();
  auto report0 = [&](const PureProfile& pr) {
    const OutcomeDist d = outcome_distribution(m, pr.sc, pr.sp);
    return d[static_cast<int>(Outcome::Q0R0)] + d[static_cast<int>(Outcome::Q1R0)];
  };

  for (int j = 0; j < set.np; ++j) {
    int imax = -1;
    for (int i = set.nc - 1; i >= 0; --i) {
      if (set.at(i, j)) {
        imax = i;
        break;
      }
    }
    if (imax < 0) continue;
    const PayoffPair v = set.point(imax, j);

    // The client-best point at this provider level must be supportable with
    // zero probability of negative-report outcomes. A point enforceable only
    // through report-0 stage play contradicts the frontier characterization.
    bool clean = false;
    for (const auto& pr : all_profiles()) {
      if (report0(pr) > tol) continue;
      if (enforce_with_hull(hull, m, delta, v, pr.sc, pr.sp, 1e-9)) {
        clean = true;
        break;
      }
    }
    if (clean) continue;
    res.pass = false;
    for (const auto& pr : all_profiles()) {
      if (report0(pr) <= tol) continue;
      if (enforce_with_hull(hull, m, delta, v, pr.sc, pr.sp, 1e-9)) {
        res.counterexample = {v, pr.sc, pr.sp, report0(pr)};
        return res;
      }
    }
    res.counterexample = {v, ClientStrategy::Out, ProviderStrategy::E0L, 0.0};
    return res;
  }
  res.pass = true;
  return res;
}

Prop3Result check_prop3(const PayoffSet& set, const MarketParams& m) {
  Prop3Result r;
  double vmin = std::numeric_limits<double>::infinity();
  for (int j = 0; j < set.np; ++j)
    for (int i = 0; i < set.nc; ++i)
      if (set.at(i, j)) vmin = std::min(vmin, set.point(i, j).client);
  r.min_client_payoff = vmin;
  r.implied_gamma = gamma_hat(m, vmin);
  r.gamma_limit = gamma_bound(m) + set.grid / std::min(m.p, m.u) + 1e-12;
  r.pass = vmin >= m.minimax_client() - set.grid - 1e-12 && r.implied_gamma <= r.gamma_limit;
  return r;
}

}  // namespace sanction
