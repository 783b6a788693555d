// sanctsim: reputation-mechanism calculators and simulators.
//
// Subcommands: bounds, simulate, deviation-check, reputation-sim, ppe-set,
// reproduce-pizza. Exit codes: 0 success, 1 validation error, 2 numeric or
// convergence error. SANCTION_SIM_THREADS caps worker parallelism.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "sanction/belief.hpp"
#include "sanction/bounds.hpp"
#include "sanction/deviation.hpp"
#include "sanction/ppe.hpp"
#include "sanction/text.hpp"

namespace fs = std::filesystem;
using namespace sanction;

namespace {

struct SeedRange {
  uint64_t lo = 0, hi = 0;  // inclusive
  uint64_t count() const { return hi - lo + 1; }
};

SeedRange parse_seeds(const std::string& s) {
  SeedRange r;
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      r.lo = r.hi = std::stoull(s);
    } else {
      r.lo = std::stoull(s.substr(0, dots));
      r.hi = std::stoull(s.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw ValidationError("bad seed range `" + s + "` (expected A or A..B)");
  }
  if (r.hi < r.lo) throw ValidationError("empty seed range `" + s + "`");
  return r;
}

TypeSpace parse_prior(const MarketParams& m, const std::string& s, double beta, double nu) {
  TypeSpace t;
  t.malicious_beta = beta;
  t.noisy_nu = nu;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ValidationError("bad prior entry `" + item + "` (expected type=mass)");
    const std::string key = item.substr(0, eq);
    const double mass = std::stod(item.substr(eq + 1));
    switch (client_type_from_name(key)) {
      case ClientTypeKind::Normal: t.normal = mass; break;
      case ClientTypeKind::Commitment: t.commitment = mass; break;
      case ClientTypeKind::Malicious: t.malicious = mass; break;
      case ClientTypeKind::NoisyNormal: t.noisy = mass; break;
    }
  }
  return TypeSpace::validated(m, t);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot write output file: " + path);
  return f;
}

MarketParams load_with_delta(const std::string& path, double delta_override) {
  MarketParams m = load_params(path);
  if (delta_override > 0.0) m = m.with_delta(delta_override);
  return m;
}

void print_kv(std::ostream& os, const std::string& key, const std::string& value,
              const std::string& format) {
  if (format == "csv")
    os << key << ',' << value << '\n';
  else if (format == "kv")
    os << key << ' ' << value << '\n';
  else
    os << "  " << key << std::string(key.size() < 24 ? 24 - key.size() : 1, ' ') << value << '\n';
}

int cmd_bounds(const std::string& params_path, double mu_star, double v_hat_c,
               double delta_override, const std::string& format) {
  if (format != "text" && format != "kv" && format != "csv")
    throw ValidationError("unknown format: " + format + " (expected text|kv|csv)");
  const MarketParams m = load_with_delta(params_path, delta_override);
  std::optional<double> mu = mu_star >= 0.0 ? std::optional<double>(mu_star) : std::nullopt;
  std::optional<double> vc = v_hat_c > -1e300 ? std::optional<double>(v_hat_c) : std::nullopt;
  const BoundReport r = bound_report(m, mu, vc);

  std::ostream& os = std::cout;
  if (format == "csv") os << "key,value\n";
  if (format == "text") os << "bound report (" << params_path << ")\n";
  auto row = [&](const std::string& k, const std::string& v) { print_kv(os, k, v, format); };

  row("delta", fmt9(m.delta));
  row("market_viable", m.market_viable() ? "1" : "0");
  row("delta_threshold", r.delta_threshold ? fmt9(*r.delta_threshold) : "undefined");
  row("gamma", fmt9(r.gamma));
  if (r.gamma_clamped) row("gamma_clamped", "1");
  row("v_p_max", fmt9(r.v_p_max));
  row("pi_bar", fmt9(r.pi_bar));
  row("nu_max", fmt9(r.nu_max));
  if (r.mu_star) {
    row("mu_star", fmt9(*r.mu_star));
    row("k_p", r.k_p ? std::to_string(*r.k_p) : "unbounded");
  }
  if (r.v_hat_c) row("v_hat_c", fmt9(*r.v_hat_c));
  if (r.gamma_hat) row("gamma_hat", fmt9(*r.gamma_hat));
  if (r.reporting) {
    row("v_c_report0", fmt9(r.reporting->report0));
    row("v_c_report1", fmt9(r.reporting->report1));
  }
  if (r.interleave) {
    row("n_interleave_max", std::to_string(r.interleave->n_max));
    row("lifetime_provider", fmt9(r.interleave->lifetime_provider));
    row("lifetime_provider_ceil", std::to_string(r.interleave->lifetime_provider_ceil));
    row("lifetime_client", fmt9(r.interleave->lifetime_client));
    row("lifetime_client_ceil", std::to_string(r.interleave->lifetime_client_ceil));
  }
  return 0;
}

int cmd_simulate(const std::string& params_path, const std::string& profile_name,
                 const std::string& backend_name, const std::string& seeds, int rounds,
                 const std::string& out, double delta_override) {
  const MarketParams m = load_with_delta(params_path, delta_override);
  const StrategyProfile* profile = find_profile(profile_name);
  if (!profile) throw ValidationError("unknown profile: " + profile_name);
  const SeedRange range = parse_seeds(seeds);
  auto backend = make_backend(backend_name, m);

  for (uint64_t seed = range.lo; seed <= range.hi; ++seed) {
    const SimTrace trace = simulate(m, *profile, *backend, seed, rounds);
    std::string path = out;
    if (range.count() > 1) {
      const auto dot = out.rfind('.');
      path = dot == std::string::npos ? out + "-" + std::to_string(seed)
                                      : out.substr(0, dot) + "-" + std::to_string(seed) + out.substr(dot);
    }
    auto f = open_out(path);
    write_trace_csv(f, trace);
    const PayoffPair v = normalized_payoff(trace, m.delta);
    std::cout << "seed " << seed << ": normalized payoff (" << fmt9(v.client) << ", "
              << fmt9(v.provider) << "), empirical gamma " << fmt9(empirical_gamma(trace))
              << ", trace " << path << "\n";
  }
  return 0;
}

int cmd_deviation_check(const std::string& params_path, const std::string& profile_name,
                        double delta, double tol) {
  const MarketParams m = load_params(params_path);
  const StrategyProfile* profile = find_profile(profile_name);
  if (!profile) throw ValidationError("unknown profile: " + profile_name);
  const DeviationCheck res = one_shot_deviation_check(m, *profile, delta, tol);

  std::cout << "profile " << profile->name << ", delta " << fmt9(delta) << ": "
            << (res.pass ? "PASS" : "FAIL") << "\n";
  for (size_t s = 0; s < res.states.size(); ++s) {
    std::cout << "  state " << s << " (client " << res.states[s].first << ", provider "
              << res.states[s].second << "): value (" << fmt9(res.values[s].client) << ", "
              << fmt9(res.values[s].provider) << ")\n";
  }
  for (const auto& f : res.failures) {
    std::cout << "  profitable deviation: state " << f.state << ", "
              << (f.provider ? "provider -> " : "client -> ")
              << (f.provider ? name(static_cast<ProviderStrategy>(f.action))
                             : name(static_cast<ClientStrategy>(f.action)))
              << ", gain " << fmt9(f.gain) << "\n";
  }
  return 0;
}

int cmd_reputation_sim(const std::string& params_path, const std::string& prior_str,
                       const std::string& client_type, const std::string& seeds,
                       const std::string& mode, const std::string& schedule,
                       const std::string& accounting, int rounds, double delta_override,
                       double beta, double nu, const std::string& out) {
  const MarketParams m = load_with_delta(params_path, delta_override);
  const TypeSpace prior = parse_prior(m, prior_str, beta, nu);
  const SeedRange range = parse_seeds(seeds);
  auto f = open_out(out);

  if (mode == "testing") {
    TestingOptions opts;
    opts.horizon = rounds;
    if (schedule == "random")
      opts.schedule = TestingSchedule::Randomized;
    else if (schedule != "earliest")
      throw ValidationError("unknown schedule: " + schedule + " (expected earliest|random)");
    if (accounting == "bayes")
      opts.accounting = BeliefAccounting::ExactBayes;
    else if (accounting != "worstcase")
      throw ValidationError("unknown accounting: " + accounting + " (expected worstcase|bayes)");
    const ClientTypeKind actual = client_type_from_name(client_type);

    f << "seed,test_count\n";
    int max_tests = 0;
    for (uint64_t seed = range.lo; seed <= range.hi; ++seed) {
      const TestingRun run = testing_provider(m, prior, m.delta, seed, actual, opts);
      f << seed << ',' << run.test_count << '\n';
      max_tests = std::max(max_tests, run.test_count);
    }
    const auto cap = k_p(m, prior.commitment);
    std::cout << "max test_count over " << range.count() << " seeds: " << max_tests
              << " (k_p = " << (cap ? std::to_string(*cap) : "unbounded") << ")\n";
    return 0;
  }
  if (mode == "malicious") {
    f << "seed,false_negatives\n";
    int worst = 0;
    for (uint64_t seed = range.lo; seed <= range.hi; ++seed) {
      const CampaignRun run = malicious_campaign_sim(m, prior, seed, rounds);
      f << seed << ',' << run.false_negatives << '\n';
      worst = std::max(worst, run.false_negatives);
    }
    std::cout << "max recorded false negatives per identity: " << worst << "\n";
    return 0;
  }
  if (mode == "noisy") {
    f << "seed,mean_provider_payoff\n";
    double total = 0.0;
    for (uint64_t seed = range.lo; seed <= range.hi; ++seed) {
      const double v = noisy_provider_mean_payoff(m, nu, seed, rounds);
      f << seed << ',' << fmt9(v) << '\n';
      total += v;
    }
    std::cout << "mean provider payoff: " << fmt9(total / range.count())
              << " (formula: " << fmt9(provider_payoff_under_noise(m, nu)) << ")\n";
    return 0;
  }
  throw ValidationError("unknown mode: " + mode + " (expected testing|malicious|noisy)");
}

std::string profile_label(const EnforcementCertificate& cert) {
  auto one = [](const ProfileCertificate& c) {
    return std::string(name(c.sc)) + "+" + std::string(name(c.sp));
  };
  if (cert.components.size() == 1) return one(cert.components[0].cert);
  std::string s = "mix(";
  for (size_t i = 0; i < cert.components.size(); ++i) {
    if (i) s += ";";
    s += one(cert.components[i].cert) + ":" + fmt9(cert.components[i].weight);
  }
  return s + ")";
}

int cmd_ppe_set(const std::string& params_path, double delta, double grid, int max_iters,
                const std::string& out, double tol) {
  const MarketParams m = load_params(params_path);
  const PpeResult res = compute_ppe_set(m, delta, grid, max_iters, tol);

  auto f = open_out(out);
  f << "v_client,v_provider,enforcing_profile,pr_out,pr_rollback,pr_q0r1,pr_q0r0,pr_q1r1,pr_q1r0\n";
  for (int j = 0; j < res.set.np; ++j) {
    for (int i = 0; i < res.set.nc; ++i) {
      if (!res.set.at(i, j)) continue;
      const PayoffPair v = res.set.point(i, j);
      const auto cert = reconstruct_certificate(res.set, m, delta, v, tol);
      std::string label = "none";
      OutcomeDist dist{};
      if (cert) {
        label = profile_label(*cert);
        for (const auto& comp : cert->components) {
          const OutcomeDist d = outcome_distribution(m, comp.cert.sc, comp.cert.sp);
          for (int y = 0; y < kOutcomes; ++y) dist[y] += comp.weight * d[y];
        }
      }
      f << fmt9(v.client) << ',' << fmt9(v.provider) << ',' << label;
      for (int y = 0; y < kOutcomes; ++y) f << ',' << fmt9(dist[y]);
      f << '\n';
    }
  }

  std::cout << "ppe set: " << res.set.count() << " points, " << res.iterations << " iterations, "
            << (res.converged ? "converged" : "NOT converged") << ", written to " << out << "\n";
  return res.converged ? 0 : 2;
}

int cmd_reproduce_pizza(const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  const MarketParams pizza = pizza_params();

  {
    auto f = open_out((fs::path(out_dir) / "pizza-table.csv").string());
    const InterleaveReport il = interleave_and_lifetimes(pizza);
    const PayoffPair mm = minimax(pizza);
    const PayoffPair coop = stage_payoffs(pizza, ClientStrategy::In11, ProviderStrategy::E1LD);
    f << "metric,value\n";
    f << "delta_threshold," << fmt9(delta_threshold(pizza)) << '\n';
    f << "minimax_client," << fmt9(mm.client) << '\n';
    f << "minimax_provider," << fmt9(mm.provider) << '\n';
    f << "coop_client," << fmt9(coop.client) << '\n';
    f << "coop_provider," << fmt9(coop.provider) << '\n';
    f << "gamma," << fmt9(gamma_bound(pizza)) << '\n';
    f << "v_p_max," << fmt9(provider_max_ppe_payoff(pizza)) << '\n';
    f << "n_interleave_max," << il.n_max << '\n';
    f << "lifetime_provider," << fmt9(il.lifetime_provider) << '\n';
    f << "lifetime_provider_ceil," << il.lifetime_provider_ceil << '\n';
    f << "lifetime_client," << fmt9(il.lifetime_client) << '\n';
    f << "lifetime_client_ceil," << il.lifetime_client_ceil << '\n';
  }

  // Theorem-1 sweep at delta = 0.95 (one client interaction per 1/(1-delta) =
  // 20 rounds) and eps_bar = 2.5.
  const MarketParams m95 = pizza.with_delta(0.95);
  {
    auto f = open_out((fs::path(out_dir) / "figure3.csv").string());
    f << "mu_star,k_p\n";
    for (int i = 0; i <= 90; ++i) {
      const double mu = 0.05 + 0.01 * i;
      const auto k = k_p(m95, mu);
      f << fmt9(mu) << ',' << (k ? std::to_string(*k) : "unbounded") << '\n';
    }
  }
  {
    auto f = open_out((fs::path(out_dir) / "figure4.csv").string());
    f << "mu_star,gamma,gamma_hat,bound\n";
    const double g = gamma_bound(m95);
    for (int i = 0; i <= 90; ++i) {
      const double mu = 0.05 + 0.01 * i;
      const auto k = k_p(m95, mu);
      double gh;
      if (!k)
        gh = g;  // no reputation refinement without a finite test cap
      else if (*k == 0)
        gh = 0.0;  // the provider never delivers low quality
      else
        gh = gamma_hat(m95, v_hat_c_threshold(m95, *k));
      f << fmt9(mu) << ',' << fmt9(g) << ',' << fmt9(gh) << ',' << fmt9(std::min(g, gh)) << '\n';
    }
  }

  std::cout << "wrote pizza-table.csv, figure3.csv, figure4.csv to " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sanctioning reputation mechanism toolkit"};
  app.require_subcommand(1);

  std::string params_path, profile = "grim", backend = "direct", seeds = "0", out, format = "text";
  std::string prior = "normal=0.8,commitment=0.2", client_type = "commitment";
  std::string mode = "testing", schedule = "earliest", accounting = "worstcase";
  std::string out_dir = ".";
  double mu_star = -1.0, v_hat_c = -1e301, delta = -1.0, tol = 1e-9;
  double grid = 0.02, beta = 1.0, nu = 0.0;
  int rounds = 1000, max_iters = 500;

  auto* b = app.add_subcommand("bounds", "closed-form bounds and thresholds");
  b->add_option("--params", params_path, "parameter file")->required();
  b->add_option("--mu-star", mu_star, "prior commitment mass for k_p");
  b->add_option("--v-hat-c", v_hat_c, "complete-information continuation payoff");
  b->add_option("--delta", delta, "override the file's delta");
  b->add_option("--format", format, "text|kv|csv");

  auto* s = app.add_subcommand("simulate", "seeded repeated-game rollouts");
  s->add_option("--params", params_path, "parameter file")->required();
  s->add_option("--profile", profile, "grim|commitment|defect|out");
  s->add_option("--backend", backend, "direct|license");
  s->add_option("--seeds", seeds, "seed or inclusive range A..B");
  s->add_option("--rounds", rounds, "rounds per rollout");
  s->add_option("--out", out, "trace CSV path")->required();
  s->add_option("--delta", delta, "override the file's delta");

  auto* d = app.add_subcommand("deviation-check", "one-shot deviation verification");
  d->add_option("--params", params_path, "parameter file")->required();
  d->add_option("--profile", profile, "strategy profile");
  d->add_option("--delta", delta, "discount factor")->required();
  d->add_option("--tol", tol, "deviation gain tolerance");

  auto* r = app.add_subcommand("reputation-sim", "incomplete-information simulations");
  r->add_option("--params", params_path, "parameter file")->required();
  r->add_option("--prior", prior, "e.g. normal=0.7,commitment=0.2,malicious=0.1");
  r->add_option("--client-type", client_type, "normal|commitment|malicious|noisy");
  r->add_option("--seeds", seeds, "seed or inclusive range A..B");
  r->add_option("--mode", mode, "testing|malicious|noisy");
  r->add_option("--schedule", schedule, "earliest|random testing schedule");
  r->add_option("--accounting", accounting, "worstcase|bayes belief accounting");
  r->add_option("--rounds", rounds, "rounds per rollout");
  r->add_option("--delta", delta, "override the file's delta");
  r->add_option("--beta", beta, "malicious external reward");
  r->add_option("--nu", nu, "noisy false-negative rate");
  r->add_option("--out", out, "per-seed CSV path")->required();

  auto* p = app.add_subcommand("ppe-set", "equilibrium payoff set approximation");
  p->add_option("--params", params_path, "parameter file")->required();
  p->add_option("--delta", delta, "discount factor")->required();
  p->add_option("--grid", grid, "payoff grid resolution (>= 1e-3)");
  p->add_option("--max-iters", max_iters, "iteration cap");
  p->add_option("--tol", tol, "incentive constraint tolerance");
  p->add_option("--out", out, "set CSV path")->required();

  auto* z = app.add_subcommand("reproduce-pizza", "worked-example tables and figure data");
  z->add_option("--out-dir", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (b->parsed()) return cmd_bounds(params_path, mu_star, v_hat_c, delta, format);
    if (s->parsed()) return cmd_simulate(params_path, profile, backend, seeds, rounds, out, delta);
    if (d->parsed()) return cmd_deviation_check(params_path, profile, delta, tol);
    if (r->parsed())
      return cmd_reputation_sim(params_path, prior, client_type, seeds, mode, schedule, accounting,
                                rounds, delta, beta, nu, out);
    if (p->parsed()) return cmd_ppe_set(params_path, delta, grid, max_iters, out, tol);
    if (z->parsed()) return cmd_reproduce_pizza(out_dir);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
