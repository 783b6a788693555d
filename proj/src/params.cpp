#include "sanction/params.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace sanction {

MarketParams MarketParams::validated(double p, double u, double c, double alpha,
                                     double rho, double eps, double eps_bar,
                                     double delta_hat, double interleave,
                                     double delta) {
  auto fail = [](const std::string& msg) { throw ValidationError("params: " + msg); };
  if (!(p > 0.0)) fail("p must be > 0");
  if (!(u > 0.0)) fail("u must be > 0");
  if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha must be in (0,1)");
  if (!(alpha * p > c)) fail("alpha*p must exceed c (effort must be individually rational)");
  if (!(c >= 0.0)) fail("c must be >= 0");
  if (!(rho >= 0.0)) fail("rho must be >= 0");
  if (!(eps >= 0.0)) fail("eps must be >= 0");
  if (!(eps_bar >= 0.0)) fail("eps_bar must be >= 0");
  if (!(delta_hat > 0.0 && delta_hat < 1.0)) fail("delta_hat must be in (0,1)");
  if (!(interleave >= 1.0)) fail("N must be >= 1");

  MarketParams m;
  m.p = p;
  m.u = u;
  m.c = c;
  m.alpha = alpha;
  m.rho = rho;
  m.eps = eps;
  m.eps_bar = eps_bar;
  m.delta_hat = delta_hat;
  m.interleave = interleave;
  m.delta = delta < 0.0 ? std::pow(delta_hat, interleave) : delta;
  if (!(m.delta > 0.0 && m.delta < 1.0)) fail("delta must be in (0,1)");
  return m;
}

double MarketParams::delta_from_interleave() const {
  return std::pow(delta_hat, interleave);
}

bool MarketParams::delta_matches_interleave(double tol) const {
  return std::fabs(delta - delta_from_interleave()) <= tol;
}

MarketParams MarketParams::with_delta(double d) const {
  if (!(d > 0.0 && d < 1.0)) throw ValidationError("params: delta must be in (0,1)");
  MarketParams m = *this;
  m.delta = d;
  return m;
}

MarketParams pizza_params() {
  return MarketParams::validated(1.0, 2.0, 0.8, 0.99, 0.2, 0.01, 2.5, 0.996, 43.0, 0.84);
}

MarketParams parse_params(const std::string& text, const std::string& origin) {
  std::map<std::string, double> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char& ch : line)
      if (ch == '=' || ch == '\t' || ch == '\r' || ch == ',') ch = ' ';
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    double value;
    if (!(ls >> value))
      throw ValidationError(origin + ":" + std::to_string(lineno) + ": expected `key value`");
    std::string extra;
    if (ls >> extra)
      throw ValidationError(origin + ":" + std::to_string(lineno) + ": trailing content `" + extra + "`");
    if (kv.count(key))
      throw ValidationError(origin + ": duplicate key `" + key + "`");
    kv[key] = value;
  }

  const char* required[] = {"p", "u", "c", "alpha", "rho", "eps", "eps_bar", "delta_hat", "N"};
  for (const char* k : required)
    if (!kv.count(k)) throw ValidationError(origin + ": missing key `" + k + "`");
  for (const auto& [k, v] : kv) {
    (void)v;
    bool known = k == "delta";
    for (const char* r : required) known = known || k == r;
    if (!known) throw ValidationError(origin + ": unknown key `" + k + "`");
  }

  double delta = kv.count("delta") ? kv["delta"] : -1.0;
  return MarketParams::validated(kv["p"], kv["u"], kv["c"], kv["alpha"], kv["rho"],
                                 kv["eps"], kv["eps_bar"], kv["delta_hat"], kv["N"], delta);
}

MarketParams load_params(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open parameter file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_params(buf.str(), path);
}

}  // namespace sanction
