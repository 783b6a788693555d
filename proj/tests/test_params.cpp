#include <doctest.h>

#include <cmath>

#include "sanction/params.hpp"

using namespace sanction;

TEST_CASE("parameter file round trip") {
  const std::string text =
      "# demo market\n"
      "p = 1\nu = 2\nc = 0.8\nalpha = 0.99\nrho = 0.2\n"
      "eps = 0.01\neps_bar = 2.5\ndelta_hat = 0.996\nN = 43\ndelta = 0.84\n";
  const MarketParams m = parse_params(text, "demo");
  const MarketParams ref = pizza_params();
  CHECK(m.p == ref.p);
  CHECK(m.u == ref.u);
  CHECK(m.c == ref.c);
  CHECK(m.alpha == ref.alpha);
  CHECK(m.rho == ref.rho);
  CHECK(m.eps == ref.eps);
  CHECK(m.eps_bar == ref.eps_bar);
  CHECK(m.delta_hat == ref.delta_hat);
  CHECK(m.interleave == ref.interleave);
  CHECK(m.delta == ref.delta);
}

TEST_CASE("delta derives from delta_hat^N when absent") {
  const std::string text =
      "p 1\nu 2\nc 0.8\nalpha 0.99\nrho 0.2\neps 0.01\neps_bar 2.5\ndelta_hat 0.996\nN 43\n";
  const MarketParams m = parse_params(text, "demo");
  CHECK(m.delta == doctest::Approx(std::pow(0.996, 43)).epsilon(1e-15));
  CHECK(m.delta_matches_interleave());
}

TEST_CASE("explicit delta wins and the gap is visible") {
  const MarketParams m = pizza_params();
  CHECK(m.delta == 0.84);
  CHECK(!m.delta_matches_interleave());
  CHECK(m.delta_from_interleave() == doctest::Approx(std::pow(0.996, 43)).epsilon(1e-15));
}

TEST_CASE("parse failures") {
  CHECK_THROWS_AS(parse_params("p 1\n", "x"), ValidationError);    // missing keys
  CHECK_THROWS_AS(parse_params("p 1 2\n", "x"), ValidationError);  // trailing token
  CHECK_THROWS_AS(
      parse_params("p 1\nu 2\nc 0.8\nalpha 0.99\nrho 0.2\neps 0\neps_bar 0\ndelta_hat 0.9\nN 1\nq 3\n",
                   "x"),
      ValidationError);  // unknown key
  CHECK_THROWS_AS(load_params("/nonexistent/params.kv"), ValidationError);
}

TEST_CASE("constructor invariants") {
  auto ok = [] { return MarketParams::validated(1, 2, 0.8, 0.99, 0.2, 0.01, 2.5, 0.9, 1, 0.9); };
  CHECK_NOTHROW(ok());
  CHECK_THROWS_AS(MarketParams::validated(0, 2, 0.8, 0.99, 0.2, 0.01, 2.5, 0.9, 1, 0.9),
                  ValidationError);
  CHECK_THROWS_AS(MarketParams::validated(1, 2, 1.0, 0.99, 0.2, 0.01, 2.5, 0.9, 1, 0.9),
                  ValidationError);  // alpha p <= c
  CHECK_THROWS_AS(MarketParams::validated(1, 2, 0.8, 1.0, 0.2, 0.01, 2.5, 0.9, 1, 0.9),
                  ValidationError);
  CHECK_THROWS_AS(MarketParams::validated(1, 2, 0.8, 0.99, -0.1, 0.01, 2.5, 0.9, 1, 0.9),
                  ValidationError);
  CHECK_THROWS_AS(MarketParams::validated(1, 2, 0.8, 0.99, 0.2, 0.01, 2.5, 1.1, 1, 0.9),
                  ValidationError);
  CHECK_THROWS_AS(MarketParams::validated(1, 2, 0.8, 0.99, 0.2, 0.01, 2.5, 0.9, 1, 1.2),
                  ValidationError);
}

TEST_CASE("market viability flag") {
  CHECK(pizza_params().market_viable());
  const MarketParams bad =
      MarketParams::validated(1.0, 2.0, 0.3, 0.4, 0.05, 0.01, 1.0, 0.9, 1.0, 0.9);
  CHECK(!bad.market_viable());  // stored, not enforced
}
