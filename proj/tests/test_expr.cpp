#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pfaffian/expr.hpp"
#include "pfaffian/zerotest.hpp"
#include "testutil.hpp"

using namespace pfaffian;
using testutil::Rng;

namespace {
Expr X() { return Expr::var("x"); }
Expr Y() { return Expr::var("y"); }
}  // namespace

TEST_CASE("rational arithmetic stays exact and normalized") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK((Rational(3, 2) * Rational(2, 3)).is_one());
  CHECK(Rational(3, 2).pow_int(3) == Rational(27, 8));
  CHECK(Rational(3, 2).pow_int(-2) == Rational(4, 9));
  Rational r;
  CHECK(Rational(4).exact_root(2, r));
  CHECK(r == Rational(2));
  CHECK(Rational(8, 27).exact_root(3, r));
  CHECK(r == Rational(2, 3));
  CHECK_FALSE(Rational(2).exact_root(2, r));
}

TEST_CASE("construction canonicalizes") {
  // flattening + like-term collection
  CHECK((X() + X()).same_as(2 * X()));
  CHECK((X() + (Y() + X())).same_as(2 * X() + Y()));
  // constant folding
  CHECK((Expr::constant(Rational(1, 3)) + Expr::constant(Rational(1, 6)))
            .value() == Rational(1, 2));
  CHECK((Expr::constant(2) * Expr::constant(3) * X()).same_as(6 * X()));
  CHECK((Expr::constant(0) * X()).is_zero_const());
  // power combination
  CHECK((X() * X()).same_as(Expr::pow(X(), Rational(2))));
  CHECK((Expr::pow(X(), Rational(1, 2)) * Expr::pow(X(), Rational(1, 2)))
            .same_as(X()));
  CHECK((X() / X()).is_one_const());
  // ln(exp(u)) -> u
  CHECK(Expr::ln(Expr::exp(X() + Y())).same_as(X() + Y()));
  // a collapsing power inside a product re-flattens
  Expr root = Expr::pow(X() * Y(), Rational(1, 2));
  CHECK((root * root).same_as(X() * Y()));
  CHECK((Expr::constant(2) * root * root).same_as(2 * (X() * Y())));
  CHECK((Expr::constant(2) * root * root + 2 * (X() * Y()))
            .same_as(4 * (X() * Y())));
  // sin^2 + cos^2 -> 1
  Expr psi = Expr::var("psi");
  Expr pyth = Expr::pow(Expr::sin(psi), Rational(2)) +
              Expr::pow(Expr::cos(psi), Rational(2));
  CHECK(pyth.is_one_const());
  // ... with a shared residual factor, as in the rolling-tire expansion
  Expr c = Expr::var("w");
  Expr e = Expr::sin(psi) * Expr::sin(psi) * c +
           Expr::cos(psi) * Expr::cos(psi) * c;
  CHECK(e.same_as(c));
}

TEST_CASE("differentiate follows the textbook rules") {
  Expr e = X() * Y() + Expr::sin(X());
  CHECK(e.differentiate("x").same_as(Y() + Expr::cos(X())));

  Expr psi = Expr::var("psi");
  CHECK(Expr::sin(psi).differentiate("psi").same_as(Expr::cos(psi)));

  // quotient rule on exp(S)/V, frozen and cross-checked by the
  // finite-difference oracle
  Expr S = Expr::var("S"), V = Expr::var("V");
  Expr q = Expr::exp(S) / V;
  Expr dq = q.differentiate("V");
  Expr expected = -(Expr::exp(S) * Expr::pow(V, Rational(-2)));
  CHECK(dq.same_as(expected));
  Rng rng(7);
  for (int i = 0; i < 10; ++i) {
    std::map<std::string, double> at{{"S", rng.unif(-1.0, 1.0)},
                                     {"V", rng.unif(0.5, 2.0)}};
    double got = dq.eval(at);
    double fd = testutil::central_difference(q, "V", at);
    CHECK(std::abs(got - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("derivative matches finite differences on random expressions") {
  Rng rng(11);
  std::vector<std::string> vars{"x", "y"};
  int checked = 0;
  for (int trial = 0; trial < 25; ++trial) {
    Expr e = testutil::random_smooth(rng, vars);
    Expr de = e.differentiate("x");
    for (int pt = 0; pt < 10; ++pt) {
      auto at = testutil::random_point(rng, vars);
      double fd, got;
      try {
        fd = testutil::central_difference(e, "x", at);
        got = de.eval(at);
      } catch (const EvalError&) {
        continue;
      }
      CHECK(std::abs(got - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("simplify is idempotent and value-preserving") {
  Rng rng(13);
  std::vector<std::string> vars{"x", "y", "z"};
  for (int trial = 0; trial < 30; ++trial) {
    Expr e = testutil::random_smooth(rng, vars);
    Expr s1 = simplify(e);
    CHECK(simplify(s1).same_as(s1));
    for (int pt = 0; pt < 4; ++pt) {
      auto at = testutil::random_point(rng, vars);
      double a, b;
      try {
        a = e.eval(at);
        b = s1.eval(at);
      } catch (const EvalError&) {
        continue;
      }
      CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("eval handles the worked examples and the error cases") {
  Expr e = Expr::pow(X() + Y(), Rational(2));
  CHECK(e.eval({{"x", 1.0}, {"y", 2.0}}) == doctest::Approx(9.0));

  Expr S = Expr::var("S"), V = Expr::var("V");
  CHECK((Expr::exp(S) / V).eval({{"S", 0.0}, {"V", 2.0}}) ==
        doctest::Approx(0.5));
  CHECK(Expr::sin(Expr::var("psi")).eval({{"psi", 0.0}}) ==
        doctest::Approx(0.0));

  CHECK_THROWS_AS(Expr::ln(X()).eval({{"x", -1.0}}), EvalError);
  CHECK_THROWS_AS(Expr::pow(X(), Rational(1, 2)).eval({{"x", -2.0}}),
                  EvalError);
  CHECK_THROWS_AS(Expr::pow(X(), Rational(-1)).eval({{"x", 0.0}}), EvalError);
  CHECK_THROWS_AS(X().eval({}), UnknownVariableError);

  // the reserved constant binds automatically
  CHECK(Expr::sin(Expr::pi() / Expr::constant(2)).eval({}) ==
        doctest::Approx(1.0));
}

TEST_CASE("is_zero: structural, probabilistic and witnessed verdicts") {
  ZeroTestConfig cfg;

  Expr psi = Expr::var("psi");
  Expr pyth = Expr::pow(Expr::sin(psi), Rational(2)) +
              Expr::pow(Expr::cos(psi), Rational(2)) - Expr::constant(1);
  CHECK(is_zero(pyth, cfg).tag == VerdictTag::StructuralZero);
  CHECK(is_zero(X() * Y() - Y() * X(), cfg).tag == VerdictTag::StructuralZero);

  ZeroVerdict nz = is_zero(Expr::pow(X(), Rational(2)) - Y(), cfg);
  REQUIRE(nz.tag == VerdictTag::NonZero);
  // the witness re-evaluates beyond its recorded threshold
  Expr diff = Expr::pow(X(), Rational(2)) - Y();
  CHECK(std::abs(diff.eval(nz.witness)) > nz.witness_threshold);

  // no sin(2u) rewrite rule exists; probing decides the double angle
  Expr lhs = 2 * (Expr::sin(psi) * Expr::cos(psi));
  Expr rhs = Expr::sin(2 * psi);
  ZeroVerdict pv = equals(lhs, rhs, cfg);
  CHECK(pv.tag == VerdictTag::ProbablyZero);
  CHECK(pv.probes == cfg.probes);

  CHECK(equals(X(), X(), cfg).tag == VerdictTag::StructuralZero);
  CHECK(equals(X(), Y(), cfg).tag == VerdictTag::NonZero);
}

TEST_CASE("is_zero is deterministic and reproducible from its seed") {
  ZeroTestConfig cfg;
  Expr psi = Expr::var("psi");
  Expr e = Expr::sin(2 * psi) - 2 * (Expr::sin(psi) * Expr::cos(psi));
  ZeroVerdict v1 = is_zero(e, cfg);
  ZeroVerdict v2 = is_zero(e, cfg);
  REQUIRE(v1.tag == VerdictTag::ProbablyZero);
  CHECK(v1.stream_seed == v2.stream_seed);
  ZeroVerdict v3 = reprobe(e, v1.stream_seed, cfg);
  CHECK(v3.tag == v1.tag);
  CHECK(v3.stream_seed == v1.stream_seed);

  // distinct user seeds give distinct probe streams
  ZeroTestConfig cfg2 = cfg;
  cfg2.seed = 1;
  CHECK(is_zero(e, cfg2).stream_seed != v1.stream_seed);
}

TEST_CASE("is_zero rejects almost-everywhere-singular domains explicitly") {
  ZeroTestConfig cfg;
  // ln(-1 - x^2) is undefined on the whole sampling box
  Expr e = Expr::ln(Expr::constant(-1) - Expr::pow(X(), Rational(2)));
  CHECK_THROWS_AS(is_zero(e, cfg), IndeterminateError);
}

TEST_CASE("partially singular domains are resampled, not failed") {
  ZeroTestConfig cfg;
  // exp(ln(x)) - x is undefined for x <= 0: half the box resamples
  Expr e = Expr::exp(Expr::ln(X())) - X();
  ZeroVerdict v = is_zero(e, cfg);
  CHECK(v.tag == VerdictTag::ProbablyZero);
  CHECK(v.probes == cfg.probes);
}

TEST_CASE("witness soundness on random nonzero expressions") {
  Rng rng(17);
  ZeroTestConfig cfg;
  std::vector<std::string> vars{"x", "y"};
  for (int trial = 0; trial < 40; ++trial) {
    Expr e = testutil::random_polynomial(rng, vars);
    ZeroVerdict v = is_zero(e, cfg);
    if (v.tag != VerdictTag::NonZero) continue;
    CHECK(std::abs(e.eval(v.witness)) > v.witness_threshold);
  }
}

TEST_CASE("per-variable domains and the acceptance filter are honored") {
  ZeroTestConfig cfg;
  cfg.domain["x"] = {3.0, 4.0};
  // x - 3.5 is small but nonzero on [3,4]
  ZeroVerdict v = is_zero(X() - Expr::constant(Rational(7, 2)), cfg);
  CHECK(v.tag == VerdictTag::NonZero);
  CHECK(v.witness.at("x") >= 3.0);
  CHECK(v.witness.at("x") <= 4.0);

  cfg = ZeroTestConfig{};
  cfg.accept = [](const std::map<std::string, double>& p) {
    return p.at("x") > 1.0;
  };
  ZeroVerdict w = is_zero(X(), cfg);
  REQUIRE(w.tag == VerdictTag::NonZero);
  CHECK(w.witness.at("x") > 1.0);
}

TEST_CASE("rendering is grammar-compatible and stable") {
  CHECK(Expr::constant(Rational(3, 2)).str() == "3/2");
  CHECK((X() * Y()).str() == "x*y");
  CHECK((2 * X()).str() == "2*x");
  CHECK((-X()).str() == "-x");
  CHECK((X() - Y()).str() == "x - y");
  CHECK(Expr::pow(X(), Rational(-1)).str() == "x^-1");
  CHECK(Expr::pow(X(), Rational(1, 2)).str() == "x^(1/2)");
  CHECK(Expr::pow(X() + Y(), Rational(2)).str() == "(x + y)^2");
  CHECK(Expr::sin(X()).str() == "sin(x)");
  CHECK((Expr::exp(Expr::var("S")) / Expr::var("V")).str() == "V^-1*exp(S)");
}
