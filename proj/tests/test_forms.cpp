#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pfaffian/forms.hpp"
#include "testutil.hpp"

using namespace pfaffian;
using testutil::Rng;

namespace {

ChartPtr xyz() { return make_chart({"x", "y", "z"}); }

DiffForm one_form(const ChartPtr& c, std::vector<Expr> comps) {
  DiffForm f(c, 1);
  for (size_t i = 0; i < comps.size(); ++i)
    f.add_term({static_cast<int>(i)}, comps[i]);
  return f;
}

}  // namespace

TEST_CASE("wedge basics: basis products, annihilation, parity") {
  auto c = xyz();
  DiffForm dx = DiffForm::term(c, Expr::constant(1), {"x"});
  DiffForm dy = DiffForm::term(c, Expr::constant(1), {"y"});

  DiffForm dxdy = wedge(dx, dy);
  CHECK(dxdy.degree() == 2);
  CHECK(dxdy.coeff({0, 1}).is_one_const());

  CHECK(wedge(dx, dx).empty());

  // normalization flips the stored sign for descending tuples
  DiffForm f(c, 2);
  f.add_term({1, 0}, Expr::var("x"));  // x dy^dx
  CHECK(f.coeff({0, 1}).same_as(-Expr::var("x")));
}

TEST_CASE("rolling-tire wedge chain reduces exactly") {
  auto c = make_chart({"x", "y", "theta", "psi"});
  Expr psi = Expr::var("psi");
  DiffForm xi(c, 1);
  xi.add_term({0}, Expr::sin(psi));
  xi.add_term({1}, Expr::cos(psi));

  DiffForm dxi = d(xi);
  // dxi = dpsi ^ (cos(psi) dx - sin(psi) dy)
  DiffForm expected_dxi(c, 2);
  expected_dxi.add_term({3, 0}, Expr::cos(psi));
  expected_dxi.add_term({3, 1}, -Expr::sin(psi));
  CHECK((dxi - expected_dxi).empty());

  // xi ^ dxi = dpsi ^ dx ^ dy after the Pythagorean reduction
  DiffForm i2 = wedge(xi, dxi);
  DiffForm expected_i2(c, 3);
  expected_i2.add_term({3, 0, 1}, Expr::constant(1));
  CHECK((i2 - expected_i2).empty());

  // dxi ^ dxi = 0 structurally
  CHECK(wedge(dxi, dxi).empty());
}

TEST_CASE("exterior derivative examples") {
  auto c2 = make_chart({"x", "p"});
  DiffForm pdx(c2, 1);
  pdx.add_term({0}, Expr::var("p"));
  DiffForm dpdx = d(pdx);
  // d(p dx) = dp ^ dx = -dx^dp in sorted storage
  CHECK(dpdx.coeff({0, 1}).same_as(Expr::constant(-1)));

  // d(dU) = 0
  auto c = xyz();
  Expr u = Expr::var("x") * Expr::var("y") +
           Expr::sin(Expr::var("x") * Expr::var("z"));
  DiffForm dU = d(DiffForm::scalar(c, u));
  CHECK(d(dU).empty());

  // top-degree input gives the zero (n+1)-form
  DiffForm top = DiffForm::term(c, Expr::var("x"), {"x", "y", "z"});
  CHECK(d(top).empty());
  CHECK(d(top).degree() == 4);
}

TEST_CASE("partial derivative over an active coordinate subset") {
  auto c = make_chart({"t", "x", "y", "z"});
  std::set<std::string> spatial{"x", "y", "z"};

  Expr b0 = Expr::var("B0");
  DiffForm f(c, 2);
  f.add_term({1, 2}, b0 * Expr::var("t"));  // B0 t dx^dy
  CHECK(partial_d(f, spatial).empty());

  // d_s of (B0/2)(y dx - x dy) = -B0 dx^dy
  DiffForm e(c, 1);
  Expr half_b0 = Expr::constant(Rational(1, 2)) * b0;
  e.add_term({1}, half_b0 * Expr::var("y"));
  e.add_term({2}, -(half_b0 * Expr::var("x")));
  DiffForm dse = partial_d(e, spatial);
  DiffForm expected(c, 2);
  expected.add_term({1, 2}, -b0);
  CHECK((dse - expected).empty());

  DiffForm ft(c, 1);
  ft.add_term({0}, Expr::sin(Expr::var("t")));  // f(t) dt
  CHECK(partial_d(ft, spatial).empty());

  CHECK_THROWS_AS(partial_d(e, {"w"}), ChartError);
}

TEST_CASE("interior product: contraction slots and linearity") {
  auto c = xyz();
  DiffForm vol = DiffForm::term(c, Expr::constant(1), {"x", "y", "z"});

  VectorField dz(c, {Expr::constant(0), Expr::constant(0), Expr::constant(1)});
  DiffForm got = interior(dz, vol);
  CHECK(got.coeff({0, 1}).is_one_const());
  CHECK(got.coeffs().size() == 1);

  // 1-form case is the pairing omega(X)
  DiffForm omega = one_form(c, {Expr::var("y"), Expr::var("x"), Expr::constant(2)});
  VectorField X(c, {Expr::constant(1), Expr::var("z"), Expr::var("x")});
  DiffForm s = interior(X, omega);
  CHECK(s.degree() == 0);
  CHECK(s.coeff({}).same_as(Expr::var("y") + Expr::var("x") * Expr::var("z") +
                            2 * Expr::var("x")));
  CHECK(pairing(omega, X).same_as(s.coeff({})));

  VectorField dz2 = dz.scaled(Expr::constant(2));
  CHECK(interior(dz2, vol).coeff({0, 1}).same_as(Expr::constant(2)));
}

TEST_CASE("pullback: substitution, d-commutation, multiplicativity") {
  ZeroTestConfig cfg;
  // pullback of dx along x(u) = u^2 is 2u du
  auto src = make_chart({"u"});
  auto tgt = make_chart({"x"});
  SmoothMap m(src, tgt, {Expr::pow(Expr::var("u"), Rational(2))});
  DiffForm dx = DiffForm::term(tgt, Expr::constant(1), {"x"});
  DiffForm got = pullback(m, dx);
  CHECK(got.coeff({0}).same_as(2 * Expr::var("u")));

  // pullback commutes with d on random polynomial data
  auto src2 = make_chart({"u", "v"});
  auto tgt2 = make_chart({"x", "y", "z"});
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    SmoothMap f(src2, tgt2,
                {testutil::random_polynomial(rng, src2->names(), 2, 2),
                 testutil::random_polynomial(rng, src2->names(), 2, 2),
                 testutil::random_polynomial(rng, src2->names(), 2, 2)});
    DiffForm a = testutil::random_form(rng, tgt2, 1);
    CHECK(forms_equal(pullback(f, d(a)), d(pullback(f, a)), cfg).is_zeroish());

    DiffForm b = testutil::random_form(rng, tgt2, 1);
    CHECK(forms_equal(pullback(f, wedge(a, b)),
                      wedge(pullback(f, a), pullback(f, b)), cfg)
              .is_zeroish());
  }

  // target coordinates may not appear in map components
  CHECK_THROWS_AS(SmoothMap(src, tgt, {Expr::var("x")}), ChartError);
}

TEST_CASE("wedge powers: binomial expansion, dimensional vanishing, Liouville") {
  ZeroTestConfig cfg;
  auto c4 = make_chart({"p", "x", "q", "y"});
  DiffForm omega(c4, 2);
  omega.add_term({0, 1}, Expr::constant(1));  // dp^dx
  omega.add_term({2, 3}, Expr::constant(1));  // dq^dy

  DiffForm sq = wedge_power(omega, 2);
  DiffForm expected(c4, 4);
  expected.add_term({0, 1, 2, 3}, Expr::constant(2));
  CHECK((sq - expected).empty());

  DiffForm just_one(c4, 2);
  just_one.add_term({0, 1}, Expr::constant(1));
  CHECK(wedge_power(just_one, 2).empty());

  // Omega^n = n! * volume on an n-pair cotangent chart
  for (int n = 1; n <= 4; ++n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i + 1));
    auto c = make_chart(names);
    DiffForm Om(c, 2);
    for (int i = 0; i < n; ++i) Om.add_term({n + i, i}, Expr::constant(1));
    DiffForm pw = wedge_power(Om, n);
    CHECK_FALSE(pw.empty());
    long long fact = 1;
    for (int i = 2; i <= n; ++i) fact *= i;
    IndexTuple all;
    for (int i = 0; i < 2 * n; ++i) all.push_back(i);
    // sign of sorting (p1,x1,...,pn,xn) into ascending order is per pair
    Expr lead = pw.coeff(all);
    CHECK(std::abs(lead.value().to_double()) == doctest::Approx(double(fact)));
    CHECK(wedge_power(Om, n + 1).empty());
  }
}

TEST_CASE("poincare duality against a volume element") {
  ZeroTestConfig cfg;
  auto c = xyz();
  VolumeElement vol = VolumeElement::standard(c);

  VectorField dzf(c, {Expr::constant(0), Expr::constant(0), Expr::constant(1)});
  DiffForm sharp = poincare_dual_vector(dzf, vol);
  CHECK(sharp.coeff({0, 1}).is_one_const());

  DiffForm a(c, 2);
  a.add_term({0, 1}, Expr::constant(2));
  VectorField back = poincare_dual_form(a, vol, cfg);
  CHECK(back.component(2).same_as(Expr::constant(2)));
  CHECK(back.component(0).is_zero_const());

  Rng rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    VectorField X = testutil::random_vector_field(rng, c);
    VectorField rt = poincare_dual_form(poincare_dual_vector(X, vol), vol, cfg);
    for (int i = 0; i < 3; ++i)
      CHECK(equals(rt.component(i), X.component(i), cfg).is_zeroish());
  }

  // a coefficient that probes to zero without being structurally zero
  Expr x = Expr::var("x");
  Expr tricky = Expr::sin(2 * x) - 2 * (Expr::sin(x) * Expr::cos(x));
  VolumeElement degenerate(c, tricky);
  CHECK_THROWS(poincare_dual_form(a, degenerate, cfg));
}

TEST_CASE("rank of a 2-form") {
  ZeroTestConfig cfg;
  auto c2 = make_chart({"x", "p"});
  DiffForm dpdx(c2, 2);
  dpdx.add_term({1, 0}, Expr::constant(1));
  CHECK(rank_of_two_form(dpdx, cfg).rank == 2);

  auto c4 = make_chart({"m1", "n1", "m2", "n2"});
  DiffForm om(c4, 2);
  om.add_term({0, 1}, Expr::constant(1));
  om.add_term({2, 3}, Expr::constant(1));
  CHECK(rank_of_two_form(om, cfg).rank == 4);

  DiffForm zero(c4, 2);
  CHECK(rank_of_two_form(zero, cfg).rank == 0);
}

TEST_CASE("graded anticommutativity, Leibniz, antiderivation, d-squared") {
  ZeroTestConfig cfg;
  auto c = make_chart({"x", "y", "z", "w", "v"});
  Rng rng(31);
  int dd_checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    int p = rng.geti(0, 3);
    int q = rng.geti(0, 3);
    DiffForm a = testutil::random_form(rng, c, p);
    DiffForm b = testutil::random_form(rng, c, q);

    DiffForm ab = wedge(a, b);
    DiffForm ba = wedge(b, a);
    DiffForm diff = (p * q) % 2 == 0 ? ab - ba : ab + ba;
    CHECK(form_zero_verdict(diff, cfg).is_zeroish());

    // Leibniz rule
    DiffForm lhs = d(ab);
    DiffForm rhs = wedge(d(a), b) +
                   (p % 2 == 0 ? wedge(a, d(b)) : -wedge(a, d(b)));
    CHECK(forms_equal(lhs, rhs, cfg).is_zeroish());

    // interior product is an antiderivation
    VectorField X = testutil::random_vector_field(rng, c);
    if (p >= 1 && q >= 1) {
      DiffForm il = interior(X, ab);
      DiffForm ir = wedge(interior(X, a), b) +
                    (p % 2 == 0 ? wedge(a, interior(X, b))
                                : -wedge(a, interior(X, b)));
      CHECK(forms_equal(il, ir, cfg).is_zeroish());
    }

    // d o d = 0
    FormVerdict dd = form_zero_verdict(d(d(a)), cfg);
    CHECK(dd.is_zeroish());
    ++dd_checked;
  }
  CHECK(dd_checked == 30);
}

TEST_CASE("operations reject mismatched charts") {
  auto a = make_chart({"x", "y"});
  auto b = make_chart({"u", "v"});
  DiffForm fa = DiffForm::term(a, Expr::constant(1), {"x"});
  DiffForm fb = DiffForm::term(b, Expr::constant(1), {"u"});
  CHECK_THROWS_AS(wedge(fa, fb), ChartError);
  CHECK_THROWS_AS(fa + fb, ChartError);
  CHECK_THROWS_AS(interior(VectorField::zero(b), fa), ChartError);
}

TEST_CASE("form rendering round-trips through the coefficient map") {
  auto c = make_chart({"x", "y", "psi"});
  DiffForm f(c, 1);
  f.add_term({0}, Expr::sin(Expr::var("psi")));
  f.add_term({1}, -Expr::var("x"));
  CHECK(f.str() == "sin(psi)*dx - x*dy");
  CHECK(DiffForm(c, 2).str() == "0");
}
