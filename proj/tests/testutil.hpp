#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pfaffian/expr.hpp"
#include "pfaffian/forms.hpp"

namespace testutil {

using pfaffian::ChartPtr;
using pfaffian::DiffForm;
using pfaffian::Expr;
using pfaffian::Rational;
using pfaffian::VectorField;

struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}

  int geti(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(g);
  }
  double unif(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(g);
  }
};

// Sparse polynomial with small integer coefficients and per-variable
// exponents <= max_deg.
inline Expr random_polynomial(Rng& rng, const std::vector<std::string>& vars,
                              int max_terms = 4, int max_deg = 3) {
  std::vector<Expr> terms;
  int nterms = rng.geti(1, max_terms);
  for (int t = 0; t < nterms; ++t) {
    int c = 0;
    while (c == 0) c = rng.geti(-3, 3);
    std::vector<Expr> fs{Expr::constant(c)};
    for (const auto& v : vars) {
      int e = rng.geti(0, max_deg);
      if (e > 0) fs.push_back(Expr::pow(Expr::var(v), Rational(e)));
    }
    terms.push_back(Expr::product(std::move(fs)));
  }
  return Expr::sum(std::move(terms));
}

// Polynomial dressed with the occasional sin/cos/exp wrapper; always
// defined on all of R^n (no ln, no fractional powers).
inline Expr random_smooth(Rng& rng, const std::vector<std::string>& vars,
                          int max_terms = 3) {
  Expr base = random_polynomial(rng, vars, max_terms, 2);
  switch (rng.geti(0, 5)) {
    case 0: return Expr::sin(base);
    case 1: return Expr::cos(base);
    case 2: return Expr::exp(random_polynomial(rng, vars, 2, 1));
    case 3: return base * Expr::sin(random_polynomial(rng, vars, 2, 1));
    default: return base;
  }
}

inline DiffForm random_form(Rng& rng, const ChartPtr& chart, int degree,
                            int max_terms = 3) {
  DiffForm f(chart, degree);
  int n = chart->dim();
  if (degree > n) return f;
  int terms = rng.geti(1, max_terms);
  for (int t = 0; t < terms; ++t) {
    std::vector<int> idx;
    while (static_cast<int>(idx.size()) < degree) {
      int i = rng.geti(0, n - 1);
      bool dup = false;
      for (int j : idx) dup = dup || j == i;
      if (!dup) idx.push_back(i);
    }
    f.add_term(idx, random_polynomial(rng, chart->names(), 2, 2));
  }
  return f;
}

inline VectorField random_vector_field(Rng& rng, const ChartPtr& chart) {
  std::vector<Expr> comps;
  for (int i = 0; i < chart->dim(); ++i)
    comps.push_back(random_polynomial(rng, chart->names(), 2, 2));
  return VectorField(chart, std::move(comps));
}

inline std::map<std::string, double> random_point(
    Rng& rng, const std::vector<std::string>& vars, double lo = -1.5,
    double hi = 1.5) {
  std::map<std::string, double> p;
  for (const auto& v : vars) p[v] = rng.unif(lo, hi);
  return p;
}

// Central finite difference, the independent oracle for differentiate().
inline double central_difference(const Expr& e, const std::string& var,
                                 std::map<std::string, double> at,
                                 double h = 1e-5) {
  double x = at[var];
  at[var] = x + h;
  double hi = e.eval(at);
  at[var] = x - h;
  double lo = e.eval(at);
  return (hi - lo) / (2.0 * h);
}

}  // namespace testutil
