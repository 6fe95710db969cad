#include "pfaffian/mech.hpp"

namespace pfaffian {

namespace {

std::vector<std::string> numbered(const std::string& stem, int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back(stem + std::to_string(i));
  return out;
}

}  // namespace

CotangentChart::CotangentChart(int n)
    : CotangentChart(n == 1 ? std::vector<std::string>{"x"} : numbered("x", n),
                     n == 1 ? std::vector<std::string>{"p"}
                            : numbered("p", n)) {}

CotangentChart::CotangentChart(std::vector<std::string> base,
                               std::vector<std::string> fiber)
    : n_(static_cast<int>(base.size())),
      base_(std::move(base)),
      fiber_(std::move(fiber)) {
  if (base_.size() != fiber_.size() || base_.empty())
    throw ChartError("cotangent chart needs equal nonempty name lists");
  std::vector<std::string> names = base_;
  names.insert(names.end(), fiber_.begin(), fiber_.end());
  chart_ = make_chart(std::move(names));
}

DiffForm canonical_one_form(const CotangentChart& c) {
  DiffForm theta(c.chart(), 1);
  for (int i = 0; i < c.pairs(); ++i)
    theta.add_term({c.base_index(i)}, Expr::var(c.fiber_name(i)));
  return theta;
}

DiffForm symplectic_form(const CotangentChart& c) {
  return d(canonical_one_form(c));
}

Expr lagrange_bracket(const CotangentChart& c, const SmoothMap& m,
                      const std::string& ua, const std::string& ub) {
  if (*m.target() != *c.chart())
    throw ChartError("map does not land in the cotangent chart");
  if (!m.source()->has(ua) || !m.source()->has(ub))
    throw ChartError("bracket arguments must be source coordinates");
  std::vector<Expr> terms;
  for (int i = 0; i < c.pairs(); ++i) {
    const Expr& xi = m.component(c.base_index(i));
    const Expr& pi = m.component(c.fiber_index(i));
    terms.push_back(pi.differentiate(ua) * xi.differentiate(ub) -
                    pi.differentiate(ub) * xi.differentiate(ua));
  }
  return Expr::sum(std::move(terms));
}

ZeroVerdict is_lagrangian(const CotangentChart& c, const SmoothMap& m,
                          const ZeroTestConfig& cfg) {
  if (m.source()->dim() != c.pairs())
    throw ChartError("a Lagrangian candidate needs an n-dimensional source");
  ZeroVerdict out;
  out.tag = VerdictTag::StructuralZero;
  for (int a = 0; a < m.source()->dim(); ++a) {
    for (int b = a + 1; b < m.source()->dim(); ++b) {
      ZeroVerdict v = is_zero(
          lagrange_bracket(c, m, m.source()->name(a), m.source()->name(b)),
          cfg);
      if (v.tag == VerdictTag::NonZero) return v;
      if (v.tag == VerdictTag::ProbablyZero) out = v;
    }
  }
  return out;
}

VectorField hamiltonian_vector_field(const Expr& H, const CotangentChart& c) {
  std::vector<Expr> comps(2 * c.pairs(), Expr::constant(0));
  for (int i = 0; i < c.pairs(); ++i) {
    comps[c.base_index(i)] = H.differentiate(c.fiber_name(i));
    comps[c.fiber_index(i)] = -H.differentiate(c.base_name(i));
  }
  return VectorField(c.chart(), std::move(comps));
}

Expr poisson_bracket(const Expr& f, const Expr& g, const CotangentChart& c) {
  std::vector<Expr> terms;
  for (int i = 0; i < c.pairs(); ++i) {
    terms.push_back(f.differentiate(c.base_name(i)) *
                        g.differentiate(c.fiber_name(i)) -
                    f.differentiate(c.fiber_name(i)) *
                        g.differentiate(c.base_name(i)));
  }
  return Expr::sum(std::move(terms));
}

DiffForm vector_to_form(const VectorField& X, const CotangentChart& c) {
  if (*X.chart() != *c.chart())
    throw ChartError("vector field is not on the cotangent chart");
  DiffForm xi(c.chart(), 1);
  for (int i = 0; i < c.pairs(); ++i) {
    xi.add_term({c.base_index(i)}, -X.component(c.fiber_index(i)));
    xi.add_term({c.fiber_index(i)}, X.component(c.base_index(i)));
  }
  return xi;
}

VectorField form_to_vector(const DiffForm& xi, const CotangentChart& c) {
  if (*xi.chart() != *c.chart())
    throw ChartError("form is not on the cotangent chart");
  if (xi.degree() != 1)
    throw std::invalid_argument("only 1-forms correspond to vector fields");
  std::vector<Expr> comps(2 * c.pairs(), Expr::constant(0));
  for (int i = 0; i < c.pairs(); ++i) {
    comps[c.base_index(i)] = xi.coeff({c.fiber_index(i)});
    comps[c.fiber_index(i)] = -xi.coeff({c.base_index(i)});
  }
  return VectorField(c.chart(), std::move(comps));
}

VectorField non_hamiltonian_field(
    const Expr& H, const std::vector<std::pair<Expr, Expr>>& mu_v,
    const CotangentChart& c) {
  VectorField X = hamiltonian_vector_field(H, c);
  for (const auto& [mu, v] : mu_v)
    X = X + hamiltonian_vector_field(v, c).scaled(mu);
  return X;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  if (*X.chart() != *Y.chart())
    throw ChartError("Lie bracket of fields on different charts");
  const ChartPtr& c = X.chart();
  std::vector<Expr> comps;
  for (int k = 0; k < c->dim(); ++k) {
    std::vector<Expr> terms;
    for (int i = 0; i < c->dim(); ++i) {
      terms.push_back(X.component(i) * Y.component(k).differentiate(c->name(i)) -
                      Y.component(i) * X.component(k).differentiate(c->name(i)));
    }
    comps.push_back(Expr::sum(std::move(terms)));
  }
  return VectorField(c, std::move(comps));
}

OdeSystem hamilton_equations(const Expr& H, const CotangentChart& c) {
  return hamilton_equations(H, {}, c);
}

OdeSystem hamilton_equations(const Expr& H,
                             const std::vector<std::pair<Expr, Expr>>& mu_v,
                             const CotangentChart& c) {
  OdeSystem sys;
  for (int i = 0; i < c.pairs(); ++i) {
    std::vector<Expr> rhs{H.differentiate(c.fiber_name(i))};
    for (const auto& [mu, v] : mu_v)
      rhs.push_back(mu * v.differentiate(c.fiber_name(i)));
    sys.equations.emplace_back(c.base_name(i), Expr::sum(std::move(rhs)));
  }
  for (int i = 0; i < c.pairs(); ++i) {
    std::vector<Expr> rhs{-H.differentiate(c.base_name(i))};
    for (const auto& [mu, v] : mu_v)
      rhs.push_back(-(mu * v.differentiate(c.base_name(i))));
    sys.equations.emplace_back(c.fiber_name(i), Expr::sum(std::move(rhs)));
  }
  return sys;
}

JetChart::JetChart(std::vector<std::string> base,
                   std::vector<std::string> target)
    : base_(std::move(base)), target_(std::move(target)) {
  if (base_.empty() || base_.size() > 4 || target_.empty() ||
      target_.size() > 4)
    throw ChartError("jet charts support dimensions 1..4");
  std::vector<std::string> names = base_;
  names.insert(names.end(), target_.begin(), target_.end());
  for (size_t i = 0; i < target_.size(); ++i)
    for (size_t a = 0; a < base_.size(); ++a)
      names.push_back(slope_name(static_cast<int>(i), static_cast<int>(a)));
  chart_ = make_chart(std::move(names));
  base_chart_ = make_chart(base_);
}

std::string JetChart::slope_name(int i, int a) const {
  return target_.at(i) + "_a" + std::to_string(a + 1);
}

ScalarJetChart::ScalarJetChart(std::vector<std::string> base,
                               std::string function_name)
    : base_(std::move(base)), fname_(std::move(function_name)) {
  if (base_.empty() || base_.size() > 4)
    throw ChartError("jet charts support dimensions 1..4");
  if (base_.size() == 1) {
    fiber_ = {"p"};
  } else {
    fiber_ = numbered("p", static_cast<int>(base_.size()));
  }
  std::vector<std::string> names = base_;
  names.push_back(fname_);
  names.insert(names.end(), fiber_.begin(), fiber_.end());
  chart_ = make_chart(std::move(names));
}

std::vector<DiffForm> contact_forms(const JetChart& j) {
  std::vector<DiffForm> out;
  for (int i = 0; i < j.target_dim(); ++i) {
    DiffForm theta(j.chart(), 1);
    theta.add_term({j.target_index(i)}, Expr::constant(1));
    for (int a = 0; a < j.base_dim(); ++a)
      theta.add_term({j.base_index(a)}, -Expr::var(j.slope_name(i, a)));
    out.push_back(std::move(theta));
  }
  return out;
}

DiffForm contact_form(const ScalarJetChart& j) {
  DiffForm theta(j.chart(), 1);
  theta.add_term({j.function_index()}, Expr::constant(1));
  for (int i = 0; i < j.base_dim(); ++i)
    theta.add_term({j.base_index(i)}, -Expr::var(j.fiber_name(i)));
  return theta;
}

SmoothMap section_map(const JetChart& j, const JetSection& s) {
  if (static_cast<int>(s.positions.size()) != j.target_dim())
    throw ChartError("section needs one position per target coordinate");
  std::vector<Expr> comps;
  for (int a = 0; a < j.base_dim(); ++a)
    comps.push_back(Expr::var(j.base_name(a)));
  for (const auto& x : s.positions) comps.push_back(x);
  for (int i = 0; i < j.target_dim(); ++i) {
    if (static_cast<int>(s.slopes.at(i).size()) != j.base_dim())
      throw ChartError("section needs one slope per base coordinate");
    for (int a = 0; a < j.base_dim(); ++a) comps.push_back(s.slopes[i][a]);
  }
  return SmoothMap(j.base_chart(), j.chart(), std::move(comps));
}

std::vector<std::vector<Expr>> spencer_operator(const JetChart& j,
                                                const JetSection& s) {
  section_map(j, s);  // validates shape
  std::vector<std::vector<Expr>> rows;
  for (int a = 0; a < j.base_dim(); ++a) {
    std::vector<Expr> row;
    for (int i = 0; i < j.target_dim(); ++i)
      row.push_back(s.slopes[i][a] -
                    s.positions[i].differentiate(j.base_name(a)));
    rows.push_back(std::move(row));
  }
  return rows;
}

JetSection prolong(const JetChart& j, const std::vector<Expr>& positions) {
  if (static_cast<int>(positions.size()) != j.target_dim())
    throw ChartError("prolongation needs one component per target coordinate");
  JetSection s;
  s.positions = positions;
  for (int i = 0; i < j.target_dim(); ++i) {
    std::vector<Expr> row;
    for (int a = 0; a < j.base_dim(); ++a)
      row.push_back(positions[i].differentiate(j.base_name(a)));
    s.slopes.push_back(std::move(row));
  }
  return s;
}

}  // namespace pfaffian
