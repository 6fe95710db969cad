#include "pfaffian/physics.hpp"

#include <cmath>

namespace pfaffian {

namespace {

Expr det_laplace(const std::vector<std::vector<Expr>>& m) {
  size_t n = m.size();
  if (n == 1) return m[0][0];
  std::vector<Expr> terms;
  for (size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Expr>> minor;
    for (size_t r = 1; r < n; ++r) {
      std::vector<Expr> row;
      for (size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    Expr t = m[0][j] * det_laplace(minor);
    terms.push_back(j % 2 == 0 ? t : -t);
  }
  return Expr::sum(std::move(terms));
}

}  // namespace

// ---------------------------------------------------------------------------
// friction and drag

ChartPtr kinematic_chart() {
  return make_chart({"t", "x1", "x2", "x3", "v1", "v2", "v3"});
}

Expr speed() {
  std::vector<Expr> sq;
  for (int i = 1; i <= 3; ++i)
    sq.push_back(Expr::pow(Expr::var("v" + std::to_string(i)), Rational(2)));
  return Expr::pow(Expr::sum(std::move(sq)), Rational(1, 2));
}

Expr drag_alpha(const DragKind& kind) {
  if (const auto* k = std::get_if<KineticFriction>(&kind))
    return k->mu_k * k->normal_force * Expr::pow(speed(), Rational(-1));
  if (const auto* l = std::get_if<LinearDrag>(&kind)) return l->alpha;
  const auto& nl = std::get<NonlinearDrag>(kind);
  return Expr::constant(Rational(1, 2)) * nl.drag_coeff * nl.area *
         nl.density * speed();
}

DiffForm friction_form(const DragKind& kind) {
  auto c = kinematic_chart();
  Expr alpha = drag_alpha(kind);
  DiffForm f(c, 1);
  for (int i = 1; i <= 3; ++i)
    f.add_term({i}, -(alpha * Expr::var("v" + std::to_string(i))));
  return f;
}

ZeroTestConfig drag_config(ZeroTestConfig base,
                           const std::vector<std::string>& positive_params) {
  for (const auto& p : positive_params) base.domain[p] = {0.25, 2.0};
  base.accept = [](const std::map<std::string, double>& pt) {
    double s = 0.0;
    bool any = false;
    for (int i = 1; i <= 3; ++i) {
      auto it = pt.find("v" + std::to_string(i));
      if (it != pt.end()) {
        any = true;
        s += it->second * it->second;
      }
    }
    return !any || s > 0.01;  // keep ||v|| > 0.1 away from the singular locus
  };
  return base;
}

namespace {

std::vector<std::string> drag_params(const DragKind& kind) {
  Expr alpha = drag_alpha(kind);
  std::vector<std::string> out;
  auto chart = kinematic_chart();
  for (const auto& v : alpha.variables())
    if (!chart->has(v)) out.push_back(v);
  return out;
}

}  // namespace

DragReport drag_report(const DragKind& kind, const ZeroTestConfig& base) {
  ZeroTestConfig cfg = drag_config(base, drag_params(kind));
  auto c = kinematic_chart();
  DragReport rep{friction_form(kind),
                 DiffForm(c, 2),
                 DiffForm(c, 2),
                 {},
                 {},
                 Expr::constant(0),
                 {}};
  rep.df = d(rep.f);

  Expr alpha = drag_alpha(kind);
  Expr inv_speed = Expr::pow(speed(), Rational(-1));
  auto u = [&](int i) {
    return Expr::var("v" + std::to_string(i + 1)) * inv_speed;
  };

  // the tabulated row: -alpha (delta_ij + s u_i u_j) dv^i ^ dx^j with
  // s = -1, 0, +1 for kinetic friction, linear drag, nonlinear drag
  int s = 0;
  if (std::holds_alternative<KineticFriction>(kind)) s = -1;
  if (std::holds_alternative<NonlinearDrag>(kind)) s = 1;
  DiffForm expected(c, 2);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Expr entry = i == j ? Expr::constant(1) : Expr::constant(0);
      if (s != 0) entry = entry + Expr::constant(s) * u(i) * u(j);
      Expr coeff = -(alpha * entry);
      if (coeff.is_zero_const()) continue;
      // dv^i ^ dx^j: v-index 4+i, x-index 1+j
      expected.add_term({4 + i, 1 + j}, coeff);
    }
  }
  rep.expected_df = expected;
  rep.table_match = forms_equal(rep.df, expected, cfg);

  // normalize the dv^i ^ dx^j block by -alpha
  Expr inv_alpha = Expr::pow(alpha, Rational(-1));
  std::vector<std::vector<Expr>> fij(3, std::vector<Expr>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      // stored key is the sorted tuple (x_j, v_i) = -(dv^i ^ dx^j)
      fij[i][j] = rep.df.coeff({1 + j, 4 + i}) * inv_alpha;
      rep.f_ij[i][j] = fij[i][j];
    }
  rep.det = det_laplace(fij);
  rep.report = cartan_class(rep.f, cfg);
  return rep;
}

GravityDragReport gravity_drag_form(const Expr& mass, const Expr& gravity,
                                    const Expr& alpha,
                                    const ZeroTestConfig& base) {
  auto c = kinematic_chart();
  GravityDragReport rep{DiffForm(c, 1), {}, {}};
  rep.f.add_term({1}, -(alpha * Expr::var("v1")));
  rep.f.add_term({2}, -(alpha * Expr::var("v2")));
  rep.f.add_term({3}, -(mass * gravity + alpha * Expr::var("v3")));

  std::vector<std::string> params;
  for (const Expr& e : {mass, gravity, alpha})
    for (const auto& v : e.variables()) params.push_back(v);
  ZeroTestConfig cfg = drag_config(base, params);

  std::map<std::string, Expr> terminal{
      {"v1", Expr::constant(0)},
      {"v2", Expr::constant(0)},
      {"v3", -(mass * gravity * Expr::pow(alpha, Rational(-1)))}};
  for (int i = 1; i <= 3; ++i) {
    Expr coeff = rep.f.coeff({i}).substitute(terminal);
    rep.terminal_coefficients.push_back(is_zero(coeff, cfg));
  }

  rep.df_unchanged =
      forms_equal(d(rep.f), d(friction_form(LinearDrag{alpha})), cfg);
  return rep;
}

// ---------------------------------------------------------------------------
// electromagnetic induction

FaradayReport faraday_check(const DiffForm& E, const std::vector<Expr>& B,
                            const VolumeElement& vol,
                            const ZeroTestConfig& cfg) {
  const ChartPtr& c4 = E.chart();
  if (E.degree() != 1) throw std::invalid_argument("E must be a 1-form");
  const std::string& time = c4->name(0);
  const ChartPtr& cs = vol.chart();
  if (cs->dim() != c4->dim() - 1)
    throw ChartError("volume chart must cover the spatial coordinates");
  std::set<std::string> spatial;
  for (int i = 0; i < cs->dim(); ++i) {
    if (c4->index_of(cs->name(i)) < 0)
      throw ChartError("spatial coordinate missing from the space-time chart");
    spatial.insert(cs->name(i));
  }
  if (static_cast<int>(B.size()) != cs->dim())
    throw ChartError("B needs one component per spatial coordinate");
  for (const auto& [idx, coeff] : E.coeffs()) {
    (void)coeff;
    if (c4->name(idx[0]) == time)
      throw std::invalid_argument("E must be spatial (no dt component)");
  }

  FaradayReport rep{DiffForm(c4, 2), {}, DiffForm(c4, 3),
                    Expr::constant(0), {}, DiffForm(c4, 4), false};
  rep.ds_E = partial_d(E, spatial);

  std::vector<Expr> bdot;
  for (const auto& comp : B) bdot.push_back(comp.differentiate(time));
  DiffForm sharp_bdot = interior(VectorField(cs, bdot), vol.form());
  rep.faraday = form_zero_verdict(rep.ds_E + transfer(sharp_bdot, c4), cfg);

  rep.i2 = wedge(E, rep.ds_E);
  std::vector<Expr> pair_terms;
  for (int i = 0; i < cs->dim(); ++i) {
    int idx = c4->index_of(cs->name(i));
    pair_terms.push_back(E.coeff({idx}) * bdot[i]);
  }
  rep.pairing = Expr::sum(std::move(pair_terms));
  DiffForm vs4 = transfer(vol.form(), c4);
  rep.i2_identity = form_zero_verdict(rep.i2 + vs4.scaled(rep.pairing), cfg);

  rep.i3 = wedge(rep.ds_E, rep.ds_E);
  rep.i3_dimensional = rep.i3.empty();
  return rep;
}

// ---------------------------------------------------------------------------
// rolling constraint

ChartPtr rolling_chart() { return make_chart({"x", "y", "theta", "psi"}); }

DiffForm rolling_constraint() {
  DiffForm xi(rolling_chart(), 1);
  xi.add_term({0}, Expr::sin(Expr::var("psi")));
  xi.add_term({1}, Expr::cos(Expr::var("psi")));
  return xi;
}

// ---------------------------------------------------------------------------
// equilibrium thermodynamics

ThermoChartInfo thermo_info(PotentialTag tag) {
  switch (tag) {
    case PotentialTag::U: return {tag, {"V", "S"}, "U", {"P", "T"}};
    case PotentialTag::F: return {tag, {"V", "T"}, "F", {"P", "S"}};
    case PotentialTag::H: return {tag, {"P", "S"}, "H", {"V", "T"}};
    case PotentialTag::G: return {tag, {"P", "T"}, "G", {"V", "S"}};
  }
  throw std::logic_error("unknown potential tag");
}

ChartPtr thermo_chart(PotentialTag tag) {
  ThermoChartInfo info = thermo_info(tag);
  return make_chart({info.natural[0], info.natural[1], info.potential,
                     info.conjugate[0], info.conjugate[1]});
}

DiffForm thermo_contact_form(PotentialTag tag) {
  auto c = thermo_chart(tag);
  DiffForm theta(c, 1);
  theta.add_term({2}, Expr::constant(1));
  Expr c1 = Expr::var(thermo_info(tag).conjugate[0]);
  Expr c2 = Expr::var(thermo_info(tag).conjugate[1]);
  switch (tag) {
    case PotentialTag::U:  // dU + P dV - T dS
      theta.add_term({0}, c1);
      theta.add_term({1}, -c2);
      break;
    case PotentialTag::F:  // dF + P dV + S dT
      theta.add_term({0}, c1);
      theta.add_term({1}, c2);
      break;
    case PotentialTag::H:  // dH - V dP - T dS
      theta.add_term({0}, -c1);
      theta.add_term({1}, -c2);
      break;
    case PotentialTag::G:  // dG - V dP + S dT
      theta.add_term({0}, -c1);
      theta.add_term({1}, c2);
      break;
  }
  return theta;
}

std::array<Expr, 2> conjugates_of(PotentialTag tag, const Expr& potential) {
  ThermoChartInfo info = thermo_info(tag);
  Expr d1 = potential.differentiate(info.natural[0]);
  Expr d2 = potential.differentiate(info.natural[1]);
  switch (tag) {
    case PotentialTag::U: return {-d1, d2};    // P = -U_V, T = U_S
    case PotentialTag::F: return {-d1, -d2};   // P = -F_V, S = -F_T
    case PotentialTag::H: return {d1, d2};     // V = H_P,  T = H_S
    case PotentialTag::G: return {d1, -d2};    // V = G_P,  S = -G_T
  }
  throw std::logic_error("unknown potential tag");
}

Expr maxwell_identity(PotentialTag tag, const Expr& conj1, const Expr& conj2) {
  ThermoChartInfo info = thermo_info(tag);
  Expr a1 = conj1.differentiate(info.natural[1]);  // d conj1 / d nat2
  Expr a2 = conj2.differentiate(info.natural[0]);  // d conj2 / d nat1
  switch (tag) {
    case PotentialTag::U: return a2 + a1;   // dT/dV + dP/dS
    case PotentialTag::F: return a2 - a1;   // dS/dV - dP/dT
    case PotentialTag::H: return a1 - a2;   // dV/dS - dT/dP
    case PotentialTag::G: return a2 + a1;   // dS/dP + dV/dT
  }
  throw std::logic_error("unknown potential tag");
}

LegendrianReport legendrian_section_check(PotentialTag tag,
                                          const Expr& potential,
                                          const ZeroTestConfig& cfg) {
  ThermoChartInfo info = thermo_info(tag);
  auto c5 = thermo_chart(tag);
  for (const auto& v : potential.variables())
    if (c5->has(v) && v != info.natural[0] && v != info.natural[1])
      throw std::invalid_argument(
          "potential must be a function of its natural variables (" +
          info.natural[0] + ", " + info.natural[1] + ")");

  LegendrianReport rep{thermo_contact_form(tag),
                       conjugates_of(tag, potential),
                       {},
                       {},
                       Expr::constant(0),
                       {}};
  auto base = make_chart({info.natural[0], info.natural[1]});
  SmoothMap section(base, c5,
                    {Expr::var(info.natural[0]), Expr::var(info.natural[1]),
                     potential, rep.conjugates[0], rep.conjugates[1]});
  rep.pullback_theta = form_zero_verdict(pullback(section, rep.theta), cfg);
  rep.pullback_omega = form_zero_verdict(pullback(section, d(rep.theta)), cfg);
  rep.maxwell_residual =
      maxwell_identity(tag, rep.conjugates[0], rep.conjugates[1]);
  rep.maxwell = is_zero(rep.maxwell_residual, cfg);
  return rep;
}

CaratheodoryReport caratheodory_check(const DiffForm& dQ,
                                      const ZeroTestConfig& cfg) {
  CaratheodoryReport rep{frobenius_test(dQ, cfg), false, ""};
  rep.locally_tds = rep.frobenius.verdict.is_zeroish();
  rep.interpretation =
      rep.locally_tds
          ? "a local integrating factor exists: dQ = T dS near each point "
            "(no global claim)"
          : "no local T dS form: every neighborhood contains adiabatically "
            "accessible states in all directions";
  return rep;
}

// ---------------------------------------------------------------------------
// kinetic term exactness

KineticReport kinetic_term_exactness(const std::vector<std::vector<Expr>>& m,
                                     const ChartPtr& v_chart,
                                     const ZeroTestConfig& cfg) {
  int n = v_chart->dim();
  if (static_cast<int>(m.size()) != n)
    throw std::invalid_argument("mass matrix does not match the chart");
  for (const auto& row : m) {
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("mass matrix is not square");
    for (const auto& e : row)
      for (const auto& v : e.variables())
        if (v_chart->has(v))
          throw std::invalid_argument("mass matrix entries must be constant");
  }

  KineticReport rep{DiffForm(v_chart, 1), DiffForm(v_chart, 2),
                    DiffForm(v_chart, 2), {}, {}};
  for (int j = 0; j < n; ++j) {
    std::vector<Expr> pj;
    for (int i = 0; i < n; ++i)
      pj.push_back(m[i][j] * Expr::var(v_chart->name(i)));
    rep.momentum_form.add_term({j}, Expr::sum(std::move(pj)));
  }
  rep.d_momentum = d(rep.momentum_form);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      rep.antisymmetric.add_term({i, j}, m[i][j] - m[j][i]);
  rep.identity = forms_equal(rep.d_momentum, rep.antisymmetric, cfg);
  rep.exactness = form_zero_verdict(rep.antisymmetric, cfg);
  return rep;
}

// ---------------------------------------------------------------------------
// vorticity

Metric::Metric(ChartPtr chart, std::vector<std::vector<Expr>> g)
    : chart_(std::move(chart)), g_(std::move(g)) {
  int n = chart_->dim();
  if (static_cast<int>(g_.size()) != n)
    throw std::invalid_argument("metric does not match the chart dimension");
  for (const auto& row : g_)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("metric matrix is not square");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!g_[i][j].same_as(g_[j][i]))
        throw std::invalid_argument("metric must be structurally symmetric");
}

Metric Metric::euclidean(ChartPtr chart) {
  int n = chart->dim();
  std::vector<std::vector<Expr>> g(n, std::vector<Expr>(n, Expr::constant(0)));
  for (int i = 0; i < n; ++i) g[i][i] = Expr::constant(1);
  return Metric(std::move(chart), std::move(g));
}

Metric Metric::minkowski(ChartPtr chart) {
  int n = chart->dim();
  if (n != 4)
    throw std::invalid_argument("the +--- signature needs four coordinates");
  std::vector<std::vector<Expr>> g(n, std::vector<Expr>(n, Expr::constant(0)));
  g[0][0] = Expr::constant(1);
  for (int i = 1; i < n; ++i) g[i][i] = Expr::constant(-1);
  return Metric(std::move(chart), std::move(g));
}

Expr Metric::det() const { return det_laplace(g_); }

std::vector<std::vector<Expr>> Metric::inverse() const {
  int n = chart_->dim();
  Expr inv_det = Expr::pow(det(), Rational(-1));
  std::vector<std::vector<Expr>> out(n, std::vector<Expr>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<std::vector<Expr>> minor;
      for (int r = 0; r < n; ++r) {
        if (r == j) continue;  // adjugate: cofactor of (j, i)
        std::vector<Expr> row;
        for (int c = 0; c < n; ++c)
          if (c != i) row.push_back(g_[r][c]);
        minor.push_back(std::move(row));
      }
      Expr cof = n == 1 ? Expr::constant(1) : det_laplace(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      out[i][j] = cof * inv_det;
    }
  }
  return out;
}

const char* flow_tag_name(FlowTag t) {
  switch (t) {
    case FlowTag::Potential: return "potential-flow";
    case FlowTag::IntegratingFactor: return "integrating-factor";
    case FlowTag::Clebsch: return "clebsch-flow";
    case FlowTag::RankFour: return "rank-four-flow";
  }
  return "?";
}

namespace {

CausalSign sign_probe(const Expr& e, const ZeroTestConfig& cfg) {
  ZeroVerdict v = is_zero(e, cfg);
  if (v.is_zeroish()) return CausalSign::Zero;
  bool pos = v.witness_value > 0;
  bool neg = v.witness_value < 0;
  ZeroTestConfig probe = cfg;
  for (std::uint64_t shift = 1; shift <= 8; ++shift) {
    probe.seed = cfg.seed + shift;
    ZeroVerdict w = is_zero(e, probe);
    if (w.tag == VerdictTag::NonZero) {
      (w.witness_value > 0 ? pos : neg) = true;
    }
  }
  if (pos && neg) return CausalSign::Indefinite;
  return pos ? CausalSign::Positive : CausalSign::Negative;
}

FlowTag flow_tag_of_class(int cls) {
  switch (cls) {
    case 1: return FlowTag::Potential;
    case 2: return FlowTag::IntegratingFactor;
    case 3: return FlowTag::Clebsch;
    default: return FlowTag::RankFour;
  }
}

}  // namespace

VorticityReport vorticity_analysis(const DiffForm& v, const Metric& g,
                                   const VolumeElement& vol,
                                   const ZeroTestConfig& cfg) {
  if (v.degree() != 1)
    throw std::invalid_argument("covelocity must be a 1-form");
  int n = v.chart()->dim();
  if (n != 3 && n != 4)
    throw std::invalid_argument(
        "vorticity analysis supports dimensions 3 and 4");
  if (*g.chart() != *v.chart() || *vol.chart() != *v.chart())
    throw ChartError("metric, volume and covelocity must share a chart");

  VorticityReport rep{FlowTag::Potential,
                      d(v),
                      VectorField::zero(v.chart()),
                      Expr::constant(0),
                      std::nullopt,
                      std::nullopt,
                      {},
                      {}};
  rep.dv_dv = form_zero_verdict(wedge(rep.kinematic_vorticity,
                                      rep.kinematic_vorticity),
                                cfg);
  rep.pfaff = cartan_class(v, cfg);
  rep.tag = flow_tag_of_class(rep.pfaff.cartan_class);

  if (n == 3) {
    rep.vorticity_vector =
        poincare_dual_form(rep.kinematic_vorticity, vol, cfg);
    rep.frobenius_scalar = pairing(v, rep.vorticity_vector);
  } else {
    DiffForm frob3 = wedge(v, rep.kinematic_vorticity);
    rep.vorticity_vector = poincare_dual_form(frob3, vol, cfg);
    rep.frobenius_scalar = pairing(v, rep.vorticity_vector);
    rep.orthogonality = is_zero(rep.frobenius_scalar, cfg);

    // causal type of the associated velocity vector, reported only
    auto ginv = g.inverse();
    std::vector<Expr> vsq_terms;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        vsq_terms.push_back(ginv[i][j] * v.coeff({i}) * v.coeff({j}));
    rep.causal = sign_probe(Expr::sum(std::move(vsq_terms)), cfg);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// U(1) gauge forms

GaugeReport gauge_analysis(const DiffForm& A, const ZeroTestConfig& cfg) {
  if (A.degree() != 1)
    throw std::invalid_argument("gauge analysis needs a 1-form");
  GaugeReport rep{d(A), {}, DiffForm(A.chart(), 3), DiffForm(A.chart(), 4),
                  DiffForm(A.chart(), 2), DiffForm(A.chart(), 4), {}};
  rep.rank = rank_of_two_form(rep.field_strength, cfg);
  rep.chern_simons = wedge(A, rep.field_strength);
  rep.f_wedge_f = wedge_power(rep.field_strength, 2);
  Expr inv_2pi =
      Expr::pow(Expr::constant(2) * Expr::pi(), Rational(-1));
  rep.chern1_integrand = rep.field_strength.scaled(inv_2pi);
  rep.chern2_integrand = rep.f_wedge_f.scaled(inv_2pi * inv_2pi);
  rep.pfaff = cartan_class(A, cfg);
  return rep;
}

FormVerdict gauge_shift_check(const DiffForm& A, const Expr& lambda,
                              const ZeroTestConfig& cfg) {
  DiffForm shifted = A + d(DiffForm::scalar(A.chart(), lambda));
  return forms_equal(d(shifted), d(A), cfg);
}

}  // namespace pfaffian
