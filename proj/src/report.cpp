#include "pfaffian/report.hpp"

#include <future>
#include <sstream>

#include "pfaffian/catalog.hpp"
#include "pfaffian/mech.hpp"
#include "pfaffian/parse.hpp"
#include "pfaffian/physics.hpp"

namespace pfaffian {

using nlohmann::json;

namespace {

ZeroTestConfig config_of(const AnalysisRequest& req) {
  ZeroTestConfig cfg;
  cfg.seed = req.seed;
  cfg.probes = req.probes;
  cfg.tol = req.tol;
  cfg.domain = req.domain;
  return cfg;
}

std::set<std::string> param_set(const AnalysisRequest& req) {
  return std::set<std::string>(req.params.begin(), req.params.end());
}

json request_json(const AnalysisRequest& req) {
  json j;
  j["command"] = req.command;
  if (!req.chart.empty()) j["chart"] = req.chart;
  if (!req.params.empty()) j["params"] = req.params;
  if (!req.form.empty()) j["form"] = req.form;
  for (const auto& [k, v] : req.exprs) j["exprs"][k] = v;
  if (!req.potential.empty()) j["potential"] = req.potential;
  if (!req.drag.empty()) j["drag"] = req.drag;
  if (req.gravity) j["gravity"] = true;
  if (req.command == "bracket" || req.command == "mech")
    j["pairs"] = req.pairs;
  if (req.command == "vorticity") j["metric"] = req.metric;
  if (!req.example.empty()) j["example"] = req.example;
  j["seed"] = req.seed;
  j["probes"] = req.probes;
  j["tol"] = req.tol;
  for (const auto& [var, iv] : req.domain)
    j["domain"][var] = {iv.lo, iv.hi};
  return j;
}

std::string tuple_names(const IndexTuple& t, const ChartPtr& chart) {
  std::string out;
  for (int i : t) {
    if (!out.empty()) out += "^";
    out += "d" + chart->name(i);
  }
  return out.empty() ? "1" : out;
}

const char* certainty_of(const PfaffReport& rep) {
  return rep.exact ? "exact" : "probabilistic";
}

}  // namespace

json verdict_json(const ZeroVerdict& v) {
  json j;
  j["verdict"] = verdict_name(v.tag);
  j["tol"] = v.tol;
  if (v.tag != VerdictTag::StructuralZero) {
    j["probes"] = v.probes;
    j["stream_seed"] = v.stream_seed;
  }
  if (v.tag == VerdictTag::NonZero) {
    j["witness"] = v.witness;
    j["value"] = v.witness_value;
    j["threshold"] = v.witness_threshold;
  }
  return j;
}

json form_verdict_json(const FormVerdict& v, const ChartPtr& chart) {
  json j;
  j["verdict"] = verdict_name(v.tag);
  if (v.dimensional) j["dimensional"] = true;
  if (v.tag != VerdictTag::StructuralZero) {
    j["probes"] = v.detail.probes;
    j["stream_seed"] = v.detail.stream_seed;
    j["tol"] = v.detail.tol;
  }
  if (v.tag == VerdictTag::NonZero && v.witness_tuple) {
    j["witness_component"] = tuple_names(*v.witness_tuple, chart);
    j["witness"] = v.detail.witness;
    j["value"] = v.detail.witness_value;
  }
  return j;
}

json pfaff_json(const PfaffReport& rep) {
  json j;
  j["class"] = rep.cartan_class;
  j["codimension"] = rep.codimension;
  j["max_integral_dim"] = rep.max_integral_dim;
  j["canonical_form"] = rep.canonical_tag;
  j["certainty"] = certainty_of(rep);
  json seq = json::array();
  const ChartPtr& chart = rep.sequence.entries.front().form.chart();
  for (const auto& e : rep.sequence.entries) {
    json entry;
    entry["p"] = e.p;
    entry["form"] = e.form.str();
    entry["verdict"] = form_verdict_json(e.verdict, chart);
    seq.push_back(entry);
  }
  j["sequence"] = seq;
  return j;
}

namespace {

void text_pfaff(std::ostringstream& os, const PfaffReport& rep) {
  os << "class: " << rep.cartan_class << " (" << certainty_of(rep) << ")\n"
     << "codimension: " << rep.codimension << "\n"
     << "max integral dimension: " << rep.max_integral_dim << "\n"
     << "canonical form: " << rep.canonical_tag << "\n"
     << "sequence:\n";
  for (const auto& e : rep.sequence.entries) {
    os << "  I_" << e.p << " = " << e.form.str() << "  ["
       << verdict_name(e.verdict.tag)
       << (e.verdict.dimensional ? ", dimensional" : "") << "]\n";
  }
}

struct CommandContext {
  const AnalysisRequest& req;
  ZeroTestConfig cfg;
  json result;
  std::ostringstream text;
};

void run_analyze(CommandContext& ctx) {
  auto chart = make_chart(ctx.req.chart);
  DiffForm omega = parse_form(ctx.req.form, chart, param_set(ctx.req));
  PfaffReport rep = cartan_class(omega, ctx.cfg);
  ctx.result["report"] = pfaff_json(rep);
  ctx.text << "form: " << omega.str() << "\n";
  text_pfaff(ctx.text, rep);
}

void run_frobenius(CommandContext& ctx) {
  auto chart = make_chart(ctx.req.chart);
  DiffForm omega = parse_form(ctx.req.form, chart, param_set(ctx.req));
  FrobeniusResult fr = frobenius_test(omega, ctx.cfg);
  ctx.result["three_form"] = fr.three_form.str();
  ctx.result["verdict"] = form_verdict_json(fr.verdict, chart);
  bool integrable = fr.verdict.is_zeroish();
  ctx.result["completely_integrable"] = integrable;
  if (chart->dim() == 3)
    ctx.result["component"] = frobenius_component(omega).str();
  ctx.text << "Frobenius 3-form: " << fr.three_form.str() << "\n"
           << "verdict: " << verdict_name(fr.verdict.tag) << "\n"
           << (integrable
                   ? "completely integrable: codimension-one integral "
                     "submanifolds exist"
                   : "not completely integrable")
           << "\n";
}

void run_decompose_verify(CommandContext& ctx) {
  auto chart = make_chart(ctx.req.chart);
  auto params = param_set(ctx.req);
  DiffForm omega = parse_form(ctx.req.form, chart, params);
  DecompositionCandidate cand;
  auto get = [&](const char* key) -> std::optional<Expr> {
    auto it = ctx.req.exprs.find(key);
    if (it == ctx.req.exprs.end()) return std::nullopt;
    return parse_expression(it->second, chart, params);
  };
  cand.lambda = get("lambda");
  auto mu = get("mu"), nu = get("nu");
  if (mu.has_value() != nu.has_value())
    throw std::invalid_argument("--mu and --nu must be supplied together");
  if (mu) cand.pairs.emplace_back(*mu, *nu);
  auto mu2 = get("mu2"), nu2 = get("nu2");
  if (mu2.has_value() != nu2.has_value())
    throw std::invalid_argument("--mu2 and --nu2 must be supplied together");
  if (mu2) cand.pairs.emplace_back(*mu2, *nu2);
  DecompositionCheck chk = verify_decomposition(omega, cand, ctx.cfg);
  ctx.result["built"] = chk.built.str();
  ctx.result["match"] = form_verdict_json(chk.match, chart);
  ctx.result["implied_class"] = chk.implied_class;
  ctx.result["reported_class"] = chk.reported_class;
  ctx.result["class_consistent"] = chk.class_consistent;
  ctx.text << "candidate builds: " << chk.built.str() << "\n"
           << "match: " << verdict_name(chk.match.tag) << "\n"
           << "implied class " << chk.implied_class << " vs reported "
           << chk.reported_class
           << (chk.class_consistent ? " (consistent)" : " (MISMATCH)") << "\n";
}

void run_bracket(CommandContext& ctx) {
  CotangentChart c(ctx.req.pairs);
  auto params = param_set(ctx.req);
  auto it_f = ctx.req.exprs.find("f");
  auto it_g = ctx.req.exprs.find("g");
  if (it_f == ctx.req.exprs.end() || it_g == ctx.req.exprs.end())
    throw std::invalid_argument("bracket needs --f and --g");
  Expr f = parse_expression(it_f->second, c.chart(), params);
  Expr g = parse_expression(it_g->second, c.chart(), params);
  Expr pb = poisson_bracket(f, g, c);
  ctx.result["bracket"] = pb.str();
  ctx.result["antisymmetry"] =
      verdict_json(is_zero(pb + poisson_bracket(g, f, c), ctx.cfg));
  ctx.text << "{f, g} = " << pb.str() << "\n";
}

void run_mech(CommandContext& ctx) {
  CotangentChart c(ctx.req.pairs);
  auto params = param_set(ctx.req);
  DiffForm theta = canonical_one_form(c);
  DiffForm omega = symplectic_form(c);
  ctx.result["theta"] = theta.str();
  ctx.result["omega"] = omega.str();
  int n = c.pairs();
  ctx.result["liouville_power_nonzero"] =
      !wedge_power(omega, n).empty();
  ctx.result["power_above_vanishes"] = wedge_power(omega, n + 1).empty();
  ctx.text << "theta = " << theta.str() << "\n"
           << "omega = " << omega.str() << "\n";
  auto it_h = ctx.req.exprs.find("hamiltonian");
  if (it_h == ctx.req.exprs.end()) return;
  Expr H = parse_expression(it_h->second, c.chart(), params);
  std::vector<std::pair<Expr, Expr>> mu_v;
  auto it_mu = ctx.req.exprs.find("mu");
  auto it_v = ctx.req.exprs.find("v");
  if (it_mu != ctx.req.exprs.end() || it_v != ctx.req.exprs.end()) {
    if (it_mu == ctx.req.exprs.end() || it_v == ctx.req.exprs.end())
      throw std::invalid_argument("--mu and --v must be supplied together");
    mu_v.emplace_back(parse_expression(it_mu->second, c.chart(), params),
                      parse_expression(it_v->second, c.chart(), params));
  }
  VectorField X = non_hamiltonian_field(H, mu_v, c);
  json comps = json::array();
  for (const auto& e : X.components()) comps.push_back(e.str());
  ctx.result["vector_field"] = comps;
  OdeSystem sys = hamilton_equations(H, mu_v, c);
  json eqs = json::array();
  ctx.text << "equations of motion:\n";
  for (const auto& [coord, rhs] : sys.equations) {
    eqs.push_back({{"coordinate", coord}, {"rhs", rhs.str()}});
    ctx.text << "  d" << coord << "/dt = " << rhs.str() << "\n";
  }
  ctx.result["equations"] = eqs;
  Expr drift = derive_along(X, H);
  ctx.result["energy_drift"] = drift.str();
  ctx.result["conservation"] = verdict_json(is_zero(drift, ctx.cfg));
}

void run_thermo(CommandContext& ctx) {
  PotentialTag tag;
  if (ctx.req.potential == "U") tag = PotentialTag::U;
  else if (ctx.req.potential == "F") tag = PotentialTag::F;
  else if (ctx.req.potential == "H") tag = PotentialTag::H;
  else if (ctx.req.potential == "G") tag = PotentialTag::G;
  else throw std::invalid_argument("--potential must be one of U, F, H, G");

  ThermoChartInfo info = thermo_info(tag);
  DiffForm theta = thermo_contact_form(tag);
  PfaffReport rep = cartan_class(theta, ctx.cfg);
  ctx.result["contact_form"] = theta.str();
  ctx.result["chart"] = json(thermo_chart(tag)->names());
  ctx.result["report"] = pfaff_json(rep);
  ctx.text << "contact form: " << theta.str() << "\n";
  text_pfaff(ctx.text, rep);

  auto it_fn = ctx.req.exprs.find("function");
  if (it_fn == ctx.req.exprs.end()) return;
  auto natural = make_chart({info.natural[0], info.natural[1]});
  Expr pot = parse_expression(it_fn->second, natural, param_set(ctx.req));
  LegendrianReport leg = legendrian_section_check(tag, pot, ctx.cfg);
  json sec;
  sec["conjugates"][info.conjugate[0]] = leg.conjugates[0].str();
  sec["conjugates"][info.conjugate[1]] = leg.conjugates[1].str();
  sec["pullback_theta"] =
      form_verdict_json(leg.pullback_theta, natural);
  sec["pullback_omega"] =
      form_verdict_json(leg.pullback_omega, natural);
  sec["maxwell_residual"] = leg.maxwell_residual.str();
  sec["maxwell"] = verdict_json(leg.maxwell);
  ctx.result["section"] = sec;
  ctx.text << "conjugates: " << info.conjugate[0] << " = "
           << leg.conjugates[0].str() << ", " << info.conjugate[1] << " = "
           << leg.conjugates[1].str() << "\n"
           << "s*theta: " << verdict_name(leg.pullback_theta.tag) << "\n"
           << "maxwell identity residual: " << leg.maxwell_residual.str()
           << "  [" << verdict_name(leg.maxwell.tag) << "]\n";
}

void run_drag(CommandContext& ctx) {
  DragKind kind;
  if (ctx.req.drag == "kinetic")
    kind = KineticFriction{Expr::var("mu_k"), Expr::var("N")};
  else if (ctx.req.drag == "linear")
    kind = LinearDrag{Expr::var("alpha")};
  else if (ctx.req.drag == "nonlinear")
    kind = NonlinearDrag{Expr::var("CD"), Expr::var("A"), Expr::var("rho")};
  else
    throw std::invalid_argument(
        "--kind must be kinetic, linear or nonlinear");

  DragReport rep = drag_report(kind, ctx.cfg);
  ctx.result["f"] = rep.f.str();
  ctx.result["df"] = rep.df.str();
  ctx.result["table_match"] =
      form_verdict_json(rep.table_match, rep.f.chart());
  json fij = json::array();
  for (int i = 0; i < 3; ++i) {
    json row = json::array();
    for (int j = 0; j < 3; ++j) row.push_back(rep.f_ij[i][j].str());
    fij.push_back(row);
  }
  ctx.result["f_ij"] = fij;
  ctx.result["det"] = rep.det.str();
  ctx.result["report"] = pfaff_json(rep.report);
  ctx.text << "f = " << rep.f.str() << "\n"
           << "df matches table row: " << verdict_name(rep.table_match.tag)
           << "\n"
           << "det[f_ij] = " << rep.det.str() << "\n";
  text_pfaff(ctx.text, rep.report);

  if (!ctx.req.gravity) return;
  GravityDragReport grav = gravity_drag_form(
      Expr::var("m"), Expr::var("g"), Expr::var("alpha"), ctx.cfg);
  json gj;
  gj["f"] = grav.f.str();
  json tv = json::array();
  for (const auto& v : grav.terminal_coefficients)
    tv.push_back(verdict_json(v));
  gj["terminal_coefficients"] = tv;
  gj["df_unchanged"] = form_verdict_json(grav.df_unchanged, grav.f.chart());
  ctx.result["gravity"] = gj;
  ctx.text << "gravity variant f = " << grav.f.str() << "\n"
           << "terminal velocity annihilates f: "
           << (grav.terminal_coefficients[2].is_zeroish() ? "yes" : "NO")
           << "\n";
}

void run_vorticity(CommandContext& ctx) {
  auto chart = make_chart(ctx.req.chart);
  auto params = param_set(ctx.req);
  DiffForm v = parse_form(ctx.req.form, chart, params);
  Metric g = ctx.req.metric == "minkowski" ? Metric::minkowski(chart)
                                           : Metric::euclidean(chart);
  Expr vol_coeff = Expr::constant(1);
  auto it_vol = ctx.req.exprs.find("vol");
  if (it_vol != ctx.req.exprs.end())
    vol_coeff = parse_expression(it_vol->second, chart, params);
  VolumeElement vol(chart, vol_coeff);
  VorticityReport rep = vorticity_analysis(v, g, vol, ctx.cfg);
  ctx.result["classification"] = flow_tag_name(rep.tag);
  ctx.result["kinematic_vorticity"] = rep.kinematic_vorticity.str();
  ctx.result["vorticity_vector"] = rep.vorticity_vector.str();
  ctx.result["frobenius_scalar"] = rep.frobenius_scalar.str();
  if (rep.orthogonality)
    ctx.result["orthogonality"] = verdict_json(*rep.orthogonality);
  if (rep.causal) {
    const char* s = *rep.causal == CausalSign::Positive   ? "positive"
                    : *rep.causal == CausalSign::Negative ? "negative"
                    : *rep.causal == CausalSign::Zero     ? "zero"
                                                          : "indefinite";
    ctx.result["causal_sign"] = s;
  }
  ctx.result["report"] = pfaff_json(rep.pfaff);
  ctx.text << "classification: " << flow_tag_name(rep.tag) << "\n"
           << "vorticity 2-form: " << rep.kinematic_vorticity.str() << "\n"
           << "vorticity vector: " << rep.vorticity_vector.str() << "\n"
           << "frobenius scalar: " << rep.frobenius_scalar.str() << "\n";
  text_pfaff(ctx.text, rep.pfaff);
}

void run_gauge(CommandContext& ctx) {
  auto chart = make_chart(ctx.req.chart);
  auto params = param_set(ctx.req);
  DiffForm A = parse_form(ctx.req.form, chart, params);
  GaugeReport rep = gauge_analysis(A, ctx.cfg);
  ctx.result["F"] = rep.field_strength.str();
  ctx.result["rank"] = rep.rank.rank;
  ctx.result["decomposable"] = rep.rank.rank <= 2;
  ctx.result["chern_simons"] = rep.chern_simons.str();
  ctx.result["F_wedge_F"] = rep.f_wedge_f.str();
  ctx.result["chern1_integrand"] = rep.chern1_integrand.str();
  ctx.result["chern2_integrand"] = rep.chern2_integrand.str();
  ctx.result["report"] = pfaff_json(rep.pfaff);
  auto it_shift = ctx.req.exprs.find("shift");
  if (it_shift != ctx.req.exprs.end()) {
    Expr lam = parse_expression(it_shift->second, chart, params);
    ctx.result["gauge_shift"] =
        form_verdict_json(gauge_shift_check(A, lam, ctx.cfg), chart);
  }
  ctx.text << "F = " << rep.field_strength.str() << " (rank "
           << rep.rank.rank << ")\n"
           << "A^F = " << rep.chern_simons.str() << "\n"
           << "F^F = " << rep.f_wedge_f.str() << "\n";
  text_pfaff(ctx.text, rep.pfaff);
}

json entry_json(const CatalogEntry& e) {
  json j;
  j["name"] = e.name;
  j["description"] = e.description;
  j["chart"] = e.chart;
  if (!e.params.empty()) j["params"] = e.params;
  j["form"] = e.form;
  j["expected"] = {{"class", e.expected_class},
                   {"codimension", e.expected_codim},
                   {"max_integral_dim", e.expected_max_dim},
                   {"canonical_form", e.expected_tag}};
  return j;
}

bool verify_entry(const CatalogEntry& e, const ZeroTestConfig& cfg,
                  json& out) {
  auto chart = make_chart(e.chart);
  std::set<std::string> params(e.params.begin(), e.params.end());
  DiffForm omega = parse_form(e.form, chart, params);
  PfaffReport rep = cartan_class(omega, cfg);
  out = entry_json(e);
  out["report"] = pfaff_json(rep);
  bool ok = rep.cartan_class == e.expected_class &&
            rep.codimension == e.expected_codim &&
            rep.max_integral_dim == e.expected_max_dim &&
            rep.canonical_tag == e.expected_tag;
  out["matches"] = ok;
  return ok;
}

void run_examples(CommandContext& ctx, int& exit_code) {
  if (ctx.req.list ||
      (ctx.req.example.empty() && !ctx.req.verify_all)) {
    json arr = json::array();
    for (const auto& e : catalog()) {
      arr.push_back(entry_json(e));
      ctx.text << e.name << ": " << e.description << "\n";
    }
    ctx.result["examples"] = arr;
    return;
  }
  if (ctx.req.verify_all) {
    // entries are independent and pure, so they fan out in parallel;
    // results are collected by index to keep the output deterministic
    const auto& entries = catalog();
    std::vector<std::future<std::pair<bool, json>>> tasks;
    for (const auto& e : entries) {
      tasks.push_back(std::async(std::launch::async, [&e, &ctx]() {
        json j;
        bool ok = verify_entry(e, ctx.cfg, j);
        return std::make_pair(ok, std::move(j));
      }));
    }
    json arr = json::array();
    bool all_ok = true;
    for (size_t i = 0; i < entries.size(); ++i) {
      auto [ok, j] = tasks[i].get();
      all_ok = all_ok && ok;
      arr.push_back(std::move(j));
      ctx.text << entries[i].name << ": " << (ok ? "ok" : "MISMATCH") << "\n";
    }
    ctx.result["examples"] = arr;
    ctx.result["all_match"] = all_ok;
    if (!all_ok) exit_code = 1;
    return;
  }
  const CatalogEntry* e = catalog_find(ctx.req.example);
  if (!e)
    throw std::invalid_argument("unknown example '" + ctx.req.example + "'");
  json j;
  bool ok = verify_entry(*e, ctx.cfg, j);
  ctx.result["example"] = j;
  ctx.text << e->name << ": " << (ok ? "ok" : "MISMATCH") << "\n";
  if (!ok) exit_code = 1;
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IndeterminateError*>(&e)) return 3;
  return 2;
}

RunResult run(const AnalysisRequest& req) {
  CommandContext ctx{req, config_of(req), json::object(), {}};
  RunResult out;
  if (req.command == "analyze") run_analyze(ctx);
  else if (req.command == "frobenius") run_frobenius(ctx);
  else if (req.command == "decompose-verify") run_decompose_verify(ctx);
  else if (req.command == "bracket") run_bracket(ctx);
  else if (req.command == "mech") run_mech(ctx);
  else if (req.command == "thermo") run_thermo(ctx);
  else if (req.command == "drag") run_drag(ctx);
  else if (req.command == "vorticity") run_vorticity(ctx);
  else if (req.command == "gauge") run_gauge(ctx);
  else if (req.command == "examples") run_examples(ctx, out.exit_code);
  else throw std::invalid_argument("unknown command '" + req.command + "'");

  out.document["schema"] = "pfaffian-report/1";
  out.document["request"] = request_json(req);
  out.document["result"] = ctx.result;
  out.text = ctx.text.str();
  return out;
}

}  // namespace pfaffian
