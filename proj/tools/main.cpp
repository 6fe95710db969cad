#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pfaffian/parse.hpp"
#include "pfaffian/report.hpp"

namespace {

using pfaffian::AnalysisRequest;

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t a = item.find_first_not_of(" \t");
    size_t b = item.find_last_not_of(" \t");
    if (a == std::string::npos) continue;
    out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

void parse_domain(const std::vector<std::string>& specs, AnalysisRequest& req) {
  for (const auto& s : specs) {
    size_t eq = s.find('=');
    size_t colon = s.find(':', eq == std::string::npos ? 0 : eq);
    if (eq == std::string::npos || colon == std::string::npos)
      throw CLI::ValidationError("--domain expects var=lo:hi, got '" + s + "'");
    pfaffian::Interval iv;
    iv.lo = std::stod(s.substr(eq + 1, colon - eq - 1));
    iv.hi = std::stod(s.substr(colon + 1));
    if (!(iv.lo < iv.hi))
      throw CLI::ValidationError("--domain needs lo < hi in '" + s + "'");
    req.domain[s.substr(0, eq)] = iv;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pfaff: integrability analysis of Pfaffian forms (class, codimension, "
      "canonical form) with symplectic, thermodynamic and gauge examples"};
  app.require_subcommand(1);

  AnalysisRequest req;
  std::string chart_csv;
  std::string params_csv;
  std::vector<std::string> domain_specs;
  std::string output_path;

  app.add_option("--seed", req.seed, "probe-stream seed (default 0)");
  app.add_option("--probes", req.probes, "sample points per zero test")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol", req.tol, "relative zero tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--domain", domain_specs,
                 "per-variable sampling interval var=lo:hi (repeatable)");
  app.add_option("--format", req.format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--output", output_path, "write the report to a file");
  app.add_option("--param", req.params,
                 "declare a free parameter name (repeatable)");

  auto add_chart_form = [&](CLI::App* cmd, bool form_required = true) {
    cmd->add_option("--chart", chart_csv, "comma-separated coordinates")
        ->required();
    auto* f = cmd->add_option("--form", req.form, "1-form in the grammar");
    if (form_required) f->required();
  };

  auto* analyze = app.add_subcommand(
      "analyze", "integrability sequence, Cartan class and canonical form");
  add_chart_form(analyze);

  auto* frobenius =
      app.add_subcommand("frobenius", "Frobenius 3-form w^dw and verdict");
  add_chart_form(frobenius);

  auto* dec = app.add_subcommand(
      "decompose-verify", "check a supplied normal-form decomposition");
  add_chart_form(dec);
  std::map<std::string, std::string> dec_exprs;
  dec->add_option("--lambda", dec_exprs["lambda"], "exact part");
  dec->add_option("--mu", dec_exprs["mu"], "first factor");
  dec->add_option("--nu", dec_exprs["nu"], "first potential");
  dec->add_option("--mu2", dec_exprs["mu2"], "second factor");
  dec->add_option("--nu2", dec_exprs["nu2"], "second potential");

  auto* bracket = app.add_subcommand("bracket", "Poisson bracket {f, g}");
  bracket->add_option("--n", req.pairs, "cotangent pairs")->required();
  std::map<std::string, std::string> bracket_exprs;
  bracket->add_option("--f", bracket_exprs["f"], "first function")->required();
  bracket->add_option("--g", bracket_exprs["g"], "second function")
      ->required();

  auto* mech = app.add_subcommand(
      "mech", "canonical/symplectic forms and Hamilton equations");
  mech->add_option("--n", req.pairs, "cotangent pairs")->required();
  std::map<std::string, std::string> mech_exprs;
  mech->add_option("--hamiltonian", mech_exprs["hamiltonian"],
                   "Hamiltonian function");
  mech->add_option("--mu", mech_exprs["mu"], "drift factor");
  mech->add_option("--v", mech_exprs["v"], "drift potential");

  auto* thermo = app.add_subcommand(
      "thermo", "thermodynamic contact form and Maxwell identity");
  thermo->add_option("--potential", req.potential, "U, F, H or G")
      ->required();
  std::map<std::string, std::string> thermo_exprs;
  thermo->add_option("--function", thermo_exprs["function"],
                     "potential as a function of its natural variables");

  auto* drag =
      app.add_subcommand("drag", "friction/drag force-form classification");
  drag->add_option("--kind", req.drag, "kinetic, linear or nonlinear")
      ->required();
  drag->add_flag("--gravity", req.gravity,
                 "add the constant gravity term and the terminal-velocity "
                 "check (linear drag)");

  auto* vort = app.add_subcommand(
      "vorticity", "covelocity classification and vorticity vector");
  add_chart_form(vort);
  vort->add_option("--metric", req.metric, "euclidean or minkowski")
      ->check(CLI::IsMember({"euclidean", "minkowski"}));
  std::map<std::string, std::string> vort_exprs;
  vort->add_option("--vol", vort_exprs["vol"], "volume coefficient");

  auto* gauge =
      app.add_subcommand("gauge", "U(1) potential: curvature, rank, Chern "
                         "integrands");
  add_chart_form(gauge);
  std::map<std::string, std::string> gauge_exprs;
  gauge->add_option("--shift", gauge_exprs["shift"],
                    "gauge function for the invariance check");

  auto* examples = app.add_subcommand("examples", "built-in catalog");
  examples->add_option("--name", req.example, "run one catalog entry");
  examples->add_flag("--list", req.list, "list entries");
  examples->add_flag("--verify-all", req.verify_all,
                     "re-verify every entry against its stored report");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    parse_domain(domain_specs, req);
    CLI::App* sub = app.get_subcommands().front();
    req.command = sub->get_name();
    req.chart = split_csv(chart_csv);
    auto take = [&](std::map<std::string, std::string>& m) {
      for (auto& [k, v] : m)
        if (!v.empty()) req.exprs[k] = v;
    };
    take(dec_exprs);
    take(bracket_exprs);
    take(mech_exprs);
    take(thermo_exprs);
    take(vort_exprs);
    take(gauge_exprs);

    pfaffian::RunResult res = pfaffian::run(req);
    std::string payload = req.format == "json"
                              ? res.document.dump(2) + "\n"
                              : res.text;
    if (output_path.empty()) {
      std::cout << payload;
    } else {
      std::ofstream out(output_path, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write '" << output_path << "'\n";
        return 2;
      }
      out << payload;
    }
    return res.exit_code;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return pfaffian::exit_code_for(e);
  }
}
