#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "pfaffian/pfaff.hpp"

namespace pfaffian {

// One parsed CLI invocation. `exprs` carries the named expression
// options (lambda, mu, nu, mu2, nu2, f, g, hamiltonian, function, v,
// shift, vol).
struct AnalysisRequest {
  std::string command;
  std::vector<std::string> chart;
  std::vector<std::string> params;
  std::string form;
  std::map<std::string, std::string> exprs;

  std::string potential;           // thermo: U | F | H | G
  std::string drag;                // drag: kinetic | linear | nonlinear
  bool gravity = false;
  int pairs = 1;                   // bracket/mech: cotangent pairs
  std::string metric = "euclidean";
  std::string example;             // examples --name
  bool list = false;
  bool verify_all = false;

  std::uint64_t seed = 0;
  int probes = 32;
  double tol = 1e-9;
  std::map<std::string, Interval> domain;
  std::string format = "text";     // text | json
};

struct RunResult {
  int exit_code = 0;
  nlohmann::json document;
  std::string text;
};

// Dispatches a request to the library modules. Throws ParseError /
// ChartError / std::invalid_argument / ZeroFormError for invalid
// requests and IndeterminateError for almost-everywhere-singular
// domains; exit_code_for maps those onto the documented process codes
// (2 and 3).
RunResult run(const AnalysisRequest& req);
int exit_code_for(const std::exception& e);

// JSON fragments (schema "pfaffian-report/1").
nlohmann::json verdict_json(const ZeroVerdict& v);
nlohmann::json form_verdict_json(const FormVerdict& v, const ChartPtr& chart);
nlohmann::json pfaff_json(const PfaffReport& rep);

}  // namespace pfaffian
