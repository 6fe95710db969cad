#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pfaffian/forms.hpp"
#include "pfaffian/pfaff.hpp"

namespace pfaffian {

// Cotangent chart (x^1..x^n, p_1..p_n); n = 1 uses the plain names
// (x, p).
class CotangentChart {
 public:
  explicit CotangentChart(int n);
  CotangentChart(std::vector<std::string> base, std::vector<std::string> fiber);

  const ChartPtr& chart() const { return chart_; }
  int pairs() const { return n_; }
  const std::string& base_name(int i) const { return base_.at(i); }
  const std::string& fiber_name(int i) const { return fiber_.at(i); }
  int base_index(int i) const { return i; }
  int fiber_index(int i) const { return n_ + i; }

 private:
  int n_;
  std::vector<std::string> base_;
  std::vector<std::string> fiber_;
  ChartPtr chart_;
};

// theta = p_i dx^i
DiffForm canonical_one_form(const CotangentChart& c);
// Omega = d(theta) = dp_i ^ dx^i
DiffForm symplectic_form(const CotangentChart& c);

// [u^a, u^b] along a map into a cotangent chart.
Expr lagrange_bracket(const CotangentChart& c, const SmoothMap& m,
                      const std::string& ua, const std::string& ub);
// Zero verdict of all Lagrange brackets at once.
ZeroVerdict is_lagrangian(const CotangentChart& c, const SmoothMap& m,
                          const ZeroTestConfig& cfg);

// grad_Omega H = dH/dp_i d/dx^i - dH/dx^i d/dp_i
VectorField hamiltonian_vector_field(const Expr& H, const CotangentChart& c);

// {f,g} = df/dx^i dg/dp_i - df/dp_i dg/dx^i
Expr poisson_bracket(const Expr& f, const Expr& g, const CotangentChart& c);

// The musical pair on a cotangent chart: X = X^i d/dx^i + X_i d/dp_i
// corresponds to xi = -X_i dx^i + X^i dp_i, and back.
DiffForm vector_to_form(const VectorField& X, const CotangentChart& c);
VectorField form_to_vector(const DiffForm& xi, const CotangentChart& c);

// grad_Omega H + sum mu_a grad_Omega v^a
VectorField non_hamiltonian_field(
    const Expr& H, const std::vector<std::pair<Expr, Expr>>& mu_v,
    const CotangentChart& c);

// [X, Y]^k = X^i dY^k/dx^i - Y^i dX^k/dx^i on any chart.
VectorField lie_bracket(const VectorField& X, const VectorField& Y);

struct OdeSystem {
  // one (coordinate name, right-hand side) per chart coordinate
  std::vector<std::pair<std::string, Expr>> equations;
};
OdeSystem hamilton_equations(const Expr& H, const CotangentChart& c);
// Variant with the drift terms mu_a dv^a/dp_i etc. appended.
OdeSystem hamilton_equations(const Expr& H,
                             const std::vector<std::pair<Expr, Expr>>& mu_v,
                             const CotangentChart& c);

// Jet chart for J^1(Pi, M) with coordinates (u^a, x^i, x^i_a); the
// slope of x^i along u^a is named "<x^i>_a<a>" (x1_a2 and so on).
// Supports base and target dimensions up to 4.
class JetChart {
 public:
  JetChart(std::vector<std::string> base, std::vector<std::string> target);

  const ChartPtr& chart() const { return chart_; }
  const ChartPtr& base_chart() const { return base_chart_; }
  int base_dim() const { return static_cast<int>(base_.size()); }
  int target_dim() const { return static_cast<int>(target_.size()); }
  const std::string& base_name(int a) const { return base_.at(a); }
  const std::string& target_name(int i) const { return target_.at(i); }
  std::string slope_name(int i, int a) const;
  int base_index(int a) const { return a; }
  int target_index(int i) const { return base_dim() + i; }
  int slope_index(int i, int a) const {
    return base_dim() + target_dim() + i * base_dim() + a;
  }

 private:
  std::vector<std::string> base_;
  std::vector<std::string> target_;
  ChartPtr chart_;
  ChartPtr base_chart_;
};

// Jet chart for J^1(M; R) with coordinates (x^i, f, p_i).
class ScalarJetChart {
 public:
  explicit ScalarJetChart(std::vector<std::string> base,
                          std::string function_name = "f");

  const ChartPtr& chart() const { return chart_; }
  int base_dim() const { return static_cast<int>(base_.size()); }
  const std::string& base_name(int i) const { return base_.at(i); }
  const std::string& function_name() const { return fname_; }
  const std::string& fiber_name(int i) const { return fiber_.at(i); }
  int base_index(int i) const { return i; }
  int function_index() const { return base_dim(); }
  int fiber_index(int i) const { return base_dim() + 1 + i; }

 private:
  std::vector<std::string> base_;
  std::string fname_;
  std::vector<std::string> fiber_;
  ChartPtr chart_;
};

// Theta^i = dx^i - x^i_a du^a
std::vector<DiffForm> contact_forms(const JetChart& j);
// Theta = df - p_i dx^i
DiffForm contact_form(const ScalarJetChart& j);

// Section of the source projection: u |-> (u, x(u), slopes(u)).
// slopes[i][a] pairs with slope_name(i, a).
struct JetSection {
  std::vector<Expr> positions;
  std::vector<std::vector<Expr>> slopes;
};

SmoothMap section_map(const JetChart& j, const JetSection& s);

// Entries x^i_a(u) - dx^i/du^a, one row per base coordinate, one
// column per target coordinate; zero exactly for prolongations.
std::vector<std::vector<Expr>> spencer_operator(const JetChart& j,
                                                const JetSection& s);

// j^1 x: fills the slope slots with partial derivatives.
JetSection prolong(const JetChart& j, const std::vector<Expr>& positions);

}  // namespace pfaffian
