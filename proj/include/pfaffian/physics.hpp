#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pfaffian/forms.hpp"
#include "pfaffian/mech.hpp"
#include "pfaffian/pfaff.hpp"

namespace pfaffian {

// ---------------------------------------------------------------------------
// friction and drag

struct KineticFriction {
  Expr mu_k;  // coefficient of kinetic friction
  Expr normal_force;
};
struct LinearDrag {
  Expr alpha;
};
struct NonlinearDrag {
  Expr drag_coeff;  // C_D
  Expr area;
  Expr density;
};
using DragKind = std::variant<KineticFriction, LinearDrag, NonlinearDrag>;

// (t, x1..x3, v1..v3)
ChartPtr kinematic_chart();

// ||v|| as (v1^2+v2^2+v3^2)^(1/2) over the kinematic chart
Expr speed();

// The scalar alpha(t,x,v) for each drag law.
Expr drag_alpha(const DragKind& kind);

// f = -alpha v_i dx^i
DiffForm friction_form(const DragKind& kind);

// Zero-test configuration for drag forms: keeps ||v|| away from 0 and
// samples the named positive parameters in [1/4, 2].
ZeroTestConfig drag_config(ZeroTestConfig base,
                           const std::vector<std::string>& positive_params);

struct DragReport {
  DiffForm f;
  DiffForm df;
  DiffForm expected_df;                    // the tabulated row
  FormVerdict table_match;                 // df vs expected_df
  std::array<std::array<Expr, 3>, 3> f_ij; // df normalized by -alpha
  Expr det;                                // symbolic det[f_ij]
  PfaffReport report;
};
DragReport drag_report(const DragKind& kind, const ZeroTestConfig& base);

struct GravityDragReport {
  DiffForm f;
  std::vector<ZeroVerdict> terminal_coefficients;  // after v -> (0,0,-mg/alpha)
  FormVerdict df_unchanged;                        // vs pure linear drag
};
GravityDragReport gravity_drag_form(const Expr& mass, const Expr& gravity,
                                    const Expr& alpha,
                                    const ZeroTestConfig& base);

// ---------------------------------------------------------------------------
// electromagnetic induction

struct FaradayReport {
  DiffForm ds_E;
  FormVerdict faraday;       // d_s E + #_s dB/dt, zero <=> the law holds
  DiffForm i2;               // E ^ d_s E
  Expr pairing;              // <E, dB/dt>, Euclidean
  FormVerdict i2_identity;   // i2 + pairing * V_s (holds under the law)
  DiffForm i3;               // d_s E ^ d_s E
  bool i3_dimensional;       // a spatial 4-form on three spatial coordinates
};

// E is a spatial 1-form on a chart whose first coordinate is time;
// B has one component per spatial coordinate of `vol`'s chart.
FaradayReport faraday_check(const DiffForm& E, const std::vector<Expr>& B,
                            const VolumeElement& vol,
                            const ZeroTestConfig& cfg);

// ---------------------------------------------------------------------------
// rolling constraint

ChartPtr rolling_chart();          // (x, y, theta, psi)
DiffForm rolling_constraint();     // sin(psi) dx + cos(psi) dy

// ---------------------------------------------------------------------------
// equilibrium thermodynamics

enum class PotentialTag { U, F, H, G };

struct ThermoChartInfo {
  PotentialTag tag;
  std::array<std::string, 2> natural;    // the two base coordinates
  std::string potential;                 // the fiber function name
  std::array<std::string, 2> conjugate;  // remaining two coordinates
};
ThermoChartInfo thermo_info(PotentialTag tag);
ChartPtr thermo_chart(PotentialTag tag);   // 5 coordinates per the table
DiffForm thermo_contact_form(PotentialTag tag);

// Conjugate-variable expressions induced by a potential function of its
// two natural variables (P = -dU/dV, T = dU/dS and the analogues).
std::array<Expr, 2> conjugates_of(PotentialTag tag, const Expr& potential);

struct LegendrianReport {
  DiffForm theta;
  std::array<Expr, 2> conjugates;
  FormVerdict pullback_theta;   // s* theta
  FormVerdict pullback_omega;   // s* d(theta)
  Expr maxwell_residual;        // e.g. dT/dV + dP/dS for the U chart
  ZeroVerdict maxwell;
};
LegendrianReport legendrian_section_check(PotentialTag tag,
                                          const Expr& potential,
                                          const ZeroTestConfig& cfg);

// Residual of the tag's Maxwell identity for user-supplied conjugate
// functions of the natural variables.
Expr maxwell_identity(PotentialTag tag, const Expr& conj1, const Expr& conj2);

struct CaratheodoryReport {
  FrobeniusResult frobenius;
  bool locally_tds;          // zero verdict: a local T dS form exists
  std::string interpretation;
};
CaratheodoryReport caratheodory_check(const DiffForm& dQ,
                                      const ZeroTestConfig& cfg);

// ---------------------------------------------------------------------------
// kinetic term exactness

struct KineticReport {
  DiffForm momentum_form;   // p_j dv^j with p_j = m_ij v^i
  DiffForm d_momentum;
  DiffForm antisymmetric;   // (1/2)(m_ij - m_ji) dv^i ^ dv^j
  FormVerdict identity;     // d_momentum vs antisymmetric
  FormVerdict exactness;    // zero antisymmetric part <=> exact
};
KineticReport kinetic_term_exactness(const std::vector<std::vector<Expr>>& m,
                                     const ChartPtr& v_chart,
                                     const ZeroTestConfig& cfg);

// ---------------------------------------------------------------------------
// vorticity

class Metric {
 public:
  Metric(ChartPtr chart, std::vector<std::vector<Expr>> g);
  static Metric euclidean(ChartPtr chart);
  static Metric minkowski(ChartPtr chart);  // diag(+1, -1, -1, -1)

  const ChartPtr& chart() const { return chart_; }
  const Expr& entry(int i, int j) const { return g_.at(i).at(j); }
  Expr det() const;
  std::vector<std::vector<Expr>> inverse() const;  // adjugate over det

 private:
  ChartPtr chart_;
  std::vector<std::vector<Expr>> g_;
};

enum class FlowTag { Potential, IntegratingFactor, Clebsch, RankFour };
const char* flow_tag_name(FlowTag t);

enum class CausalSign { Positive, Zero, Negative, Indefinite };

struct VorticityReport {
  FlowTag tag = FlowTag::Potential;
  DiffForm kinematic_vorticity;           // Omega_k = dv
  VectorField vorticity_vector;           // dim 3: #^-1(dv); dim 4: #^-1(v ^ dv)
  Expr frobenius_scalar;                  // v(omega_k)
  std::optional<ZeroVerdict> orthogonality;  // dim 4: v(omega_k) = 0 forced
  std::optional<CausalSign> causal;          // dim 4: sign of g(v, v)
  FormVerdict dv_dv;                      // dv ^ dv (decomposability)
  PfaffReport pfaff;
};
VorticityReport vorticity_analysis(const DiffForm& v, const Metric& g,
                                   const VolumeElement& vol,
                                   const ZeroTestConfig& cfg);

// ---------------------------------------------------------------------------
// U(1) gauge forms

struct GaugeReport {
  DiffForm field_strength;     // F = dA
  TwoFormRank rank;            // 2 <=> decomposable
  DiffForm chern_simons;       // A ^ F
  DiffForm f_wedge_f;          // F ^ F
  DiffForm chern1_integrand;   // F / (2 pi)
  DiffForm chern2_integrand;   // (F ^ F) / (2 pi)^2
  PfaffReport pfaff;
};
GaugeReport gauge_analysis(const DiffForm& A, const ZeroTestConfig& cfg);

// d(A + d lambda) - dA, structurally zero for any smooth lambda.
FormVerdict gauge_shift_check(const DiffForm& A, const Expr& lambda,
                              const ZeroTestConfig& cfg);

}  // namespace pfaffian
