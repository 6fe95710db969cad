#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pfaffian/chart.hpp"
#include "pfaffian/expr.hpp"
#include "pfaffian/zerotest.hpp"

namespace pfaffian {

using IndexTuple = std::vector<int>;

// Homogeneous exterior form of one degree. Coefficients are stored on
// strictly increasing index tuples; terms inserted with unsorted or
// repeated indices are parity-normalized or annihilated. Coefficients
// that canonicalize to the constant 0 are pruned, so the zero form is
// exactly the empty map.
class DiffForm {
 public:
  DiffForm(ChartPtr chart, int degree);

  static DiffForm zero(ChartPtr chart, int degree) {
    return DiffForm(std::move(chart), degree);
  }
  static DiffForm scalar(ChartPtr chart, const Expr& e);
  // Coefficient times a wedge of coordinate differentials, e.g.
  // term(c, {"x","y"}) = c dx^dy.
  static DiffForm term(ChartPtr chart, const Expr& coeff,
                       const std::vector<std::string>& diffs);

  const ChartPtr& chart() const { return chart_; }
  int degree() const { return degree_; }
  bool empty() const { return coeffs_.empty(); }

  const std::map<IndexTuple, Expr>& coeffs() const { return coeffs_; }
  Expr coeff(const IndexTuple& sorted_tuple) const;

  // Adds coeff * dx^{I}; I may be unsorted (parity sign applied) and
  // repeated indices annihilate the term.
  void add_term(IndexTuple indices, const Expr& coeff);

  DiffForm scaled(const Expr& c) const;

  friend DiffForm operator+(const DiffForm& a, const DiffForm& b);
  friend DiffForm operator-(const DiffForm& a, const DiffForm& b);
  DiffForm operator-() const { return scaled(Expr::constant(-1)); }

  std::string str() const;  // CLI form grammar; "0" for the zero form

 private:
  ChartPtr chart_;
  int degree_;
  std::map<IndexTuple, Expr> coeffs_;
};

// Vector field with one component per coordinate.
class VectorField {
 public:
  VectorField(ChartPtr chart, std::vector<Expr> components);
  static VectorField zero(ChartPtr chart);

  const ChartPtr& chart() const { return chart_; }
  const std::vector<Expr>& components() const { return components_; }
  const Expr& component(int i) const { return components_.at(i); }

  VectorField scaled(const Expr& c) const;
  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);

  std::string str() const;

 private:
  ChartPtr chart_;
  std::vector<Expr> components_;
};

// Differentiable map between charts, one target-coordinate expression
// per target coordinate, written in source-chart variables (free
// parameter symbols are allowed, target names are not).
class SmoothMap {
 public:
  SmoothMap(ChartPtr source, ChartPtr target, std::vector<Expr> components);

  const ChartPtr& source() const { return source_; }
  const ChartPtr& target() const { return target_; }
  const std::vector<Expr>& components() const { return components_; }
  const Expr& component(int i) const { return components_.at(i); }

 private:
  ChartPtr source_;
  ChartPtr target_;
  std::vector<Expr> components_;
};

// Top-degree form with a single coefficient. Nondegeneracy (a NonZero
// verdict for the coefficient) is checked by validate() and by the
// operations that divide by it.
class VolumeElement {
 public:
  VolumeElement(ChartPtr chart, const Expr& coefficient);
  static VolumeElement standard(ChartPtr chart);  // dx^1 ^ ... ^ dx^n

  const DiffForm& form() const { return form_; }
  const Expr& coefficient() const { return coeff_; }
  const ChartPtr& chart() const { return form_.chart(); }

  void validate(const ZeroTestConfig& cfg) const;  // throws on a zero verdict

 private:
  DiffForm form_;
  Expr coeff_;
};

// Zero verdict for a whole form: NonZero as soon as one coefficient
// has a witness; a nonempty form with all coefficients probing to zero
// is ProbablyZero; the empty form is StructuralZero. `dimensional` is
// set when the degree exceeds the chart dimension.
struct FormVerdict {
  VerdictTag tag = VerdictTag::StructuralZero;
  bool dimensional = false;
  std::optional<IndexTuple> witness_tuple;
  ZeroVerdict detail;

  bool is_zeroish() const { return tag != VerdictTag::NonZero; }
};

FormVerdict form_zero_verdict(const DiffForm& f, const ZeroTestConfig& cfg);
FormVerdict forms_equal(const DiffForm& a, const DiffForm& b,
                        const ZeroTestConfig& cfg);

DiffForm wedge(const DiffForm& a, const DiffForm& b);
DiffForm wedge_power(const DiffForm& a, int k);

// Exterior derivative; degree-n input yields the (empty) degree-n+1 form.
DiffForm d(const DiffForm& a);
// Exterior derivative over a coordinate subset only (e.g. the spatial
// derivative d_s with the time coordinate excluded).
DiffForm partial_d(const DiffForm& a, const std::set<std::string>& active);

DiffForm interior(const VectorField& X, const DiffForm& a);

DiffForm pullback(const SmoothMap& m, const DiffForm& a);

// Poincare duality against a volume element: #X = i_X vol, and the
// inverse for (n-1)-forms.
DiffForm poincare_dual_vector(const VectorField& X, const VolumeElement& vol);
VectorField poincare_dual_form(const DiffForm& a, const VolumeElement& vol,
                               const ZeroTestConfig& cfg);

struct TwoFormRank {
  int rank = 0;             // 2m, the first vanishing power rule
  bool exact = true;        // false when the deciding verdict was probed
};
TwoFormRank rank_of_two_form(const DiffForm& omega, const ZeroTestConfig& cfg);

// Pairing of a 1-form with a vector field: omega(X) = sum omega_i X^i.
Expr pairing(const DiffForm& omega, const VectorField& X);

// Directional derivative X(f) = sum X^i df/dx^i.
Expr derive_along(const VectorField& X, const Expr& f);

// Rebuilds a form coefficient-by-coefficient on another chart with the
// same coordinate names (used to move spatial forms between a (t,x,y,z)
// chart and its (x,y,z) slice).
DiffForm transfer(const DiffForm& f, const ChartPtr& target);

}  // namespace pfaffian
