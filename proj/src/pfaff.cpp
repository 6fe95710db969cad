#include "pfaffian/pfaff.hpp"

#include <cmath>
#include <sstream>

namespace pfaffian {

IntegrabilitySequence integrability_sequence(const DiffForm& omega,
                                             const ZeroTestConfig& cfg) {
  if (omega.degree() != 1)
    throw std::invalid_argument("integrability sequence needs a 1-form");
  FormVerdict v0 = form_zero_verdict(omega, cfg);
  if (v0.is_zeroish())
    throw ZeroFormError(
        "the zero 1-form has no class; supply a form with a nonzero verdict");

  IntegrabilitySequence seq;
  seq.entries.push_back({0, omega, v0});

  DiffForm d_omega = d(omega);
  DiffForm current = d_omega;
  for (int p = 1;; ++p) {
    FormVerdict v = form_zero_verdict(current, cfg);
    seq.entries.push_back({p, current, v});
    if (p % 2 == 1) {
      // cross-check the recursion against the power form (I_1)^k
      int k = (p + 1) / 2;
      seq.power_consistency.push_back(
          forms_equal(current, wedge_power(d_omega, k), cfg));
    }
    if (v.is_zeroish()) break;
    current = (p % 2 == 1) ? wedge(omega, current) : d(current);
  }
  return seq;
}

std::string canonical_tag_text(int p) {
  int m = (p + 1) / 2;
  std::ostringstream os;
  if (p % 2 == 1) {
    os << "dlam";
    if (m == 2) {
      os << " + mu*dnu";
    } else {
      for (int h = 1; h <= m - 1; ++h) os << " + mu" << h << "*dnu" << h;
    }
  } else {
    if (m == 1) {
      os << "mu*dnu";
    } else {
      for (int h = 1; h <= m; ++h) {
        if (h > 1) os << " + ";
        os << "mu" << h << "*dnu" << h;
      }
    }
  }
  return os.str();
}

PfaffReport cartan_class(const DiffForm& omega, const ZeroTestConfig& cfg) {
  PfaffReport rep;
  rep.sequence = integrability_sequence(omega, cfg);
  const SequenceEntry& last = rep.sequence.terminal();
  rep.cartan_class = last.p;
  rep.codimension = (last.p + 1) / 2;
  rep.max_integral_dim = omega.chart()->dim() - rep.codimension;
  rep.canonical_tag = canonical_tag_text(last.p);
  rep.exact = last.verdict.tag == VerdictTag::StructuralZero;
  return rep;
}

FrobeniusResult frobenius_test(const DiffForm& omega,
                               const ZeroTestConfig& cfg) {
  if (omega.degree() != 1)
    throw std::invalid_argument("Frobenius test needs a 1-form");
  FrobeniusResult out{wedge(omega, d(omega)), {}};
  out.verdict = form_zero_verdict(out.three_form, cfg);
  return out;
}

Expr frobenius_component(const DiffForm& omega) {
  if (omega.degree() != 1 || omega.chart()->dim() != 3)
    throw std::invalid_argument(
        "component expression is defined on 3-coordinate charts");
  auto w = [&](int i) { return omega.coeff({i}); };
  auto dw = [&](int i, int j) {
    return w(i).differentiate(omega.chart()->name(j));
  };
  return w(0) * (dw(1, 2) - dw(2, 1)) + w(1) * (dw(2, 0) - dw(0, 2)) +
         w(2) * (dw(0, 1) - dw(1, 0));
}

DiffForm build_decomposition(const ChartPtr& chart,
                             const DecompositionCandidate& cand) {
  if (!cand.lambda && cand.pairs.empty())
    throw std::invalid_argument("empty decomposition candidate");
  if (cand.implied_class() > chart->dim())
    throw std::invalid_argument(
        "candidate kind inconsistent with chart dimension");
  DiffForm built(chart, 1);
  if (cand.lambda) built = built + d(DiffForm::scalar(chart, *cand.lambda));
  for (const auto& [mu, nu] : cand.pairs)
    built = built + d(DiffForm::scalar(chart, nu)).scaled(mu);
  return built;
}

DecompositionCheck verify_decomposition(const DiffForm& omega,
                                        const DecompositionCandidate& cand,
                                        const ZeroTestConfig& cfg) {
  DecompositionCheck out{
      {}, build_decomposition(omega.chart(), cand), cand.implied_class(), 0,
      false};
  out.match = forms_equal(omega, out.built, cfg);
  out.reported_class = cartan_class(omega, cfg).cartan_class;
  out.class_consistent = out.implied_class == out.reported_class;
  return out;
}

std::vector<std::vector<double>> annihilator_basis(
    const DiffForm& omega, const std::map<std::string, double>& point,
    double tol) {
  if (omega.degree() != 1)
    throw std::invalid_argument("annihilator basis needs a 1-form");
  int n = omega.chart()->dim();
  std::vector<double> w(n, 0.0);
  for (const auto& [idx, c] : omega.coeffs()) w[idx[0]] = c.eval(point);
  int pivot = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(w[i]) > std::abs(w[pivot])) pivot = i;
  if (std::abs(w[pivot]) < tol)
    throw SingularPointError("the form vanishes at this point");
  std::vector<std::vector<double>> basis;
  for (int j = 0; j < n; ++j) {
    if (j == pivot) continue;
    std::vector<double> v(n, 0.0);
    v[j] = 1.0;
    v[pivot] = -w[j] / w[pivot];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace pfaffian
