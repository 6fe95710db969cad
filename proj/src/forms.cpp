#include "pfaffian/forms.hpp"

#include <algorithm>
#include <sstream>

namespace pfaffian {

namespace {

void require_same_chart(const ChartPtr& a, const ChartPtr& b,
                        const char* op) {
  if (a == b) return;
  if (*a == *b) return;
  throw ChartError(std::string("chart mismatch in ") + op);
}

// Sorts `idx` ascending, returning the permutation parity, or 0 when an
// index repeats.
int sort_parity(IndexTuple& idx) {
  int sign = 1;
  for (size_t i = 1; i < idx.size(); ++i) {
    for (size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
      std::swap(idx[j], idx[j - 1]);
      sign = -sign;
    }
  }
  for (size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return sign;
}

}  // namespace

DiffForm::DiffForm(ChartPtr chart, int degree)
    : chart_(std::move(chart)), degree_(degree) {
  if (!chart_) throw ChartError("form without a chart");
  if (degree_ < 0) throw std::invalid_argument("negative form degree");
}

DiffForm DiffForm::scalar(ChartPtr chart, const Expr& e) {
  DiffForm f(std::move(chart), 0);
  f.add_term({}, e);
  return f;
}

DiffForm DiffForm::term(ChartPtr chart, const Expr& coeff,
                        const std::vector<std::string>& diffs) {
  DiffForm f(chart, static_cast<int>(diffs.size()));
  IndexTuple idx;
  for (const auto& n : diffs) {
    int i = chart->index_of(n);
    if (i < 0) throw ChartError("differential of unknown coordinate '" + n + "'");
    idx.push_back(i);
  }
  f.add_term(std::move(idx), coeff);
  return f;
}

Expr DiffForm::coeff(const IndexTuple& t) const {
  auto it = coeffs_.find(t);
  return it == coeffs_.end() ? Expr::constant(0) : it->second;
}

void DiffForm::add_term(IndexTuple indices, const Expr& coeff) {
  if (static_cast<int>(indices.size()) != degree_)
    throw std::invalid_argument("index tuple length does not match degree");
  for (int i : indices)
    if (i < 0 || i >= chart_->dim())
      throw ChartError("index out of chart bounds");
  if (coeff.is_zero_const()) return;
  int sign = sort_parity(indices);
  if (sign == 0) return;
  Expr c = sign == 1 ? coeff : -coeff;
  auto it = coeffs_.find(indices);
  if (it == coeffs_.end()) {
    coeffs_.emplace(std::move(indices), c);
  } else {
    Expr merged = it->second + c;
    if (merged.is_zero_const())
      coeffs_.erase(it);
    else
      it->second = merged;
  }
}

DiffForm DiffForm::scaled(const Expr& c) const {
  DiffForm out(chart_, degree_);
  for (const auto& [idx, e] : coeffs_) out.add_term(idx, c * e);
  return out;
}

DiffForm operator+(const DiffForm& a, const DiffForm& b) {
  require_same_chart(a.chart_, b.chart_, "form addition");
  if (a.empty() && b.empty())
    return DiffForm(a.chart_, std::max(a.degree_, b.degree_));
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.degree_ != b.degree_)
    throw std::invalid_argument("adding forms of different degree");
  DiffForm out = a;
  for (const auto& [idx, e] : b.coeffs_) out.add_term(idx, e);
  return out;
}

DiffForm operator-(const DiffForm& a, const DiffForm& b) { return a + (-b); }

std::string DiffForm::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, e] : coeffs_) {
    // pull a leading minus out of the coefficient for readable joins
    Expr c = e;
    bool neg = false;
    if (c.kind() == ExprKind::Const && c.value().is_negative()) {
      neg = true;
      c = Expr::constant(-c.value());
    } else if (c.kind() == ExprKind::Prod &&
               c.kids()[0].kind() == ExprKind::Const &&
               c.kids()[0].value().is_negative()) {
      neg = true;
      c = c * Expr::constant(-1);
    }
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (degree_ == 0) {
      os << c.str();
      continue;
    }
    if (!c.is_one_const()) {
      bool wrap = c.kind() == ExprKind::Sum;
      if (wrap) os << '(';
      os << c.str();
      if (wrap) os << ')';
      os << '*';
    }
    for (size_t k = 0; k < idx.size(); ++k) {
      if (k) os << '^';
      os << 'd' << chart_->name(idx[k]);
    }
  }
  return os.str();
}

VectorField::VectorField(ChartPtr chart, std::vector<Expr> components)
    : chart_(std::move(chart)), components_(std::move(components)) {
  if (static_cast<int>(components_.size()) != chart_->dim())
    throw ChartError("component count does not match chart dimension");
}

VectorField VectorField::zero(ChartPtr chart) {
  std::vector<Expr> cs(chart->dim(), Expr::constant(0));
  return VectorField(std::move(chart), std::move(cs));
}

VectorField VectorField::scaled(const Expr& c) const {
  std::vector<Expr> cs;
  cs.reserve(components_.size());
  for (const auto& e : components_) cs.push_back(c * e);
  return VectorField(chart_, std::move(cs));
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  require_same_chart(a.chart_, b.chart_, "vector field addition");
  std::vector<Expr> cs;
  for (size_t i = 0; i < a.components_.size(); ++i)
    cs.push_back(a.components_[i] + b.components_[i]);
  return VectorField(a.chart_, std::move(cs));
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  return a + b.scaled(Expr::constant(-1));
}

std::string VectorField::str() const {
  std::ostringstream os;
  bool first = true;
  bool all_zero = true;
  for (int i = 0; i < chart_->dim(); ++i) {
    if (components_[i].is_zero_const()) continue;
    all_zero = false;
    if (!first) os << " + ";
    first = false;
    if (!components_[i].is_one_const()) {
      bool wrap = components_[i].kind() == ExprKind::Sum;
      if (wrap) os << '(';
      os << components_[i].str();
      if (wrap) os << ')';
      os << '*';
    }
    os << "d/d" << chart_->name(i);
  }
  if (all_zero) return "0";
  return os.str();
}

SmoothMap::SmoothMap(ChartPtr source, ChartPtr target,
                     std::vector<Expr> components)
    : source_(std::move(source)),
      target_(std::move(target)),
      components_(std::move(components)) {
  if (static_cast<int>(components_.size()) != target_->dim())
    throw ChartError("map needs one component per target coordinate");
  for (const auto& c : components_)
    for (const auto& v : c.variables())
      if (target_->has(v) && !source_->has(v))
        throw ChartError("map component uses target coordinate '" + v + "'");
}

VolumeElement::VolumeElement(ChartPtr chart, const Expr& coefficient)
    : form_(chart, chart->dim()), coeff_(coefficient) {
  IndexTuple all;
  for (int i = 0; i < chart->dim(); ++i) all.push_back(i);
  form_.add_term(all, coefficient);
  if (form_.empty())
    throw std::invalid_argument("volume element with structurally zero coefficient");
}

VolumeElement VolumeElement::standard(ChartPtr chart) {
  return VolumeElement(std::move(chart), Expr::constant(1));
}

void VolumeElement::validate(const ZeroTestConfig& cfg) const {
  if (is_zero(coeff_, cfg).is_zeroish())
    throw std::invalid_argument("degenerate volume element (zero verdict)");
}

FormVerdict form_zero_verdict(const DiffForm& f, const ZeroTestConfig& cfg) {
  FormVerdict out;
  if (f.degree() > f.chart()->dim()) {
    out.tag = VerdictTag::StructuralZero;
    out.dimensional = true;
    return out;
  }
  if (f.empty()) {
    out.tag = VerdictTag::StructuralZero;
    return out;
  }
  bool any_probed = false;
  for (const auto& [idx, e] : f.coeffs()) {
    ZeroVerdict v = is_zero(e, cfg);
    if (v.tag == VerdictTag::NonZero) {
      out.tag = VerdictTag::NonZero;
      out.witness_tuple = idx;
      out.detail = v;
      return out;
    }
    if (v.tag == VerdictTag::ProbablyZero && !any_probed) {
      any_probed = true;
      out.detail = v;
    }
  }
  out.tag = any_probed ? VerdictTag::ProbablyZero : VerdictTag::StructuralZero;
  return out;
}

FormVerdict forms_equal(const DiffForm& a, const DiffForm& b,
                        const ZeroTestConfig& cfg) {
  return form_zero_verdict(a - b, cfg);
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  require_same_chart(a.chart(), b.chart(), "wedge");
  int deg = a.degree() + b.degree();
  DiffForm out(a.chart(), deg);
  if (deg > a.chart()->dim()) return out;  // dimensional vanishing
  for (const auto& [ia, ca] : a.coeffs()) {
    for (const auto& [ib, cb] : b.coeffs()) {
      IndexTuple merged = ia;
      merged.insert(merged.end(), ib.begin(), ib.end());
      out.add_term(std::move(merged), ca * cb);
    }
  }
  return out;
}

DiffForm wedge_power(const DiffForm& a, int k) {
  if (k < 1) throw std::invalid_argument("wedge power needs k >= 1");
  if (k * a.degree() > a.chart()->dim())
    return DiffForm(a.chart(), k * a.degree());
  DiffForm out = a;
  for (int i = 1; i < k; ++i) {
    out = wedge(out, a);
    if (out.empty()) break;
  }
  return out;
}

DiffForm partial_d(const DiffForm& a, const std::set<std::string>& active) {
  for (const auto& n : active)
    if (!a.chart()->has(n))
      throw ChartError("partial derivative over unknown coordinate '" + n + "'");
  DiffForm out(a.chart(), a.degree() + 1);
  if (a.degree() + 1 > a.chart()->dim()) return out;
  for (const auto& [idx, c] : a.coeffs()) {
    for (int j = 0; j < a.chart()->dim(); ++j) {
      if (!active.count(a.chart()->name(j))) continue;
      Expr dc = c.differentiate(a.chart()->name(j));
      if (dc.is_zero_const()) continue;
      IndexTuple t;
      t.push_back(j);
      t.insert(t.end(), idx.begin(), idx.end());
      out.add_term(std::move(t), dc);
    }
  }
  return out;
}

DiffForm d(const DiffForm& a) {
  std::set<std::string> all(a.chart()->names().begin(),
                            a.chart()->names().end());
  return partial_d(a, all);
}

DiffForm interior(const VectorField& X, const DiffForm& a) {
  require_same_chart(X.chart(), a.chart(), "interior product");
  if (a.degree() < 1)
    throw std::invalid_argument("interior product needs degree >= 1");
  DiffForm out(a.chart(), a.degree() - 1);
  for (const auto& [idx, c] : a.coeffs()) {
    for (size_t m = 0; m < idx.size(); ++m) {
      const Expr& comp = X.component(idx[m]);
      if (comp.is_zero_const()) continue;
      IndexTuple t;
      for (size_t j = 0; j < idx.size(); ++j)
        if (j != m) t.push_back(idx[j]);
      Expr term = comp * c;
      if (m % 2 == 1) term = -term;
      out.add_term(std::move(t), term);
    }
  }
  return out;
}

DiffForm pullback(const SmoothMap& m, const DiffForm& a) {
  require_same_chart(m.target(), a.chart(), "pullback");
  std::map<std::string, Expr> subst;
  for (int i = 0; i < m.target()->dim(); ++i)
    subst[m.target()->name(i)] = m.component(i);

  DiffForm out(m.source(), a.degree());
  if (a.degree() > m.source()->dim()) return out;
  for (const auto& [idx, c] : a.coeffs()) {
    DiffForm part = DiffForm::scalar(m.source(), c.substitute(subst));
    for (int i : idx) {
      DiffForm dxi(m.source(), 1);
      for (int u = 0; u < m.source()->dim(); ++u) {
        Expr der = m.component(i).differentiate(m.source()->name(u));
        if (!der.is_zero_const()) dxi.add_term({u}, der);
      }
      part = wedge(part, dxi);
      if (part.empty()) break;
    }
    if (!part.empty()) out = out + part;
  }
  return out;
}

DiffForm poincare_dual_vector(const VectorField& X, const VolumeElement& vol) {
  return interior(X, vol.form());
}

VectorField poincare_dual_form(const DiffForm& a, const VolumeElement& vol,
                               const ZeroTestConfig& cfg) {
  require_same_chart(a.chart(), vol.chart(), "poincare dual");
  int n = a.chart()->dim();
  if (a.degree() != n - 1)
    throw std::invalid_argument("poincare dual needs an (n-1)-form");
  vol.validate(cfg);
  Expr inv_rho = Expr::pow(vol.coefficient(), Rational(-1));
  std::vector<Expr> comps(n, Expr::constant(0));
  for (int i = 0; i < n; ++i) {
    IndexTuple t;
    for (int j = 0; j < n; ++j)
      if (j != i) t.push_back(j);
    Expr c = a.coeff(t);
    if (c.is_zero_const()) continue;
    Expr x = c * inv_rho;
    comps[i] = (i % 2 == 0) ? x : -x;
  }
  return VectorField(a.chart(), std::move(comps));
}

TwoFormRank rank_of_two_form(const DiffForm& omega, const ZeroTestConfig& cfg) {
  if (omega.degree() != 2)
    throw std::invalid_argument("rank is defined for 2-forms");
  TwoFormRank out;
  int max_k = omega.chart()->dim() / 2;
  for (int k = 1; k <= max_k + 1; ++k) {
    DiffForm p = wedge_power(omega, k);
    FormVerdict v = form_zero_verdict(p, cfg);
    if (v.is_zeroish()) {
      out.rank = 2 * (k - 1);
      out.exact = out.exact && v.tag == VerdictTag::StructuralZero;
      return out;
    }
    // a nonzero verdict is witnessed, hence certain
  }
  out.rank = 2 * (max_k + 1);  // unreachable: power above max_k vanishes
  return out;
}

Expr pairing(const DiffForm& omega, const VectorField& X) {
  require_same_chart(omega.chart(), X.chart(), "pairing");
  if (omega.degree() != 1)
    throw std::invalid_argument("pairing needs a 1-form");
  std::vector<Expr> terms;
  for (const auto& [idx, c] : omega.coeffs())
    terms.push_back(c * X.component(idx[0]));
  return Expr::sum(std::move(terms));
}

Expr derive_along(const VectorField& X, const Expr& f) {
  std::vector<Expr> terms;
  for (int i = 0; i < X.chart()->dim(); ++i)
    terms.push_back(X.component(i) * f.differentiate(X.chart()->name(i)));
  return Expr::sum(std::move(terms));
}

DiffForm transfer(const DiffForm& f, const ChartPtr& target) {
  DiffForm out(target, f.degree());
  for (const auto& [idx, c] : f.coeffs()) {
    IndexTuple t;
    for (int i : idx) {
      int j = target->index_of(f.chart()->name(i));
      if (j < 0)
        throw ChartError("coordinate '" + f.chart()->name(i) +
                         "' missing from target chart");
      t.push_back(j);
    }
    out.add_term(std::move(t), c);
  }
  return out;
}

}  // namespace pfaffian
