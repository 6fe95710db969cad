#include "pfaffian/expr.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace pfaffian {

struct Expr::Node {
  ExprKind kind = ExprKind::Const;
  Rational value;
  std::string name;
  std::vector<Expr> kids;
  Rational exponent;
  size_t hash = 0;
};

namespace {

size_t hash_combine(size_t seed, size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

size_t hash_rational(const Rational& r) {
  return hash_combine(std::hash<long long>{}(r.num()),
                      std::hash<long long>{}(r.den()));
}

int rank_of(ExprKind k) {
  switch (k) {
    case ExprKind::Const: return 0;
    case ExprKind::Var: return 1;
    case ExprKind::Pow: return 2;
    case ExprKind::Sin: return 3;
    case ExprKind::Cos: return 4;
    case ExprKind::Exp: return 5;
    case ExprKind::Ln: return 6;
    case ExprKind::Prod: return 7;
    case ExprKind::Sum: return 8;
  }
  return 9;
}

int compare_rational(const Rational& a, const Rational& b) {
  if (a == b) return 0;
  return a < b ? -1 : 1;
}

}  // namespace

struct ExprBuilder {
  static Expr make(ExprKind kind, std::vector<Expr> kids,
                   const Rational& exponent = Rational(0)) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = kind;
    n->kids = std::move(kids);
    n->exponent = exponent;
    seal(*n);
    return Expr(std::move(n));
  }

  static void seal(Expr::Node& n) {
    size_t h = static_cast<size_t>(n.kind) * 0x9e3779b1u;
    switch (n.kind) {
      case ExprKind::Const:
        h = hash_combine(h, hash_rational(n.value));
        break;
      case ExprKind::Var:
        h = hash_combine(h, std::hash<std::string>{}(n.name));
        break;
      case ExprKind::Pow:
        h = hash_combine(h, hash_rational(n.exponent));
        for (const auto& k : n.kids) h = hash_combine(h, k.hash());
        break;
      default:
        for (const auto& k : n.kids) h = hash_combine(h, k.hash());
        break;
    }
    n.hash = h;
  }
};

Expr::Expr() {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Const;
  n->value = Rational(0);
  ExprBuilder::seal(*n);
  node_ = std::move(n);
}

ExprKind Expr::kind() const { return node_->kind; }
const Rational& Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
const std::vector<Expr>& Expr::kids() const { return node_->kids; }
const Rational& Expr::exponent() const { return node_->exponent; }
size_t Expr::hash() const { return node_->hash; }

bool Expr::is_zero_const() const {
  return node_->kind == ExprKind::Const && node_->value.is_zero();
}
bool Expr::is_one_const() const {
  return node_->kind == ExprKind::Const && node_->value.is_one();
}

int Expr::compare(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return 0;
  int ra = rank_of(a.kind()), rb = rank_of(b.kind());
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a.kind()) {
    case ExprKind::Const:
      return compare_rational(a.value(), b.value());
    case ExprKind::Var:
      return a.name().compare(b.name());
    case ExprKind::Pow: {
      int c = compare(a.kids()[0], b.kids()[0]);
      if (c != 0) return c;
      return compare_rational(a.exponent(), b.exponent());
    }
    default: {
      const auto& ka = a.kids();
      const auto& kb = b.kids();
      if (ka.size() != kb.size()) return ka.size() < kb.size() ? -1 : 1;
      for (size_t i = 0; i < ka.size(); ++i) {
        int c = compare(ka[i], kb[i]);
        if (c != 0) return c;
      }
      return 0;
    }
  }
}

bool Expr::same_as(const Expr& other) const {
  if (node_ == other.node_) return true;
  if (node_->hash != other.node_->hash) return false;
  return compare(*this, other) == 0;
}

Expr Expr::constant(const Rational& r) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Const;
  n->value = r;
  ExprBuilder::seal(*n);
  return Expr(std::move(n));
}

Expr Expr::var(const std::string& name) {
  auto n = std::make_shared<Node>();
  n->kind = ExprKind::Var;
  n->name = name;
  ExprBuilder::seal(*n);
  return Expr(std::move(n));
}

Expr Expr::pi() { return var("pi"); }

namespace {

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const {
    return Expr::compare(a, b) < 0;
  }
};

using FactorMap = std::map<Expr, Rational, ExprLess>;   // base -> exponent
using TermMap = std::map<Expr, Rational, ExprLess>;     // monomial -> coeff

// Splits a product into (base, exponent) factors.
FactorMap factor_map_of(const Expr& m) {
  FactorMap out;
  auto take = [&out](const Expr& f) {
    if (f.kind() == ExprKind::Pow) {
      out[f.kids()[0]] = out[f.kids()[0]] + f.exponent();
    } else {
      out[f] = out[f] + Rational(1);
    }
  };
  if (m.kind() == ExprKind::Prod) {
    for (const auto& k : m.kids()) take(k);
  } else if (!m.is_one_const()) {
    take(m);
  }
  return out;
}

Expr rebuild_monomial(const FactorMap& fm) {
  std::vector<Expr> fs;
  for (const auto& [base, e] : fm) {
    if (e.is_zero()) continue;
    fs.push_back(Expr::pow(base, e));
  }
  return Expr::product(std::move(fs));
}

// Splits a canonical term into rational coefficient and monomial part.
std::pair<Rational, Expr> coeff_split(const Expr& t) {
  if (t.kind() == ExprKind::Const) return {t.value(), Expr::constant(1)};
  if (t.kind() == ExprKind::Prod && t.kids()[0].kind() == ExprKind::Const) {
    std::vector<Expr> rest(t.kids().begin() + 1, t.kids().end());
    Expr mono = rest.size() == 1 ? rest[0] : Expr::product(std::move(rest));
    return {t.kids()[0].value(), mono};
  }
  return {Rational(1), t};
}

// One pass of sin^2(u) + cos^2(u) -> 1 over collected terms; returns
// true when a pair was fused.
bool pythagorean_pass(TermMap& terms) {
  for (auto it = terms.begin(); it != terms.end(); ++it) {
    if (it->second.is_zero()) continue;
    FactorMap fm = factor_map_of(it->first);
    for (const auto& [base, e] : fm) {
      if (base.kind() != ExprKind::Sin) continue;
      if (e < Rational(2) || !e.is_integer()) continue;
      FactorMap partner = fm;
      partner[base] = e - Rational(2);
      Expr cos_u = Expr::cos(base.kids()[0]);
      partner[cos_u] = partner[cos_u] + Rational(2);
      Expr partner_mono = rebuild_monomial(partner);
      auto jt = terms.find(partner_mono);
      if (jt == terms.end() || jt == it) continue;
      if (!(jt->second == it->second)) continue;
      Expr self_mono = it->first;
      Rational c = it->second;
      FactorMap residual = fm;
      residual[base] = e - Rational(2);
      Expr res_mono = rebuild_monomial(residual);
      terms.erase(partner_mono);
      terms.erase(self_mono);
      terms[res_mono] = terms[res_mono] + c;
      return true;
    }
  }
  return false;
}

}  // namespace

Expr Expr::sum(std::vector<Expr> in) {
  TermMap terms;
  std::vector<Expr> queue = std::move(in);
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    Expr t = queue[qi];
    if (t.kind() == ExprKind::Sum) {
      for (const auto& k : t.kids()) queue.push_back(k);
      continue;
    }
    if (t.is_zero_const()) continue;
    auto [c, mono] = coeff_split(t);
    terms[mono] = terms[mono] + c;
  }
  for (int guard = 0; guard < 1000 && pythagorean_pass(terms); ++guard) {
  }
  std::vector<Expr> out;
  for (const auto& [mono, c] : terms) {
    if (c.is_zero()) continue;
    if (mono.is_one_const()) {
      out.push_back(constant(c));
    } else if (c.is_one()) {
      out.push_back(mono);
    } else {
      out.push_back(product({constant(c), mono}));
    }
  }
  if (out.empty()) return constant(0);
  if (out.size() == 1) return out[0];
  std::sort(out.begin(), out.end(),
            [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
  return ExprBuilder::make(ExprKind::Sum, std::move(out));
}

Expr Expr::product(std::vector<Expr> in) {
  Rational c(1);
  FactorMap bases;
  std::vector<Expr> queue = std::move(in);
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    Expr f = queue[qi];
    if (f.kind() == ExprKind::Prod) {
      for (const auto& k : f.kids()) queue.push_back(k);
      continue;
    }
    if (f.kind() == ExprKind::Const) {
      if (f.value().is_zero()) return constant(0);
      c = c * f.value();
      continue;
    }
    if (f.kind() == ExprKind::Pow) {
      bases[f.kids()[0]] = bases[f.kids()[0]] + f.exponent();
    } else {
      bases[f] = bases[f] + Rational(1);
    }
  }
  std::vector<Expr> out;
  bool collapsed = false;  // a merged power came back as a product
  for (const auto& [base, e] : bases) {
    if (e.is_zero()) continue;
    Expr f = pow(base, e);
    if (f.kind() == ExprKind::Const) {
      if (f.value().is_zero()) return constant(0);
      c = c * f.value();
    } else {
      collapsed = collapsed || f.kind() == ExprKind::Prod;
      out.push_back(f);
    }
  }
  if (collapsed) {
    out.push_back(constant(c));
    return product(std::move(out));
  }
  if (out.empty()) return constant(c);
  std::sort(out.begin(), out.end(),
            [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
  // distribute a constant over a lone sum so that negated sums flatten
  // and structural cancellation works (d o d, mixed partials)
  if (!c.is_one() && out.size() == 1 && out[0].kind() == ExprKind::Sum) {
    std::vector<Expr> terms;
    terms.reserve(out[0].kids().size());
    for (const auto& t : out[0].kids())
      terms.push_back(product({constant(c), t}));
    return sum(std::move(terms));
  }
  if (c.is_one()) {
    if (out.size() == 1) return out[0];
    return ExprBuilder::make(ExprKind::Prod, std::move(out));
  }
  std::vector<Expr> with_c;
  with_c.reserve(out.size() + 1);
  with_c.push_back(constant(c));
  for (auto& f : out) with_c.push_back(std::move(f));
  return ExprBuilder::make(ExprKind::Prod, std::move(with_c));
}

Expr Expr::pow(const Expr& base, const Rational& e) {
  if (e.is_zero()) return constant(1);
  if (e.is_one()) return base;
  if (base.kind() == ExprKind::Const) {
    const Rational& b = base.value();
    if (b.is_zero()) {
      if (!e.is_negative()) return constant(0);
      // 0^negative kept symbolic; eval reports the singularity
      return ExprBuilder::make(ExprKind::Pow, {base}, e);
    }
    if (b.is_one()) return constant(1);
    try {
      if (e.is_integer()) return constant(b.pow_int(e.num()));
      Rational root;
      if (b.exact_root(e.den(), root)) return constant(root.pow_int(e.num()));
    } catch (const OverflowError&) {
      // fall through to the symbolic node
    }
  }
  if (base.kind() == ExprKind::Pow && e.is_integer()) {
    return pow(base.kids()[0], base.exponent() * e);
  }
  if (base.kind() == ExprKind::Prod && e.is_integer()) {
    std::vector<Expr> fs;
    fs.reserve(base.kids().size());
    for (const auto& k : base.kids()) fs.push_back(pow(k, e));
    return product(std::move(fs));
  }
  return ExprBuilder::make(ExprKind::Pow, {base}, e);
}

Expr Expr::sin(const Expr& u) {
  if (u.is_zero_const()) return constant(0);
  return ExprBuilder::make(ExprKind::Sin, {u});
}

Expr Expr::cos(const Expr& u) {
  if (u.is_zero_const()) return constant(1);
  return ExprBuilder::make(ExprKind::Cos, {u});
}

Expr Expr::exp(const Expr& u) {
  if (u.is_zero_const()) return constant(1);
  return ExprBuilder::make(ExprKind::Exp, {u});
}

Expr Expr::ln(const Expr& u) {
  if (u.is_one_const()) return constant(0);
  if (u.kind() == ExprKind::Exp) return u.kids()[0];
  return ExprBuilder::make(ExprKind::Ln, {u});
}

static void collect_vars(const Expr& e, std::set<std::string>& out) {
  if (e.kind() == ExprKind::Var) {
    if (e.name() != "pi") out.insert(e.name());
    return;
  }
  for (const auto& k : e.kids()) collect_vars(k, out);
}

std::set<std::string> Expr::variables() const {
  std::set<std::string> out;
  collect_vars(*this, out);
  return out;
}

bool Expr::depends_on(const std::string& v) const {
  if (kind() == ExprKind::Var) return name() == v && v != "pi";
  for (const auto& k : kids())
    if (k.depends_on(v)) return true;
  return false;
}

Expr Expr::differentiate(const std::string& v) const {
  if (v == "pi")
    throw UnknownVariableError("cannot differentiate by the constant pi");
  switch (kind()) {
    case ExprKind::Const:
      return constant(0);
    case ExprKind::Var:
      return name() == v ? constant(1) : constant(0);
    case ExprKind::Sum: {
      std::vector<Expr> ds;
      ds.reserve(kids().size());
      for (const auto& k : kids()) ds.push_back(k.differentiate(v));
      return sum(std::move(ds));
    }
    case ExprKind::Prod: {
      std::vector<Expr> terms;
      for (size_t i = 0; i < kids().size(); ++i) {
        std::vector<Expr> fs = kids();
        fs[i] = fs[i].differentiate(v);
        terms.push_back(product(std::move(fs)));
      }
      return sum(std::move(terms));
    }
    case ExprKind::Pow: {
      const Expr& b = kids()[0];
      return product({constant(exponent()), pow(b, exponent() - Rational(1)),
                      b.differentiate(v)});
    }
    case ExprKind::Sin:
      return cos(kids()[0]) * kids()[0].differentiate(v);
    case ExprKind::Cos:
      return -(sin(kids()[0]) * kids()[0].differentiate(v));
    case ExprKind::Exp:
      return exp(kids()[0]) * kids()[0].differentiate(v);
    case ExprKind::Ln:
      return kids()[0].differentiate(v) * pow(kids()[0], Rational(-1));
  }
  throw std::logic_error("unreachable expression kind");
}

Expr Expr::substitute(const std::map<std::string, Expr>& bindings) const {
  switch (kind()) {
    case ExprKind::Const:
      return *this;
    case ExprKind::Var: {
      auto it = bindings.find(name());
      return it == bindings.end() ? *this : it->second;
    }
    default: {
      std::vector<Expr> ks;
      ks.reserve(kids().size());
      bool changed = false;
      for (const auto& k : kids()) {
        ks.push_back(k.substitute(bindings));
        changed = changed || !ks.back().same_as(k);
      }
      if (!changed) return *this;
      switch (kind()) {
        case ExprKind::Sum: return sum(std::move(ks));
        case ExprKind::Prod: return product(std::move(ks));
        case ExprKind::Pow: return pow(ks[0], exponent());
        case ExprKind::Sin: return sin(ks[0]);
        case ExprKind::Cos: return cos(ks[0]);
        case ExprKind::Exp: return exp(ks[0]);
        case ExprKind::Ln: return ln(ks[0]);
        default: break;
      }
      throw std::logic_error("unreachable expression kind");
    }
  }
}

namespace {

double eval_rec(const Expr& e, const std::map<std::string, double>& at,
                double& scale) {
  double v = 0.0;
  switch (e.kind()) {
    case ExprKind::Const:
      v = e.value().to_double();
      break;
    case ExprKind::Var: {
      auto it = at.find(e.name());
      if (it != at.end()) {
        v = it->second;
      } else if (e.name() == "pi") {
        v = 3.14159265358979323846;
      } else {
        throw UnknownVariableError("unbound variable '" + e.name() + "'");
      }
      break;
    }
    case ExprKind::Sum:
      for (const auto& k : e.kids()) v += eval_rec(k, at, scale);
      break;
    case ExprKind::Prod:
      v = 1.0;
      for (const auto& k : e.kids()) v *= eval_rec(k, at, scale);
      break;
    case ExprKind::Pow: {
      double b = eval_rec(e.kids()[0], at, scale);
      const Rational& q = e.exponent();
      if (b == 0.0 && q.is_negative())
        throw EvalError("negative power of zero");
      if (b < 0.0 && !q.is_integer())
        throw EvalError("fractional power of a negative base");
      v = std::pow(b, q.to_double());
      break;
    }
    case ExprKind::Sin:
      v = std::sin(eval_rec(e.kids()[0], at, scale));
      break;
    case ExprKind::Cos:
      v = std::cos(eval_rec(e.kids()[0], at, scale));
      break;
    case ExprKind::Exp:
      v = std::exp(eval_rec(e.kids()[0], at, scale));
      break;
    case ExprKind::Ln: {
      double u = eval_rec(e.kids()[0], at, scale);
      if (u <= 0.0) throw EvalError("ln of a non-positive value");
      v = std::log(u);
      break;
    }
  }
  if (!std::isfinite(v)) throw EvalError("non-finite value");
  scale = std::max(scale, std::abs(v));
  return v;
}

}  // namespace

double Expr::eval(const std::map<std::string, double>& at) const {
  double scale = 0.0;
  return eval_rec(*this, at, scale);
}

double Expr::eval_scaled(const std::map<std::string, double>& at,
                         double& scale) const {
  scale = 0.0;
  return eval_rec(*this, at, scale);
}

Expr simplify(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Const:
    case ExprKind::Var:
      return e;
    default: {
      std::vector<Expr> ks;
      ks.reserve(e.kids().size());
      for (const auto& k : e.kids()) ks.push_back(simplify(k));
      switch (e.kind()) {
        case ExprKind::Sum: return Expr::sum(std::move(ks));
        case ExprKind::Prod: return Expr::product(std::move(ks));
        case ExprKind::Pow: return Expr::pow(ks[0], e.exponent());
        case ExprKind::Sin: return Expr::sin(ks[0]);
        case ExprKind::Cos: return Expr::cos(ks[0]);
        case ExprKind::Exp: return Expr::exp(ks[0]);
        case ExprKind::Ln: return Expr::ln(ks[0]);
        default: break;
      }
      throw std::logic_error("unreachable expression kind");
    }
  }
}

namespace {

// Precedence: sum 1, product 2, power 3, atom 4.
void render(const Expr& e, std::ostream& os, int parent_prec);

void render_in(const Expr& e, std::ostream& os, int prec, int parent_prec) {
  if (prec < parent_prec) {
    os << '(';
    render(e, os, 0);
    os << ')';
  } else {
    render(e, os, parent_prec);
  }
}

void render(const Expr& e, std::ostream& os, int parent_prec) {
  switch (e.kind()) {
    case ExprKind::Const: {
      const Rational& r = e.value();
      bool wrap = (r.is_negative() || !r.is_integer()) && parent_prec >= 2;
      if (wrap) os << '(';
      os << r.str();
      if (wrap) os << ')';
      break;
    }
    case ExprKind::Var:
      os << e.name();
      break;
    case ExprKind::Sum: {
      if (parent_prec > 1) os << '(';
      bool first = true;
      for (const auto& k : e.kids()) {
        auto [c, mono] = coeff_split(k);
        if (!first && c.is_negative()) {
          os << " - ";
          Expr flipped = Expr::product({Expr::constant(-c), mono});
          render(flipped, os, 2);
        } else {
          if (!first) os << " + ";
          render(k, os, 2);
        }
        first = false;
      }
      if (parent_prec > 1) os << ')';
      break;
    }
    case ExprKind::Prod: {
      if (parent_prec > 2) os << '(';
      Rational c(1);
      size_t start = 0;
      if (e.kids()[0].kind() == ExprKind::Const) {
        c = e.kids()[0].value();
        start = 1;
      }
      if (c.is_negative()) {
        os << '-';
        c = -c;
      }
      bool first = true;
      if (!c.is_one() || start == e.kids().size()) {
        os << c.str();
        first = false;
      }
      for (size_t i = start; i < e.kids().size(); ++i) {
        if (!first) os << '*';
        int kid_prec = e.kids()[i].kind() == ExprKind::Pow ? 3
                       : e.kids()[i].kind() == ExprKind::Sum ? 1 : 4;
        render_in(e.kids()[i], os, kid_prec, 3);
        first = false;
      }
      if (parent_prec > 2) os << ')';
      break;
    }
    case ExprKind::Pow: {
      const Expr& b = e.kids()[0];
      bool atom = b.kind() == ExprKind::Var || b.kind() == ExprKind::Sin ||
                  b.kind() == ExprKind::Cos || b.kind() == ExprKind::Exp ||
                  b.kind() == ExprKind::Ln ||
                  (b.kind() == ExprKind::Const && !b.value().is_negative() &&
                   b.value().is_integer());
      if (!atom) {
        os << '(';
        render(b, os, 0);
        os << ')';
      } else {
        render(b, os, 4);
      }
      os << '^';
      const Rational& q = e.exponent();
      if (q.is_integer()) {
        os << q.str();
      } else {
        os << '(' << q.str() << ')';
      }
      break;
    }
    case ExprKind::Sin:
      os << "sin(";
      render(e.kids()[0], os, 0);
      os << ')';
      break;
    case ExprKind::Cos:
      os << "cos(";
      render(e.kids()[0], os, 0);
      os << ')';
      break;
    case ExprKind::Exp:
      os << "exp(";
      render(e.kids()[0], os, 0);
      os << ')';
      break;
    case ExprKind::Ln:
      os << "ln(";
      render(e.kids()[0], os, 0);
      os << ')';
      break;
  }
}

}  // namespace

std::string Expr::str() const {
  std::ostringstream os;
  render(*this, os, 0);
  return os.str();
}

}  // namespace pfaffian
