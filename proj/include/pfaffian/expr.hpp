#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "pfaffian/rational.hpp"

namespace pfaffian {

// Thrown by eval() at points outside an expression's domain
// (ln of a non-positive value, fractional power of a negative base,
// negative power of zero). The zero tester treats these as singular
// sample points and resamples.
struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownVariableError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ExprKind { Const, Var, Sum, Prod, Pow, Sin, Cos, Exp, Ln };

// Immutable symbolic scalar expression. Trees are canonical by
// construction: sums/products are flattened and sorted, constants
// folded, like terms collected, powers over a common base merged,
// plus the rewrites ln(exp(u)) -> u and sin^2(u) + cos^2(u) -> 1.
//
// The identifier "pi" is reserved: it is a symbolic constant that
// evaluates to 3.14159... and is never treated as a free variable.
class Expr {
 public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  Expr();  // the constant 0

  // Constructors (canonicalizing).
  static Expr constant(const Rational& r);
  static Expr constant(long long n) { return constant(Rational(n)); }
  static Expr var(const std::string& name);
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr pow(const Expr& base, const Rational& exponent);
  static Expr sin(const Expr& u);
  static Expr cos(const Expr& u);
  static Expr exp(const Expr& u);
  static Expr ln(const Expr& u);

  static Expr pi();  // the reserved circle constant

  ExprKind kind() const;
  const Rational& value() const;        // Const
  const std::string& name() const;      // Var
  const std::vector<Expr>& kids() const;
  const Rational& exponent() const;     // Pow

  bool is_zero_const() const;
  bool is_one_const() const;

  // Structural identity of canonical forms.
  bool same_as(const Expr& other) const;
  size_t hash() const;

  // Total canonical order (constants, then variables, then composites).
  static int compare(const Expr& a, const Expr& b);

  // Free variables, excluding the reserved "pi".
  std::set<std::string> variables() const;
  bool depends_on(const std::string& v) const;

  // Calculus / algebra.
  Expr differentiate(const std::string& v) const;
  Expr substitute(const std::map<std::string, Expr>& bindings) const;

  // Point evaluation; exact rational subtrees stay exact until the
  // final conversion. Throws EvalError at singular points and
  // UnknownVariableError for unbound variables.
  double eval(const std::map<std::string, double>& at) const;
  // Also reports the largest |value| seen at any subexpression, which
  // the zero tester uses as the relative-tolerance scale.
  double eval_scaled(const std::map<std::string, double>& at,
                     double& scale) const;

  // Rendered in the CLI expression grammar (re-parseable).
  std::string str() const;

  friend Expr operator+(const Expr& a, const Expr& b) {
    return Expr::sum({a, b});
  }
  friend Expr operator-(const Expr& a, const Expr& b) {
    return Expr::sum({a, Expr::product({Expr::constant(-1), b})});
  }
  friend Expr operator*(const Expr& a, const Expr& b) {
    return Expr::product({a, b});
  }
  friend Expr operator/(const Expr& a, const Expr& b) {
    return Expr::product({a, Expr::pow(b, Rational(-1))});
  }
  Expr operator-() const { return Expr::product({Expr::constant(-1), *this}); }

  const NodePtr& node() const { return node_; }

 private:
  friend struct ExprBuilder;
  explicit Expr(NodePtr n) : node_(std::move(n)) {}
  NodePtr node_;
};

// Re-canonicalizes bottom-up. Construction already canonicalizes, so
// this is idempotent; it is the public entry point for expressions
// deserialized or assembled by hand.
Expr simplify(const Expr& e);

inline Expr operator*(long long c, const Expr& e) {
  return Expr::constant(c) * e;
}

}  // namespace pfaffian
