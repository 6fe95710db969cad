#include "pfaffian/parse.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <vector>

namespace pfaffian {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen,
                 RParen, End };

struct Token {
  Tok kind;
  std::string text;
  Rational number{0};
  int column = 1;
};

struct Lexer {
  std::vector<Token> tokens;

  explicit Lexer(const std::string& s) {
    size_t i = 0;
    while (i < s.size()) {
      char c = s[i];
      int col = static_cast<int>(i) + 1;
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
          ++j;
        long long whole = std::stoll(s.substr(i, j - i));
        Rational value(whole);
        if (j < s.size() && s[j] == '.') {
          size_t k = j + 1;
          while (k < s.size() &&
                 std::isdigit(static_cast<unsigned char>(s[k])))
            ++k;
          if (k == j + 1) throw ParseError("digits expected after '.'",
                                           static_cast<int>(j) + 2);
          long long frac = std::stoll(s.substr(j + 1, k - j - 1));
          long long den = 1;
          for (size_t d = 0; d < k - j - 1; ++d) den *= 10;
          value = Rational(whole * den + frac, den);
          j = k;
        }
        tokens.push_back({Tok::Number, s.substr(i, j - i), value, col});
        i = j;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        size_t j = i;
        while (j < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
          ++j;
        tokens.push_back({Tok::Ident, s.substr(i, j - i), Rational(0), col});
        i = j;
        continue;
      }
      Tok k;
      switch (c) {
        case '+': k = Tok::Plus; break;
        case '-': k = Tok::Minus; break;
        case '*': k = Tok::Star; break;
        case '/': k = Tok::Slash; break;
        case '^': k = Tok::Caret; break;
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'",
                           col);
      }
      tokens.push_back({k, std::string(1, c), Rational(0), col});
      ++i;
    }
    tokens.push_back({Tok::End, "", Rational(0),
                      static_cast<int>(s.size()) + 1});
  }
};

int edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::vector<int>> dp(a.size() + 1,
                                   std::vector<int>(b.size() + 1, 0));
  for (size_t i = 0; i <= a.size(); ++i) dp[i][0] = static_cast<int>(i);
  for (size_t j = 0; j <= b.size(); ++j) dp[0][j] = static_cast<int>(j);
  for (size_t i = 1; i <= a.size(); ++i)
    for (size_t j = 1; j <= b.size(); ++j)
      dp[i][j] = std::min({dp[i - 1][j] + 1, dp[i][j - 1] + 1,
                           dp[i - 1][j - 1] + (a[i - 1] != b[j - 1])});
  return dp[a.size()][b.size()];
}

const char* const kFuncs[] = {"sin", "cos", "exp", "ln", "sqrt"};

struct Parser {
  const ChartPtr& chart;
  const std::set<std::string>& params;
  std::vector<Token> ts;
  size_t pos = 0;
  bool form_mode = false;  // '*' before a differential ends a coefficient

  Parser(const std::string& text, const ChartPtr& c,
         const std::set<std::string>& p)
      : chart(c), params(p), ts(Lexer(text).tokens) {}

  const Token& peek(size_t ahead = 0) const {
    size_t i = std::min(pos + ahead, ts.size() - 1);
    return ts[i];
  }
  const Token& next() { return ts[std::min(pos++, ts.size() - 1)]; }
  bool accept(Tok k) {
    if (peek().kind == k) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(Tok k, const std::string& what) {
    if (!accept(k)) throw ParseError("expected " + what, peek().column);
  }

  bool is_differential(const Token& t) const {
    return t.kind == Tok::Ident && t.text.size() > 1 && t.text[0] == 'd' &&
           chart->has(t.text.substr(1));
  }

  std::string suggestions(const std::string& name) const {
    std::vector<std::pair<int, std::string>> scored;
    for (const auto& n : chart->names())
      scored.emplace_back(edit_distance(name, n), n);
    for (const auto& n : params) scored.emplace_back(edit_distance(name, n), n);
    std::sort(scored.begin(), scored.end());
    std::string out;
    for (size_t i = 0; i < scored.size() && i < 3; ++i) {
      if (scored[i].first > 2 && i > 0) break;
      if (!out.empty()) out += ", ";
      out += scored[i].second;
    }
    return out;
  }

  Expr resolve(const Token& t) {
    if (chart->has(t.text) || params.count(t.text) || t.text == "pi")
      return Expr::var(t.text);
    if (form_mode && t.text.size() > 1 && t.text[0] == 'd')
      throw ParseError(
          "differential of a non-chart coordinate '" + t.text.substr(1) + "'",
          t.column);
    std::string hint = suggestions(t.text);
    throw ParseError("unknown identifier '" + t.text + "'" +
                         (hint.empty() ? "" : "; did you mean: " + hint),
                     t.column);
  }

  // signed rational after '^'; the '/INT' tail is taken only when the
  // next token really is an integer
  Rational exponent() {
    bool paren = accept(Tok::LParen);
    bool neg = accept(Tok::Minus);
    if (peek().kind != Tok::Number || !peek().number.is_integer())
      throw ParseError("expected a rational exponent", peek().column);
    long long num = next().number.num();
    long long den = 1;
    if (peek().kind == Tok::Slash && peek(1).kind == Tok::Number &&
        peek(1).number.is_integer()) {
      ++pos;
      den = next().number.num();
      if (den == 0) throw ParseError("zero denominator", peek().column);
    }
    if (paren) expect(Tok::RParen, "')'");
    return Rational(neg ? -num : num, den);
  }

  Expr base() {
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      ++pos;
      return Expr::constant(t.number);
    }
    if (t.kind == Tok::LParen) {
      ++pos;
      Expr e = expression();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (t.kind == Tok::Ident) {
      for (const char* f : kFuncs) {
        if (t.text == f && peek(1).kind == Tok::LParen) {
          pos += 2;
          Expr arg = expression();
          expect(Tok::RParen, "')'");
          if (t.text == "sin") return Expr::sin(arg);
          if (t.text == "cos") return Expr::cos(arg);
          if (t.text == "exp") return Expr::exp(arg);
          if (t.text == "ln") return Expr::ln(arg);
          return Expr::pow(arg, Rational(1, 2));  // sqrt
        }
      }
      ++pos;
      return resolve(t);
    }
    throw ParseError("expected a number, name or '('", t.column);
  }

  Expr factor() {
    Expr b = base();
    if (accept(Tok::Caret)) return Expr::pow(b, exponent());
    return b;
  }

  Expr term() {
    Expr e = factor();
    for (;;) {
      if (peek().kind == Tok::Star) {
        if (form_mode && is_differential(peek(1))) break;
        ++pos;
        e = e * factor();
      } else if (peek().kind == Tok::Slash) {
        ++pos;
        e = e / factor();
      } else {
        break;
      }
    }
    return e;
  }

  Expr expression() {
    bool neg = accept(Tok::Minus);
    Expr e = term();
    if (neg) e = -e;
    for (;;) {
      if (accept(Tok::Plus)) {
        e = e + term();
      } else if (accept(Tok::Minus)) {
        e = e - term();
      } else {
        return e;
      }
    }
  }

  void require_differential() const {
    const Token& t = peek();
    if (is_differential(t)) return;
    if (t.kind == Tok::Ident && t.text.size() > 1 && t.text[0] == 'd')
      throw ParseError(
          "differential of a non-chart coordinate '" + t.text.substr(1) + "'",
          t.column);
    throw ParseError("expected a differential", t.column);
  }

  // [expr '*'] 'd'coord ('^' 'd'coord)*
  void sterm(std::optional<DiffForm>& f, int sign) {
    Expr coeff = Expr::constant(sign);
    if (!is_differential(peek())) {
      coeff = coeff * term();
      expect(Tok::Star, "'*' before a differential");
      require_differential();
    }
    std::vector<int> idx;
    for (;;) {
      const Token& t = next();
      idx.push_back(chart->index_of(t.text.substr(1)));
      if (!accept(Tok::Caret)) break;
      require_differential();
    }
    int degree = static_cast<int>(idx.size());
    if (degree > chart->dim())
      throw ParseError("degree exceeds the chart dimension", peek().column);
    if (!f) {
      f.emplace(chart, degree);
    } else if (f->degree() != degree) {
      throw ParseError("mixed degrees in one form", peek().column);
    }
    f->add_term(std::move(idx), coeff);
  }

  DiffForm form() {
    form_mode = true;
    if (peek().kind == Tok::Number && peek().number.is_zero() &&
        peek(1).kind == Tok::End) {
      return DiffForm(chart, 1);
    }
    std::optional<DiffForm> f;
    int sign = accept(Tok::Minus) ? -1 : 1;
    sterm(f, sign);
    for (;;) {
      if (accept(Tok::Plus)) {
        sterm(f, 1);
      } else if (accept(Tok::Minus)) {
        sterm(f, -1);
      } else {
        break;
      }
    }
    expect(Tok::End, "end of input");
    return *f;
  }
};

}  // namespace

Expr parse_expression(const std::string& text, const ChartPtr& chart,
                      const std::set<std::string>& params) {
  Parser p(text, chart, params);
  Expr e = p.expression();
  p.expect(Tok::End, "end of input");
  return e;
}

DiffForm parse_form(const std::string& text, const ChartPtr& chart,
                    const std::set<std::string>& params) {
  Parser p(text, chart, params);
  return p.form();
}

}  // namespace pfaffian
