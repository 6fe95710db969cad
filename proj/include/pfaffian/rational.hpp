#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pfaffian {

struct OverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact rational with int64 parts, always normalized (gcd 1, den > 0).
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool is_integer() const { return den_ == 1; }
  bool is_negative() const { return num_ < 0; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }

  // Integer power; exponent may be negative (zero base then throws).
  Rational pow_int(long long e) const;

  // Exact q-th root if one exists (q > 0), e.g. (4)^(1/2) -> 2.
  bool exact_root(long long q, Rational& out) const;

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  using i128 = __int128;

  static Rational make(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw OverflowError("rational overflow");
    Rational r;
    r.num_ = static_cast<long long>(n);
    r.den_ = static_cast<long long>(d);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  void normalize() { *this = make(num_, den_); }

  long long num_;
  long long den_;
};

inline Rational Rational::pow_int(long long e) const {
  if (e == 0) return Rational(1);
  if (num_ == 0) {
    if (e < 0) throw std::domain_error("zero to a negative power");
    return Rational(0);
  }
  Rational base = e > 0 ? *this : Rational(den_, num_);
  long long k = e > 0 ? e : -e;
  Rational acc(1);
  while (k > 0) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

inline bool Rational::exact_root(long long q, Rational& out) const {
  if (q <= 0) return false;
  if (q == 1) {
    out = *this;
    return true;
  }
  if (num_ < 0) return false;  // even/odd handling not worth it here
  auto iroot = [](long long v, long long q, long long& r) {
    if (v == 0 || v == 1) {
      r = v;
      return true;
    }
    long long lo = 1, hi = v;
    while (lo <= hi) {
      long long mid = lo + (hi - lo) / 2;
      i128 p = 1;
      bool over = false;
      for (long long i = 0; i < q; ++i) {
        p *= mid;
        if (p > v) {
          over = true;
          break;
        }
      }
      if (!over && p == v) {
        r = mid;
        return true;
      }
      if (over || p > v)
        hi = mid - 1;
      else
        lo = mid + 1;
    }
    return false;
  };
  long long rn, rd;
  if (!iroot(num_, q, rn) || !iroot(den_, q, rd)) return false;
  out = Rational(rn, rd);
  return true;
}

}  // namespace pfaffian
