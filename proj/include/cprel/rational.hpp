#pragma once

// Exact rational numbers backed by GMP. Always stored reduced with a
// positive denominator; serialization is the canonical "a/b" (or "a"
// when the denominator is 1) so values round-trip bit-exactly.

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

#include "cprel/errors.hpp"

namespace cprel {

class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw input_error("rational with zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  // Exact binary expansion of the double.
  static Rational from_double(double d) { return Rational(mpq_class(d)); }

  // Accepts "a", "a/b" and plain decimals like "-0.25".
  static Rational parse(const std::string& literal) {
    std::string s = literal;
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    if (s.empty()) throw input_error("empty rational literal");
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      if (s.find('/') != std::string::npos)
        throw input_error("malformed rational literal: " + s);
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      std::size_t frac_len = s.size() - dot - 1;
      if (digits.empty() || digits == "-" || digits == "+")
        throw input_error("malformed rational literal: " + s);
      mpz_class num, den(1);
      if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0)
        throw input_error("malformed rational literal: " + s);
      for (std::size_t k = 0; k < frac_len; ++k) den *= 10;
      Rational r;
      r.v_ = mpq_class(num) / mpq_class(den);
      r.v_.canonicalize();
      return r;
    }
    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
      throw input_error("malformed rational literal: " + s);
    if (q.get_den() == 0) throw input_error("rational with zero denominator: " + s);
    q.canonicalize();
    return Rational(q);
  }

  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }
  std::string numerator_str() const { return v_.get_num().get_str(); }
  std::string denominator_str() const { return v_.get_den().get_str(); }
  double to_double() const { return v_.get_d(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  Rational abs() const { return Rational(mpq_class(::abs(v_))); }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw input_error("rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

  const mpq_class& raw() const { return v_; }

 private:
  mpq_class v_;
};

}  // namespace cprel
