#pragma once

// Sparse polynomials with exact rational coefficients. Terms are stored in
// descending canonical grevlex order, so iteration and printing are
// deterministic; leading terms under other orders are found by scanning.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "cprel/monomial.hpp"
#include "cprel/rational.hpp"
#include "cprel/term_order.hpp"

namespace cprel {

class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial zero() { return Polynomial(); }
  static Polynomial term(const Monomial& m, const Rational& c);
  static Polynomial from_monomial(const Monomial& m) { return term(m, Rational(1)); }
  static Polynomial from_binomial(const Binomial& b);
  static Polynomial from_var(const VarId& v) { return from_monomial(Monomial::var(v)); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Monomial, Rational, CanonicalTermGreater>& terms() const { return terms_; }

  Rational coefficient(const Monomial& m) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Rational& c) const;
  Polynomial times_term(const Monomial& m, const Rational& c) const;

  // Largest term under the given order; nullopt for the zero polynomial.
  std::optional<std::pair<Monomial, Rational>> leading_term(const TermOrder& order) const;

  Rational evaluate(const std::function<Rational(const VarId&)>& value) const;

  std::string str(int m = 0, bool abbreviate_ground = false) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational, CanonicalTermGreater> terms_;  // no zero coefficients
};

}  // namespace cprel
