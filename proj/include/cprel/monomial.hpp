#pragma once

// Sparse monomials in the indeterminates p_{i|I}, and binomials
// (differences of two coprime monomials). Two fixed, stateless monomial
// comparisons are provided: canonical lex and canonical grevlex, both
// reading variables in canonical VarId order. The canonical sign of a
// binomial puts the side containing the least variable of the combined
// support first, i.e. the lex-greater side.

#include <map>
#include <string>
#include <vector>

#include "cprel/errors.hpp"
#include "cprel/event_family.hpp"

namespace cprel {

class Monomial {
 public:
  Monomial() = default;

  static Monomial one() { return Monomial(); }
  static Monomial var(const VarId& v, int exp = 1) {
    Monomial m;
    m.set(v, exp);
    return m;
  }

  int exponent(const VarId& v) const {
    auto it = exp_.find(v);
    return it == exp_.end() ? 0 : it->second;
  }
  void set(const VarId& v, int exp) {
    if (exp < 0) throw input_error("negative exponent");
    if (exp == 0)
      exp_.erase(v);
    else
      exp_[v] = exp;
  }

  bool is_one() const { return exp_.empty(); }
  int degree() const;

  const std::map<VarId, int>& exponents() const { return exp_; }
  std::vector<VarId> support() const;

  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& o) const;
  // Pre: o.divides(*this).
  Monomial operator/(const Monomial& o) const;
  static Monomial gcd(const Monomial& a, const Monomial& b);
  static Monomial lcm(const Monomial& a, const Monomial& b);

  std::string str(int m = 0, bool abbreviate_ground = false) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp_ == b.exp_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

 private:
  std::map<VarId, int> exp_;  // no zero exponents stored
};

// Pure lexicographic, least VarId most significant. Returns -1/0/1.
int canonical_lex_compare(const Monomial& a, const Monomial& b);
// Graded reverse lexicographic over the same variable order.
int canonical_grevlex_compare(const Monomial& a, const Monomial& b);

// Descending canonical grevlex; storage/display order for polynomials.
struct CanonicalTermGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return canonical_grevlex_compare(a, b) > 0;
  }
};

class Binomial {
 public:
  // Strips the common monomial factor; the orientation given by the caller
  // is preserved. Throws input_error if the sides coincide.
  Binomial(Monomial plus, Monomial minus);

  const Monomial& plus() const { return plus_; }
  const Monomial& minus() const { return minus_; }
  int degree() const { return std::max(plus_.degree(), minus_.degree()); }
  bool is_squarefree() const;

  // Sign-normalized copy: plus is the canonical-lex-greater side. Idempotent.
  Binomial canonical() const;
  Binomial flipped() const { return Binomial(minus_, plus_); }

  std::string str(int m = 0, bool abbreviate_ground = false) const;

  // Orientation-sensitive equality.
  friend bool operator==(const Binomial& a, const Binomial& b) {
    return a.plus_ == b.plus_ && a.minus_ == b.minus_;
  }
  friend bool operator!=(const Binomial& a, const Binomial& b) { return !(a == b); }

 private:
  Monomial plus_, minus_;
};

// True when the binomials agree after sign normalization.
bool same_relation(const Binomial& a, const Binomial& b);

// Deterministic order for listing binomials: ascending canonical grevlex on
// the canonical form (plus side first, then minus side).
bool canonical_binomial_less(const Binomial& a, const Binomial& b);

}  // namespace cprel
