#include "cprel/monomial.hpp"

#include <algorithm>
#include <sstream>

namespace cprel {

int Monomial::degree() const {
  int d = 0;
  for (const auto& [v, e] : exp_) d += e;
  return d;
}

std::vector<VarId> Monomial::support() const {
  std::vector<VarId> s;
  s.reserve(exp_.size());
  for (const auto& [v, e] : exp_) s.push_back(v);
  return s;
}

bool Monomial::divides(const Monomial& other) const {
  for (const auto& [v, e] : exp_)
    if (other.exponent(v) < e) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r = *this;
  for (const auto& [v, e] : o.exp_) r.set(v, r.exponent(v) + e);
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r;
  for (const auto& [v, e] : exp_) {
    int d = e - o.exponent(v);
    if (d < 0) throw input_error("monomial division with remainder");
    if (d > 0) r.set(v, d);
  }
  for (const auto& [v, e] : o.exp_)
    if (exponent(v) < e) throw input_error("monomial division with remainder");
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial g;
  for (const auto& [v, e] : a.exp_) {
    int eb = b.exponent(v);
    if (eb > 0) g.set(v, std::min(e, eb));
  }
  return g;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial l = a;
  for (const auto& [v, e] : b.exp_) l.set(v, std::max(l.exponent(v), e));
  return l;
}

std::string Monomial::str(int m, bool abbreviate_ground) const {
  if (exp_.empty()) return "1";
  auto is_ground = [m](const VarId& v) {
    return m > 0 && static_cast<int>(v.event.size()) == m && v.event.front() == 1 &&
           v.event.back() == m;
  };
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const VarId& v, int e) {
    if (!first) os << "*";
    first = false;
    os << var_label(v, m, abbreviate_ground);
    if (e > 1) os << "^" << e;
  };
  // The short p_i form mimics the usual typography, which leads with the
  // unconditioned factors.
  if (abbreviate_ground) {
    for (const auto& [v, e] : exp_)
      if (is_ground(v)) emit(v, e);
    for (const auto& [v, e] : exp_)
      if (!is_ground(v)) emit(v, e);
  } else {
    for (const auto& [v, e] : exp_) emit(v, e);
  }
  return os.str();
}

int canonical_lex_compare(const Monomial& a, const Monomial& b) {
  auto ia = a.exponents().begin(), ea = a.exponents().end();
  auto ib = b.exponents().begin(), eb = b.exponents().end();
  while (ia != ea || ib != eb) {
    if (ia == ea) return -1;  // b has a variable a lacks
    if (ib == eb) return 1;
    if (ia->first < ib->first) return 1;   // a's earlier variable is present
    if (ib->first < ia->first) return -1;
    if (ia->second != ib->second) return ia->second > ib->second ? 1 : -1;
    ++ia;
    ++ib;
  }
  return 0;
}

int canonical_grevlex_compare(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db ? -1 : 1;
  // Scan from the greatest variable down; smaller exponent there wins.
  auto ia = a.exponents().rbegin(), ea = a.exponents().rend();
  auto ib = b.exponents().rbegin(), eb = b.exponents().rend();
  while (ia != ea || ib != eb) {
    if (ia == ea) return 1;  // b still has a later variable; a is greater
    if (ib == eb) return -1;
    if (ib->first < ia->first) return -1;  // a alone holds the later variable
    if (ia->first < ib->first) return 1;
    if (ia->second != ib->second) return ia->second < ib->second ? 1 : -1;
    ++ia;
    ++ib;
  }
  return 0;
}

Binomial::Binomial(Monomial plus, Monomial minus) {
  Monomial g = Monomial::gcd(plus, minus);
  plus_ = plus / g;
  minus_ = minus / g;
  if (plus_ == minus_) throw input_error("degenerate binomial: sides coincide");
}

bool Binomial::is_squarefree() const {
  for (const auto& [v, e] : plus_.exponents())
    if (e > 1) return false;
  for (const auto& [v, e] : minus_.exponents())
    if (e > 1) return false;
  return true;
}

Binomial Binomial::canonical() const {
  if (canonical_lex_compare(plus_, minus_) >= 0) return *this;
  return flipped();
}

std::string Binomial::str(int m, bool abbreviate_ground) const {
  return plus_.str(m, abbreviate_ground) + " - " + minus_.str(m, abbreviate_ground);
}

bool same_relation(const Binomial& a, const Binomial& b) {
  return a.canonical() == b.canonical();
}

bool canonical_binomial_less(const Binomial& a, const Binomial& b) {
  Binomial ca = a.canonical(), cb = b.canonical();
  int c = canonical_grevlex_compare(ca.plus(), cb.plus());
  if (c != 0) return c < 0;
  return canonical_grevlex_compare(ca.minus(), cb.minus()) < 0;
}

}  // namespace cprel
