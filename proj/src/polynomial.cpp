#include "cprel/polynomial.hpp"

#include <sstream>

namespace cprel {

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p;
  p.add_term(m, c);
  return p;
}

Polynomial Polynomial::from_binomial(const Binomial& b) {
  Polynomial p;
  p.add_term(b.plus(), Rational(1));
  p.add_term(b.minus(), Rational(-1));
  return p;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial p;
  for (const auto& [m, c] : terms_) p.terms_.emplace(m, -c);
  return p;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial p;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) p.add_term(ma * mb, ca * cb);
  return p;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial p;
  if (c.is_zero()) return p;
  for (const auto& [m, coef] : terms_) p.terms_.emplace(m, coef * c);
  return p;
}

Polynomial Polynomial::times_term(const Monomial& m, const Rational& c) const {
  Polynomial p;
  if (c.is_zero()) return p;
  for (const auto& [mm, coef] : terms_) p.add_term(mm * m, coef * c);
  return p;
}

std::optional<std::pair<Monomial, Rational>> Polynomial::leading_term(
    const TermOrder& order) const {
  if (terms_.empty()) return std::nullopt;
  auto best = terms_.begin();
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
    if (order.greater(it->first, best->first)) best = it;
  return std::make_pair(best->first, best->second);
}

Rational Polynomial::evaluate(const std::function<Rational(const VarId&)>& value) const {
  Rational total(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (const auto& [v, e] : m.exponents()) {
      Rational x = value(v);
      for (int k = 0; k < e; ++k) t *= x;
    }
    total += t;
  }
  return total;
}

std::string Polynomial::str(int m, bool abbreviate_ground) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mon, c] : terms_) {
    Rational a = c.abs();
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (a == Rational(1) && !mon.is_one()) {
      os << mon.str(m, abbreviate_ground);
    } else if (mon.is_one()) {
      os << a.str();
    } else {
      os << a.str() << "*" << mon.str(m, abbreviate_ground);
    }
  }
  return os.str();
}

}  // namespace cprel
