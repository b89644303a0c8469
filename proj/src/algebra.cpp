#include "cprel/algebra.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cprel {

bool in_incidence_kernel(const EventFamily& family, const Binomial& b) {
  // Element rows and event rows, checked directly against the exponents.
  std::map<int, int> elem_net;
  std::map<Event, int> event_net;
  auto tally = [&](const Monomial& m, int sgn) {
    for (const auto& [v, e] : m.exponents()) {
      if (family.event_index(v.event) < 0) return false;
      elem_net[v.element] += sgn * e;
      event_net[v.event] += sgn * e;
    }
    return true;
  };
  if (!tally(b.plus(), 1) || !tally(b.minus(), -1)) return false;
  for (const auto& [k, net] : elem_net)
    if (net != 0) return false;
  for (const auto& [k, net] : event_net)
    if (net != 0) return false;
  return true;
}

GroebnerBasis::GroebnerBasis(EventFamily family, std::vector<Binomial> binomials,
                             Provenance provenance)
    : family_(std::move(family)), binomials_(std::move(binomials)), provenance_(provenance) {
  std::sort(binomials_.begin(), binomials_.end(), canonical_binomial_less);
  for (std::size_t k = 0; k < binomials_.size(); ++k) {
    if (!in_incidence_kernel(family_, binomials_[k]))
      throw input_error("basis binomial outside the incidence kernel: " + binomials_[k].str());
    if (k > 0 && same_relation(binomials_[k - 1], binomials_[k]))
      throw input_error("duplicate basis binomial: " + binomials_[k].str());
  }
}

bool GroebnerBasis::contains_relation(const Binomial& b) const {
  for (const auto& g : binomials_)
    if (same_relation(g, b)) return true;
  return false;
}

namespace {

GroebnerBasis basis_from_cycles(const EventFamily& family, const std::vector<Cycle>& cycles,
                                GroebnerBasis::Provenance prov) {
  BipartiteGraph g = build_graph(family);
  std::vector<Binomial> bs;
  bs.reserve(cycles.size());
  for (const auto& c : cycles) bs.push_back(cycle_binomial(g, c));
  return GroebnerBasis(family, std::move(bs), prov);
}

}  // namespace

GroebnerBasis universal_gb(const EventFamily& family, std::size_t cycle_cap) {
  BipartiteGraph g = build_graph(family);
  return basis_from_cycles(family, enumerate_cycles(g, std::nullopt, cycle_cap),
                           GroebnerBasis::Provenance::universal_cycles);
}

GroebnerBasis induced_generators(const EventFamily& family, std::size_t cycle_cap) {
  BipartiteGraph g = build_graph(family);
  return basis_from_cycles(family, enumerate_induced_cycles(g, cycle_cap),
                           GroebnerBasis::Provenance::induced_only);
}

std::vector<Binomial> bayes_binomials(const EventFamily& family) {
  std::vector<Binomial> out;
  for (const auto& j_event : family.events()) {
    for (const auto& k_event : family.events()) {
      if (j_event == k_event || !std::includes(k_event.begin(), k_event.end(),
                                               j_event.begin(), j_event.end()))
        continue;
      for (std::size_t a = 0; a < j_event.size(); ++a) {
        for (std::size_t b = a + 1; b < j_event.size(); ++b) {
          int i = j_event[a], j = j_event[b];
          Monomial plus = Monomial::var(VarId{i, k_event}) * Monomial::var(VarId{j, j_event});
          Monomial minus = Monomial::var(VarId{j, k_event}) * Monomial::var(VarId{i, j_event});
          Binomial bin(plus, minus);
          bool seen = false;
          for (const auto& prev : out) seen = seen || same_relation(prev, bin);
          if (!seen) out.push_back(bin);
        }
      }
    }
  }
  return out;
}

std::vector<Polynomial> j_generators(const EventFamily& family) {
  std::vector<Polynomial> out;
  for (const auto& j_event : family.events()) {
    for (const auto& k_event : family.events()) {
      if (j_event == k_event || !std::includes(k_event.begin(), k_event.end(),
                                               j_event.begin(), j_event.end()))
        continue;
      Polynomial sum_j, sum_k;
      for (int j : j_event) {
        sum_j += Polynomial::from_var(VarId{j, j_event});
        sum_k += Polynomial::from_var(VarId{j, k_event});
      }
      for (int i : j_event) {
        Polynomial gen = sum_j * Polynomial::from_var(VarId{i, k_event}) -
                         Polynomial::from_var(VarId{i, j_event}) * sum_k;
        out.push_back(std::move(gen));
      }
    }
  }
  return out;
}

IdealContext make_ideal_context(const EventFamily& family) {
  IdealContext ctx;
  for (const auto& v : variables(family)) ctx.alpha = ctx.alpha * Monomial::var(v);
  ctx.beta = Polynomial::term(Monomial::one(), Rational(1));
  for (const auto& e : family.events()) {
    Polynomial form;
    for (int i : e) form += Polynomial::from_var(VarId{i, e});
    ctx.beta = ctx.beta * form;
  }
  ctx.generators = j_generators(family);
  return ctx;
}

DivisionResult divide(const Polynomial& f, const GroebnerBasis& basis, const TermOrder& order) {
  DivisionResult res;
  res.quotients.assign(basis.size(), Polynomial::zero());

  std::vector<Polynomial> gs;
  std::vector<std::pair<Monomial, Rational>> lts;
  for (const auto& b : basis.binomials()) {
    Polynomial p = Polynomial::from_binomial(b);
    auto lt = p.leading_term(order);
    gs.push_back(std::move(p));
    lts.push_back(*lt);
  }

  Polynomial h = f;
  while (!h.is_zero()) {
    auto [mh, ch] = *h.leading_term(order);
    bool reduced = false;
    for (std::size_t k = 0; k < gs.size(); ++k) {
      if (lts[k].first.divides(mh)) {
        Monomial q = mh / lts[k].first;
        Rational c = ch / lts[k].second;
        h -= gs[k].times_term(q, c);
        res.quotients[k] += Polynomial::term(q, c);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      Polynomial t = Polynomial::term(mh, ch);
      res.remainder += t;
      h -= t;
    }
  }
  return res;
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& basis, const TermOrder& order) {
  return divide(f, basis, order).remainder;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const TermOrder& order) {
  if (f.is_zero() || g.is_zero()) throw input_error("S-polynomial of the zero polynomial");
  auto [mf, cf] = *f.leading_term(order);
  auto [mg, cg] = *g.leading_term(order);
  Monomial l = Monomial::lcm(mf, mg);
  return f.times_term(l / mf, Rational(1) / cf) - g.times_term(l / mg, Rational(1) / cg);
}

BuchbergerReport buchberger_verify(const GroebnerBasis& basis, const TermOrder& order) {
  BuchbergerReport rep;
  const auto& bs = basis.binomials();
  for (std::size_t a = 0; a < bs.size(); ++a) {
    Polynomial fa = Polynomial::from_binomial(bs[a]);
    for (std::size_t b = a + 1; b < bs.size(); ++b) {
      Polynomial s = s_polynomial(fa, Polynomial::from_binomial(bs[b]), order);
      Polynomial r = normal_form(s, basis, order);
      if (!r.is_zero()) {
        rep.is_groebner = false;
        rep.failing_pair = {a, b};
        rep.failing_remainder = std::move(r);
        return rep;
      }
    }
  }
  return rep;
}

namespace {

// Kernel of the column-subset matrix over the rationals; returns a basis.
std::vector<std::vector<Rational>> rational_kernel(const std::vector<std::vector<int>>& a,
                                                   const std::vector<int>& cols) {
  int k = static_cast<int>(cols.size());
  int rows = static_cast<int>(a.size());
  std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(k, Rational(0)));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < k; ++c) m[r][c] = Rational(a[r][cols[c]]);

  std::vector<int> pivot_col;
  int rank = 0;
  for (int c = 0; c < k && rank < rows; ++c) {
    int p = -1;
    for (int r = rank; r < rows; ++r)
      if (!m[r][c].is_zero()) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(m[rank], m[p]);
    Rational inv = Rational(1) / m[rank][c];
    for (int cc = c; cc < k; ++cc) m[rank][cc] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c].is_zero()) continue;
      Rational f = m[r][c];
      for (int cc = c; cc < k; ++cc) m[r][cc] -= f * m[rank][cc];
    }
    pivot_col.push_back(c);
    ++rank;
  }

  std::vector<char> is_pivot(k, 0);
  for (int c : pivot_col) is_pivot[c] = 1;
  std::vector<std::vector<Rational>> kernel;
  for (int free = 0; free < k; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(k, Rational(0));
    v[free] = Rational(1);
    for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -m[r][free];
    kernel.push_back(std::move(v));
  }
  return kernel;
}

}  // namespace

std::vector<Binomial> circuits_bruteforce(const IncidenceMatrix& a, int max_support) {
  if (max_support > a.cols())
    throw limit_error("support bound exceeds column count");
  int n = a.cols();

  struct Candidate {
    std::set<int> support;
    Binomial binomial;
  };
  std::vector<Candidate> found;

  std::vector<int> subset;
  auto consider = [&](const std::vector<int>& cols) {
    auto kernel = rational_kernel(a.entries, cols);
    if (kernel.size() != 1) return;
    const auto& v = kernel[0];
    for (const auto& x : v)
      if (x.is_zero()) return;  // not full support on the subset
    // Scale to a primitive integer vector.
    mpz_class lcm_den(1);
    for (const auto& x : v) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(),
                                    x.raw().get_den().get_mpz_t());
    std::vector<mpz_class> u;
    mpz_class g(0);
    for (const auto& x : v) {
      mpz_class z = x.raw().get_num() * (lcm_den / x.raw().get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
      u.push_back(z);
    }
    Monomial plus, minus;
    for (std::size_t t = 0; t < u.size(); ++t) {
      mpz_class q = u[t] / g;
      int e = static_cast<int>(q.get_si());
      const VarId& var = a.columns[cols[t]];
      if (e > 0)
        plus = plus * Monomial::var(var, e);
      else
        minus = minus * Monomial::var(var, -e);
    }
    found.push_back({std::set<int>(cols.begin(), cols.end()),
                     Binomial(plus, minus).canonical()});
  };

  // Subsets in increasing size; a 1-dimensional full-support kernel forces
  // inclusion-minimality, the filter below is belt and braces.
  for (int k = 2; k <= max_support; ++k) {
    std::vector<int> idx(k);
    for (int t = 0; t < k; ++t) idx[t] = t;
    while (true) {
      consider(idx);
      int t = k - 1;
      while (t >= 0 && idx[t] == n - (k - t)) --t;
      if (t < 0) break;
      ++idx[t];
      for (int s = t + 1; s < k; ++s) idx[s] = idx[s - 1] + 1;
    }
  }

  std::vector<Binomial> out;
  for (std::size_t i = 0; i < found.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < found.size() && minimal; ++j) {
      if (i == j) continue;
      if (found[j].support.size() < found[i].support.size() &&
          std::includes(found[i].support.begin(), found[i].support.end(),
                        found[j].support.begin(), found[j].support.end()))
        minimal = false;
    }
    if (!minimal) continue;
    bool seen = false;
    for (const auto& prev : out) seen = seen || same_relation(prev, found[i].binomial);
    if (!seen) out.push_back(found[i].binomial);
  }
  std::sort(out.begin(), out.end(), canonical_binomial_less);
  return out;
}

bool membership(const Polynomial& f, const GroebnerBasis& basis) {
  return normal_form(f, basis, TermOrder::canonical(basis.family())).is_zero();
}

bool membership(const Binomial& b, const GroebnerBasis& basis) {
  return membership(Polynomial::from_binomial(b), basis);
}

}  // namespace cprel
