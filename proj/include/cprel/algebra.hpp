#pragma once

// Binomial-ideal machinery for a family: the cycle-binomial universal
// Groebner basis, the induced-cycle generating set, Bayes binomials, the
// defining quadrics of the homogenized product rule, division/normal forms,
// S-polynomials, Buchberger verification, and a kernel-circuit oracle.

#include <optional>
#include <utility>
#include <vector>

#include "cprel/graph.hpp"
#include "cprel/polynomial.hpp"

namespace cprel {

class GroebnerBasis {
 public:
  enum class Provenance { universal_cycles, induced_only, external };

  // Validates that every binomial lies in the kernel of the incidence map
  // and that no two coincide as relations.
  GroebnerBasis(EventFamily family, std::vector<Binomial> binomials, Provenance provenance);

  const EventFamily& family() const { return family_; }
  const std::vector<Binomial>& binomials() const { return binomials_; }
  Provenance provenance() const { return provenance_; }
  std::size_t size() const { return binomials_.size(); }
  bool empty() const { return binomials_.empty(); }

  bool contains_relation(const Binomial& b) const;

 private:
  EventFamily family_;
  std::vector<Binomial> binomials_;  // canonical listing order
  Provenance provenance_;
};

// A . (e+ - e-) = 0 over the incidence rows of the family graph.
bool in_incidence_kernel(const EventFamily& family, const Binomial& b);

// One canonical binomial per simple cycle of the family graph. A Groebner
// basis of the relation ideal under every term order.
GroebnerBasis universal_gb(const EventFamily& family, std::size_t cycle_cap = kDefaultCycleCap);

// Restriction to chordless cycles: a generating set, not always a basis.
GroebnerBasis induced_generators(const EventFamily& family,
                                 std::size_t cycle_cap = kDefaultCycleCap);

// p_{i|K} p_{j|J} - p_{j|K} p_{i|J} for i < j in J, J strictly inside K,
// both events; deduplicated up to sign.
std::vector<Binomial> bayes_binomials(const EventFamily& family);

// (sum_{j in J} p_{j|J}) p_{i|K} - p_{i|J} (sum_{j in J} p_{j|K}) per
// (i, J strictly inside K).
std::vector<Polynomial> j_generators(const EventFamily& family);

struct IdealContext {
  Monomial alpha;                      // product of all indeterminates
  Polynomial beta;                     // product of the per-event linear forms
  std::vector<Polynomial> generators;  // the product-rule quadrics
};

IdealContext make_ideal_context(const EventFamily& family);

// Remainder of the division of f by the basis, trying basis elements in
// listing order; no remainder term is divisible by a basis leading term.
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& basis, const TermOrder& order);

struct DivisionResult {
  Polynomial remainder;
  std::vector<Polynomial> quotients;  // f = sum quotients[k]*basis[k] + remainder
};

DivisionResult divide(const Polynomial& f, const GroebnerBasis& basis, const TermOrder& order);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const TermOrder& order);

struct BuchbergerReport {
  bool is_groebner = true;
  std::optional<std::pair<std::size_t, std::size_t>> failing_pair;
  Polynomial failing_remainder;
};

// True iff every pairwise S-polynomial reduces to zero modulo the basis.
BuchbergerReport buchberger_verify(const GroebnerBasis& basis, const TermOrder& order);

// Kernel circuits by exhaustive column-subset search: emits the primitive
// kernel vector of every column set whose kernel is one-dimensional with
// full support, keeping only inclusion-minimal supports.
std::vector<Binomial> circuits_bruteforce(const IncidenceMatrix& a, int max_support);

// normal_form(f) == 0 under the canonical order. Pre: basis is a Groebner
// basis for that order.
bool membership(const Polynomial& f, const GroebnerBasis& basis);
bool membership(const Binomial& b, const GroebnerBasis& basis);

}  // namespace cprel
