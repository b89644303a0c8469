#pragma once

// Runtime-configurable monomial orders: lex, grevlex, and positive-weight
// orders with lex tie-break. The priority vector lists variables from most
// significant to least. Every instance is a bona fide term order: total,
// multiplicative, with 1 as the unique minimum.

#include <cstdint>
#include <map>
#include <vector>

#include "cprel/monomial.hpp"

namespace cprel {

class TermOrder {
 public:
  enum class Kind { lex, grevlex, weighted };

  static TermOrder lex(std::vector<VarId> priority);
  static TermOrder grevlex(std::vector<VarId> priority);
  static TermOrder weighted(std::map<VarId, long> weights, std::vector<VarId> tiebreak_priority);

  // Grevlex over the canonical variable order of the family.
  static TermOrder canonical(const EventFamily& family);
  // Lex with the given variable promoted to the front of the canonical order.
  static TermOrder lex_prioritizing(const EventFamily& family, const VarId& first);

  Kind kind() const { return kind_; }
  const std::vector<VarId>& priority() const { return priority_; }

  int compare(const Monomial& a, const Monomial& b) const;  // -1/0/1
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

 private:
  TermOrder(Kind kind, std::vector<VarId> priority, std::map<VarId, long> weights);

  std::vector<int> dense(const Monomial& m) const;

  Kind kind_;
  std::vector<VarId> priority_;       // most significant first
  std::map<VarId, std::size_t> rank_;
  std::vector<long> weight_;          // by rank, weighted only
};

}  // namespace cprel
