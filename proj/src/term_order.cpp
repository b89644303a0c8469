#include "cprel/term_order.hpp"

#include <algorithm>

namespace cprel {

TermOrder::TermOrder(Kind kind, std::vector<VarId> priority, std::map<VarId, long> weights)
    : kind_(kind), priority_(std::move(priority)) {
  for (std::size_t r = 0; r < priority_.size(); ++r) {
    if (!rank_.emplace(priority_[r], r).second)
      throw input_error("term order priority repeats a variable");
  }
  if (kind_ == Kind::weighted) {
    weight_.assign(priority_.size(), 0);
    for (const auto& [v, w] : weights) {
      auto it = rank_.find(v);
      if (it == rank_.end()) throw input_error("weight for unknown variable");
      if (w <= 0) throw input_error("term order weights must be positive");
      weight_[it->second] = w;
    }
    for (long w : weight_)
      if (w == 0) throw input_error("missing weight for a variable");
  }
}

TermOrder TermOrder::lex(std::vector<VarId> priority) {
  return TermOrder(Kind::lex, std::move(priority), {});
}

TermOrder TermOrder::grevlex(std::vector<VarId> priority) {
  return TermOrder(Kind::grevlex, std::move(priority), {});
}

TermOrder TermOrder::weighted(std::map<VarId, long> weights, std::vector<VarId> priority) {
  return TermOrder(Kind::weighted, std::move(priority), std::move(weights));
}

TermOrder TermOrder::canonical(const EventFamily& family) {
  return grevlex(variables(family));
}

TermOrder TermOrder::lex_prioritizing(const EventFamily& family, const VarId& first) {
  std::vector<VarId> prio = variables(family);
  auto it = std::find(prio.begin(), prio.end(), first);
  if (it == prio.end()) throw input_error("prioritized variable not in family");
  std::rotate(prio.begin(), it, it + 1);
  return lex(std::move(prio));
}

std::vector<int> TermOrder::dense(const Monomial& m) const {
  std::vector<int> e(priority_.size(), 0);
  for (const auto& [v, exp] : m.exponents()) {
    auto it = rank_.find(v);
    if (it == rank_.end()) throw input_error("monomial variable not covered by term order");
    e[it->second] = exp;
  }
  return e;
}

int TermOrder::compare(const Monomial& a, const Monomial& b) const {
  if (a == b) return 0;
  std::vector<int> ea = dense(a), eb = dense(b);
  auto lex_scan = [&]() {
    for (std::size_t k = 0; k < ea.size(); ++k)
      if (ea[k] != eb[k]) return ea[k] > eb[k] ? 1 : -1;
    return 0;
  };
  switch (kind_) {
    case Kind::lex:
      return lex_scan();
    case Kind::grevlex: {
      int da = a.degree(), db = b.degree();
      if (da != db) return da < db ? -1 : 1;
      for (std::size_t k = ea.size(); k-- > 0;)
        if (ea[k] != eb[k]) return ea[k] < eb[k] ? 1 : -1;
      return 0;
    }
    case Kind::weighted: {
      long long wa = 0, wb = 0;
      for (std::size_t k = 0; k < ea.size(); ++k) {
        wa += static_cast<long long>(weight_[k]) * ea[k];
        wb += static_cast<long long>(weight_[k]) * eb[k];
      }
      if (wa != wb) return wa < wb ? -1 : 1;
      return lex_scan();
    }
  }
  return 0;
}

}  // namespace cprel
