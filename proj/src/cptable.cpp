#include "cprel/cptable.hpp"

namespace cprel {

CPTable CPTable::exact(std::map<VarId, Rational> values) {
  CPTable t;
  t.mode_ = Mode::exact;
  t.exact_ = std::move(values);
  return t;
}

CPTable CPTable::floating(std::map<VarId, double> values) {
  CPTable t;
  t.mode_ = Mode::floating;
  t.float_ = std::move(values);
  return t;
}

bool CPTable::has(const VarId& v) const {
  return mode_ == Mode::exact ? exact_.count(v) > 0 : float_.count(v) > 0;
}

const Rational& CPTable::rat(const VarId& v) const {
  if (mode_ != Mode::exact) throw input_error("exact value requested from float table");
  auto it = exact_.find(v);
  if (it == exact_.end()) throw input_error("table missing " + var_label(v));
  return it->second;
}

double CPTable::dbl(const VarId& v) const {
  if (mode_ == Mode::exact) return rat(v).to_double();
  auto it = float_.find(v);
  if (it == float_.end()) throw input_error("table missing " + var_label(v));
  return it->second;
}

bool CPTable::complete_for(const EventFamily& family) const {
  for (const auto& v : variables(family))
    if (!has(v)) return false;
  return true;
}

void CPTable::require_complete(const EventFamily& family) const {
  for (const auto& v : variables(family))
    if (!has(v)) throw input_error("incomplete table: missing " + var_label(v));
}

}  // namespace cprel
