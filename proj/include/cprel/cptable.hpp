#pragma once

// Assignments of values to every indeterminate p_{i|I} of a family, either
// exact rationals or doubles. Events whose conditional was chosen freely
// (zero-mass conditioning) can be flagged so callers can tell a defaulted
// version from data.

#include <map>
#include <set>
#include <vector>

#include "cprel/event_family.hpp"
#include "cprel/rational.hpp"

namespace cprel {

class CPTable {
 public:
  enum class Mode { exact, floating };

  static CPTable exact(std::map<VarId, Rational> values);
  static CPTable floating(std::map<VarId, double> values);

  Mode mode() const { return mode_; }
  bool is_exact() const { return mode_ == Mode::exact; }

  bool has(const VarId& v) const;
  // Exact value; only valid in exact mode.
  const Rational& rat(const VarId& v) const;
  // Value as double, in either mode.
  double dbl(const VarId& v) const;

  const std::map<VarId, Rational>& exact_values() const { return exact_; }
  const std::map<VarId, double>& float_values() const { return float_; }

  // True when every p_{i|I} of the family is assigned.
  bool complete_for(const EventFamily& family) const;
  // Throws input_error naming the first missing variable.
  void require_complete(const EventFamily& family) const;

  void flag_version_chosen(const Event& e) { version_chosen_.insert(e); }
  bool version_chosen(const Event& e) const { return version_chosen_.count(e) > 0; }
  const std::set<Event>& version_chosen_events() const { return version_chosen_; }

 private:
  Mode mode_ = Mode::exact;
  std::map<VarId, Rational> exact_;
  std::map<VarId, double> float_;
  std::set<Event> version_chosen_;
};

}  // namespace cprel
