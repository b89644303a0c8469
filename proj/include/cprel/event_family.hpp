#pragma once

// Families of conditioned-upon events over the ground set [m], and the
// indeterminates p_{i|I} indexed by them. The canonical order on events
// is (size, lexicographic contents); the canonical order on variables is
// (event size, event contents, element). Every downstream listing of
// graph edges, matrix columns, and monomial factors follows these orders,
// so output is deterministic across runs and platforms.

#include <compare>
#include <string>
#include <vector>

#include "cprel/errors.hpp"

namespace cprel {

using Event = std::vector<int>;  // sorted ascending, 1-based elements

// Compares by (size, lexicographic contents).
int compare_events(const Event& a, const Event& b);

class EventFamily {
 public:
  // Validates and canonicalizes. Subsets may arrive unsorted; elements must
  // be distinct, within [1, m], and each subset must have size >= 2.
  // Repeated subsets are merged.
  static EventFamily make(int m, const std::vector<std::vector<int>>& subsets);

  int m() const { return m_; }
  const std::vector<Event>& events() const { return events_; }
  bool contains_ground() const { return contains_ground_; }
  const Event& ground() const { return ground_; }

  bool has_event(const Event& e) const;
  int event_index(const Event& e) const;  // -1 if absent

  // Sum of event sizes; the number of indeterminates p_{i|I}.
  int variable_count() const;

  // Sorted union of all events.
  std::vector<int> used_elements() const;

  friend bool operator==(const EventFamily& a, const EventFamily& b) {
    return a.m_ == b.m_ && a.events_ == b.events_;
  }

 private:
  int m_ = 0;
  std::vector<Event> events_;
  bool contains_ground_ = false;
  Event ground_;
};

// One indeterminate p_{i|I}.
struct VarId {
  int element = 0;  // i, 1-based
  Event event;      // I, sorted

  friend bool operator==(const VarId& a, const VarId& b) {
    return a.element == b.element && a.event == b.event;
  }
  friend bool operator<(const VarId& a, const VarId& b) {
    int c = compare_events(a.event, b.event);
    if (c != 0) return c < 0;
    return a.element < b.element;
  }
  friend bool operator!=(const VarId& a, const VarId& b) { return !(a == b); }
  friend bool operator>(const VarId& a, const VarId& b) { return b < a; }
};

// "12", "123", ... for small elements, comma-separated otherwise.
std::string event_label(const Event& e);

// "p_{1|12}"; with abbreviate_ground and I = [m], the short form "p_1".
std::string var_label(const VarId& v, int m = 0, bool abbreviate_ground = false);

// All p_{i|I} in canonical order; length = family.variable_count().
std::vector<VarId> variables(const EventFamily& family);

}  // namespace cprel
