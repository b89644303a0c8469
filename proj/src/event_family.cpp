#include "cprel/event_family.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace cprel {

int compare_events(const Event& a, const Event& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

namespace {

std::string subset_str(const std::vector<int>& s) {
  std::ostringstream os;
  os << "{";
  for (std::size_t k = 0; k < s.size(); ++k) os << (k ? "," : "") << s[k];
  os << "}";
  return os.str();
}

}  // namespace

EventFamily EventFamily::make(int m, const std::vector<std::vector<int>>& subsets) {
  if (m < 1) throw input_error("ground set size must be positive");
  std::vector<Event> cleaned;
  for (const auto& raw : subsets) {
    Event e = raw;
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end())
      throw input_error("event with repeated element: " + subset_str(raw));
    if (e.size() < 2)
      throw input_error("event of size < 2: " + subset_str(raw));
    if (e.front() < 1 || e.back() > m)
      throw input_error("event element out of range: " + subset_str(raw));
    cleaned.push_back(std::move(e));
  }
  std::sort(cleaned.begin(), cleaned.end(),
            [](const Event& a, const Event& b) { return compare_events(a, b) < 0; });
  cleaned.erase(std::unique(cleaned.begin(), cleaned.end()), cleaned.end());

  EventFamily f;
  f.m_ = m;
  f.events_ = std::move(cleaned);
  f.ground_.resize(m);
  std::iota(f.ground_.begin(), f.ground_.end(), 1);
  f.contains_ground_ = f.has_event(f.ground_);
  return f;
}

bool EventFamily::has_event(const Event& e) const { return event_index(e) >= 0; }

int EventFamily::event_index(const Event& e) const {
  auto it = std::lower_bound(
      events_.begin(), events_.end(), e,
      [](const Event& a, const Event& b) { return compare_events(a, b) < 0; });
  if (it != events_.end() && *it == e) return static_cast<int>(it - events_.begin());
  return -1;
}

int EventFamily::variable_count() const {
  int n = 0;
  for (const auto& e : events_) n += static_cast<int>(e.size());
  return n;
}

std::vector<int> EventFamily::used_elements() const {
  std::set<int> u;
  for (const auto& e : events_) u.insert(e.begin(), e.end());
  return {u.begin(), u.end()};
}

std::string event_label(const Event& e) {
  bool compact = e.empty() || e.back() <= 9;
  std::ostringstream os;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (k && !compact) os << ",";
    os << e[k];
  }
  return os.str();
}

std::string var_label(const VarId& v, int m, bool abbreviate_ground) {
  if (abbreviate_ground && m > 0 && static_cast<int>(v.event.size()) == m &&
      v.event.front() == 1 && v.event.back() == m) {
    return "p_" + std::to_string(v.element);
  }
  return "p_{" + std::to_string(v.element) + "|" + event_label(v.event) + "}";
}

std::vector<VarId> variables(const EventFamily& family) {
  std::vector<VarId> out;
  out.reserve(family.variable_count());
  for (const auto& e : family.events())
    for (int i : e) out.push_back(VarId{i, e});
  return out;
}

}  // namespace cprel
