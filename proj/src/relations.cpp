#include "cprel/relations.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <queue>
#include <sstream>

namespace cprel {

namespace {

std::string dbl_str(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Plus/minus monomial values of a binomial at an exact table.
std::pair<Rational, Rational> binomial_sides(const Binomial& b, const CPTable& table) {
  auto eval = [&table](const Monomial& m) {
    Rational r(1);
    for (const auto& [v, e] : m.exponents())
      for (int k = 0; k < e; ++k) r *= table.rat(v);
    return r;
  };
  return {eval(b.plus()), eval(b.minus())};
}

std::pair<double, double> binomial_sides_dbl(const Binomial& b, const CPTable& table) {
  auto eval = [&table](const Monomial& m) {
    double r = 1;
    for (const auto& [v, e] : m.exponents())
      for (int k = 0; k < e; ++k) r *= table.dbl(v);
    return r;
  };
  return {eval(b.plus()), eval(b.minus())};
}

}  // namespace

JointDistribution JointDistribution::make(int m, std::vector<Rational> p) {
  if (m < 1 || static_cast<int>(p.size()) != m)
    throw input_error("joint distribution needs one mass per singleton event");
  Rational total(0);
  for (const auto& x : p) {
    if (x.sign() < 0) throw input_error("negative probability mass");
    total += x;
  }
  if (total != Rational(1)) throw input_error("joint masses must sum to 1, got " + total.str());
  return JointDistribution{m, std::move(p)};
}

std::vector<int> JointDistribution::support() const {
  std::vector<int> s;
  for (int i = 0; i < m; ++i)
    if (!p[i].is_zero()) s.push_back(i + 1);
  return s;
}

bool JointDistribution::strictly_positive() const {
  return static_cast<int>(support().size()) == m;
}

CPTable conditionals_from_joint(const JointDistribution& joint, const EventFamily& family) {
  if (joint.m != family.m()) throw input_error("joint and family disagree on m");
  std::map<VarId, Rational> values;
  std::vector<Event> flagged;
  for (const auto& e : family.events()) {
    Rational mass(0);
    for (int i : e) mass += joint.p[i - 1];
    if (mass.is_zero()) {
      // Any version works on a zero-mass event; take the uniform one.
      Rational u(1, static_cast<long>(e.size()));
      for (int i : e) values.emplace(VarId{i, e}, u);
      flagged.push_back(e);
    } else {
      for (int i : e) values.emplace(VarId{i, e}, joint.p[i - 1] / mass);
    }
  }
  CPTable t = CPTable::exact(std::move(values));
  for (const auto& e : flagged) t.flag_version_chosen(e);
  return t;
}

CompatibilityReport check_axioms(const EventFamily& family, const CPTable& table, double tol) {
  table.require_complete(family);
  CompatibilityReport rep;
  rep.exact = table.is_exact();
  rep.tolerance = rep.exact ? 0.0 : tol;

  auto record = [&rep](std::string relation, std::string lhs, std::string rhs,
                       std::string residual) {
    rep.axioms_pass = false;
    rep.violations.push_back(
        {std::move(relation), std::move(lhs), std::move(rhs), std::move(residual)});
  };

  // (i) each event's conditionals sum to one.
  for (const auto& e : family.events()) {
    std::string rel = "sum_{i in " + event_label(e) + "} p_{i|" + event_label(e) + "} = 1";
    if (table.is_exact()) {
      Rational s(0);
      for (int i : e) s += table.rat(VarId{i, e});
      if (s != Rational(1)) record(rel, s.str(), "1", (s - Rational(1)).str());
    } else {
      double s = 0;
      for (int i : e) s += table.dbl(VarId{i, e});
      if (std::abs(s - 1.0) > tol) record(rel, dbl_str(s), "1", dbl_str(s - 1.0));
    }
  }

  // (ii) nested product rule for every J strictly inside K and i in J.
  for (const auto& j_event : family.events()) {
    for (const auto& k_event : family.events()) {
      if (j_event == k_event || !std::includes(k_event.begin(), k_event.end(), j_event.begin(),
                                               j_event.end()))
        continue;
      for (int i : j_event) {
        std::string rel = var_label(VarId{i, k_event}) + " = " + var_label(VarId{i, j_event}) +
                          " * sum_{j in " + event_label(j_event) + "} p_{j|" +
                          event_label(k_event) + "}";
        if (table.is_exact()) {
          Rational mass(0);
          for (int j : j_event) mass += table.rat(VarId{j, k_event});
          Rational lhs = table.rat(VarId{i, k_event});
          Rational rhs = table.rat(VarId{i, j_event}) * mass;
          if (lhs != rhs) record(rel, lhs.str(), rhs.str(), (lhs - rhs).str());
        } else {
          double mass = 0;
          for (int j : j_event) mass += table.dbl(VarId{j, k_event});
          double lhs = table.dbl(VarId{i, k_event});
          double rhs = table.dbl(VarId{i, j_event}) * mass;
          if (std::abs(lhs - rhs) > tol)
            record(rel, dbl_str(lhs), dbl_str(rhs), dbl_str(lhs - rhs));
        }
      }
    }
  }
  return rep;
}

Rational evaluate_binomial(const Binomial& b, const CPTable& table) {
  auto [p, m] = binomial_sides(b, table);
  return p - m;
}

double evaluate_binomial_dbl(const Binomial& b, const CPTable& table) {
  auto [p, m] = binomial_sides_dbl(b, table);
  return p - m;
}

CompatibilityReport check_variety(const EventFamily& family, const CPTable& table,
                                  const GroebnerBasis& basis, double tol) {
  table.require_complete(family);
  CompatibilityReport rep;
  rep.exact = table.is_exact();
  rep.tolerance = rep.exact ? 0.0 : tol;

  for (const auto& b : basis.binomials()) {
    if (table.is_exact()) {
      auto [lhs, rhs] = binomial_sides(b, table);
      if (lhs != rhs) {
        rep.variety_pass = false;
        rep.violations.push_back({b.str(), lhs.str(), rhs.str(), (lhs - rhs).str()});
      }
    } else {
      auto [lhs, rhs] = binomial_sides_dbl(b, table);
      if (std::abs(lhs - rhs) > tol) {
        rep.variety_pass = false;
        rep.violations.push_back({b.str(), dbl_str(lhs), dbl_str(rhs), dbl_str(lhs - rhs)});
      }
    }
  }
  return rep;
}

ReconstructResult reconstruct_joint(const EventFamily& family, const CPTable& table) {
  table.require_complete(family);
  if (!table.is_exact()) throw input_error("reconstruction requires an exact table");
  for (const auto& v : variables(family)) {
    if (table.rat(v).sign() <= 0)
      throw input_error("reconstruction needs strictly positive conditionals; " + var_label(v) +
                        " is not");
  }
  std::vector<int> used = family.used_elements();
  if (static_cast<int>(used.size()) != family.m())
    throw input_error("every singleton event must appear in some conditioned event");

  int m = family.m();
  // Element blocks: i ~ j when they share an event.
  std::vector<int> comp(m + 1, -1);
  int ncomp = 0;
  for (int root = 1; root <= m; ++root) {
    if (comp[root] >= 0) continue;
    comp[root] = ncomp;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int i = q.front();
      q.pop();
      for (const auto& e : family.events()) {
        if (!std::binary_search(e.begin(), e.end(), i)) continue;
        for (int j : e)
          if (comp[j] < 0) {
            comp[j] = ncomp;
            q.push(j);
          }
      }
    }
    ++ncomp;
  }
  if (ncomp > 1) {
    Underdetermined u;
    u.components.assign(ncomp, {});
    for (int i = 1; i <= m; ++i) u.components[comp[i]].push_back(i);
    u.dof = ncomp - 1;
    ReconstructResult res;
    res.status = ReconstructResult::Status::underdetermined;
    res.underdetermined = std::move(u);
    return res;
  }

  // Ratio propagation along a spanning tree: q_j = q_i * p_{j|I} / p_{i|I}.
  std::vector<Rational> q(m + 1, Rational(0));
  std::vector<char> known(m + 1, 0);
  q[1] = Rational(1);
  known[1] = 1;
  std::queue<int> frontier;
  frontier.push(1);
  while (!frontier.empty()) {
    int i = frontier.front();
    frontier.pop();
    for (const auto& e : family.events()) {
      if (!std::binary_search(e.begin(), e.end(), i)) continue;
      for (int j : e) {
        if (known[j]) continue;
        q[j] = q[i] * table.rat(VarId{j, e}) / table.rat(VarId{i, e});
        known[j] = 1;
        frontier.push(j);
      }
    }
  }

  Rational total(0);
  for (int i = 1; i <= m; ++i) total += q[i];
  std::vector<Rational> p;
  for (int i = 1; i <= m; ++i) p.push_back(q[i] / total);
  JointDistribution joint = JointDistribution::make(m, std::move(p));

  // Certify: the rebuilt joint must reproduce the table exactly.
  CPTable derived = conditionals_from_joint(joint, family);
  ReconstructResult res;
  for (const auto& v : variables(family)) {
    Rational lhs = derived.rat(v), rhs = table.rat(v);
    if (lhs != rhs) {
      res.violations.push_back({var_label(v) + " consistent with a joint", lhs.str(), rhs.str(),
                                (lhs - rhs).str()});
    }
  }
  if (!res.violations.empty()) {
    res.status = ReconstructResult::Status::incompatible;
    return res;
  }
  res.status = ReconstructResult::Status::reconstructed;
  res.joint = std::move(joint);
  return res;
}

BayesRuleResult bayes_rule_check(const EventFamily& family, const CPTable& table, const Event& a,
                                 const Event& b) {
  table.require_complete(family);
  if (!table.is_exact()) throw input_error("Bayes-rule check requires an exact table");
  if (!family.contains_ground())
    throw input_error("Bayes-rule check needs the ground event in the family");
  if (!family.has_event(a)) throw input_error("A is not an event of the family");
  if (!family.has_event(b)) throw input_error("B is not an event of the family");

  std::vector<int> meet;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(meet));
  if (meet.empty()) throw input_error("A and B must intersect");

  const Event& ground = family.ground();
  auto block = [&table](const std::vector<int>& xs, const Event& given) {
    Rational s(0);
    for (int i : xs) s += table.rat(VarId{i, given});
    return s;
  };
  Rational p_b = block(b, ground);
  if (p_b.is_zero()) throw input_error("p_B = 0: Bayes-rule quotient undefined");
  Rational lhs = block(meet, b);
  Rational rhs = block(meet, a) * block(a, ground) / p_b;
  return BayesRuleResult{lhs == rhs, lhs, rhs};
}

int RVSpec::state_count() const {
  int m = 1;
  for (int d : arities) {
    if (d < 2) throw input_error("random variable arity must be at least 2");
    m *= d;
  }
  return m;
}

std::string RVSpec::state_label(int variable, int state) const {
  if (variable >= 1 && variable <= static_cast<int>(state_labels.size())) {
    const auto& labels = state_labels[variable - 1];
    if (state >= 0 && state < static_cast<int>(labels.size())) return labels[state];
  }
  return std::to_string(state);
}

int rv_state_index(const RVSpec& spec, const std::vector<int>& state) {
  int n = spec.variable_count();
  if (static_cast<int>(state.size()) != n) throw input_error("state length mismatch");
  int idx = 0;
  for (int k = 0; k < n; ++k) {
    if (state[k] < 0 || state[k] >= spec.arities[k])
      throw input_error("state out of range for variable " + std::to_string(k + 1));
    idx = idx * spec.arities[k] + state[k];
  }
  return idx + 1;
}

std::vector<int> rv_state_of_index(const RVSpec& spec, int index) {
  int n = spec.variable_count();
  int x = index - 1;
  std::vector<int> state(n, 0);
  for (int k = n - 1; k >= 0; --k) {
    state[k] = x % spec.arities[k];
    x /= spec.arities[k];
  }
  return state;
}

std::string rv_state_string(const std::vector<int>& state) {
  std::string s;
  for (int x : state) s += std::to_string(x);
  return s;
}

RVFamily rv_event_family(const RVSpec& spec) {
  int n = spec.variable_count();
  if (n < 1) throw input_error("need at least one random variable");
  int m = spec.state_count();

  RVFamily out;
  std::vector<std::vector<int>> events;
  for (auto s : spec.conditioning_sets) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!s.empty() && (s.front() < 1 || s.back() > n))
      throw input_error("conditioning set out of range");
    if (static_cast<int>(s.size()) == n) continue;  // singleton events, size < 2

    // Enumerate assignments x_S.
    std::vector<int> xs(s.size(), 0);
    while (true) {
      Event e;
      for (int idx = 1; idx <= m; ++idx) {
        std::vector<int> state = rv_state_of_index(spec, idx);
        bool match = true;
        for (std::size_t t = 0; t < s.size(); ++t)
          match = match && state[s[t] - 1] == xs[t];
        if (match) e.push_back(idx);
      }
      events.push_back(e);
      out.labels[e] = RVEventLabel{s, xs};

      int t = static_cast<int>(s.size()) - 1;
      while (t >= 0 && xs[t] + 1 == spec.arities[s[t] - 1]) {
        xs[t] = 0;
        --t;
      }
      if (t < 0) break;
      ++xs[t];
    }
  }
  out.family = EventFamily::make(m, events);
  return out;
}

BesagRelation besag_binomial(const RVSpec& spec, const std::vector<int>& x,
                             const std::vector<int>& y) {
  int n = spec.variable_count();
  if (n < 2)
    throw input_error("the interpolating chain needs n >= 2; with one variable the ground "
                      "event and the step event coincide and the relation degenerates");
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
    throw input_error("state length mismatch");
  for (int k = 0; k < n; ++k) {
    if (x[k] < 0 || x[k] >= spec.arities[k] || y[k] < 0 || y[k] >= spec.arities[k])
      throw input_error("state out of range for variable " + std::to_string(k + 1));
    if (x[k] == y[k])
      throw input_error("states must differ in every coordinate; coordinate " +
                        std::to_string(k + 1) + " coincides");
  }

  // Config j interpolates: x on the first j-1 coordinates, y on the rest.
  std::vector<std::vector<int>> configs;
  for (int j = 1; j <= n + 1; ++j) {
    std::vector<int> cfg(n);
    for (int k = 0; k < n; ++k) cfg[k] = k < j - 1 ? x[k] : y[k];
    configs.push_back(std::move(cfg));
  }

  std::vector<std::vector<int>> events;
  Event ground(n + 1);
  for (int j = 1; j <= n + 1; ++j) ground[j - 1] = j;
  events.push_back(ground);
  for (int j = 1; j <= n; ++j) events.push_back({j, j + 1});
  EventFamily family = EventFamily::make(n + 1, events);

  Monomial plus = Monomial::var(VarId{1, ground});
  Monomial minus = Monomial::var(VarId{n + 1, ground});
  for (int j = 1; j <= n; ++j) {
    Event step{j, j + 1};
    plus = plus * Monomial::var(VarId{j + 1, step});
    minus = minus * Monomial::var(VarId{j, step});
  }
  return BesagRelation{std::move(family), Binomial(plus, minus), std::move(configs)};
}

CPTable besag_table_from_joint(const RVSpec& spec, const BesagRelation& rel,
                               const JointDistribution& joint) {
  if (joint.m != spec.state_count())
    throw input_error("joint must cover every global state");
  int chain = static_cast<int>(rel.configs.size());
  std::vector<Rational> q;
  Rational total(0);
  for (const auto& cfg : rel.configs) {
    Rational mass = joint.p[rv_state_index(spec, cfg) - 1];
    total += mass;
    q.push_back(mass);
  }
  if (total.is_zero())
    throw input_error("restriction of the joint to the chain has zero mass");
  for (auto& mass : q) mass /= total;
  return conditionals_from_joint(JointDistribution::make(chain, std::move(q)), rel.family);
}

}  // namespace cprel
