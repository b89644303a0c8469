#pragma once

// Probability-facing semantics: extracting conditionals from a joint,
// checking the distribution axioms and the variety relations with
// violation certificates, reconstructing a joint from positive
// conditionals, Bayes-rule identities, and the specialization to
// partially observed discrete random variables.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cprel/algebra.hpp"
#include "cprel/cptable.hpp"

namespace cprel {

struct Violation {
  std::string relation;  // human-readable statement of the failed identity
  std::string lhs;
  std::string rhs;
  std::string residual;
};

struct CompatibilityReport {
  bool axioms_pass = true;
  bool variety_pass = true;
  std::vector<Violation> violations;
  bool exact = true;
  double tolerance = 0.0;

  bool pass() const { return axioms_pass && variety_pass; }
};

inline constexpr double kDefaultResidualTol = 1e-9;

struct JointDistribution {
  int m = 0;
  std::vector<Rational> p;  // nonnegative, sums to 1

  static JointDistribution make(int m, std::vector<Rational> p);
  std::vector<int> support() const;
  bool strictly_positive() const;
};

// p_{i|I} = p_i / P(I); zero-mass events get the uniform version and are
// flagged on the returned table.
CPTable conditionals_from_joint(const JointDistribution& joint, const EventFamily& family);

// Per-event normalization and the nested product rule, exact in exact mode,
// within tol otherwise.
CompatibilityReport check_axioms(const EventFamily& family, const CPTable& table,
                                 double tol = kDefaultResidualTol);

// Evaluates every basis binomial at the table and certifies the failures.
CompatibilityReport check_variety(const EventFamily& family, const CPTable& table,
                                  const GroebnerBasis& basis,
                                  double tol = kDefaultResidualTol);

struct Underdetermined {
  std::vector<std::vector<int>> components;  // element blocks of the graph
  int dof = 0;                               // components - 1
};

struct ReconstructResult {
  enum class Status { reconstructed, underdetermined, incompatible };
  Status status = Status::reconstructed;
  std::optional<JointDistribution> joint;
  std::optional<Underdetermined> underdetermined;
  std::vector<Violation> violations;
};

// Positive tables only: propagates in-event ratios along a spanning forest
// of the family graph, normalizes, then certifies the table against the
// rebuilt joint.
ReconstructResult reconstruct_joint(const EventFamily& family, const CPTable& table);

struct BayesRuleResult {
  bool holds = false;
  Rational lhs;  // p_{A&B | B}
  Rational rhs;  // p_{A&B | A} p_A / p_B
};

// p_{A&B|B} = p_{A&B|A} p_A / p_B with the summed shorthand
// p_{X|Y} = sum_{i in X} p_{i|Y}. Requires [m], A, B as events and p_B > 0.
BayesRuleResult bayes_rule_check(const EventFamily& family, const CPTable& table,
                                 const Event& a, const Event& b);

struct RVSpec {
  std::vector<int> arities;                          // d_i >= 2
  std::vector<std::vector<int>> conditioning_sets;   // subsets S of [n]
  std::vector<std::vector<std::string>> state_labels;  // optional, per variable

  int variable_count() const { return static_cast<int>(arities.size()); }
  int state_count() const;  // m = prod d_i
  // Label of one variable's state; digits when no labels are configured.
  std::string state_label(int variable, int state) const;
};

struct RVEventLabel {
  std::vector<int> observed;  // S, sorted
  std::vector<int> states;    // x_S, 0-based, aligned with observed
};

struct RVFamily {
  EventFamily family;
  std::map<Event, RVEventLabel> labels;
};

// Singleton events are the global states in mixed-radix order (first
// variable most significant, 1-based). One event per (S, x_S) with at
// least two states; S = [n] would give singletons and is skipped.
RVFamily rv_event_family(const RVSpec& spec);

// 1-based mixed-radix index of a global state (0-based coordinates).
int rv_state_index(const RVSpec& spec, const std::vector<int>& state);
std::vector<int> rv_state_of_index(const RVSpec& spec, int index);
std::string rv_state_string(const std::vector<int>& state);

struct BesagRelation {
  EventFamily family;                     // m = n+1: the interpolating chain
  Binomial binomial;                      // p_1 prod p_{j+1|j,j+1} - p_{n+1} prod p_{j|j,j+1}
  std::vector<std::vector<int>> configs;  // config j = (x_1..x_{j-1}, y_j..y_n)
};

// The telescoping ratio identity between two fully distinct states, as the
// outer-cycle binomial of the chain family. Requires n >= 2 and
// x_j != y_j for every coordinate.
BesagRelation besag_binomial(const RVSpec& spec, const std::vector<int>& x,
                             const std::vector<int>& y);

// Conditionals of the chain family induced by a joint over all global
// states (restriction to the interpolating configurations).
CPTable besag_table_from_joint(const RVSpec& spec, const BesagRelation& rel,
                               const JointDistribution& joint);

// Exact residual of a binomial at an exact table.
Rational evaluate_binomial(const Binomial& b, const CPTable& table);
double evaluate_binomial_dbl(const Binomial& b, const CPTable& table);

}  // namespace cprel
