#pragma once

// Polyhedral and analytic layer: the submodular counting function of a
// family, its generalized permutohedron (vertex and halfspace forms), the
// lifted multigraded hull, the moment maps, and inversion of the moment
// map by a max-entropy dual Newton solve.

#include <optional>
#include <vector>

#include "cprel/cptable.hpp"
#include "cprel/event_family.hpp"
#include "cprel/rational.hpp"

namespace cprel {

// Number of events meeting J.
int submodular_w(const EventFamily& family, const std::vector<int>& j_set);

struct LatticePolytope {
  int dim_ambient = 0;
  bool has_vrep = false;
  bool has_hrep = false;
  std::vector<std::vector<long>> vertices;  // sorted, deduplicated
  long equality_sum = 0;                    // sum of coordinates on the polytope

  struct Inequality {
    std::vector<int> subset;  // J
    long bound = 0;           // sum_{i in J} x_i <= bound
  };
  std::vector<Inequality> inequalities;
};

inline constexpr int kVertexEnumerationMaxM = 10;
inline constexpr int kHrepMaxM = 20;

// Vertices of the Minkowski sum of event simplices: one candidate per
// total order of [m] (the order's top element of each event), deduplicated.
LatticePolytope delta_E_vertices(const EventFamily& family);

// Equality sum x = |family| plus one counting inequality per nonempty
// subset of [m]; redundant rows are kept.
LatticePolytope delta_E_hrep(const EventFamily& family);

// Vertices lifted into element+event coordinates; every event coordinate
// is 1, and projecting back to the element block recovers delta_E_vertices.
LatticePolytope mconv_vertices(const EventFamily& family);

template <typename Num>
bool hrep_satisfied(const LatticePolytope& hrep, const std::vector<Num>& x, Num slack) {
  Num total(0);
  for (const auto& c : x) total += c;
  Num target(hrep.equality_sum);
  if (total - target > slack || target - total > slack) return false;
  for (const auto& ineq : hrep.inequalities) {
    Num s(0);
    for (int i : ineq.subset) s += x[i - 1];
    if (s - Num(ineq.bound) > slack) return false;
  }
  return true;
}

// Moment map of the family graph: element coordinates first (sorted used
// elements), then one coordinate per event, identically 1. Input values are
// taken in absolute value; every per-event block must have nonzero mass.
std::vector<Rational> moment_nu(const EventFamily& family,
                                const std::map<VarId, Rational>& values);
std::vector<double> moment_nu(const EventFamily& family, const std::map<VarId, double>& values);
std::vector<Rational> moment_nu(const EventFamily& family, const CPTable& table);

// W_i = sum_{j != i} p_{i|ij} over all two-element events of [m].
std::vector<Rational> matus_W(int m, const CPTable& pair_table);

// Normalized absolute values; identity on the probability simplex.
std::vector<double> simplex_moment(const std::vector<double>& y);
std::vector<Rational> simplex_moment(const std::vector<Rational>& y);

struct FiberProblem {
  EventFamily family;
  std::vector<double> target;   // element block of the moment image
  double tolerance = 1e-10;     // on the sup-norm residual of A p = b
  int max_iterations = 200;
  double face_tolerance = 1e-9;  // tight-inequality detection
};

struct FiberSolution {
  CPTable table;                 // float mode, complete over the family
  std::vector<int> elements;     // coordinate labels of the target
  std::vector<double> theta;     // dual point (0 on pinned coordinates)
  double residual_inf = 0.0;
  int iterations = 0;
};

// Max-entropy point of the fiber over the target: the unique table closest
// to uniform in KL divergence with the prescribed moment image. Interior
// targets go straight to a dual Newton solve; boundary targets are first
// reduced along tight inequalities.
FiberSolution fiber_max_entropy(const FiberProblem& problem);

// Softmax table of a dual point, p_{i|I} = exp(theta_i)/sum_{j in I} exp(theta_j).
CPTable table_from_theta(const EventFamily& family, const std::vector<double>& theta);

// KL divergence of a table from the per-event uniform table.
double divergence_from_uniform(const EventFamily& family, const CPTable& table);

}  // namespace cprel
