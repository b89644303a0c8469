#include "cprel/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "cprel/errors.hpp"

namespace cprel {

int submodular_w(const EventFamily& family, const std::vector<int>& j_set) {
  std::set<int> j(j_set.begin(), j_set.end());
  int count = 0;
  for (const auto& e : family.events()) {
    bool meets = false;
    for (int i : e) meets = meets || j.count(i) > 0;
    count += meets ? 1 : 0;
  }
  return count;
}

LatticePolytope delta_E_vertices(const EventFamily& family) {
  int m = family.m();
  if (m > kVertexEnumerationMaxM)
    throw limit_error("vertex enumeration iterates m! orders; m too large");
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 1);
  std::set<std::vector<long>> seen;
  do {
    std::vector<int> rank(m + 1, 0);
    for (int k = 0; k < m; ++k) rank[perm[k]] = k;
    std::vector<long> vertex(m, 0);
    for (const auto& e : family.events()) {
      int top = e.front();
      for (int i : e)
        if (rank[i] > rank[top]) top = i;
      vertex[top - 1] += 1;
    }
    seen.insert(std::move(vertex));
  } while (std::next_permutation(perm.begin(), perm.end()));

  LatticePolytope p;
  p.dim_ambient = m;
  p.has_vrep = true;
  p.equality_sum = static_cast<long>(family.events().size());
  p.vertices.assign(seen.begin(), seen.end());
  return p;
}

LatticePolytope delta_E_hrep(const EventFamily& family) {
  int m = family.m();
  if (m > kHrepMaxM) throw limit_error("halfspace enumeration needs 2^m subsets; m too large");
  LatticePolytope p;
  p.dim_ambient = m;
  p.has_hrep = true;
  p.equality_sum = static_cast<long>(family.events().size());
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < m; ++i)
      if (mask & (1u << i)) subset.push_back(i + 1);
    p.inequalities.push_back({subset, submodular_w(family, subset)});
  }
  return p;
}

LatticePolytope mconv_vertices(const EventFamily& family) {
  LatticePolytope base = delta_E_vertices(family);
  int r = static_cast<int>(family.events().size());
  LatticePolytope p;
  p.dim_ambient = base.dim_ambient + r;
  p.has_vrep = true;
  p.equality_sum = base.equality_sum + r;
  for (auto v : base.vertices) {
    v.insert(v.end(), r, 1L);
    p.vertices.push_back(std::move(v));
  }
  return p;
}

namespace {

template <typename Num>
std::vector<Num> moment_nu_impl(const EventFamily& family,
                                const std::map<VarId, Num>& values, Num zero, Num one) {
  std::vector<int> used = family.used_elements();
  std::map<int, std::size_t> pos;
  for (std::size_t k = 0; k < used.size(); ++k) pos[used[k]] = k;

  std::vector<Num> out(used.size() + family.events().size(), zero);
  std::size_t u_base = used.size();
  for (std::size_t t = 0; t < family.events().size(); ++t) {
    const Event& e = family.events()[t];
    Num mass = zero;
    std::map<int, Num> absvals;
    for (int i : e) {
      auto it = values.find(VarId{i, e});
      if (it == values.end()) throw input_error("missing value for " + var_label(VarId{i, e}));
      Num a = it->second < zero ? Num(zero - it->second) : it->second;
      absvals[i] = a;
      mass += a;
    }
    if (!(zero < mass))
      throw input_error("event " + event_label(e) + " has zero total mass");
    for (int i : e) out[pos[i]] += absvals[i] / mass;
    out[u_base + t] = one;
  }
  return out;
}

}  // namespace

std::vector<Rational> moment_nu(const EventFamily& family,
                                const std::map<VarId, Rational>& values) {
  return moment_nu_impl<Rational>(family, values, Rational(0), Rational(1));
}

std::vector<double> moment_nu(const EventFamily& family, const std::map<VarId, double>& values) {
  return moment_nu_impl<double>(family, values, 0.0, 1.0);
}

std::vector<Rational> moment_nu(const EventFamily& family, const CPTable& table) {
  if (table.is_exact()) return moment_nu(family, table.exact_values());
  std::map<VarId, Rational> vals;
  for (const auto& [v, x] : table.float_values()) vals[v] = Rational::from_double(x);
  return moment_nu(family, vals);
}

std::vector<Rational> matus_W(int m, const CPTable& pair_table) {
  if (!pair_table.is_exact()) throw input_error("pair table must be exact");
  std::vector<Rational> w(m, Rational(0));
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= m; ++j) {
      if (i == j) continue;
      Event pair{std::min(i, j), std::max(i, j)};
      w[i - 1] += pair_table.rat(VarId{i, pair});
    }
  }
  return w;
}

std::vector<double> simplex_moment(const std::vector<double>& y) {
  double z = 0;
  for (double v : y) z += std::abs(v);
  if (z == 0) throw input_error("moment map undefined at the zero vector");
  std::vector<double> out;
  out.reserve(y.size());
  for (double v : y) out.push_back(std::abs(v) / z);
  return out;
}

std::vector<Rational> simplex_moment(const std::vector<Rational>& y) {
  Rational z(0);
  for (const auto& v : y) z += v.abs();
  if (z.is_zero()) throw input_error("moment map undefined at the zero vector");
  std::vector<Rational> out;
  out.reserve(y.size());
  for (const auto& v : y) out.push_back(v.abs() / z);
  return out;
}

CPTable table_from_theta(const EventFamily& family, const std::vector<double>& theta) {
  std::vector<int> used = family.used_elements();
  if (theta.size() != used.size()) throw input_error("theta length mismatch");
  std::map<int, std::size_t> pos;
  for (std::size_t k = 0; k < used.size(); ++k) pos[used[k]] = k;
  std::map<VarId, double> values;
  for (const auto& e : family.events()) {
    double hi = -1e300;
    for (int i : e) hi = std::max(hi, theta[pos[i]]);
    double z = 0;
    for (int i : e) z += std::exp(theta[pos[i]] - hi);
    for (int i : e) values[VarId{i, e}] = std::exp(theta[pos[i]] - hi) / z;
  }
  return CPTable::floating(std::move(values));
}

double divergence_from_uniform(const EventFamily& family, const CPTable& table) {
  double d = 0;
  for (const auto& e : family.events()) {
    for (int i : e) {
      double p = table.dbl(VarId{i, e});
      if (p < 0) throw input_error("negative entry in divergence");
      if (p > 0) d += p * std::log(p) - p * std::log(1.0 / static_cast<double>(e.size()));
    }
  }
  return d;
}

namespace {

// Dense symmetric solve by Gaussian elimination with partial pivoting.
std::vector<double> solve_dense(std::vector<std::vector<double>> a, std::vector<double> b) {
  int n = static_cast<int>(b.size());
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int r = k + 1; r < n; ++r)
      if (std::abs(a[r][k]) > std::abs(a[piv][k])) piv = r;
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    if (std::abs(a[k][k]) < 1e-300) {
      a[k][k] += 1e-12;  // ridge against exact singularity
    }
    for (int r = k + 1; r < n; ++r) {
      double f = a[r][k] / a[k][k];
      if (f == 0) continue;
      for (int c = k; c < n; ++c) a[r][c] -= f * a[k][c];
      b[r] -= f * b[k];
    }
  }
  std::vector<double> x(n, 0);
  for (int k = n - 1; k >= 0; --k) {
    double s = b[k];
    for (int c = k + 1; c < n; ++c) s -= a[k][c] * x[c];
    x[k] = s / a[k][k];
  }
  return x;
}

struct ReducedProblem {
  std::vector<int> elements;             // active elements, ascending
  std::vector<std::vector<int>> blocks;  // per-event active support (element values)
  std::vector<double> target;            // residual target per active element
};

// Dual objective over theta (indexed like elements).
double dual_value(const ReducedProblem& rp, const std::vector<double>& theta,
                  const std::map<int, std::size_t>& pos) {
  double f = 0;
  for (const auto& blk : rp.blocks) {
    double hi = -1e300;
    for (int i : blk) hi = std::max(hi, theta[pos.at(i)]);
    double z = 0;
    for (int i : blk) z += std::exp(theta[pos.at(i)] - hi);
    f += hi + std::log(z);
  }
  for (std::size_t k = 0; k < rp.elements.size(); ++k) f -= theta[k] * rp.target[k];
  return f;
}

std::vector<double> dual_gradient(const ReducedProblem& rp, const std::vector<double>& theta,
                                  const std::map<int, std::size_t>& pos) {
  std::vector<double> g(rp.elements.size(), 0);
  for (std::size_t k = 0; k < rp.elements.size(); ++k) g[k] = -rp.target[k];
  for (const auto& blk : rp.blocks) {
    double hi = -1e300;
    for (int i : blk) hi = std::max(hi, theta[pos.at(i)]);
    double z = 0;
    for (int i : blk) z += std::exp(theta[pos.at(i)] - hi);
    for (int i : blk) g[pos.at(i)] += std::exp(theta[pos.at(i)] - hi) / z;
  }
  return g;
}

}  // namespace

FiberSolution fiber_max_entropy(const FiberProblem& problem) {
  const EventFamily& family = problem.family;
  std::vector<int> used = family.used_elements();
  if (problem.target.size() != used.size())
    throw input_error("target length must match the used elements of the family");
  if (family.m() > kHrepMaxM) throw limit_error("family too large for feasibility scan");

  double ftol = problem.face_tolerance;
  std::map<int, double> b;
  for (std::size_t k = 0; k < used.size(); ++k) b[used[k]] = problem.target[k];

  double total = 0;
  for (const auto& [i, x] : b) {
    if (x < -ftol) throw infeasible_error("negative target coordinate");
    total += x;
  }
  if (std::abs(total - static_cast<double>(family.events().size())) > ftol)
    throw infeasible_error("target coordinates must sum to the number of events");

  // Face reduction: a tight counting inequality forces each meeting event
  // to keep its mass inside the tight subset.
  std::vector<std::vector<int>> support;
  for (const auto& e : family.events()) support.push_back(e);

  int nu = static_cast<int>(used.size());
  bool changed = true;
  while (changed) {
    changed = false;
    for (unsigned mask = 1; mask < (1u << nu) && !changed; ++mask) {
      std::set<int> subset;
      for (int k = 0; k < nu; ++k)
        if (mask & (1u << k)) subset.insert(used[k]);
      double lhs = 0;
      for (int i : subset) lhs += b[i];
      int bound = 0;
      for (const auto& s : support) {
        bool meets = false;
        for (int i : s) meets = meets || subset.count(i) > 0;
        bound += meets ? 1 : 0;
      }
      if (lhs > bound + ftol) throw infeasible_error("target violates a counting inequality");
      if (lhs < bound - ftol) continue;
      // Tight: intersect every meeting support with the subset.
      for (auto& s : support) {
        bool meets = false;
        for (int i : s) meets = meets || subset.count(i) > 0;
        if (!meets) continue;
        std::vector<int> cut;
        for (int i : s)
          if (subset.count(i)) cut.push_back(i);
        if (cut.size() < s.size()) {
          s = cut;
          changed = true;
        }
      }
    }
  }

  // Split off point masses and assemble the interior core.
  std::map<VarId, double> values;
  for (std::size_t t = 0; t < family.events().size(); ++t) {
    const Event& e = family.events()[t];
    for (int i : e) values[VarId{i, e}] = 0.0;
    if (support[t].empty()) throw infeasible_error("face reduction emptied an event");
    if (support[t].size() == 1) {
      values[VarId{support[t][0], e}] = 1.0;
      b[support[t][0]] -= 1.0;
    }
  }

  ReducedProblem rp;
  {
    std::set<int> active;
    for (std::size_t t = 0; t < support.size(); ++t)
      if (support[t].size() >= 2) {
        rp.blocks.push_back(support[t]);
        active.insert(support[t].begin(), support[t].end());
      }
    rp.elements.assign(active.begin(), active.end());
    for (int i : rp.elements) rp.target.push_back(b[i]);
    for (const auto& [i, x] : b) {
      if (!active.count(i) && std::abs(x) > ftol)
        throw infeasible_error("residual mass on an element outside every block");
    }
  }

  FiberSolution sol{CPTable::floating({}), used, std::vector<double>(used.size(), 0.0), 0.0, 0};

  if (!rp.blocks.empty()) {
    std::map<int, std::size_t> pos;
    for (std::size_t k = 0; k < rp.elements.size(); ++k) pos[rp.elements[k]] = k;
    int n = static_cast<int>(rp.elements.size());

    // The softmax dual is shift-invariant per connected block component;
    // pin the largest element of each component.
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (int s = 0; s < n; ++s) {
      if (comp[s] >= 0) continue;
      comp[s] = ncomp;
      bool grew = true;
      while (grew) {
        grew = false;
        for (const auto& blk : rp.blocks) {
          bool touches = false;
          for (int i : blk) touches = touches || comp[pos[i]] == ncomp;
          if (!touches) continue;
          for (int i : blk)
            if (comp[pos[i]] < 0) {
              comp[pos[i]] = ncomp;
              grew = true;
            }
        }
      }
      ++ncomp;
    }
    std::vector<char> pinned(n, 0);
    for (int c = 0; c < ncomp; ++c) {
      for (int k = n - 1; k >= 0; --k)
        if (comp[k] == c) {
          pinned[k] = 1;
          break;
        }
    }
    std::vector<int> free_idx;
    for (int k = 0; k < n; ++k)
      if (!pinned[k]) free_idx.push_back(k);

    std::vector<double> theta(n, 0.0);
    bool converged = false;
    for (int it = 0; it < problem.max_iterations; ++it) {
      std::vector<double> g = dual_gradient(rp, theta, pos);
      double gmax = 0;
      for (double v : g) gmax = std::max(gmax, std::abs(v));
      if (gmax <= problem.tolerance) {
        converged = true;
        sol.iterations = it;
        break;
      }

      // Newton step on the free coordinates.
      int nf = static_cast<int>(free_idx.size());
      std::vector<std::vector<double>> h(nf, std::vector<double>(nf, 0.0));
      {
        std::vector<int> where(n, -1);
        for (int k = 0; k < nf; ++k) where[free_idx[k]] = k;
        for (const auto& blk : rp.blocks) {
          double hi = -1e300;
          for (int i : blk) hi = std::max(hi, theta[pos[i]]);
          double z = 0;
          for (int i : blk) z += std::exp(theta[pos[i]] - hi);
          for (int a : blk) {
            int ia = static_cast<int>(pos[a]);
            if (where[ia] < 0) continue;
            double sa = std::exp(theta[ia] - hi) / z;
            for (int c : blk) {
              int ic = static_cast<int>(pos[c]);
              if (where[ic] < 0) continue;
              double sc = std::exp(theta[ic] - hi) / z;
              h[where[ia]][where[ic]] += (a == c ? sa : 0.0) - sa * sc;
            }
          }
        }
      }
      std::vector<double> rhs(nf, 0.0);
      for (int k = 0; k < nf; ++k) rhs[k] = -g[free_idx[k]];
      std::vector<double> step = solve_dense(std::move(h), std::move(rhs));

      // Backtracking line search on the dual value. Once the Newton
      // decrement is below the resolution of the objective, comparisons
      // saturate; take the plain Newton step there.
      double f0 = dual_value(rp, theta, pos);
      double slope = 0;
      for (int k = 0; k < nf; ++k) slope += g[free_idx[k]] * step[k];
      double fuzz = 1e-14 * (1.0 + std::abs(f0));
      std::vector<double> trial = theta;
      if (-slope <= fuzz) {
        for (int k = 0; k < nf; ++k) trial[free_idx[k]] += step[k];
      } else {
        double t = 1.0;
        for (int bt = 0; bt < 60; ++bt) {
          for (int k = 0; k < nf; ++k) trial[free_idx[k]] = theta[free_idx[k]] + t * step[k];
          if (dual_value(rp, trial, pos) <= f0 + 0.25 * t * slope + fuzz) break;
          t *= 0.5;
        }
      }
      theta = trial;
      sol.iterations = it + 1;
    }
    if (!converged) {
      std::vector<double> g = dual_gradient(rp, theta, pos);
      double gmax = 0;
      for (double v : g) gmax = std::max(gmax, std::abs(v));
      if (gmax > problem.tolerance)
        throw convergence_error("dual Newton did not reach tolerance within the iteration cap");
    }

    // Fill softmax blocks back into the table and record theta.
    for (std::size_t t = 0; t < family.events().size(); ++t) {
      const Event& e = family.events()[t];
      const auto& s = support[t];
      if (s.size() < 2) continue;
      double hi = -1e300;
      for (int i : s) hi = std::max(hi, theta[pos[i]]);
      double z = 0;
      for (int i : s) z += std::exp(theta[pos[i]] - hi);
      for (int i : s) values[VarId{i, e}] = std::exp(theta[pos[i]] - hi) / z;
    }
    for (std::size_t k = 0; k < used.size(); ++k) {
      auto it = pos.find(used[k]);
      sol.theta[k] = it == pos.end() ? 0.0 : theta[it->second];
    }
  }

  sol.table = CPTable::floating(std::move(values));

  // Residual of the element block of A p = b on the original target.
  std::map<int, double> achieved;
  for (int i : used) achieved[i] = 0.0;
  for (const auto& e : family.events())
    for (int i : e) achieved[i] += sol.table.dbl(VarId{i, e});
  double rmax = 0;
  for (std::size_t k = 0; k < used.size(); ++k)
    rmax = std::max(rmax, std::abs(achieved[used[k]] - problem.target[k]));
  sol.residual_inf = rmax;
  if (rmax > std::max(problem.tolerance, 10 * ftol))
    throw convergence_error("fiber solve residual above tolerance");
  return sol;
}

}  // namespace cprel
