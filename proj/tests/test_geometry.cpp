#include <doctest.h>

#include <cmath>
#include <random>

#include "cprel/algebra.hpp"
#include "cprel/geometry.hpp"
#include "cprel/relations.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cprel;

namespace {

VarId var(int i, std::vector<int> event) { return VarId{i, std::move(event)}; }

std::set<std::vector<long>> perms_of(std::vector<long> base) {
  std::sort(base.begin(), base.end());
  std::set<std::vector<long>> out;
  do {
    out.insert(base);
  } while (std::next_permutation(base.begin(), base.end()));
  return out;
}

std::vector<double> random_theta(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> th(n);
  for (auto& x : th) x = u(rng);
  return th;
}

// Dual objective recomputed from scratch for the finite-difference probe.
double dual_value_oracle(const EventFamily& f, const std::vector<double>& theta,
                         const std::vector<double>& b) {
  std::vector<int> used = f.used_elements();
  std::map<int, std::size_t> pos;
  for (std::size_t k = 0; k < used.size(); ++k) pos[used[k]] = k;
  double val = 0;
  for (const auto& e : f.events()) {
    double z = 0;
    for (int i : e) z += std::exp(theta[pos[i]]);
    val += std::log(z);
  }
  for (std::size_t k = 0; k < used.size(); ++k) val -= theta[k] * b[k];
  return val;
}

}  // namespace

TEST_CASE("submodular counting function") {
  EventFamily f = fixtures::all_subsets_3();
  CHECK(submodular_w(f, {1}) == 3);
  CHECK(submodular_w(f, {}) == 0);
  CHECK(submodular_w(f, {1, 2, 3}) == 4);
  CHECK(submodular_w(f, {2, 3}) == 4);

  // Submodularity, exhaustively over subset pairs for small fixtures.
  for (const auto& fam : {fixtures::two_pairs_ground(), fixtures::all_subsets_3(),
                          fixtures::pairs_4(), fixtures::all_subsets_4(),
                          fixtures::besag_chain_3()}) {
    int m = fam.m();
    for (unsigned a = 0; a < (1u << m); ++a) {
      for (unsigned b = 0; b < (1u << m); ++b) {
        auto subset = [m](unsigned mask) {
          std::vector<int> s;
          for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) s.push_back(i + 1);
          return s;
        };
        int wa = submodular_w(fam, subset(a));
        int wb = submodular_w(fam, subset(b));
        int w_meet = submodular_w(fam, subset(a & b));
        int w_join = submodular_w(fam, subset(a | b));
        CHECK(wa + wb >= w_meet + w_join);
      }
    }
  }
}

TEST_CASE("vertex enumeration of the summed simplices") {
  LatticePolytope hex = delta_E_vertices(fixtures::pairs_3());
  CHECK(std::set<std::vector<long>>(hex.vertices.begin(), hex.vertices.end()) ==
        perms_of({2, 1, 0}));
  CHECK(hex.equality_sum == 3);

  LatticePolytope big = delta_E_vertices(fixtures::all_subsets_3());
  CHECK(std::set<std::vector<long>>(big.vertices.begin(), big.vertices.end()) ==
        perms_of({3, 1, 0}));

  // A single event gives the standard simplex.
  EventFamily ground_only = EventFamily::make(3, {{1, 2, 3}});
  LatticePolytope simplex = delta_E_vertices(ground_only);
  CHECK(std::set<std::vector<long>>(simplex.vertices.begin(), simplex.vertices.end()) ==
        perms_of({1, 0, 0}));

  // Coordinates of every vertex sum to the number of events.
  for (const auto& fam : {fixtures::besag_chain_3(), fixtures::pairs_4(),
                          fixtures::all_subsets_4()}) {
    LatticePolytope p = delta_E_vertices(fam);
    for (const auto& v : p.vertices) {
      long s = 0;
      for (long c : v) s += c;
      CHECK(s == static_cast<long>(fam.events().size()));
    }
  }

  CHECK_THROWS_AS(delta_E_vertices(EventFamily::make(11, {{1, 2}})), limit_error);
  CHECK_THROWS_AS(delta_E_hrep(EventFamily::make(21, {{1, 2}})), limit_error);
}

TEST_CASE("halfspace form") {
  EventFamily f = fixtures::pairs_3();
  LatticePolytope h = delta_E_hrep(f);
  CHECK(h.equality_sum == 3);
  REQUIRE(h.inequalities.size() == 7);
  std::map<std::vector<int>, long> bounds;
  for (const auto& q : h.inequalities) bounds[q.subset] = q.bound;
  CHECK(bounds[{1}] == 2);
  CHECK(bounds[{2}] == 2);
  CHECK(bounds[{1, 2}] == 3);
  CHECK(bounds[{1, 2, 3}] == 3);

  EventFamily ground_only = EventFamily::make(3, {{1, 2, 3}});
  LatticePolytope hs = delta_E_hrep(ground_only);
  std::map<std::vector<int>, long> sb;
  for (const auto& q : hs.inequalities) sb[q.subset] = q.bound;
  CHECK(hs.equality_sum == 1);
  CHECK(sb[{1}] == 1);
  CHECK(sb[{2, 3}] == 1);

  // Vertices satisfy the halfspace form with zero slack allowed.
  for (const auto& fam : {fixtures::pairs_3(), fixtures::all_subsets_3(),
                          fixtures::two_pairs_ground(), fixtures::besag_chain_3()}) {
    LatticePolytope v = delta_E_vertices(fam);
    LatticePolytope hh = delta_E_hrep(fam);
    for (const auto& vx : v.vertices) {
      std::vector<Rational> x;
      for (long c : vx) x.push_back(Rational(c));
      CHECK(hrep_satisfied(hh, x, Rational(0)));
    }
  }
}

TEST_CASE("vertex and halfspace forms describe the same polytope") {
  std::mt19937_64 rng(83);
  for (const auto& fam : {fixtures::pairs_3(), fixtures::all_subsets_3(),
                          fixtures::two_pairs_ground(), fixtures::pairs_4(),
                          fixtures::all_subsets_4()}) {
    LatticePolytope v = delta_E_vertices(fam);
    LatticePolytope h = delta_E_hrep(fam);

    // The basic feasible solutions of the halfspace form are the vertices.
    auto basic = oracle::hrep_vertices(h, fam.m());
    std::set<std::vector<Rational>> basic_set(basic.begin(), basic.end());
    std::set<std::vector<Rational>> vrep_set;
    for (const auto& vx : v.vertices) {
      std::vector<Rational> x;
      for (long c : vx) x.push_back(Rational(c));
      vrep_set.insert(x);
    }
    CHECK(basic_set == vrep_set);

    // Exact linear programming cross-check on random integer objectives.
    std::uniform_int_distribution<long> co(-9, 9);
    for (int t = 0; t < 200; ++t) {
      std::vector<long> c(fam.m());
      for (auto& x : c) x = co(rng);
      Rational best_v;
      bool first = true;
      for (const auto& vx : v.vertices) {
        Rational val(0);
        for (std::size_t k = 0; k < vx.size(); ++k) val += Rational(c[k]) * Rational(vx[k]);
        if (first || val > best_v) best_v = val;
        first = false;
      }
      CHECK(best_v == oracle::lp_max(basic, c));
    }
  }
}

TEST_CASE("lifted hull projects back onto the summed simplices") {
  LatticePolytope lifted = mconv_vertices(fixtures::all_subsets_3());
  REQUIRE(lifted.vertices.size() == 6);
  for (const auto& v : lifted.vertices) {
    REQUIRE(v.size() == 7);
    for (std::size_t k = 3; k < 7; ++k) CHECK(v[k] == 1);
  }

  for (const auto& fam : {fixtures::pairs_3(), fixtures::all_subsets_3(),
                          fixtures::two_pairs_ground(), fixtures::besag_chain_3()}) {
    LatticePolytope lift = mconv_vertices(fam);
    LatticePolytope base = delta_E_vertices(fam);
    std::set<std::vector<long>> projected;
    for (auto v : lift.vertices) {
      v.resize(fam.m());
      projected.insert(v);
    }
    CHECK(projected == std::set<std::vector<long>>(base.vertices.begin(),
                                                   base.vertices.end()));
  }

  EventFamily ground_only = EventFamily::make(2, {{1, 2}});
  LatticePolytope lone = mconv_vertices(ground_only);
  CHECK(std::set<std::vector<long>>(lone.vertices.begin(), lone.vertices.end()) ==
        std::set<std::vector<long>>{{0, 1, 1}, {1, 0, 1}});
}

TEST_CASE("moment map of the family graph") {
  EventFamily f = EventFamily::make(3, {{1, 2, 3}, {1, 2}});
  std::map<VarId, Rational> uniform;
  for (const auto& e : f.events())
    for (int i : e) uniform[var(i, e)] = Rational(1, static_cast<long>(e.size()));
  auto nu = moment_nu(f, uniform);
  REQUIRE(nu.size() == 5);
  CHECK(nu[0] == Rational(5, 6));
  CHECK(nu[1] == Rational(5, 6));
  CHECK(nu[2] == Rational(1, 3));
  CHECK(nu[3] == Rational(1));
  CHECK(nu[4] == Rational(1));

  // Point masses land on a vertex of the polytope.
  std::map<VarId, Rational> point{{var(1, {1, 2, 3}), Rational(1)},
                                  {var(2, {1, 2, 3}), Rational(0)},
                                  {var(3, {1, 2, 3}), Rational(0)},
                                  {var(1, {1, 2}), Rational(1)},
                                  {var(2, {1, 2}), Rational(0)}};
  auto vertex = moment_nu(f, point);
  CHECK(vertex[0] == Rational(2));
  CHECK(vertex[1] == Rational(0));

  // Signs are ignored.
  std::map<VarId, double> signed_vals{{var(1, {1, 2, 3}), -0.2}, {var(2, {1, 2, 3}), 0.3},
                                      {var(3, {1, 2, 3}), -0.5}, {var(1, {1, 2}), 0.25},
                                      {var(2, {1, 2}), -0.75}};
  auto a = moment_nu(f, signed_vals);
  std::map<VarId, double> flipped;
  for (const auto& [v, x] : signed_vals) flipped[v] = -x;
  CHECK(a == moment_nu(f, flipped));

  // Zero block mass is rejected.
  std::map<VarId, Rational> degenerate = point;
  degenerate[var(1, {1, 2})] = Rational(0);
  CHECK_THROWS_AS(moment_nu(f, degenerate), input_error);

  // Element coordinates always satisfy the halfspace form.
  std::mt19937_64 rng(89);
  LatticePolytope h = delta_E_hrep(f);
  for (int t = 0; t < 50; ++t) {
    CPTable table = conditionals_from_joint(oracle::random_positive_joint(3, rng), f);
    auto img = moment_nu(f, table);
    std::vector<Rational> element_block(img.begin(), img.begin() + 3);
    CHECK(hrep_satisfied(h, element_block, Rational(0)));
  }
}

TEST_CASE("pairwise moment map") {
  EventFamily pairs = fixtures::pairs_3();
  std::map<VarId, Rational> uniform;
  for (const auto& e : pairs.events())
    for (int i : e) uniform[var(i, e)] = Rational(1, 2);
  auto w = matus_W(3, CPTable::exact(uniform));
  CHECK(w == std::vector<Rational>{Rational(1), Rational(1), Rational(1)});

  CPTable t = conditionals_from_joint(
      JointDistribution::make(3, {Rational(1, 2), Rational(1, 4), Rational(1, 4)}), pairs);
  CHECK(matus_W(3, t) == std::vector<Rational>{Rational(4, 3), Rational(5, 6), Rational(5, 6)});

  // Version freedom at a simplex corner: the image sits on an edge midpoint.
  CPTable corner = CPTable::exact({{var(1, {1, 2}), Rational(1)},
                                   {var(2, {1, 2}), Rational(0)},
                                   {var(1, {1, 3}), Rational(1)},
                                   {var(3, {1, 3}), Rational(0)},
                                   {var(2, {2, 3}), Rational(1, 2)},
                                   {var(3, {2, 3}), Rational(1, 2)}});
  CHECK(matus_W(3, corner) ==
        std::vector<Rational>{Rational(2), Rational(1, 2), Rational(1, 2)});

  CHECK_THROWS_AS(matus_W(3, CPTable::exact({{var(1, {1, 2}), Rational(1)}})), input_error);

  // Sum of coordinates is the number of pairs; the image obeys the
  // permutohedron halfspace form, exactly.
  std::mt19937_64 rng(97);
  for (int m : {3, 4}) {
    EventFamily pf = m == 3 ? fixtures::pairs_3() : fixtures::pairs_4();
    LatticePolytope h = delta_E_hrep(pf);
    for (int t2 = 0; t2 < 100; ++t2) {
      CPTable table = conditionals_from_joint(oracle::random_positive_joint(m, rng), pf);
      auto img = matus_W(m, table);
      Rational s(0);
      for (const auto& x : img) s += x;
      CHECK(s == Rational(m * (m - 1) / 2));
      CHECK(hrep_satisfied(h, img, Rational(0)));
    }
  }
}

TEST_CASE("deterministic orders map onto permutohedron vertices") {
  for (int m : {3, 4}) {
    EventFamily pf = m == 3 ? fixtures::pairs_3() : fixtures::pairs_4();
    LatticePolytope vrep = delta_E_vertices(pf);
    std::set<std::vector<long>> vertex_set(vrep.vertices.begin(), vrep.vertices.end());

    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 1);
    do {
      std::vector<int> rank(m + 1, 0);
      for (int k = 0; k < m; ++k) rank[perm[k]] = k;
      std::map<VarId, Rational> table;
      for (const auto& e : pf.events())
        for (int i : e) {
          int other = e[0] == i ? e[1] : e[0];
          table[var(i, e)] = rank[i] > rank[other] ? Rational(1) : Rational(0);
        }
      auto img = matus_W(m, CPTable::exact(table));
      std::vector<long> as_long;
      for (const auto& x : img) {
        CHECK(x.denominator_str() == "1");
        as_long.push_back(std::strtol(x.numerator_str().c_str(), nullptr, 10));
      }
      CHECK(vertex_set.count(as_long) == 1);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("simplex moment map") {
  CHECK(simplex_moment(std::vector<Rational>{Rational(3), Rational(1), Rational(0)}) ==
        std::vector<Rational>{Rational(3, 4), Rational(1, 4), Rational(0)});
  CHECK(simplex_moment(std::vector<Rational>{Rational(-1), Rational(1), Rational(0)}) ==
        std::vector<Rational>{Rational(1, 2), Rational(1, 2), Rational(0)});

  std::mt19937_64 rng(101);
  for (int t = 0; t < 50; ++t) {
    JointDistribution j = oracle::random_positive_joint(4, rng);
    CHECK(simplex_moment(j.p) == j.p);  // identity on the simplex
  }
  CHECK_THROWS_AS(simplex_moment(std::vector<double>{0, 0}), input_error);
}

TEST_CASE("max-entropy fiber: symmetric and frozen targets") {
  EventFamily f = EventFamily::make(3, {{1, 2, 3}, {1, 2}});

  // Symmetric target: the uniform table solves the dual at zero.
  FiberProblem sym{f, {5.0 / 6, 5.0 / 6, 1.0 / 3}};
  FiberSolution s = fiber_max_entropy(sym);
  CHECK(s.residual_inf <= 1e-10);
  CHECK(s.table.dbl(var(1, {1, 2, 3})) == doctest::Approx(1.0 / 3).epsilon(1e-10));
  CHECK(s.table.dbl(var(1, {1, 2})) == doctest::Approx(0.5).epsilon(1e-10));

  // Frozen optimum of the asymmetric case, computed offline from the
  // one-dimensional stationarity condition q(q - 1/5) = (7/10 - q)(6/5 - q).
  FiberProblem asym{f, {1.2, 0.5, 0.3}};
  FiberSolution a = fiber_max_entropy(asym);
  CHECK(a.residual_inf <= 1e-10);
  CHECK(a.table.dbl(var(1, {1, 2, 3})) == doctest::Approx(42.0 / 85).epsilon(1e-10));
  CHECK(a.table.dbl(var(2, {1, 2, 3})) == doctest::Approx(7.0 / 34).epsilon(1e-10));
  CHECK(a.table.dbl(var(3, {1, 2, 3})) == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(a.table.dbl(var(1, {1, 2})) == doctest::Approx(12.0 / 17).epsilon(1e-10));
  CHECK(a.table.dbl(var(2, {1, 2})) == doctest::Approx(5.0 / 17).epsilon(1e-10));

  // No feasible point does better: scan the one free parameter of the fiber.
  double d_star = divergence_from_uniform(f, a.table);
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> q1(0.2, 0.7);
  for (int t = 0; t < 10000; ++t) {
    double q = q1(rng);
    CPTable cand = CPTable::floating({{var(1, {1, 2, 3}), q},
                                      {var(2, {1, 2, 3}), 0.7 - q},
                                      {var(3, {1, 2, 3}), 0.3},
                                      {var(1, {1, 2}), 1.2 - q},
                                      {var(2, {1, 2}), q - 0.2}});
    CHECK(divergence_from_uniform(f, cand) >= d_star - 1e-12);
  }
}

TEST_CASE("max-entropy fiber: vertex and boundary targets") {
  EventFamily all3 = fixtures::all_subsets_3();
  FiberProblem vertex{all3, {3.0, 1.0, 0.0}};
  FiberSolution s = fiber_max_entropy(vertex);
  CHECK(s.residual_inf <= 1e-12);
  CHECK(s.table.dbl(var(1, {1, 2})) == 1.0);
  CHECK(s.table.dbl(var(1, {1, 3})) == 1.0);
  CHECK(s.table.dbl(var(2, {2, 3})) == 1.0);
  CHECK(s.table.dbl(var(1, {1, 2, 3})) == 1.0);
  CHECK(s.table.dbl(var(3, {2, 3})) == 0.0);

  // A face target: the ground event pinned to element 3, the rest interior.
  EventFamily f = EventFamily::make(3, {{1, 2}, {1, 2, 3}});
  FiberProblem face{f, {0.5, 0.5, 1.0}};
  FiberSolution fs = fiber_max_entropy(face);
  CHECK(fs.residual_inf <= 1e-10);
  CHECK(fs.table.dbl(var(3, {1, 2, 3})) == doctest::Approx(1.0));
  CHECK(fs.table.dbl(var(1, {1, 2})) == doctest::Approx(0.5));

  // Infeasible targets are refused.
  CHECK_THROWS_AS(fiber_max_entropy(FiberProblem{all3, {4.0, 0.0, 0.0}}), infeasible_error);
  CHECK_THROWS_AS(fiber_max_entropy(FiberProblem{all3, {2.0, 1.0, 0.5}}), infeasible_error);
  CHECK_THROWS_AS(fiber_max_entropy(FiberProblem{all3, {2.0, 1.0}}), input_error);
}

TEST_CASE("moment map inversion recovers softmax tables") {
  std::mt19937_64 rng(107);
  for (const auto& f : {EventFamily::make(3, {{1, 2, 3}, {1, 2}}),
                        fixtures::two_pairs_ground(), fixtures::all_subsets_3(),
                        fixtures::besag_chain_3()}) {
    GroebnerBasis gb = universal_gb(f);
    std::vector<int> used = f.used_elements();
    for (int t = 0; t < 25; ++t) {
      std::vector<double> theta = random_theta(static_cast<int>(used.size()), rng);
      CPTable p = table_from_theta(f, theta);
      auto img = moment_nu(f, p);
      std::vector<double> target;
      for (std::size_t k = 0; k < used.size(); ++k) target.push_back(img[k].to_double());

      FiberSolution sol = fiber_max_entropy(FiberProblem{f, target});
      CHECK(sol.residual_inf <= 1e-10);
      for (const auto& v : variables(f))
        CHECK(std::abs(sol.table.dbl(v) - p.dbl(v)) <= 1e-8);
      for (const auto& b : gb.binomials())
        CHECK(std::abs(evaluate_binomial_dbl(b, sol.table)) <= 1e-8);
    }
  }
}

TEST_CASE("dual objective: analytic gradient matches finite differences") {
  std::mt19937_64 rng(109);
  EventFamily f = fixtures::two_pairs_ground();
  std::vector<int> used = f.used_elements();
  int n = static_cast<int>(used.size());

  for (int t = 0; t < 20; ++t) {
    std::vector<double> theta = random_theta(n, rng);
    std::vector<double> b;
    {
      // A fixed interior target, unrelated to theta.
      CPTable p0 = table_from_theta(f, std::vector<double>(n, 0.0));
      auto img = moment_nu(f, p0);
      for (int k = 0; k < n; ++k) b.push_back(img[k].to_double());
    }
    // Analytic gradient: moment image at theta minus the target.
    CPTable pt = table_from_theta(f, theta);
    auto img = moment_nu(f, pt);
    const double h = 1e-6;
    for (int k = 0; k < n; ++k) {
      double analytic = img[k].to_double() - b[k];
      std::vector<double> up = theta, dn = theta;
      up[k] += h;
      dn[k] -= h;
      double fd = (dual_value_oracle(f, up, b) - dual_value_oracle(f, dn, b)) / (2 * h);
      CHECK(std::abs(analytic - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("dual objective is convex along random segments") {
  std::mt19937_64 rng(113);
  EventFamily f = fixtures::all_subsets_3();
  std::vector<int> used = f.used_elements();
  int n = static_cast<int>(used.size());
  std::vector<double> b;
  {
    CPTable p0 = table_from_theta(f, std::vector<double>(n, 0.0));
    auto img = moment_nu(f, p0);
    for (int k = 0; k < n; ++k) b.push_back(img[k].to_double());
  }
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x = random_theta(n, rng), d = random_theta(n, rng);
    std::vector<double> lo(n), hi(n);
    for (int k = 0; k < n; ++k) {
      lo[k] = x[k] - d[k];
      hi[k] = x[k] + d[k];
    }
    double mid = dual_value_oracle(f, x, b);
    CHECK(dual_value_oracle(f, lo, b) + dual_value_oracle(f, hi, b) >= 2 * mid - 1e-9);
  }
}

TEST_CASE("disconnected families solve blockwise") {
  EventFamily split = fixtures::split_pairs();
  FiberProblem prob{split, {0.3, 0.7, 0.6, 0.4}};
  FiberSolution sol = fiber_max_entropy(prob);
  CHECK(sol.residual_inf <= 1e-10);
  CHECK(sol.table.dbl(var(1, {1, 2})) == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(sol.table.dbl(var(4, {3, 4})) == doctest::Approx(0.4).epsilon(1e-10));
}
