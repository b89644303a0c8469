#include "cprel/graph.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cprel {

int BipartiteGraph::edge_index(int u, int v) const {
  for (std::size_t k = 0; k < edges.size(); ++k)
    if (edges[k].u == u && edges[k].v == v) return static_cast<int>(k);
  return -1;
}

bool BipartiteGraph::is_acyclic() const {
  // |E| = |U| + |V| - #components for a forest.
  std::size_t n = u_events.size() + v_elements.size();
  std::vector<int> parent(n);
  for (std::size_t k = 0; k < n; ++k) parent[k] = static_cast<int>(k);
  std::vector<int>* p = &parent;
  auto find = [p](int x) {
    while ((*p)[x] != x) x = (*p)[x] = (*p)[(*p)[x]];
    return x;
  };
  for (const auto& e : edges) {
    int a = find(e.u), b = find(static_cast<int>(u_events.size()) + e.v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

BipartiteGraph build_graph(const EventFamily& family) {
  BipartiteGraph g;
  g.family = family;
  g.u_events = family.events();
  g.v_elements = family.used_elements();
  std::map<int, int> v_index;
  for (std::size_t k = 0; k < g.v_elements.size(); ++k)
    v_index[g.v_elements[k]] = static_cast<int>(k);

  g.u_adj.resize(g.u_events.size());
  g.v_adj.resize(g.v_elements.size());
  for (std::size_t u = 0; u < g.u_events.size(); ++u) {
    for (int i : g.u_events[u]) {
      int v = v_index.at(i);
      g.edges.push_back({static_cast<int>(u), v, VarId{i, g.u_events[u]}});
      g.u_adj[u].push_back(v);
      g.v_adj[v].push_back(static_cast<int>(u));
    }
  }
  for (auto& a : g.u_adj) std::sort(a.begin(), a.end());
  for (auto& a : g.v_adj) std::sort(a.begin(), a.end());
  return g;
}

namespace {

// Rewrites a closed vertex walk (combined ids, u in [0,nu), v from nu up)
// into the canonical representative.
Cycle canonical_cycle(const std::vector<int>& ring, int nu) {
  int len = static_cast<int>(ring.size());
  int best_pos = -1;
  for (int k = 0; k < len; ++k) {
    if (ring[k] < nu && (best_pos < 0 || ring[k] < ring[best_pos])) best_pos = k;
  }
  auto at = [&](int k) { return ring[((k % len) + len) % len]; };
  int dir = at(best_pos + 1) < at(best_pos - 1) ? 1 : -1;
  Cycle c;
  for (int k = 0; k < len / 2; ++k) {
    c.us.push_back(at(best_pos + 2 * k * dir));
    c.vs.push_back(at(best_pos + (2 * k + 1) * dir) - nu);
  }
  return c;
}

}  // namespace

std::vector<Cycle> enumerate_cycles(const BipartiteGraph& g, std::optional<int> max_length,
                                    std::size_t cap) {
  if (max_length && (*max_length < 4 || *max_length % 2 != 0))
    throw input_error("cycle length bound must be even and at least 4");
  int nu = static_cast<int>(g.u_events.size());
  int n = nu + static_cast<int>(g.v_elements.size());
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : g.edges) {
    adj[e.u].push_back(nu + e.v);
    adj[nu + e.v].push_back(e.u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  std::vector<Cycle> out;
  std::vector<int> path;
  std::vector<char> on_path(n, 0);
  int limit = max_length ? *max_length : n;

  // Each cycle is found exactly once: rooted at its least vertex, with the
  // second vertex smaller than the last to kill the reflected copy.
  auto dfs = [&](auto&& self, int root, int at) -> void {
    for (int next : adj[at]) {
      if (next == root && path.size() >= 4) {
        if (path[1] < path.back()) {
          out.push_back(canonical_cycle(path, nu));
          if (out.size() > cap)
            throw limit_error("cycle cap exceeded (" + std::to_string(cap) + ")");
        }
        continue;
      }
      if (next <= root || on_path[next]) continue;
      if (static_cast<int>(path.size()) >= limit) continue;
      path.push_back(next);
      on_path[next] = 1;
      self(self, root, next);
      on_path[next] = 0;
      path.pop_back();
    }
  };

  for (int s = 0; s < n; ++s) {
    path.assign(1, s);
    on_path.assign(n, 0);
    on_path[s] = 1;
    dfs(dfs, s, s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool cycle_is_induced(const BipartiteGraph& g, const Cycle& c) {
  // The sets of cycle vertices span exactly the cycle edges iff chordless.
  std::set<int> vset(c.vs.begin(), c.vs.end());
  std::size_t spanned = 0;
  for (int u : c.us)
    for (int v : g.u_adj[u]) spanned += vset.count(v);
  return spanned == c.length();
}

std::vector<Cycle> enumerate_induced_cycles(const BipartiteGraph& g, std::size_t cap) {
  std::vector<Cycle> all = enumerate_cycles(g, std::nullopt, cap);
  std::vector<Cycle> out;
  for (const auto& c : all)
    if (cycle_is_induced(g, c)) out.push_back(c);
  return out;
}

Binomial cycle_binomial(const BipartiteGraph& g, const Cycle& c) {
  Monomial plus, minus;
  std::size_t k = c.us.size();
  for (std::size_t t = 0; t < k; ++t) {
    const Event& with_event = g.u_events[c.us[t]];
    const Event& against_event = g.u_events[c.us[(t + 1) % k]];
    plus = plus * Monomial::var(VarId{g.v_elements[c.vs[t]], with_event});
    minus = minus * Monomial::var(VarId{g.v_elements[c.vs[t]], against_event});
  }
  return Binomial(plus, minus);
}

IncidenceMatrix incidence_matrix(const BipartiteGraph& g) {
  IncidenceMatrix a;
  a.v_rows = static_cast<int>(g.v_elements.size());
  for (int i : g.v_elements) a.row_labels.push_back(std::to_string(i));
  for (const auto& e : g.u_events) a.row_labels.push_back(event_label(e));
  for (const auto& e : g.edges) a.columns.push_back(e.label);
  a.entries.assign(a.row_labels.size(), std::vector<int>(g.edges.size(), 0));
  for (std::size_t c = 0; c < g.edges.size(); ++c) {
    a.entries[g.edges[c].v][c] = 1;
    a.entries[a.v_rows + g.edges[c].u][c] = 1;
  }
  return a;
}

long long integer_determinant(std::vector<std::vector<long long>> m) {
  int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  long long prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int p = -1;
      for (int r = k + 1; r < n; ++r)
        if (m[r][k] != 0) {
          p = r;
          break;
        }
      if (p < 0) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (int r = k + 1; r < n; ++r) {
      for (int c = k + 1; c < n; ++c)
        m[r][c] = (m[r][c] * m[k][k] - m[r][k] * m[k][c]) / prev;
      m[r][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace {

// Lexicographic k-subset iteration.
bool next_combination(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  for (int t = k - 1; t >= 0; --t) {
    if (idx[t] < n - (k - t)) {
      ++idx[t];
      for (int s = t + 1; s < k; ++s) idx[s] = idx[s - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

UnimodularityWitness check_total_unimodularity(const std::vector<std::vector<int>>& a,
                                               int max_minor_dim) {
  int rows = static_cast<int>(a.size());
  int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  if (max_minor_dim > std::min(rows, cols))
    throw limit_error("minor dimension bound exceeds matrix size");
  UnimodularityWitness w;
  for (int k = 1; k <= max_minor_dim; ++k) {
    std::vector<int> ri(k), ci(k);
    for (int t = 0; t < k; ++t) ri[t] = t;
    do {
      for (int t = 0; t < k; ++t) ci[t] = t;
      do {
        std::vector<std::vector<long long>> sub(k, std::vector<long long>(k));
        for (int r = 0; r < k; ++r)
          for (int c = 0; c < k; ++c) sub[r][c] = a[ri[r]][ci[c]];
        long long det = integer_determinant(std::move(sub));
        if (det < -1 || det > 1) {
          w.totally_unimodular = false;
          w.rows = ri;
          w.cols = ci;
          w.det = det;
          return w;
        }
      } while (next_combination(ci, cols));
    } while (next_combination(ri, rows));
  }
  return w;
}

UnimodularityWitness check_total_unimodularity(const IncidenceMatrix& a, int max_minor_dim) {
  return check_total_unimodularity(a.entries, max_minor_dim);
}

}  // namespace cprel
