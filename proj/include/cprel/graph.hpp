#pragma once

// The labeled bipartite graph of a family: one u-vertex per event, one
// v-vertex per used element, and an edge u_I -> v_i labeled p_{i|I} for
// each i in I. Simple cycles of the undirected graph carry the binomials;
// the vertex-edge incidence matrix carries the toric structure.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cprel/event_family.hpp"
#include "cprel/monomial.hpp"

namespace cprel {

struct BipartiteGraph {
  EventFamily family;
  std::vector<Event> u_events;  // canonical family order
  std::vector<int> v_elements;  // sorted union of events

  struct Edge {
    int u = 0;  // index into u_events
    int v = 0;  // index into v_elements
    VarId label;
  };
  std::vector<Edge> edges;  // canonical VarId order

  std::vector<std::vector<int>> u_adj;  // u index -> sorted v indices
  std::vector<std::vector<int>> v_adj;  // v index -> sorted u indices

  int edge_index(int u, int v) const;  // -1 if absent
  bool is_acyclic() const;
};

BipartiteGraph build_graph(const EventFamily& family);

// Even closed walk without repeated vertices, stored as the canonical
// representative: us[0] is the least u-vertex on the cycle and vs[0] the
// lesser of its two cycle neighbors. Edge us[k] -> vs[k] is traversed with
// its direction, vs[k] -> us[k+1] against.
struct Cycle {
  std::vector<int> us;
  std::vector<int> vs;

  std::size_t length() const { return us.size() + vs.size(); }

  friend bool operator==(const Cycle& a, const Cycle& b) {
    return a.us == b.us && a.vs == b.vs;
  }
  friend bool operator<(const Cycle& a, const Cycle& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    if (a.us != b.us) return a.us < b.us;
    return a.vs < b.vs;
  }
};

inline constexpr std::size_t kDefaultCycleCap = 1u << 20;

// All simple cycles, canonical representatives in deterministic order.
// max_length bounds the number of cycle vertices (must be even); cycles
// beyond `cap` raise limit_error instead of exhausting memory.
std::vector<Cycle> enumerate_cycles(const BipartiteGraph& g,
                                    std::optional<int> max_length = std::nullopt,
                                    std::size_t cap = kDefaultCycleCap);

// Chordless cycles only: no graph edge joins two non-consecutive vertices.
std::vector<Cycle> enumerate_induced_cycles(const BipartiteGraph& g,
                                            std::size_t cap = kDefaultCycleCap);

bool cycle_is_induced(const BipartiteGraph& g, const Cycle& c);

// Edge labels traversed with the cycle on the positive side, against on the
// negative. Squarefree with coprime sides by construction.
Binomial cycle_binomial(const BipartiteGraph& g, const Cycle& c);

// 0/1 vertex-edge incidence matrix. Rows list the v-vertices (elements,
// ascending) first and then the u-vertices (events, canonical order);
// columns follow the canonical variable order.
struct IncidenceMatrix {
  std::vector<std::string> row_labels;
  std::vector<VarId> columns;
  std::vector<std::vector<int>> entries;
  int v_rows = 0;  // leading rows holding the element block

  int rows() const { return static_cast<int>(entries.size()); }
  int cols() const { return static_cast<int>(columns.size()); }
};

IncidenceMatrix incidence_matrix(const BipartiteGraph& g);

struct UnimodularityWitness {
  bool totally_unimodular = true;
  std::vector<int> rows;  // offending minor, when not
  std::vector<int> cols;
  long long det = 0;
};

// Checks every square minor up to max_minor_dim has determinant in
// {-1, 0, 1}, by exact fraction-free elimination.
UnimodularityWitness check_total_unimodularity(const std::vector<std::vector<int>>& a,
                                               int max_minor_dim);
UnimodularityWitness check_total_unimodularity(const IncidenceMatrix& a, int max_minor_dim);

// Exact integer determinant (Bareiss).
long long integer_determinant(std::vector<std::vector<long long>> m);

}  // namespace cprel
