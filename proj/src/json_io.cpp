#include "cprel/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace cprel {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw input_error(what);
}

VarId varid_from_json(const json& j) {
  require(j.is_object() && j.contains("i") && j.contains("event"),
          "variable entries need \"i\" and \"event\"");
  VarId v;
  v.element = j.at("i").get<int>();
  v.event = j.at("event").get<std::vector<int>>();
  std::sort(v.event.begin(), v.event.end());
  return v;
}

json varid_to_json(const VarId& v) {
  return json{{"i", v.element}, {"event", v.event}};
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw input_error("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

EventFamily family_from_json(const json& j) {
  require(j.is_object() && j.contains("m") && j.contains("events"),
          "event family needs \"m\" and \"events\"");
  require(j.at("m").is_number_integer(), "\"m\" must be an integer");
  std::vector<std::vector<int>> events;
  for (const auto& e : j.at("events")) events.push_back(e.get<std::vector<int>>());
  return EventFamily::make(j.at("m").get<int>(), events);
}

json family_to_json(const EventFamily& family) {
  json events = json::array();
  for (const auto& e : family.events()) events.push_back(e);
  return json{{"m", family.m()}, {"events", events}};
}

CPTable table_from_json(const json& j) {
  require(j.is_object() && j.contains("mode") && j.contains("entries"),
          "table needs \"mode\" and \"entries\"");
  std::string mode = j.at("mode").get<std::string>();
  auto restore_flags = [&j](CPTable t) {
    if (j.contains("version_chosen"))
      for (const auto& e : j.at("version_chosen")) {
        Event ev = e.get<std::vector<int>>();
        std::sort(ev.begin(), ev.end());
        t.flag_version_chosen(ev);
      }
    return t;
  };
  if (mode == "exact") {
    std::map<VarId, Rational> values;
    for (const auto& e : j.at("entries")) {
      VarId v = varid_from_json(e);
      require(e.contains("value") && e.at("value").is_string(),
              "exact entries carry string values");
      values[v] = Rational::parse(e.at("value").get<std::string>());
    }
    return restore_flags(CPTable::exact(std::move(values)));
  }
  if (mode == "float") {
    std::map<VarId, double> values;
    for (const auto& e : j.at("entries")) {
      VarId v = varid_from_json(e);
      require(e.contains("value") && e.at("value").is_number(),
              "float entries carry numeric values");
      values[v] = e.at("value").get<double>();
    }
    return restore_flags(CPTable::floating(std::move(values)));
  }
  throw input_error("unknown table mode: " + mode);
}

json table_to_json(const CPTable& table) {
  json entries = json::array();
  if (table.is_exact()) {
    for (const auto& [v, x] : table.exact_values()) {
      json e = varid_to_json(v);
      e["value"] = x.str();
      entries.push_back(std::move(e));
    }
  } else {
    for (const auto& [v, x] : table.float_values()) {
      json e = varid_to_json(v);
      e["value"] = x;
      entries.push_back(std::move(e));
    }
  }
  json out{{"mode", table.is_exact() ? "exact" : "float"}, {"entries", entries}};
  if (!table.version_chosen_events().empty()) {
    json flagged = json::array();
    for (const auto& e : table.version_chosen_events()) flagged.push_back(e);
    out["version_chosen"] = flagged;
  }
  return out;
}

JointDistribution joint_from_json(const json& j) {
  require(j.is_object() && j.contains("m") && j.contains("p"), "joint needs \"m\" and \"p\"");
  int m = j.at("m").get<int>();
  std::vector<Rational> p;
  for (const auto& v : j.at("p")) {
    if (v.is_string())
      p.push_back(Rational::parse(v.get<std::string>()));
    else if (v.is_number())
      p.push_back(Rational::from_double(v.get<double>()));
    else
      throw input_error("joint masses must be strings or numbers");
  }
  return JointDistribution::make(m, std::move(p));
}

json joint_to_json(const JointDistribution& joint) {
  json p = json::array();
  for (const auto& x : joint.p) p.push_back(x.str());
  return json{{"m", joint.m}, {"p", p}};
}

json binomial_to_json(const Binomial& b) {
  auto side = [](const Monomial& m) {
    json arr = json::array();
    for (const auto& [v, e] : m.exponents()) {
      json t = varid_to_json(v);
      t["exp"] = e;
      arr.push_back(std::move(t));
    }
    return arr;
  };
  return json{{"plus", side(b.plus())}, {"minus", side(b.minus())}};
}

Binomial binomial_from_json(const json& j) {
  require(j.is_object() && j.contains("plus") && j.contains("minus"),
          "binomial needs \"plus\" and \"minus\"");
  auto side = [](const json& arr) {
    Monomial m;
    for (const auto& t : arr) {
      int e = t.contains("exp") ? t.at("exp").get<int>() : 1;
      m = m * Monomial::var(varid_from_json(t), e);
    }
    return m;
  };
  return Binomial(side(j.at("plus")), side(j.at("minus")));
}

json basis_to_json(const GroebnerBasis& basis) {
  json arr = json::array();
  for (const auto& b : basis.binomials()) arr.push_back(binomial_to_json(b));
  return arr;
}

std::string basis_to_text(const GroebnerBasis& basis) {
  std::ostringstream os;
  for (const auto& b : basis.binomials()) os << b.str() << "\n";
  return os.str();
}

json graph_to_json(const BipartiteGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back(json{{"event", e.label.event}, {"i", e.label.element}});
  return json{{"edges", edges}};
}

std::string graph_to_dot(const BipartiteGraph& g) {
  std::ostringstream os;
  os << "digraph family {\n  rankdir=LR;\n";
  for (const auto& e : g.u_events)
    os << "  \"u_" << event_label(e) << "\" [shape=box];\n";
  for (int i : g.v_elements) os << "  \"v_" << i << "\" [shape=circle];\n";
  for (const auto& e : g.edges) {
    os << "  \"u_" << event_label(g.u_events[e.u]) << "\" -> \"v_" << g.v_elements[e.v]
       << "\" [label=\"" << var_label(e.label) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

json matrix_to_json(const IncidenceMatrix& a) {
  json cols = json::array();
  for (const auto& v : a.columns) cols.push_back(var_label(v));
  json data = json::array();
  for (const auto& row : a.entries) data.push_back(row);
  return json{{"rows", a.row_labels}, {"cols", cols}, {"data", data}};
}

json polytope_to_json(const LatticePolytope& p) {
  json out;
  out["equality_sum"] = p.equality_sum;
  if (p.has_vrep) {
    json vs = json::array();
    for (const auto& v : p.vertices) vs.push_back(v);
    out["vertices"] = vs;
  }
  if (p.has_hrep) {
    json ineqs = json::array();
    for (const auto& q : p.inequalities)
      ineqs.push_back(json{{"J", q.subset}, {"bound", q.bound}});
    out["inequalities"] = ineqs;
  }
  return out;
}

json report_to_json(const CompatibilityReport& report) {
  json vs = json::array();
  for (const auto& v : report.violations)
    vs.push_back(json{{"relation", v.relation},
                      {"lhs", v.lhs},
                      {"rhs", v.rhs},
                      {"residual", v.residual}});
  json out{{"axioms_pass", report.axioms_pass},
           {"variety_pass", report.variety_pass},
           {"mode", report.exact ? "exact" : "float"},
           {"violations", vs},
           {"violation_count", report.violations.size()}};
  if (!report.exact) out["tolerance"] = report.tolerance;
  return out;
}

}  // namespace cprel
