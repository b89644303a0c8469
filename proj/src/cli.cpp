#include "cprel/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <map>
#include <sstream>

#include "cprel/json_io.hpp"

namespace cprel::cli {

namespace {

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      out.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw input_error("expected an integer list, got \"" + s + "\"");
    }
  }
  return out;
}

// "1,2;2,3;" -> {{1,2},{2,3},{}}; an empty segment is the empty set.
std::vector<std::vector<int>> parse_set_list(const std::string& s) {
  std::vector<std::vector<int>> out;
  std::string seg;
  std::stringstream ss(s);
  while (std::getline(ss, seg, ';')) out.push_back(parse_int_list(seg));
  if (!s.empty() && s.back() == ';') out.push_back({});
  return out;
}

// Variable token "i|123" (event as digit string) or "i|1,2,3".
VarId parse_var_token(const std::string& tok) {
  auto bar = tok.find('|');
  if (bar == std::string::npos) throw input_error("variable token needs i|event: " + tok);
  VarId v;
  try {
    v.element = std::stoi(tok.substr(0, bar));
  } catch (const std::exception&) {
    throw input_error("bad variable token: " + tok);
  }
  std::string ev = tok.substr(bar + 1);
  if (ev.find(',') != std::string::npos) {
    v.event = parse_int_list(ev);
  } else {
    for (char c : ev) {
      if (c < '1' || c > '9') throw input_error("bad event in variable token: " + tok);
      v.event.push_back(c - '0');
    }
  }
  std::sort(v.event.begin(), v.event.end());
  return v;
}

TermOrder order_from_flags(const EventFamily& family, const std::string& order_spec,
                           const std::string& priority_spec) {
  std::vector<VarId> prio = variables(family);
  if (!priority_spec.empty()) {
    std::vector<VarId> head;
    std::stringstream ss(priority_spec);
    std::string tok;
    // Comma-separated digit-form tokens, e.g. "2|123,1|12".
    while (std::getline(ss, tok, ',')) head.push_back(parse_var_token(tok));
    std::vector<VarId> rest;
    for (const auto& v : prio)
      if (std::find(head.begin(), head.end(), v) == head.end()) rest.push_back(v);
    prio = head;
    prio.insert(prio.end(), rest.begin(), rest.end());
  }
  if (order_spec == "lex") return TermOrder::lex(prio);
  if (order_spec.empty() || order_spec == "grevlex") return TermOrder::grevlex(prio);
  if (order_spec.rfind("weight:", 0) == 0) {
    std::vector<int> ws = parse_int_list(order_spec.substr(7));
    if (ws.size() != prio.size())
      throw input_error("weight list must cover every variable (" +
                        std::to_string(prio.size()) + " expected)");
    std::map<VarId, long> weights;
    for (std::size_t k = 0; k < prio.size(); ++k) weights[prio[k]] = ws[k];
    return TermOrder::weighted(std::move(weights), prio);
  }
  throw input_error("unknown order: " + order_spec);
}

struct Ctx {
  std::ostream& out;
  std::ostream& err;
  int exit_code = 0;
};

void emit(Ctx& ctx, const json& j) { ctx.out << j.dump(2) << "\n"; }

int run_gb(Ctx& ctx, const std::string& events_path, bool induced_only,
           const std::string& format, const std::string& order_spec,
           const std::string& priority_spec) {
  EventFamily family = family_from_json(load_json_file(events_path));
  GroebnerBasis basis = induced_only ? induced_generators(family) : universal_gb(family);

  std::vector<Binomial> listing = basis.binomials();
  if (!order_spec.empty() || !priority_spec.empty()) {
    TermOrder ord = order_from_flags(family, order_spec, priority_spec);
    std::stable_sort(listing.begin(), listing.end(), [&](const Binomial& a, const Binomial& b) {
      auto la = *Polynomial::from_binomial(a).leading_term(ord);
      auto lb = *Polynomial::from_binomial(b).leading_term(ord);
      return ord.greater(la.first, lb.first);
    });
  }

  if (format == "json") {
    json arr = json::array();
    for (const auto& b : listing) arr.push_back(binomial_to_json(b));
    emit(ctx, arr);
  } else {
    for (const auto& b : listing) ctx.out << b.str() << "\n";
  }
  return 0;
}

int run_check(Ctx& ctx, const std::string& events_path, const std::string& table_path,
              const std::string& mode, bool induced_only, double tol) {
  EventFamily family = family_from_json(load_json_file(events_path));
  CPTable table = table_from_json(load_json_file(table_path));

  CompatibilityReport merged;
  merged.exact = table.is_exact();
  merged.tolerance = table.is_exact() ? 0.0 : tol;
  if (mode == "axioms" || mode == "both") {
    CompatibilityReport r = check_axioms(family, table, tol);
    merged.axioms_pass = r.axioms_pass;
    merged.violations.insert(merged.violations.end(), r.violations.begin(), r.violations.end());
  }
  if (mode == "variety" || mode == "both") {
    GroebnerBasis basis = induced_only ? induced_generators(family) : universal_gb(family);
    CompatibilityReport r = check_variety(family, table, basis, tol);
    merged.variety_pass = r.variety_pass;
    merged.violations.insert(merged.violations.end(), r.violations.begin(), r.violations.end());
  }
  emit(ctx, report_to_json(merged));
  return merged.pass() ? 0 : 1;
}

int run_reconstruct(Ctx& ctx, const std::string& events_path, const std::string& table_path) {
  EventFamily family = family_from_json(load_json_file(events_path));
  CPTable table = table_from_json(load_json_file(table_path));
  ReconstructResult res = reconstruct_joint(family, table);
  switch (res.status) {
    case ReconstructResult::Status::reconstructed:
      emit(ctx, joint_to_json(*res.joint));
      return 0;
    case ReconstructResult::Status::underdetermined: {
      json comps = json::array();
      for (const auto& c : res.underdetermined->components) comps.push_back(c);
      emit(ctx, json{{"status", "underdetermined"},
                     {"components", comps},
                     {"dof", res.underdetermined->dof}});
      return 0;
    }
    case ReconstructResult::Status::incompatible: {
      json vs = json::array();
      for (const auto& v : res.violations)
        vs.push_back(json{{"relation", v.relation},
                          {"lhs", v.lhs},
                          {"rhs", v.rhs},
                          {"residual", v.residual}});
      emit(ctx, json{{"status", "incompatible"}, {"violations", vs}});
      return 1;
    }
  }
  return 2;
}

int run_polytope(Ctx& ctx, const std::string& events_path, const std::string& output,
                 const std::string& format) {
  EventFamily family = family_from_json(load_json_file(events_path));
  json out;
  if (output == "vertices" || output == "both") {
    LatticePolytope v = delta_E_vertices(family);
    out.update(polytope_to_json(v));
  }
  if (output == "hrep" || output == "both") {
    LatticePolytope h = delta_E_hrep(family);
    out.update(polytope_to_json(h));
  }
  if (format == "text") {
    if (out.contains("vertices"))
      for (const auto& v : out.at("vertices")) {
        for (std::size_t k = 0; k < v.size(); ++k)
          ctx.out << (k ? " " : "") << v[k].get<long>();
        ctx.out << "\n";
      }
    if (out.contains("inequalities"))
      for (const auto& q : out.at("inequalities")) {
        ctx.out << "sum{";
        const auto& j = q.at("J");
        for (std::size_t k = 0; k < j.size(); ++k)
          ctx.out << (k ? "," : "") << j[k].get<int>();
        ctx.out << "} <= " << q.at("bound").get<long>() << "\n";
      }
  } else {
    emit(ctx, out);
  }
  return 0;
}

int run_moment(Ctx& ctx, const std::string& map_name, const std::string& events_path,
               const std::string& table_path, const std::string& vector_spec, int m_override,
               double tol) {
  json out;
  out["map"] = map_name;
  out["tolerance"] = tol;
  if (map_name == "nu") {
    if (events_path.empty() || table_path.empty())
      throw input_error("moment --map nu needs --events and --table");
    EventFamily family = family_from_json(load_json_file(events_path));
    CPTable table = table_from_json(load_json_file(table_path));
    std::vector<Rational> v = moment_nu(family, table);
    json val = json::array();
    for (const auto& x : v) val.push_back(x.to_double());
    out["value"] = val;
  } else if (map_name == "W") {
    if (table_path.empty()) throw input_error("moment --map W needs --table");
    CPTable table = table_from_json(load_json_file(table_path));
    int m = m_override;
    if (m == 0) {
      for (const auto& [v, x] : table.exact_values()) m = std::max(m, v.event.back());
      for (const auto& [v, x] : table.float_values()) m = std::max(m, v.event.back());
    }
    CPTable exact = table;
    if (!table.is_exact()) {
      std::map<VarId, Rational> vals;
      for (const auto& [v, x] : table.float_values()) vals[v] = Rational::from_double(x);
      exact = CPTable::exact(std::move(vals));
    }
    std::vector<Rational> w = matus_W(m, exact);
    json val = json::array();
    for (const auto& x : w) val.push_back(x.to_double());
    out["value"] = val;
  } else if (map_name == "mu") {
    if (vector_spec.empty()) throw input_error("moment --map mu needs --vector");
    std::vector<double> y;
    std::stringstream ss(vector_spec);
    std::string tok;
    while (std::getline(ss, tok, ','))
      y.push_back(Rational::parse(tok).to_double());
    std::vector<double> v = simplex_moment(y);
    out["value"] = v;
  } else {
    throw input_error("unknown moment map: " + map_name);
  }
  emit(ctx, out);
  return 0;
}

int run_fiber(Ctx& ctx, const std::string& events_path, const std::string& target_path,
              double tol_override) {
  EventFamily family = family_from_json(load_json_file(events_path));
  json t = load_json_file(target_path);
  if (!t.is_object() || !t.contains("b")) throw input_error("fiber target needs \"b\"");
  FiberProblem prob;
  prob.family = family;
  for (const auto& x : t.at("b")) prob.target.push_back(x.get<double>());
  if (t.contains("tolerance")) prob.tolerance = t.at("tolerance").get<double>();
  if (tol_override > 0) prob.tolerance = tol_override;

  FiberSolution sol = fiber_max_entropy(prob);
  json out;
  out["b"] = prob.target;
  out["elements"] = sol.elements;
  out["tolerance"] = prob.tolerance;
  out["theta"] = sol.theta;
  out["residual_inf"] = sol.residual_inf;
  out["iterations"] = sol.iterations;
  out["table"] = table_to_json(sol.table);
  emit(ctx, out);
  return 0;
}

int run_rv(Ctx& ctx, const std::string& arities_spec, const std::string& sets_spec) {
  RVSpec spec;
  spec.arities = parse_int_list(arities_spec);
  spec.conditioning_sets = parse_set_list(sets_spec);
  RVFamily rv = rv_event_family(spec);
  json out = family_to_json(rv.family);
  json labels = json::array();
  for (const auto& [event, label] : rv.labels) {
    labels.push_back(json{{"event", event}, {"S", label.observed}, {"x", label.states}});
  }
  out["labels"] = labels;
  emit(ctx, out);
  return 0;
}

int run_besag(Ctx& ctx, const std::string& arities_spec, const std::string& x_spec,
              const std::string& y_spec, const std::string& joint_path,
              const std::string& table_path, const std::string& format) {
  RVSpec spec;
  spec.arities = parse_int_list(arities_spec);
  BesagRelation rel = besag_binomial(spec, parse_int_list(x_spec), parse_int_list(y_spec));

  json out = family_to_json(rel.family);
  out["binomial"] = binomial_to_json(rel.binomial);
  out["text"] = rel.binomial.str(rel.family.m(), /*abbreviate_ground=*/true);
  json configs = json::array();
  for (const auto& c : rel.configs) configs.push_back(rv_state_string(c));
  out["configs"] = configs;

  int code = 0;
  if (!joint_path.empty() && !table_path.empty())
    throw input_error("give either --joint or --table, not both");
  if (!joint_path.empty()) {
    JointDistribution joint = joint_from_json(load_json_file(joint_path));
    CPTable table = besag_table_from_joint(spec, rel, joint);
    Rational r = evaluate_binomial(rel.binomial, table);
    out["residual"] = r.str();
    code = r.is_zero() ? 0 : 1;
  } else if (!table_path.empty()) {
    CPTable table = table_from_json(load_json_file(table_path));
    if (table.is_exact()) {
      Rational r = evaluate_binomial(rel.binomial, table);
      out["residual"] = r.str();
      code = r.is_zero() ? 0 : 1;
    } else {
      double r = evaluate_binomial_dbl(rel.binomial, table);
      out["residual"] = r;
      code = std::abs(r) <= kDefaultResidualTol ? 0 : 1;
    }
  }
  if (format == "text") {
    ctx.out << out.at("text").get<std::string>() << "\n";
    if (out.contains("residual")) {
      if (out.at("residual").is_string())
        ctx.out << "residual: " << out.at("residual").get<std::string>() << "\n";
      else
        ctx.out << "residual: " << out.at("residual").get<double>() << "\n";
    }
  } else {
    emit(ctx, out);
  }
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"relations among discrete conditional probabilities"};
  app.require_subcommand(1);

  std::string events_path, table_path, joint_path, target_path;
  std::string order_spec, priority_spec, mode = "both", output = "both", map_name;
  std::string format, arities_spec, sets_spec, x_spec, y_spec, vector_spec;
  bool induced_only = false;
  double tol = kDefaultResidualTol;
  double fiber_tol = -1;
  int m_override = 0;

  auto* gb = app.add_subcommand("gb", "universal Groebner basis of the relation ideal");
  gb->add_option("--events", events_path, "event family JSON")->required();
  gb->add_flag("--induced-only", induced_only, "restrict to induced-cycle generators");
  gb->add_option("--order", order_spec, "listing order: lex|grevlex|weight:w1,w2,...");
  gb->add_option("--priority", priority_spec, "variables to front, e.g. \"2|123\"");
  gb->add_option("--format", format, "json|text (default text)");

  auto* check = app.add_subcommand("check", "axioms and variety relations of a table");
  check->add_option("--events", events_path, "event family JSON")->required();
  check->add_option("--table", table_path, "conditional table JSON")->required();
  check->add_option("--mode", mode, "axioms|variety|both (default both)");
  check->add_flag("--induced-only", induced_only, "check against induced generators only");
  check->add_option("--tol", tol, "residual tolerance in float mode");

  auto* rec = app.add_subcommand("reconstruct", "rebuild a joint from a positive table");
  rec->add_option("--events", events_path, "event family JSON")->required();
  rec->add_option("--table", table_path, "conditional table JSON")->required();

  auto* poly = app.add_subcommand("polytope", "generalized permutohedron of the family");
  poly->add_option("--events", events_path, "event family JSON")->required();
  poly->add_option("--output", output, "vertices|hrep|both (default both)");
  poly->add_option("--format", format, "json|text (default json)");

  auto* moment = app.add_subcommand("moment", "moment maps nu, W, mu");
  moment->add_option("--map", map_name, "nu|W|mu")->required();
  moment->add_option("--events", events_path, "event family JSON (nu)");
  moment->add_option("--table", table_path, "table JSON (nu, W)");
  moment->add_option("--vector", vector_spec, "comma-separated signed vector (mu)");
  moment->add_option("--m", m_override, "ground set size override (W)");
  moment->add_option("--tol", tol, "tolerance echoed in the output");

  auto* fiber = app.add_subcommand("fiber", "max-entropy inversion of the moment map");
  fiber->add_option("--events", events_path, "event family JSON")->required();
  fiber->add_option("--target", target_path, "target JSON {\"b\":[...],\"tolerance\":...}")
      ->required();
  fiber->add_option("--tol", fiber_tol, "override the target tolerance");

  auto* rv = app.add_subcommand("rv", "event family of partially observed variables");
  rv->add_option("--arities", arities_spec, "e.g. \"2,2,2\"")->required();
  rv->add_option("--sets", sets_spec, "observed subsets, e.g. \"1,2;2,3;\"")->required();

  auto* besag = app.add_subcommand("besag", "telescoping chain relation between two states");
  besag->add_option("--arities", arities_spec, "e.g. \"2,2,2\"")->required();
  besag->add_option("--x", x_spec, "target state, 0-based, e.g. \"1,1,1\"")->required();
  besag->add_option("--y", y_spec, "base state, 0-based, e.g. \"0,0,0\"")->required();
  besag->add_option("--joint", joint_path, "joint over all global states");
  besag->add_option("--table", table_path, "table over the chain family");
  besag->add_option("--format", format, "json|text (default json)");

  std::vector<const char*> argv;
  argv.push_back("cprel");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  Ctx ctx{out, err};
  try {
    if (gb->parsed()) {
      if (format.empty()) format = "text";
      return run_gb(ctx, events_path, induced_only, format, order_spec, priority_spec);
    }
    if (check->parsed()) {
      if (mode != "axioms" && mode != "variety" && mode != "both")
        throw input_error("unknown check mode: " + mode);
      return run_check(ctx, events_path, table_path, mode, induced_only, tol);
    }
    if (rec->parsed()) return run_reconstruct(ctx, events_path, table_path);
    if (poly->parsed()) {
      if (output != "vertices" && output != "hrep" && output != "both")
        throw input_error("unknown polytope output: " + output);
      if (format.empty()) format = "json";
      return run_polytope(ctx, events_path, output, format);
    }
    if (moment->parsed())
      return run_moment(ctx, map_name, events_path, table_path, vector_spec, m_override, tol);
    if (fiber->parsed()) return run_fiber(ctx, events_path, target_path, fiber_tol);
    if (rv->parsed()) return run_rv(ctx, arities_spec, sets_spec);
    if (besag->parsed()) {
      if (format.empty()) format = "json";
      return run_besag(ctx, arities_spec, x_spec, y_spec, joint_path, table_path, format);
    }
    err << "no subcommand\n";
    return 2;
  } catch (const infeasible_error& e) {
    emit(ctx, json{{"status", "infeasible"}, {"detail", e.what()}});
    return 1;
  } catch (const convergence_error& e) {
    emit(ctx, json{{"status", "nonconvergence"}, {"detail", e.what()}});
    return 1;
  } catch (const input_error& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const limit_error& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cprel::cli
