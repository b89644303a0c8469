#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cprel/cli.hpp"
#include "cprel/json_io.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cprel;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("cprel_test_" + std::to_string(counter_++))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name, const std::string& contents) const {
    fs::path p = path_ / name;
    std::ofstream(p) << contents;
    return p.string();
  }
  std::string file_json(const std::string& name, const json& j) const {
    return file(name, j.dump());
  }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

const char* kTwoPairGround = R"({"m": 3, "events": [[1,2],[2,3],[1,2,3]]})";

json two_pair_table_json() {
  EventFamily f = fixtures::two_pairs_ground();
  JointDistribution j =
      JointDistribution::make(3, {Rational(1, 2), Rational(1, 4), Rational(1, 4)});
  return table_to_json(conditionals_from_joint(j, f));
}

}  // namespace

TEST_CASE("cli gb lists the basis deterministically") {
  TempDir dir;
  std::string events = dir.file("events.json", kTwoPairGround);

  Run r = run_cli({"gb", "--events", events});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "p_{2|23}*p_{3|123} - p_{3|23}*p_{2|123}\n"
        "p_{1|12}*p_{2|123} - p_{2|12}*p_{1|123}\n"
        "p_{1|12}*p_{2|23}*p_{3|123} - p_{2|12}*p_{3|23}*p_{1|123}\n");

  Run induced = run_cli({"gb", "--events", events, "--induced-only"});
  CHECK(induced.code == 0);
  CHECK(induced.out.find("p_{1|12}*p_{2|23}*p_{3|123}") == std::string::npos);

  // Byte-identical across runs.
  CHECK(run_cli({"gb", "--events", events}).out == r.out);

  // JSON form parses back into the same binomials.
  Run js = run_cli({"gb", "--events", events, "--format", "json"});
  CHECK(js.code == 0);
  json arr = json::parse(js.out);
  REQUIRE(arr.size() == 3);
  GroebnerBasis gb = universal_gb(fixtures::two_pairs_ground());
  for (std::size_t k = 0; k < arr.size(); ++k)
    CHECK(binomial_from_json(arr[k]) == gb.binomials()[k]);

  // The library-side export forms agree with the subcommand output.
  CHECK(basis_to_text(gb) == r.out);
  CHECK(basis_to_json(gb) == arr);

  // A listing order flag reorders without changing the set.
  Run lex = run_cli({"gb", "--events", events, "--order", "lex", "--priority", "2|123"});
  CHECK(lex.code == 0);
  CHECK(lex.out.find("p_{2|123}") != std::string::npos);

  Run missing = run_cli({"gb", "--events", dir.file("broken.json", "{")});
  CHECK(missing.code == 2);
  CHECK_FALSE(missing.err.empty());

  // Weight orders must cover every variable.
  Run short_weights = run_cli({"gb", "--events", events, "--order", "weight:1,2,3"});
  CHECK(short_weights.code == 2);
  Run weights = run_cli({"gb", "--events", events, "--order", "weight:7,1,5,2,9,4,3"});
  CHECK(weights.code == 0);
}

TEST_CASE("cli check exit codes") {
  TempDir dir;
  std::string events = dir.file("events.json", kTwoPairGround);
  std::string table = dir.file_json("table.json", two_pair_table_json());

  Run good = run_cli({"check", "--events", events, "--table", table});
  CHECK(good.code == 0);
  json rep = json::parse(good.out);
  CHECK(rep.at("axioms_pass") == true);
  CHECK(rep.at("variety_pass") == true);

  // Perturb one entry: caught, with a binomial certificate.
  json perturbed = two_pair_table_json();
  for (auto& e : perturbed.at("entries")) {
    if (e.at("i") == 1 && e.at("event") == json{1, 2, 3}) {
      Rational v = Rational::parse(e.at("value").get<std::string>()) + Rational(1, 100);
      e["value"] = v.str();
    }
  }
  std::string bad_table = dir.file_json("bad.json", perturbed);
  Run bad = run_cli({"check", "--events", events, "--table", bad_table});
  CHECK(bad.code == 1);
  json brep = json::parse(bad.out);
  CHECK(brep.at("violation_count").get<int>() >= 1);

  Run axioms_only =
      run_cli({"check", "--events", events, "--table", bad_table, "--mode", "axioms"});
  CHECK(axioms_only.code == 1);  // the bump also breaks normalization

  Run nonsense = run_cli({"check", "--events", events, "--table",
                          dir.file("t.json", R"({"mode":"weird","entries":[]})")});
  CHECK(nonsense.code == 2);

  Run bad_mode = run_cli({"check", "--events", events, "--table", table, "--mode", "x"});
  CHECK(bad_mode.code == 2);
}

TEST_CASE("cli reconstruct") {
  TempDir dir;
  std::string events = dir.file("events.json", kTwoPairGround);
  std::string table = dir.file_json("table.json", two_pair_table_json());

  Run r = run_cli({"reconstruct", "--events", events, "--table", table});
  CHECK(r.code == 0);
  json joint = json::parse(r.out);
  CHECK(joint.at("p") == json{"1/2", "1/4", "1/4"});

  // The emitted joint parses back bit-exactly.
  JointDistribution round = joint_from_json(joint);
  CHECK(round.p == std::vector<Rational>{Rational(1, 2), Rational(1, 4), Rational(1, 4)});

  std::string split_events = dir.file("split.json", R"({"m":4,"events":[[1,2],[3,4]]})");
  json split_table{{"mode", "exact"},
                   {"entries",
                    {{{"i", 1}, {"event", {1, 2}}, {"value", "1/2"}},
                     {{"i", 2}, {"event", {1, 2}}, {"value", "1/2"}},
                     {{"i", 3}, {"event", {3, 4}}, {"value", "1/3"}},
                     {{"i", 4}, {"event", {3, 4}}, {"value", "2/3"}}}}};
  Run split = run_cli({"reconstruct", "--events", split_events, "--table",
                       dir.file_json("split_table.json", split_table)});
  CHECK(split.code == 0);
  json sj = json::parse(split.out);
  CHECK(sj.at("status") == "underdetermined");
  CHECK(sj.at("dof") == 1);

  // An off-variety positive table exits 1 with a certificate.
  json perturbed = two_pair_table_json();
  for (auto& e : perturbed.at("entries")) {
    if (e.at("i") == 2 && e.at("event") == json{2, 3}) e["value"] = "2/5";
    if (e.at("i") == 3 && e.at("event") == json{2, 3}) e["value"] = "3/5";
  }
  Run bad = run_cli({"reconstruct", "--events", events, "--table",
                     dir.file_json("off.json", perturbed)});
  CHECK(bad.code == 1);
  CHECK(json::parse(bad.out).at("status") == "incompatible");
}

TEST_CASE("cli polytope") {
  TempDir dir;
  std::string pairs = dir.file("pairs3.json", R"({"m":3,"events":[[1,2],[1,3],[2,3]]})");
  Run r = run_cli({"polytope", "--events", pairs, "--output", "vertices"});
  CHECK(r.code == 0);
  json p = json::parse(r.out);
  std::set<std::vector<long>> got;
  for (const auto& v : p.at("vertices")) got.insert(v.get<std::vector<long>>());
  std::set<std::vector<long>> want{{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                   {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  CHECK(got == want);

  Run h = run_cli({"polytope", "--events", pairs, "--output", "hrep"});
  json hj = json::parse(h.out);
  CHECK(hj.at("inequalities").size() == 7);
  CHECK(hj.at("equality_sum") == 3);

  Run both = run_cli({"polytope", "--events", pairs});
  json bj = json::parse(both.out);
  CHECK(bj.contains("vertices"));
  CHECK(bj.contains("inequalities"));

  CHECK(run_cli({"polytope", "--events", pairs, "--output", "faces"}).code == 2);
}

TEST_CASE("cli moment maps") {
  TempDir dir;
  std::string events = dir.file("e.json", R"({"m":3,"events":[[1,2],[1,2,3]]})");
  json uniform{{"mode", "exact"},
               {"entries",
                {{{"i", 1}, {"event", {1, 2}}, {"value", "1/2"}},
                 {{"i", 2}, {"event", {1, 2}}, {"value", "1/2"}},
                 {{"i", 1}, {"event", {1, 2, 3}}, {"value", "1/3"}},
                 {{"i", 2}, {"event", {1, 2, 3}}, {"value", "1/3"}},
                 {{"i", 3}, {"event", {1, 2, 3}}, {"value", "1/3"}}}}};
  std::string table = dir.file_json("t.json", uniform);

  Run nu = run_cli({"moment", "--map", "nu", "--events", events, "--table", table});
  CHECK(nu.code == 0);
  json nj = json::parse(nu.out);
  CHECK(nj.at("value")[0].get<double>() == doctest::Approx(5.0 / 6));
  CHECK(nj.at("value")[3].get<double>() == 1.0);

  // mu normalizes a signed vector.
  Run mu = run_cli({"moment", "--map", "mu", "--vector", "-1,1,0"});
  CHECK(mu.code == 0);
  CHECK(json::parse(mu.out).at("value") == json{0.5, 0.5, 0.0});

  Run missing = run_cli({"moment", "--map", "nu", "--events", events});
  CHECK(missing.code == 2);
  CHECK(run_cli({"moment", "--map", "psi", "--vector", "1"}).code == 2);
}

TEST_CASE("cli fiber round-trips its table") {
  TempDir dir;
  std::string events = dir.file("e.json", R"({"m":3,"events":[[1,2],[1,2,3]]})");
  std::string target = dir.file("b.json", R"({"b":[1.2,0.5,0.3],"tolerance":1e-10})");

  Run r = run_cli({"fiber", "--events", events, "--target", target});
  CHECK(r.code == 0);
  json out = json::parse(r.out);
  CHECK(out.at("residual_inf").get<double>() <= 1e-10);

  // The embedded table is a valid table document.
  CPTable t = table_from_json(out.at("table"));
  CHECK(t.dbl(VarId{3, {1, 2, 3}}) == doctest::Approx(0.3).epsilon(1e-9));

  // Identical bytes on a second run.
  CHECK(run_cli({"fiber", "--events", events, "--target", target}).out == r.out);

  std::string infeasible = dir.file("bad.json", R"({"b":[9.0,0.5,0.3]})");
  Run inf = run_cli({"fiber", "--events", events, "--target", infeasible});
  CHECK(inf.code == 1);
  CHECK(json::parse(inf.out).at("status") == "infeasible");
}

TEST_CASE("cli rv emits a family the reader accepts") {
  TempDir dir;
  Run r = run_cli({"rv", "--arities", "2,2", "--sets", "1;2;"});
  CHECK(r.code == 0);
  json fam = json::parse(r.out);
  CHECK(fam.at("m") == 4);
  CHECK(fam.at("events").size() == 5);

  // Round-trip: feed the emitted family straight into gb.
  std::string events = dir.file_json("rv.json", fam);
  Run gb = run_cli({"gb", "--events", events});
  CHECK(gb.code == 0);

  CHECK(run_cli({"rv", "--arities", "2,1", "--sets", "1"}).code == 2);
}

TEST_CASE("cli besag") {
  TempDir dir;
  Run r = run_cli({"besag", "--arities", "2,2,2", "--x", "1,1,1", "--y", "0,0,0"});
  CHECK(r.code == 0);
  json out = json::parse(r.out);
  CHECK(out.at("text") ==
        "p_1*p_{2|12}*p_{3|23}*p_{4|34} - p_4*p_{1|12}*p_{2|23}*p_{3|34}");
  CHECK(out.at("configs") == json{"000", "100", "110", "111"});

  // Exact zero residual on an honest joint.
  json joint{{"m", 8},
             {"p", {"1/16", "1/16", "1/8", "1/16", "1/4", "1/16", "1/8", "1/4"}}};
  Run ev = run_cli({"besag", "--arities", "2,2,2", "--x", "1,1,1", "--y", "0,0,0",
                    "--joint", dir.file_json("joint.json", joint)});
  CHECK(ev.code == 0);
  CHECK(json::parse(ev.out).at("residual") == "0");

  // A table straight over the chain family with a broken entry.
  json chain_table{{"mode", "exact"},
                   {"entries",
                    {{{"i", 1}, {"event", {1, 2}}, {"value", "1/2"}},
                     {{"i", 2}, {"event", {1, 2}}, {"value", "1/2"}},
                     {{"i", 2}, {"event", {2, 3}}, {"value", "1/2"}},
                     {{"i", 3}, {"event", {2, 3}}, {"value", "1/2"}},
                     {{"i", 3}, {"event", {3, 4}}, {"value", "1/2"}},
                     {{"i", 4}, {"event", {3, 4}}, {"value", "1/2"}},
                     {{"i", 1}, {"event", {1, 2, 3, 4}}, {"value", "1/2"}},
                     {{"i", 2}, {"event", {1, 2, 3, 4}}, {"value", "1/6"}},
                     {{"i", 3}, {"event", {1, 2, 3, 4}}, {"value", "1/6"}},
                     {{"i", 4}, {"event", {1, 2, 3, 4}}, {"value", "1/6"}}}}};
  Run bad = run_cli({"besag", "--arities", "2,2,2", "--x", "1,1,1", "--y", "0,0,0",
                     "--table", dir.file_json("chain.json", chain_table)});
  CHECK(bad.code == 1);

  CHECK(run_cli({"besag", "--arities", "2,2,2", "--x", "1,1,0", "--y", "0,0,0"}).code == 2);
  CHECK(run_cli({"besag", "--arities", "2", "--x", "1", "--y", "0"}).code == 2);
}

TEST_CASE("table json preserves version flags") {
  EventFamily f = EventFamily::make(3, {{2, 3}});
  JointDistribution point = JointDistribution::make(3, {Rational(1), Rational(0), Rational(0)});
  CPTable t = conditionals_from_joint(point, f);
  REQUIRE(t.version_chosen({2, 3}));
  CPTable round = table_from_json(table_to_json(t));
  CHECK(round.version_chosen({2, 3}));
  CHECK(round.rat(VarId{2, {2, 3}}) == Rational(1, 2));
}

TEST_CASE("cli help and argument failures") {
  Run help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("gb") != std::string::npos);

  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"gb"}).code == 2);  // missing --events
}
