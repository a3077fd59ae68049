#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "modrep/scenario.hpp"

using namespace modrep;

namespace {

std::string render_builtin(const std::string& name, std::optional<std::uint64_t> seed = {}) {
    Scenario s = parse_scenario(builtin_scenarios().at(name), seed);
    return report_document(s.name, run_scenario(s)).dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json minimal_scenario() {
    return json::parse(R"({
  "name": "t",
  "ring": {"p": 2, "e": 1, "m": 5},
  "group": "C2",
  "modules": [{"name": "O", "op": "trivial"}],
  "checks": [{"check": "exponent", "module": "O", "expect": {"exponent": 1}}]
})");
}

}  // namespace

TEST(Report, GuardedMapsExceptionsToIndeterminate) {
    Report a = guarded("c", "x", json::object(), [](Report&) { throw precision_error("short"); });
    EXPECT_EQ(a.verdict, Verdict::Indeterminate);
    EXPECT_TRUE(a.precision);
    Report b = guarded("c", "x", json::object(), [](Report&) { throw indeterminate_error("bound"); });
    EXPECT_EQ(b.verdict, Verdict::Indeterminate);
    EXPECT_FALSE(b.precision);
    Report c = guarded("c", "x", json::object(), [](Report& r) { r.verdict = confirm_if(true); });
    EXPECT_EQ(c.verdict, Verdict::Confirmed);
    EXPECT_TRUE(c.error.empty());
}

TEST(Report, ExitCodePrecedence) {
    auto mk = [](Verdict v, bool prec = false) {
        Report r;
        r.verdict = v;
        r.precision = prec;
        return r;
    };
    Tally t;
    EXPECT_EQ(t.exit_code(), 0);
    t.add(mk(Verdict::Confirmed));
    EXPECT_EQ(t.exit_code(), 0);
    t.add(mk(Verdict::Indeterminate));
    EXPECT_EQ(t.exit_code(), 4);
    t.add(mk(Verdict::Indeterminate, true));
    EXPECT_EQ(t.exit_code(), 3);
    t.add(mk(Verdict::Refuted));
    EXPECT_EQ(t.exit_code(), 1);
}

TEST(Report, JsonFields) {
    Report r;
    r.claim = "c";
    r.anchor = "a";
    r.verdict = Verdict::Refuted;
    json j = to_json(r);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"claim", "anchor", "inputs", "computed_values", "verdict"}));
    EXPECT_EQ(j["verdict"], "REFUTED");
    r.error = "precision: x";
    EXPECT_EQ(to_json(r)["error"], "precision: x");
}

TEST(Scenario, ParseErrors) {
    json bad_ref = minimal_scenario();
    bad_ref["modules"].push_back({{"name", "Y"}, {"op", "R"}, {"of", "Z"}});
    EXPECT_THROW(parse_scenario(bad_ref), parse_error);
    json bad_op = minimal_scenario();
    bad_op["modules"].push_back({{"name", "Y"}, {"op", "frobnicate"}});
    EXPECT_THROW(parse_scenario(bad_op), parse_error);
    json bad_check = minimal_scenario();
    bad_check["checks"].push_back({{"check", "nope"}});
    EXPECT_THROW(parse_scenario(bad_check), parse_error);
    json bad_group = minimal_scenario();
    bad_group["group"] = "Z7";
    EXPECT_THROW(parse_scenario(bad_group), parse_error);
    json bad_ring = minimal_scenario();
    bad_ring["ring"]["p"] = 4;
    EXPECT_THROW(parse_scenario(bad_ring), parse_error);
}

TEST(Scenario, ExpectationDecidesVerdict) {
    json j = minimal_scenario();
    auto r = run_scenario(parse_scenario(j));
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].verdict, Verdict::Confirmed);
    j["checks"][0]["expect"]["exponent"] = 2;
    r = run_scenario(parse_scenario(j));
    EXPECT_EQ(r[0].verdict, Verdict::Refuted);
}

TEST(Scenario, GroupNames) {
    for (auto [name, order] : std::vector<std::pair<std::string, int>>{
             {"C6", 6}, {"S3", 6}, {"D8", 8}, {"Q8", 8}, {"C2xC2xC2", 8}, {"C3xC3", 9}}) {
        auto [G, n] = parse_group(json(name));
        EXPECT_EQ(G->order(), order) << name;
    }
    auto [Q, _] = parse_group(json("Q8"));
    int involutions = 0;
    for (int g = 0; g < Q->n; ++g)
        if (g != Q->id && Q->mul[g][g] == Q->id) ++involutions;
    EXPECT_EQ(involutions, 1);
}

TEST(Scenario, BuiltinsAreDeterministicAndConfirmed) {
    for (auto& [name, _] : builtin_scenarios()) {
        std::string a = render_builtin(name), b = render_builtin(name);
        EXPECT_EQ(a, b) << name;
        json doc = json::parse(a);
        EXPECT_EQ(doc["summary"]["refuted"], 0) << name;
        EXPECT_EQ(doc["summary"]["indeterminate"], 0) << name;
    }
}

TEST(Scenario, BuiltinsMatchGoldenFiles) {
    for (auto& [name, _] : builtin_scenarios()) {
        std::string golden = read_file(std::string(MODREP_GOLDEN_DIR) + "/" + name + ".json");
        ASSERT_FALSE(golden.empty()) << name;
        EXPECT_EQ(render_builtin(name), golden) << name;
    }
}

TEST(Scenario, SeedDoesNotChangeVerdicts) {
    for (std::uint64_t seed : {1u, 2u, 12345u}) {
        json doc = json::parse(render_builtin("ramified-c3-e2", seed));
        EXPECT_EQ(doc["summary"]["confirmed"], doc["reports"].size());
    }
}

TEST(Sweep, OutputIndependentOfWorkerCount) {
    SweepConfig cfg;
    cfg.groups = {"C2", "C3", "C4"};
    cfg.primes = {2, 3};
    cfg.ramification = {1, 2};
    cfg.workers = 1;
    SweepResult one = run_sweep(cfg);
    cfg.workers = 3;
    SweepResult three = run_sweep(cfg);
    EXPECT_EQ(report_document("s", one.reports, {{"configurations", one.configurations}}).dump(),
              report_document("s", three.reports, {{"configurations", three.configurations}}).dump());
    Tally t;
    for (auto& r : one.reports) t.add(r);
    EXPECT_EQ(t.refuted, 0);
    EXPECT_EQ(t.indeterminate, 0);
}

TEST(Sweep, ConfigParsing) {
    SweepConfig c = parse_sweep_config(json::parse(R"({"groups": ["C2", "S3"], "p": [3], "e": [2], "suites": ["adjunction"]})"));
    EXPECT_EQ(c.groups.size(), 2u);
    EXPECT_EQ(c.primes, (std::vector<std::int64_t>{3}));
    EXPECT_EQ(c.suites.count("adjunction"), 1u);
    EXPECT_THROW(parse_sweep_config(json::parse(R"({"groups": ["Z5"]})")), parse_error);
}

// F_2 does not split the 2-dimensional simple of C6; its stable End(RS) has dimension 2 dim End(S) = 4.
TEST(Sweep, NonSplitSimpleOfC6) {
    SweepConfig cfg;
    cfg.groups = {"C6"};
    cfg.primes = {2};
    cfg.ramification = {1};
    cfg.suites = {"simples"};
    SweepResult s = run_sweep(cfg);
    bool saw_four = false;
    for (auto& r : s.reports) {
        EXPECT_EQ(r.verdict, Verdict::Confirmed) << r.claim;
        if (r.anchor == "stable-hom-RS-RT" && r.computed.value("dim_End_S", 0) == 2) saw_four = true;
    }
    EXPECT_TRUE(saw_four);
}

TEST(Sweep, RankCapIsRecorded) {
    SweepConfig cfg;
    cfg.groups = {"C2xC2xC2"};
    cfg.primes = {2};
    cfg.ramification = {1};
    cfg.suites = {"exponent-one"};
    SweepResult s = run_sweep(cfg);
    ASSERT_EQ(s.configurations.size(), 1u);
    EXPECT_TRUE(s.configurations[0]["partial"].get<bool>());
    EXPECT_FALSE(s.configurations[0]["skipped"].empty());
    EXPECT_EQ(s.configurations[0]["m"], sweep_m(2, 1, *parse_group(json("C2xC2xC2")).first));
}
