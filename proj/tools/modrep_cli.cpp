// modrep: run scenarios, built-in reproductions and property sweeps.
//
// Exit codes: 0 all CONFIRMED, 1 some REFUTED, 2 parse error, 3 precision
// error, 4 INDETERMINATE.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "modrep/modrep.hpp"

using namespace modrep;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
}

int emit(const std::string& title, const std::vector<Report>& reports, const json& extra, const std::string& format,
         const std::string& out_path) {
    std::string text = format == "json" ? report_document(title, reports, extra).dump(2) + "\n" : render_text(title, reports);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << text;
    }
    Tally t;
    for (auto& r : reports) t.add(r);
    return t.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stable module category computations over truncated discrete valuation rings"};
    std::string scenario_path, builtin, sweep, out_path, format = "text";
    std::optional<std::uint64_t> seed;
    int bump = 0;
    bool list = false;
    app.add_option("--scenario", scenario_path, "scenario file (JSON)");
    app.add_option("--builtin", builtin, "built-in scenario name");
    app.add_option("--sweep", sweep, "sweep config file, or 'default'");
    app.add_option("--seed", seed, "seed for randomized searches");
    app.add_option("--precision-bump", bump, "extra p-digits of working precision")->check(CLI::NonNegativeNumber);
    app.add_option("--out", out_path, "write the report here instead of stdout");
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--list-builtins", list, "list built-in scenario names");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (list) {
        for (auto& [name, _] : builtin_scenarios()) std::cout << name << "\n";
        return 0;
    }
    if ((!scenario_path.empty()) + (!builtin.empty()) + (!sweep.empty()) != 1) {
        std::cerr << "exactly one of --scenario, --builtin, --sweep is required\n";
        return 2;
    }
    try {
        if (!sweep.empty()) {
            SweepConfig cfg = sweep == "default" ? SweepConfig{} : parse_sweep_config(read_json_file(sweep));
            if (seed) cfg.seed = *seed;
            cfg.precision_bump += bump;
            auto t0 = std::chrono::steady_clock::now();
            SweepResult r = run_sweep(cfg);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            std::cerr << "sweep: " << r.reports.size() << " reports in " << secs << " s\n";
            return emit("sweep", r.reports, json{{"configurations", r.configurations}}, format, out_path);
        }
        json doc;
        if (!builtin.empty()) {
            auto it = builtin_scenarios().find(builtin);
            if (it == builtin_scenarios().end()) throw parse_error("unknown built-in scenario '" + builtin + "'");
            doc = it->second;
        } else {
            doc = read_json_file(scenario_path);
        }
        Scenario s = parse_scenario(doc, seed, bump);
        std::vector<Report> reports = run_scenario(s);
        return emit(s.name, reports, json::object(), format, out_path);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const precision_error& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return 3;
    } catch (const indeterminate_error& e) {
        std::cerr << "indeterminate: " << e.what() << "\n";
        return 4;
    }
}
