// Command-line harness: verify <suite>, tables --out dir, charts list.
#include <cstdio>
#include <fstream>
#include <map>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "g2lab/errors.hpp"
#include "g2lab/registry.hpp"
#include "g2lab/suites.hpp"
#include "g2lab/tables.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

std::map<std::string, double> parse_tolerances(const std::vector<std::string>& items) {
    std::map<std::string, double> out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw g2lab::BadConfig("--tol expects key=value, got " + item);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item.substr(eq + 1), &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size() - eq - 1 || !(v >= 0.0))
            throw g2lab::BadConfig("--tol value must be a non-negative number: " + item);
        out[item.substr(0, eq)] = v;
    }
    return out;
}

void print_summary(const g2lab::SuiteReport& r, std::ostream& os) {
    for (const auto& c : r.checks) {
        char line[256];
        std::snprintf(line, sizeof line, "%-4s %-40s %.3e <= %.1e\n", c.pass ? "ok" : "FAIL", c.name.c_str(),
                      c.max_residual, c.tolerance);
        os << line;
    }
    os << r.suite << ": " << (r.pass() ? "pass" : "FAIL") << " (" << r.checks.size() << " checks, " << r.trials
       << " trials)\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks for octonions, G2-structures and geodesic loops"};
    app.require_subcommand(1);

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    g2lab::RunConfig cfg;
    int trials = 0;
    std::vector<std::string> tols;
    std::string out_path;
    verify->add_option("suite", suite, "suite name (see `charts list`)")->required();
    verify->add_option("--seed", cfg.seed, "64-bit seed");
    verify->add_option("--trials", trials, "number of random trials")->check(CLI::PositiveNumber);
    verify->add_option("--tol", tols, "tolerance override key=value (repeatable)");
    verify->add_option("--out", out_path, "write the JSON report here instead of stdout");
    verify->add_option("--jobs", cfg.jobs, "worker threads for trials")->check(CLI::PositiveNumber);

    auto* tables = app.add_subcommand("tables", "write multiplication tables as JSON");
    std::string table_dir;
    tables->add_option("--out", table_dir, "output directory")->required();

    auto* charts = app.add_subcommand("charts", "catalog of charts, fields and suites");
    charts->require_subcommand(1);
    charts->add_subcommand("list", "list catalog entries");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    try {
        if (*verify) {
            if (trials > 0) cfg.trials = trials;
            cfg.tolerance_overrides = parse_tolerances(tols);
            const g2lab::SuiteReport r = g2lab::run_suite(suite, cfg);
            const std::string json = g2lab::report_json(r);
            if (out_path.empty()) {
                std::cout << json;
            } else {
                std::ofstream f(out_path, std::ios::binary);
                if (!f || !(f << json) || !f.flush()) throw g2lab::IoError("cannot write " + out_path);
                print_summary(r, std::cout);
            }
            return r.pass() ? kPass : kFail;
        }
        if (*tables) {
            for (const auto& p : g2lab::emit_tables(table_dir)) std::cout << p << "\n";
            return kPass;
        }
        std::cout << "charts:\n";
        for (const auto& e : g2lab::chart_catalog()) std::cout << "  " << e.name << "  " << e.json << "\n    " << e.description << "\n";
        std::cout << "fields:\n";
        for (const auto& e : g2lab::field_catalog()) std::cout << "  " << e.name << "  " << e.json << "\n    " << e.description << "\n";
        std::cout << "suites:\n";
        for (const auto& s : g2lab::suite_list())
            std::cout << "  " << s.name << "  ("
                      << (s.default_trials > 0 ? std::to_string(s.default_trials) + " trials" : std::string("fixed"))
                      << ")  " << s.description << "\n";
        return kPass;
    } catch (const g2lab::UnknownSuite& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const g2lab::BadConfig& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const g2lab::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const g2lab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
}
