#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "ringbif/cli.hpp"
#include "ringbif/landau.hpp"
#include "ringbif/params.hpp"

using namespace ringbif;
using doctest::Approx;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream o, e;
    int c = run_cli(args, o, e);
    return {c, o.str(), e.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("every command is deterministic") {
    for (const auto& c : cli_commands()) {
        if (c == "verify") continue;
        auto a = run({c});
        auto b = run({c});
        INFO(c << ": " << a.err);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
        CHECK_FALSE(a.out.empty());
    }
}

TEST_CASE("json output carries config, results and provenance") {
    for (const auto& c : cli_commands()) {
        if (c == "verify") continue;
        auto r = run({c, "--format", "json"});
        INFO(c);
        REQUIRE(r.code == 0);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j["config"]["command"] == c);
        CHECK(j["config"]["format"] == "json");
        CHECK(j["config"].contains("parameters"));
        CHECK(j.contains("results"));
        CHECK(j["provenance"]["version"] == version());
        CHECK(j["provenance"]["tolerances"].is_object());
    }
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"nosuch"}).code == 2);
    auto r = run({"landau", "bogus=1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("bogus") != std::string::npos);
    CHECK(run({"landau", "mu1"}).code == 2);
    CHECK(run({"landau", "mu1=abc"}).code == 2);
    CHECK(run({"landau", "--format", "text"}).code == 2);
    CHECK(run({"landau", "--inject-fault", "a4:t1"}).code == 2);
    CHECK(run({"landau", "mu1=-1"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("version flag") {
    auto r = run({"--version"});
    CHECK(r.code == 0);
    CHECK(r.out.find(version()) != std::string::npos);
}

TEST_CASE("parameter precedence") {
    auto m = merge_parameters("landau", "mu1 = 0.4\n# comment\nmu2=550\n", {"mu2=520"});
    CHECK(m["mu1"] == "0.4");
    CHECK(m["mu2"] == "520");
    CHECK(m["on_curve"] == "false");
    CHECK_THROWS_AS(merge_parameters("landau", "speed=3\n", {}), UsageError);
    CHECK_THROWS_AS(merge_parameters("landau", "no equals sign\n", {}), UsageError);

    auto cfg = temp_file("ringbif_test_config.txt");
    {
        std::ofstream f(cfg);
        f << "mu1=0.4\nmu2=550\n";
    }
    auto via_file = run({"landau", "--config", cfg.string(), "mu2=520"});
    auto direct = run({"landau", "mu1=0.4", "mu2=520"});
    CHECK(via_file.code == 0);
    CHECK(via_file.out == direct.out);
    CHECK(run({"landau", "--config", (cfg.string() + ".missing")}).code == 2);
    std::filesystem::remove(cfg);
}

TEST_CASE("output file") {
    auto path = temp_file("ringbif_test_shape.csv");
    auto r = run({"shape", "-o", path.string(), "samples=32"});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(ss.str() == run({"shape", "samples=32"}).out);
    std::filesystem::remove(path);
    CHECK(run({"shape", "-o", "/nonexistent-dir/x.csv"}).code == 2);
}

TEST_CASE("bifurcation set rows") {
    auto r = run({"bifurcation-set"});
    REQUIRE(r.code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() > 2);
    CHECK(rows[0] == std::vector<std::string>{"n", "mu1", "mu2_critical", "branch_label"});
    int tri = 0;
    bool has3 = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const double m = std::stod(row[1]), m2 = std::stod(row[2]);
        if (row[3] == "tricritical") {
            ++tri;
            CHECK(m == Approx(landau::tricritical_mu1()).epsilon(1e-10).scale(0));
        }
        if (row[0] == "2" && std::abs(m - 1.0) < 1e-12) CHECK(m2 == Approx(32.0 * kPi * kPi).epsilon(1e-10).scale(0));
        if (row[0] == "3") {
            has3 = true;
            CHECK(row[3] == "na");
            CHECK(m2 == Approx(landau::critical_mu2(3, m)).epsilon(1e-10).scale(0));
        }
        if (row[0] == "2" && row[3] == "first") CHECK(m > landau::tricritical_mu1());
        if (row[0] == "2" && row[3] == "second") CHECK(m < landau::tricritical_mu1());
    }
    CHECK(tri == 1);
    CHECK(has3);
}

TEST_CASE("landau command matches the library") {
    auto r = run({"landau", "mu1=0.35", "mu2=500", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    auto c = landau::landau_polynomial(0.35, 500.0);
    CHECK(j["results"]["a2"].get<double>() == Approx(c.a2).epsilon(1e-11).scale(0));
    CHECK(j["results"]["a4"].get<double>() == Approx(c.a4).epsilon(1e-11).scale(0));
    CHECK(j["results"]["a6"].get<double>() == Approx(c.a6).epsilon(1e-11).scale(0));
    auto on = nlohmann::json::parse(run({"landau", "mu1=0.35", "on_curve=true", "--format", "json"}).out);
    CHECK(std::abs(on["results"]["a2"].get<double>()) < 1e-6);
}

TEST_CASE("verify passes and reports tolerances when verbose") {
    auto r = run({"verify"});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    auto v = run({"verify", "--verbose"});
    CHECK(v.code == 0);
    CHECK(v.out.find("tolerance") != std::string::npos);
    CHECK(r.out.find("tolerance") == std::string::npos);
}

TEST_CASE("verify catches an injected coefficient fault") {
    auto r = run({"verify", "--inject-fault", "a4:t3"});
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL engine/a4") != std::string::npos);
    CHECK(run({"verify", "--inject-fault", "a9:t1"}).code == 2);
    auto j = nlohmann::json::parse(run({"verify", "--inject-fault", "a4:t3", "--format", "json"}).out);
    bool flagged = false;
    for (const auto& c : j["results"]["checks"])
        if (c["status"] == "fail" && c["group"] == "engine" && c["check"].get<std::string>().rfind("a4", 0) == 0)
            flagged = true;
    CHECK(flagged);
    CHECK(j["results"]["failed"].get<int>() > 0);
}
