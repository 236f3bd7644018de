#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <numbers>

#include "parastab/config.hpp"
#include "parastab/io_util.hpp"
#include "parastab/runner.hpp"

using namespace parastab;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

json fig3_config(const std::string& mode = "steady") {
    return json{
        {"mode", mode},
        {"units", {{"frequency", "MHz"}, {"time", "us"}, {"phase", "rad"}}},
        {"target", {{"parity", "even"}, {"psi", 0.0}}},
        {"system",
         {{"g", 50.0}, {"ratio_policy", "optimal"}, {"T1", 100.0}, {"T2", 200.0},
          {"n_res", 3}}},
    };
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("parastab_test_" + std::to_string(std::rand()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_CASE("unit conversion happens once at the boundary") {
    const RunConfig cfg = parse_config_json(fig3_config());
    CHECK(cfg.system.g == doctest::Approx(kTwoPi * 50e6).epsilon(1e-12));
    CHECK(cfg.system.kappa == doctest::Approx(1.5 * kTwoPi * 50e6).epsilon(1e-12));
    CHECK(cfg.system.g_r == doctest::Approx(0.75 * kTwoPi * 50e6).epsilon(1e-12));
    CHECK(cfg.system.t1 == doctest::Approx(100e-6));
    CHECK(cfg.system.t2 == doctest::Approx(200e-6));
    CHECK(cfg.system.n_res == 3);
    const SystemParams p = cfg.system.to_params();
    CHECK(p.gamma1_1 == doctest::Approx(1e4));
    CHECK(p.gammaphi_1 == 0.0);
}

TEST_CASE("degree phases and GHz frequencies convert") {
    json j = fig3_config();
    j["units"]["phase"] = "deg";
    j["units"]["frequency"] = "GHz";
    j["target"]["psi"] = 90.0;
    j["system"]["g"] = 0.05;
    const RunConfig cfg = parse_config_json(j);
    CHECK(cfg.target.psi == doctest::Approx(std::numbers::pi / 2));
    CHECK(cfg.system.g == doctest::Approx(kTwoPi * 50e6).epsilon(1e-12));
}

TEST_CASE("schema violations carry field paths") {
    SUBCASE("negative rate") {
        json j = fig3_config();
        j["system"]["T1"] = -5.0;
        CHECK_THROWS_WITH_AS(parse_config_json(j),
                             doctest::Contains("system.T1"), ConfigError);
    }
    SUBCASE("unknown key is named") {
        json j = fig3_config();
        j["system"]["gamma3"] = 1.0;
        CHECK_THROWS_WITH_AS(parse_config_json(j),
                             doctest::Contains("gamma3"), ConfigError);
    }
    SUBCASE("missing units block") {
        json j = fig3_config();
        j.erase("units");
        CHECK_THROWS_WITH_AS(parse_config_json(j), doctest::Contains("units"),
                             ConfigError);
    }
    SUBCASE("T2 above the 2 T1 bound") {
        json j = fig3_config();
        j["system"]["T2"] = 300.0;
        CHECK_THROWS_WITH_AS(parse_config_json(j), doctest::Contains("system.T2"),
                             ConfigError);
    }
    SUBCASE("bad parity") {
        json j = fig3_config();
        j["target"]["parity"] = "sideways";
        CHECK_THROWS_AS(parse_config_json(j), ConfigError);
    }
    SUBCASE("mode mismatch against the CLI subcommand") {
        CHECK_THROWS_WITH_AS(parse_config_json(fig3_config("steady"), RunMode::Gap),
                             doctest::Contains("does not match"), ConfigError);
    }
    SUBCASE("explicit policy forbids omitting kappa") {
        json j = fig3_config();
        j["system"]["ratio_policy"] = "explicit";
        j["system"]["g_r"] = 37.5;
        CHECK_THROWS_WITH_AS(parse_config_json(j), doctest::Contains("system.kappa"),
                             ConfigError);
    }
}

TEST_CASE("round trip through serialize") {
    json j = fig3_config();
    j["expert_phases"] = {{"phi12_plus", 1.0}, {"phi12_minus", 0.0}, {"phi1r", 0.0},
                          {"phi2r", 0.5}};
    const RunConfig cfg = parse_config_json(j);
    const RunConfig again = parse_config_json(serialize(cfg));
    CHECK(serialize(cfg) == serialize(again));
    CHECK(again.system.g == cfg.system.g);
    CHECK(again.target.psi == cfg.target.psi);
    CHECK(again.expert_phases.has_value());
    CHECK(again.expert_phases->phi2r == doctest::Approx(0.5));
}

TEST_CASE("steady run writes results and a manifest") {
    TempDir tmp;
    RunConfig cfg = parse_config_json(fig3_config());
    cfg.out_dir = tmp.path.string();
    const RunOutcome outcome = run(cfg, 1);
    REQUIRE(outcome.exit_code == 0);
    CHECK(outcome.summary["fidelity"].get<double>() > 0.99);

    const json manifest =
        json::parse(read_file((tmp.path / "run_manifest.json").string()));
    CHECK(manifest["version"] == kVersion);
    REQUIRE(manifest["outputs"].size() >= 2);
    for (const auto& entry : manifest["outputs"]) {
        const auto path = tmp.path / entry["path"].get<std::string>();
        REQUIRE(std::filesystem::exists(path));
        CHECK(fnv1a64_hex(read_file(path.string())) == entry["checksum"]);
    }
}

TEST_CASE("sweep outputs are byte-identical across runs and thread counts") {
    json j = fig3_config("sweep");
    j["sweep"] = {{"kind", "g_scan"}, {"g_min", 10.0}, {"g_max", 30.0}, {"g_points", 4}};
    j["system"]["n_res"] = 2;

    TempDir tmp1, tmp2;
    RunConfig cfg1 = parse_config_json(j);
    cfg1.out_dir = tmp1.path.string();
    RunConfig cfg2 = parse_config_json(j);
    cfg2.out_dir = tmp2.path.string();

    REQUIRE(run(cfg1, 1).exit_code == 0);
    REQUIRE(run(cfg2, 3).exit_code == 0);
    CHECK(read_file((tmp1.path / "run_sweep.csv").string()) ==
          read_file((tmp2.path / "run_sweep.csv").string()));
}

TEST_CASE("solver failures map to a nonzero exit and an error artifact") {
    json j = fig3_config("steady");
    // no decay channels at all: the steady state manifold is degenerate
    j["system"]["g"] = 0.0;
    j["system"]["T1"] = 1e9;
    j["system"]["T2"] = 1e9;
    TempDir tmp;
    RunConfig cfg = parse_config_json(j);
    cfg.out_dir = tmp.path.string();
    const RunOutcome outcome = run(cfg, 1);
    CHECK(outcome.exit_code == 2);
    CHECK(outcome.summary.contains("error"));
    CHECK(std::filesystem::exists(tmp.path / "run_error.json"));
}

TEST_CASE("circuit mode accepts transmon ratios instead of inductances") {
    json j = {
        {"mode", "circuit"},
        {"units", {{"frequency", "GHz"}, {"time", "us"}, {"phase", "rad"}}},
        {"circuit",
         {{"omega_1", 4.0}, {"omega_2", 6.0}, {"omega_r", 10.0},
          {"Ej_over_Ec_1", 20.0}, {"Ej_over_Ec_2", 30.0}, {"flux_points", 10}}},
    };
    const RunConfig cfg = parse_config_json(j);
    // transmon relation gives tens of nH for these ratios
    CHECK(cfg.circuit.params.L_j1 > 5e-9);
    CHECK(cfg.circuit.params.L_j1 < 100e-9);

    TempDir tmp;
    RunConfig rc = cfg;
    rc.out_dir = tmp.path.string();
    const RunOutcome outcome = run(rc, 1);
    REQUIRE(outcome.exit_code == 0);
    CHECK(std::filesystem::exists(tmp.path / "run_flux_sweep.csv"));
    CHECK(outcome.summary["T1_coupler_1_s"].get<double>() > 0.0);
}

TEST_CASE("float formatting round-trips") {
    for (double x : {0.1, 1.0 / 3.0, 6.02e23, -2.5e-13, 0.0}) {
        const std::string s = format_double(x);
        CHECK(std::stod(s) == x);
    }
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("with,comma") == "\"with,comma\"");
    CHECK(csv_field("with\"quote") == "\"with\"\"quote\"");
}
