#include "qax/cli/commands.hpp"
#include "qax/cli/config.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace qax::cli;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct Run {
    int code = -1;
    std::string out;
};

// Runs the installed binary through the shell; stderr is discarded.
Run run_cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + QAX_CLI + std::string(" ") + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path write_temp(const std::string& name, const std::string& text) {
    const fs::path p = fs::temp_directory_path() / ("qax_test_" + std::to_string(::getpid()) + "_" + name);
    std::ofstream(p) << text;
    return p;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

const std::string small = R"({"n": 8, "packet_width": 1.0})";

}  // namespace

TEST(Config, DefaultsAndOverrides) {
    const auto c = parse_config(json::parse(R"({"n": 16, "d": 2, "tol_herm": 1e-8, "format": "json"})"));
    EXPECT_EQ(c.n, 16);
    EXPECT_EQ(c.center1, (std::vector<int>{4, 4}));
    EXPECT_EQ(c.center2, (std::vector<int>{12, 12}));
    EXPECT_EQ(c.tol.herm, 1e-8);
    EXPECT_EQ(c.tol.trace, 1e-10);
    EXPECT_EQ(c.format, "json");
}

TEST(Config, RejectsUnknownAndInvalid) {
    EXPECT_THROW(parse_config(json::parse(R"({"colour": 1})")), ConfigError);
    EXPECT_THROW(parse_config(json::parse(R"({"n": 1})")), ConfigError);
    EXPECT_THROW(parse_config(json::parse(R"({"angles": [0, 1]})")), ConfigError);
    EXPECT_THROW(parse_config(json::parse(R"({"tol_psd": -1})")), ConfigError);
    EXPECT_THROW(parse_config(json::parse(R"({"n": "eight"})")), ConfigError);
    EXPECT_THROW(parse_config(json::parse(R"({"d": 2, "center1": [1]})")), ConfigError);
    EXPECT_THROW(parse_config(json::parse("[1, 2]")), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/qax.json"), ConfigError);
}

TEST(Config, SeedEnvironmentOverride) {
    RunConfig c = parse_config(json::parse(R"({"seed": 5})"));
    ::setenv("QM_SEED", "77", 1);
    apply_seed_override(c);
    EXPECT_EQ(c.seed, 77u);
    ::setenv("QM_SEED", "seven", 1);
    EXPECT_THROW(apply_seed_override(c), ConfigError);
    ::unsetenv("QM_SEED");
    RunConfig d = parse_config(json::parse(R"({"seed": 5})"));
    apply_seed_override(d);
    EXPECT_EQ(d.seed, 5u);
}

TEST(FormatNumber, ShortestRoundTrip) {
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(2.0), "2");
    EXPECT_EQ(std::stod(format_number(2.8284271247461903)), 2.8284271247461903);
}

TEST(Verify, SmallSystemPassesEveryAxiom) {
    const auto report = run_verify(parse_config(json::parse(small)));
    EXPECT_TRUE(report.at("passed").get<bool>()) << report.dump(2);
    EXPECT_EQ(report.at("axioms").size(), 7u);
    for (const auto& ax : report.at("axioms")) EXPECT_FALSE(ax.at("checks").empty());
}

TEST(Verify, ImpossibleToleranceFails) {
    auto cfg = parse_config(json::parse(R"({"n": 8, "packet_width": 1.0, "tol_unitary": 1e-30})"));
    std::ostringstream out;
    EXPECT_EQ(cmd_verify(cfg, true, out), exit_check_failed);
    EXPECT_FALSE(json::parse(out.str()).at("passed").get<bool>());
}

TEST(Verify, InvalidConfiguredPovmFails) {
    auto cfg = parse_config(json::parse(
        R"({"n": 8, "packet_width": 1.0, "povm": {"labels": ["a"], "effects": [{"dim": 1, "entries": [[0.5, 0]]}]}})"));
    std::ostringstream out;
    EXPECT_EQ(cmd_verify(cfg, false, out), exit_check_failed);
}

TEST(Evolve, LarmorFrequencyAndNorm) {
    auto cfg = parse_config(json::parse(R"({"n": 16, "mu": 0.5, "field": [0, 0, 2.0]})"));
    const auto series = run_evolve(cfg, 200, 0.01);
    ASSERT_EQ(series.size(), 201u);
    for (const auto& s : series) EXPECT_NEAR(s.norm, 1.0, 1e-10);
    EXPECT_NEAR(fit_precession_frequency(series), 2.0, 2e-3);
    EXPECT_THROW(run_evolve(cfg, 0, 0.1), ConfigError);
    EXPECT_THROW(run_evolve(cfg, 10, -0.1), ConfigError);
}

TEST(ChshScanCommand, CsvColumnsAndMonotoneS) {
    auto cfg = parse_config(json::parse(R"({"n": 16})"));
    std::ostringstream out;
    ASSERT_EQ(cmd_chsh_scan(cfg, out), exit_ok);
    const auto rows = csv_rows(out.str());
    ASSERT_GT(rows.size(), 2u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"window_param", "g", "S", "bell_satisfied"}));
    for (std::size_t i = 2; i < rows.size(); ++i) EXPECT_LE(std::abs(std::stod(rows[i][2])), std::abs(std::stod(rows[i - 1][2])) + 1e-15);
    EXPECT_NE(out.str().find("# threshold_row"), std::string::npos);
}

TEST(Cli, ExitCodes) {
    const auto cfg = write_temp("small.json", small);
    const auto broken = write_temp("broken.json", "{\"n\": 8,");
    const auto unknown = write_temp("unknown.json", R"({"n": 8, "bogus": true})");
    const auto strict = write_temp("strict.json", R"({"n": 8, "packet_width": 1.0, "tol_unitary": 1e-30})");
    EXPECT_EQ(run_cli("verify --config " + cfg.string()).code, 0);
    EXPECT_EQ(run_cli("verify --config " + strict.string()).code, 1);
    EXPECT_EQ(run_cli("verify --config " + broken.string()).code, 2);
    EXPECT_EQ(run_cli("chsh-scan --config " + unknown.string()).code, 2);
    EXPECT_EQ(run_cli("chsh-scan").code, 2);
    EXPECT_EQ(run_cli("frobnicate").code, 2);
    EXPECT_EQ(run_cli("evolve --config " + cfg.string() + " --steps 0 --dt 0.1").code, 2);
    EXPECT_EQ(run_cli("chsh-scan --config " + cfg.string() + " --format xml").code, 2);
    for (const auto& p : {cfg, broken, unknown, strict}) fs::remove(p);
}

TEST(Cli, DeterministicOutputAndSeedOverride) {
    const auto cfg = write_temp("det.json", small);
    const auto a = run_cli("chsh-scan --config " + cfg.string() + " --format json");
    const auto b = run_cli("chsh-scan --config " + cfg.string() + " --format json");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(json::parse(a.out).at("seed"), 20240611u);
    const auto seeded = run_cli("verify --json --config " + cfg.string(), "QM_SEED=99");
    ASSERT_EQ(seeded.code, 0);
    EXPECT_EQ(json::parse(seeded.out).at("seed"), 99u);
    const auto again = run_cli("verify --json --config " + cfg.string(), "QM_SEED=99");
    EXPECT_EQ(seeded.out, again.out);
    fs::remove(cfg);
}

TEST(Cli, OutFileAndRealistCheck) {
    const auto cfg = write_temp("out.json", R"({"n": 16})");
    const fs::path table = fs::temp_directory_path() / ("qax_test_" + std::to_string(::getpid()) + "_table.csv");
    ASSERT_EQ(run_cli("chsh-scan --config " + cfg.string() + " --out " + table.string()).code, 0);
    std::ifstream in(table);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "window_param,g,S,bell_satisfied");
    const auto realist = run_cli("realist-check --config " + cfg.string());
    EXPECT_EQ(realist.code, 0);
    EXPECT_NE(realist.out.find("no bounded model in this construction"), std::string::npos);
    fs::remove(cfg);
    fs::remove(table);
}
