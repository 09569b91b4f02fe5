#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "subergo/error.hpp"

namespace subergo::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path scratch() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("subergo_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
    const auto p = scratch() / name;
    std::ofstream(p) << text;
    return p.string();
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    return json::parse(in);
}

int run(const std::string& args) {
    const std::string cmd = std::string(SUBERGO_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kCycle = R"({"n": 3, "theta": [1, 2, 0], "priors": [[0.3333333333333333, 0.3333333333333333, 0.3333333333333334]]})";
const char* kIdentity = R"({"n": 2, "theta": [0, 1], "priors": [[0.5, 0.5]], "labels": ["a", "b"]})";
const char* kBadWeights = R"({"n": 3, "theta": [1, 2, 0], "priors": [[0.3, 0.3, 0.3]]})";
const char* kNotPreserving = R"({"n": 2, "theta": [1, 0], "priors": [[0.3, 0.7]]})";

TEST(LoadSystemSpec, SingleAndList) {
    EXPECT_EQ(load_system_spec(json::parse(kCycle)).size(), 1u);
    const auto two = load_system_spec(json{{"systems", {json::parse(kCycle), json::parse(kIdentity)}}});
    ASSERT_EQ(two.size(), 2u);
    EXPECT_EQ(two[1].labels, (std::vector<std::string>{"a", "b"}));
}

TEST(LoadSystemSpec, RejectsMalformedInput) {
    EXPECT_THROW(load_system_spec(json::parse(kBadWeights)), InputError);
    EXPECT_THROW(load_system_spec(json::parse(R"({"n": 2, "theta": [0, 2], "priors": [[1, 0]]})")), InputError);
    EXPECT_THROW(load_system_spec(json::parse(R"({"n": 2, "theta": [0, 1]})")), InputError);
    EXPECT_THROW(load_system_spec(json::parse(R"({"n": 2, "theta": [0, 1], "priors": [[1, 0, 0]]})")), InputError);
    EXPECT_THROW(load_system_spec(json::parse(R"([1, 2])")), InputError);
}

TEST(LabAudit, CycleIsErgodic) {
    const auto r = lab_audit_report(load_system_spec(json::parse(kCycle)), {});
    EXPECT_TRUE(r["ok"].get<bool>());
    const auto& s = r["systems"][0];
    EXPECT_TRUE(s["ergodic"].get<bool>());
    EXPECT_EQ(s["fixed_space"]["dimension"], 1);
    EXPECT_EQ(s["slln"]["violations"], 0);
    EXPECT_GE(s["maximal_ergodic_min"].get<double>(), -1e-12);
}

TEST(LabAudit, IdentityIsNotErgodic) {
    const auto r = lab_audit_report(load_system_spec(json::parse(kIdentity)), {});
    EXPECT_TRUE(r["ok"].get<bool>());
    const auto& c = r["systems"][0]["characterisations"];
    EXPECT_FALSE(r["systems"][0]["ergodic"].get<bool>());
    for (const char* k : {"ergodic", "almost_invariant", "sweeping", "recurrent"}) EXPECT_FALSE(c[k].get<bool>()) << k;
}

TEST(LabAudit, ExitCodes) {
    std::ostringstream log;
    LabAuditConfig cfg;
    cfg.spec_path = write_file("cycle.json", kCycle);
    cfg.out_path = (scratch() / "cycle_out.json").string();
    EXPECT_EQ(cmd_lab_audit(cfg, log), kExitOk);
    EXPECT_TRUE(read_json(cfg.out_path)["systems"][0]["ergodic"].get<bool>());
    EXPECT_EQ(read_json(cfg.out_path)["config"]["seed"], 20240601);

    cfg.spec_path = write_file("bad.json", kBadWeights);
    EXPECT_EQ(cmd_lab_audit(cfg, log), kExitInput);
    cfg.spec_path = write_file("np.json", kNotPreserving);
    EXPECT_EQ(cmd_lab_audit(cfg, log), kExitInput);
    cfg.spec_path = (scratch() / "missing.json").string();
    EXPECT_EQ(cmd_lab_audit(cfg, log), kExitInput);
    cfg.spec_path = write_file("garbage.json", "{not json");
    EXPECT_EQ(cmd_lab_audit(cfg, log), kExitInput);
}

TEST(LabEnumerate, ExitCodes) {
    std::ostringstream log;
    for (std::size_t n : {2u, 3u}) {
        EnumerateConfig cfg;
        cfg.n = n;
        cfg.out_path = (scratch() / ("enum" + std::to_string(n) + ".json")).string();
        EXPECT_EQ(cmd_lab_enumerate(cfg, log), kExitOk) << log.str();
        const auto r = read_json(cfg.out_path);
        EXPECT_EQ(r["counterexamples"], 0);
        EXPECT_EQ(r["config"]["n"], n);
    }
    EnumerateConfig big;
    big.n = 5;
    EXPECT_EQ(cmd_lab_enumerate(big, log), kExitInput);
    EnumerateConfig cat;
    cat.catalog = "other";
    EXPECT_EQ(cmd_lab_enumerate(cat, log), kExitInput);
}

TEST(GHeat, SolveWritesCsv) {
    GHeatConfig cfg;
    cfg.subcommand = "solve";
    cfg.t = 1.0;
    std::ostringstream out, log;
    EXPECT_EQ(cmd_gheat(cfg, out, log), kExitOk);
    std::istringstream in(out.str());
    const auto u = read_csv(in);
    EXPECT_EQ(u.size(), 256u);
    EXPECT_NEAR(u[0], std::exp(-0.125), 2e-3);
}

TEST(GHeat, InvariantReportsThreeValues) {
    GHeatConfig cfg;
    cfg.subcommand = "invariant";
    std::ostringstream out, log;
    const int code = cmd_gheat(cfg, out, log);
    const auto r = json::parse(out.str());
    EXPECT_EQ(r["values"].size(), 3u);
    EXPECT_EQ(r["config"]["grid"], 256);
    EXPECT_EQ(r["config"]["tail_tol"], 1e-15);
    EXPECT_EQ(code, r["passed"].get<bool>() ? kExitOk : kExitFailure);
}

TEST(GHeat, LinearXcheckPasses) {
    GHeatConfig cfg;
    cfg.subcommand = "xcheck";
    cfg.xcase = "linear";
    cfg.params = {1.0, 1.0, 0.8};
    std::ostringstream out, log;
    EXPECT_EQ(cmd_gheat(cfg, out, log), kExitOk);
    const auto r = json::parse(out.str());
    EXPECT_LE(r["cases"]["linear"]["pde_vs_closed_form"].get<double>(), 2e-3);
}

TEST(GHeat, InvalidConfig) {
    std::ostringstream out, log;
    GHeatConfig cfg;
    cfg.subcommand = "solve";
    cfg.params.cfl = 1.5;
    EXPECT_EQ(cmd_gheat(cfg, out, log), kExitInput);
    cfg = {};
    cfg.subcommand = "xcheck";
    cfg.xcase = "bogus";
    EXPECT_EQ(cmd_gheat(cfg, out, log), kExitInput);
    cfg = {};
    cfg.subcommand = "solve";
    cfg.phi = "sin";
    EXPECT_EQ(cmd_gheat(cfg, out, log), kExitInput);
    cfg = {};
    cfg.subcommand = "melt";
    EXPECT_EQ(cmd_gheat(cfg, out, log), kExitInput);
}

TEST(McSlln, ConstantObservableIsExact) {
    McConfig cfg;
    cfg.phi = "const:2";
    cfg.horizon = 10.0;
    std::ostringstream out, log;
    EXPECT_EQ(cmd_mc_slln(cfg, out, log), kExitOk);
    const auto r = json::parse(out.str());
    EXPECT_EQ(r["max_deviation"].get<double>(), 0.0);
    EXPECT_EQ(r["entries"].size(), 32u);
    EXPECT_EQ(r["config"]["seeds"].size(), 8u);
}

TEST(McSlln, ShortHorizonReportsDeviations) {
    McConfig cfg;
    cfg.horizon = 10.0;
    cfg.policies = {"constant:1"};
    cfg.seeds = {1, 2, 3};
    std::ostringstream out, log;
    const int code = cmd_mc_slln(cfg, out, log);
    const auto r = json::parse(out.str());
    EXPECT_EQ(r["entries"].size(), 3u);
    EXPECT_GT(r["max_deviation"].get<double>(), 0.0);
    EXPECT_EQ(code, r["max_deviation"].get<double>() <= 0.05 ? kExitOk : kExitFailure);
    cfg.policies = {"nope"};
    EXPECT_EQ(cmd_mc_slln(cfg, out, log), kExitInput);
}

TEST(Executable, ExitCodeContract) {
    const auto cyc = write_file("cyc_exe.json", kCycle);
    const auto bad = write_file("bad_exe.json", kBadWeights);
    EXPECT_EQ(run("lab audit --spec " + cyc), 0);
    EXPECT_EQ(run("lab audit --spec " + bad), 2);
    EXPECT_EQ(run("lab enumerate --n 2"), 0);
    EXPECT_EQ(run("lab enumerate --n 5"), 2);
    EXPECT_EQ(run("gheat solve --phi cos --t 1 --sigma-lo2 0.25 --sigma-hi2 1 --grid 256"), 0);
    EXPECT_EQ(run("gheat xcheck --case linear --sigma-lo2 1 --sigma-hi2 1"), 0);
    EXPECT_EQ(run("gheat solve --grid 4"), 2);
    EXPECT_EQ(run("mc slln --phi const:1 --t 5 --seeds 1,2"), 0);
    EXPECT_EQ(run("--no-such-flag"), 2);
    EXPECT_EQ(run("gheat frobnicate"), 2);
}

TEST(Executable, Deterministic) {
    const auto a = (scratch() / "det_a.json").string(), b = (scratch() / "det_b.json").string();
    ASSERT_EQ(run("mc slln --t 20 --out " + a), run("mc slln --t 20 --out " + b));
    EXPECT_EQ(read_json(a), read_json(b));
}

}  // namespace
}  // namespace subergo::cli
