#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"
#include "subergo/exec.hpp"

namespace {

using namespace subergo;
using namespace subergo::cli;

void add_params(CLI::App* app, GHeatParams& p, std::size_t& grid) {
    app->add_option("--sigma-lo2", p.sigma_lo2, "lower variance bound")->capture_default_str();
    app->add_option("--sigma-hi2", p.sigma_hi2, "upper variance bound")->capture_default_str();
    app->add_option("--cfl", p.cfl, "explicit-step CFL number in (0,1)")->capture_default_str();
    app->add_option("--grid", grid, "number of grid nodes")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    apply_worker_cap();

    CLI::App app{"Finite ergodic audits and nonlinear heat flow on the circle"};
    app.require_subcommand(1);

    auto* lab = app.add_subcommand("lab", "finite sublinear ergodic systems");
    lab->require_subcommand(1);

    LabAuditConfig audit;
    auto* lab_audit = lab->add_subcommand("audit", "audit systems from a JSON spec");
    lab_audit->add_option("--spec", audit.spec_path, "system spec (JSON)")->required();
    lab_audit->add_option("--out", audit.out_path, "report path (default stdout)");
    lab_audit->add_option("--rv-count", audit.rv_count, "random variables per system")->capture_default_str();
    lab_audit->add_option("--max-k", audit.max_k, "largest k for the maximal ergodic check")->capture_default_str();
    lab_audit->add_option("--seed", audit.seed)->capture_default_str();

    EnumerateConfig en;
    auto* lab_enum = lab->add_subcommand("enumerate", "exhaustive sweep over all n^n maps");
    lab_enum->add_option("--n", en.n, "state-space size")->capture_default_str();
    lab_enum->add_option("--catalog", en.catalog, "prior catalog")->capture_default_str();
    lab_enum->add_option("--out", en.out_path, "report path (default stdout)");
    lab_enum->add_option("--rv-count", en.rv_count)->capture_default_str();
    lab_enum->add_option("--seed", en.seed)->capture_default_str();

    GHeatConfig gh;
    auto* gheat = app.add_subcommand("gheat", "nonlinear heat equation on the circle");
    gheat->add_option("command", gh.subcommand, "solve | invariant | converge | steady | xcheck")
        ->required()
        ->check(CLI::IsMember({"solve", "invariant", "converge", "steady", "xcheck"}));
    gheat->add_option("--phi", gh.phi, "initial data")->capture_default_str();
    gheat->add_option("--t", gh.t, "time (solve, xcheck) or horizon (steady)");
    add_params(gheat, gh.params, gh.grid);
    gheat->add_option("--deltas", gh.deltas, "invariant: smoothing times")->delimiter(',');
    gheat->add_option("--times", gh.times, "converge: sample times")->delimiter(',');
    gheat->add_option("--case", gh.xcase, "xcheck: linear | convex | dp | all")->capture_default_str();
    gheat->add_option("--dp-steps", gh.dp_steps)->capture_default_str();
    gheat->add_option("--tol", gh.tol, "tolerance (default per subcommand)");
    gheat->add_option("--out", gh.out_path, "output path (default stdout)");

    McConfig mc;
    std::vector<std::uint64_t> seeds;
    auto* mcapp = app.add_subcommand("mc", "Monte Carlo scenarios");
    mcapp->require_subcommand(1);
    auto* slln = mcapp->add_subcommand("slln", "path time averages under each policy");
    slln->add_option("--phi", mc.phi)->capture_default_str();
    slln->add_option("--t", mc.horizon, "path horizon")->capture_default_str();
    slln->add_option("--dt", mc.dt)->capture_default_str();
    add_params(slln, mc.params, mc.grid);
    slln->add_option("--policies", mc.policies, "constant:<s>, switching:<rate>:<seed>, threshold:<l>, greedy")
        ->delimiter(',');
    slln->add_option("--seeds", mc.seeds)->delimiter(',');
    slln->add_option("--tol", mc.tol)->capture_default_str();
    slln->add_option("--out", mc.out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    if (lab_audit->parsed()) return cmd_lab_audit(audit, std::cerr);
    if (lab_enum->parsed()) return cmd_lab_enumerate(en, std::cerr);
    if (gheat->parsed()) return cmd_gheat(gh, std::cout, std::cerr);
    if (slln->parsed()) return cmd_mc_slln(mc, std::cout, std::cerr);
    return kExitInput;
}
