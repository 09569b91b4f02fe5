#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "subergo/error.hpp"
#include "subergo/kernel.hpp"
#include "subergo/scenario.hpp"
#include "subergo/sweep.hpp"

namespace subergo::cli {

using nlohmann::json;

namespace {

constexpr double kTailTol = 1e-15;

NamedSystem parse_system(const json& j, const std::string& fallback_name) {
    if (!j.is_object()) throw InputError("system spec must be a JSON object");
    for (const char* key : {"n", "theta", "priors"})
        if (!j.contains(key)) throw InputError(std::string("system spec is missing '") + key + "'");
    if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1)
        throw InputError("'n' must be a positive integer");
    const auto n = static_cast<std::size_t>(j["n"].get<long long>());

    const auto& jt = j["theta"];
    if (!jt.is_array() || jt.size() != n) throw InputError("'theta' must be an array of n indices");
    std::vector<std::size_t> image;
    for (const auto& v : jt) {
        if (!v.is_number_integer() || v.get<long long>() < 0) throw InputError("'theta' entries must be indices");
        image.push_back(static_cast<std::size_t>(v.get<long long>()));
    }

    const auto& jp = j["priors"];
    if (!jp.is_array() || jp.empty()) throw InputError("'priors' must be a nonempty array");
    std::vector<ProbVector> priors;
    for (const auto& row : jp) {
        if (!row.is_array() || row.size() != n) throw InputError("every prior must have n weights");
        std::vector<double> w;
        for (const auto& v : row) {
            if (!v.is_number()) throw InputError("prior weights must be numbers");
            w.push_back(v.get<double>());
        }
        priors.emplace_back(std::move(w));
    }

    std::vector<std::string> labels;
    if (j.contains("labels")) {
        const auto& jl = j["labels"];
        if (!jl.is_array() || jl.size() != n) throw InputError("'labels' must hold n strings");
        for (const auto& v : jl) labels.push_back(v.get<std::string>());
    }
    std::string name = j.value("name", fallback_name);
    return {std::move(name), FiniteSystem(PriorSet(std::move(priors)), FiniteMap(std::move(image))),
            std::move(labels)};
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("invalid JSON in '" + path + "': " + e.what());
    }
}

void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

json record_json(const SystemRecord& r) {
    json j{{"serial", r.serial},
           {"theta", r.theta},
           {"catalog", r.catalog_name},
           {"preserving", r.preserving}};
    if (!r.preserving) return j;
    j["ergodic"] = r.ergodic;
    if (r.equivalence_evaluated) {
        j["characterisations"] = {{"ergodic", r.equivalence.ergodic},
                                  {"almost_invariant", r.equivalence.almost_invariant},
                                  {"sweeping", r.equivalence.sweeping},
                                  {"recurrent", r.equivalence.recurrent},
                                  {"consistent", r.equivalence.consistent()}};
    }
    j["fixed_space"] = {{"dimension", r.fixed_space.dimension},
                        {"class_count", r.fixed_space.class_count},
                        {"simple", r.fixed_space.simple},
                        {"consistent", r.fixed_space.consistent()}};
    j["slln"] = {{"checks", r.slln_checks}, {"violations", r.slln_violations}};
    j["maximal_ergodic_min"] = r.max_ergodic_min;
    j["counterexamples"] = r.counterexamples;
    return j;
}

json params_json(const GHeatParams& p, std::size_t grid) {
    return {{"grid", grid},
            {"sigma_lo2", p.sigma_lo2},
            {"sigma_hi2", p.sigma_hi2},
            {"cfl", p.cfl},
            {"tail_tol", kTailTol}};
}

template <class Fn>
int guarded(std::ostream& log, Fn&& fn) {
    try {
        return fn();
    } catch (const InputError& e) {
        log << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const ContractError& e) {
        log << "error: " << e.what() << '\n';
        return kExitInput;
    }
}

}  // namespace

std::vector<NamedSystem> load_system_spec(const json& doc) {
    std::vector<NamedSystem> out;
    if (doc.is_object() && doc.contains("systems")) {
        const auto& arr = doc["systems"];
        if (!arr.is_array() || arr.empty()) throw InputError("'systems' must be a nonempty array");
        for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(parse_system(arr[i], "system" + std::to_string(i)));
    } else {
        out.push_back(parse_system(doc, "system0"));
    }
    return out;
}

json lab_audit_report(const std::vector<NamedSystem>& systems, const LabAuditConfig& cfg) {
    json report{{"config", {{"spec", cfg.spec_path}, {"rv_count", cfg.rv_count}, {"max_k", cfg.max_k}, {"seed", cfg.seed}}}};
    std::size_t violations = 0;
    json items = json::array();
    for (std::size_t i = 0; i < systems.size(); ++i) {
        const auto& ns = systems[i];
        if (!ns.system.preserving())
            throw ContractError("system '" + ns.name + "' does not preserve the sublinear expectation");
        SweepConfig sc;
        sc.n = ns.system.size();
        sc.rv_per_system = cfg.rv_count;
        sc.max_k = cfg.max_k;
        sc.seed = cfg.seed;
        auto rec = audit_system(ns.system, sc, i);
        rec.serial = i;
        rec.catalog_name = ns.name;
        violations += rec.counterexamples.size();
        auto j = record_json(rec);
        items.push_back(std::move(j));
    }
    report["systems"] = std::move(items);
    report["violations"] = violations;
    report["ok"] = violations == 0;
    return report;
}

int cmd_lab_audit(const LabAuditConfig& cfg, std::ostream& log) {
    return guarded(log, [&] {
        const auto systems = load_system_spec(load_json_file(cfg.spec_path));
        const auto report = lab_audit_report(systems, cfg);
        emit(cfg.out_path, report.dump(2) + "\n", std::cout);
        for (const auto& s : report["systems"])
            log << s["catalog"].get<std::string>() << ": " << (s["ergodic"].get<bool>() ? "ergodic" : "not ergodic")
                << ", " << s["counterexamples"].size() << " violations\n";
        return report["ok"].get<bool>() ? kExitOk : kExitFailure;
    });
}

int cmd_lab_enumerate(const EnumerateConfig& cfg, std::ostream& log) {
    return guarded(log, [&] {
        if (cfg.catalog != "default") throw InputError("unknown prior catalog '" + cfg.catalog + "'");
        SweepConfig sc;
        sc.n = cfg.n;
        sc.seed = cfg.seed;
        sc.rv_per_system = cfg.rv_count;
        const auto sum = exhaustive_sweep(sc);
        json report{{"config", {{"n", cfg.n}, {"catalog", cfg.catalog}, {"seed", cfg.seed}, {"rv_count", cfg.rv_count}, {"max_k", sc.max_k}}},
                    {"systems", sum.systems},
                    {"preserving", sum.preserving},
                    {"ergodic", sum.ergodic},
                    {"slln_checks", sum.slln_checks},
                    {"maximal_ergodic_min", sum.max_ergodic_min},
                    {"counterexamples", sum.counterexamples},
                    {"ok", sum.ok()}};
        json bad = json::array();
        for (const auto& r : sum.records)
            if (!r.counterexamples.empty()) bad.push_back(record_json(r));
        report["failing_systems"] = std::move(bad);
        emit(cfg.out_path, report.dump(2) + "\n", std::cout);
        log << "n=" << cfg.n << ": " << sum.systems << " systems, " << sum.preserving << " preserving, "
            << sum.ergodic << " ergodic, " << sum.counterexamples << " counterexamples\n";
        return sum.ok() ? kExitOk : kExitFailure;
    });
}

namespace {

int gheat_xcheck(const GHeatConfig& cfg, const CircleGrid& grid, json& report) {
    const bool all = cfg.xcase == "all";
    if (!all && cfg.xcase != "linear" && cfg.xcase != "convex" && cfg.xcase != "dp")
        throw InputError("unknown xcheck case '" + cfg.xcase + "'");
    bool ok = true;
    json cases = json::object();

    if (all || cfg.xcase == "linear") {
        GHeatParams lin = cfg.params;
        lin.sigma_lo2 = lin.sigma_hi2;
        const double t = cfg.t > 0 ? cfg.t : 1.0;
        const double tol = cfg.tol > 0 ? cfg.tol : 2e-3;
        const GridFn phi = make_initial(cfg.phi, grid);
        const GridFn pde = solve(phi, t, lin);
        const GridFn ker = linear_semigroup(phi, {lin.sigma_hi2, t, kTailTol});
        json c{{"t", t}, {"sigma2", lin.sigma_hi2}, {"tol", tol}, {"pde_vs_kernel", sup_distance(pde, ker)}};
        bool pass = c["pde_vs_kernel"].get<double>() <= tol;
        if (cfg.phi == "cos") {
            std::vector<double> exact(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i)
                exact[i] = std::exp(-0.5 * lin.sigma_hi2 * t) * std::cos(grid.node(i));
            const double e = sup_distance(pde, GridFn(grid, std::move(exact)));
            c["pde_vs_closed_form"] = e;
            pass = pass && e <= tol;
        }
        c["passed"] = pass;
        ok = ok && pass;
        cases["linear"] = std::move(c);
    }
    if (all || cfg.xcase == "convex") {
        const double t = cfg.t > 0 ? cfg.t : 0.25;
        const double tol = cfg.tol > 0 ? cfg.tol : 5e-3;
        const GridFn phi = make_initial("quad", grid);
        const GridFn pde = solve(phi, t, cfg.params);
        const GridFn ker = linear_semigroup(phi, {cfg.params.sigma_hi2, t, kTailTol});
        const GridFn dp = dp_upper_expectation(phi, t, cfg.params, cfg.dp_steps);
        const double a = sup_distance(pde, ker), b = sup_distance(dp, pde), c = sup_distance(dp, ker);
        const bool pass = a <= tol && b <= tol && c <= tol;
        cases["convex"] = {{"phi", "quad"}, {"t", t}, {"tol", tol}, {"pde_vs_kernel", a},
                           {"dp_vs_pde", b}, {"dp_vs_kernel", c}, {"passed", pass}};
        ok = ok && pass;
    }
    if (all || cfg.xcase == "dp") {
        const double t = cfg.t > 0 ? cfg.t : 1.0;
        const double tol = cfg.tol > 0 ? cfg.tol : 5e-3;
        const GridFn phi = make_initial(cfg.phi, grid);
        const double d = sup_distance(solve(phi, t, cfg.params), dp_upper_expectation(phi, t, cfg.params, cfg.dp_steps));
        cases["dp"] = {{"phi", cfg.phi}, {"t", t}, {"tol", tol}, {"dp_steps", cfg.dp_steps}, {"pde_vs_dp", d}, {"passed", d <= tol}};
        ok = ok && d <= tol;
    }
    report["cases"] = std::move(cases);
    report["passed"] = ok;
    return ok ? kExitOk : kExitFailure;
}

}  // namespace

int cmd_gheat(const GHeatConfig& cfg, std::ostream& out, std::ostream& log) {
    return guarded(log, [&]() -> int {
        cfg.params.validate();
        const CircleGrid grid(cfg.grid);
        json report{{"command", "gheat " + cfg.subcommand}, {"config", params_json(cfg.params, cfg.grid)}};
        report["config"]["phi"] = cfg.phi;
        int code = kExitOk;

        if (cfg.subcommand == "solve") {
            const double t = cfg.t >= 0 ? cfg.t : 1.0;
            std::ostringstream csv;
            write_csv(csv, solve(make_initial(cfg.phi, grid), t, cfg.params));
            emit(cfg.out_path, csv.str(), out);
            return kExitOk;
        } else if (cfg.subcommand == "invariant") {
            const double tol = cfg.tol > 0 ? cfg.tol : 2e-3;
            const GridFn phi = make_initial(cfg.phi, grid);
            std::vector<double> values;
            for (double d : cfg.deltas) values.push_back(invariant_expectation(phi, d, cfg.params));
            if (values.empty()) throw InputError("--deltas is empty");
            const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
            report["deltas"] = cfg.deltas;
            report["values"] = values;
            report["spread"] = *hi - *lo;
            report["mean_phi"] = mean(phi);
            report["tol"] = tol;
            report["passed"] = *hi - *lo <= tol;
            code = *hi - *lo <= tol ? kExitOk : kExitFailure;
        } else if (cfg.subcommand == "converge") {
            const double tol = cfg.tol > 0 ? cfg.tol : 1e-3;
            const GridFn phi = make_initial(cfg.phi, grid);
            const auto prof = convergence_profile(phi, cfg.times, cfg.params);
            bool monotone = true;
            for (std::size_t i = 1; i < prof.size(); ++i) monotone = monotone && prof[i] <= prof[i - 1] + 1e-6;
            const bool pass = !prof.empty() && prof.back() <= tol && monotone;
            report["times"] = cfg.times;
            report["sup_deviation"] = prof;
            report["mean_phi"] = mean(phi);
            report["non_increasing"] = monotone;
            report["tol"] = tol;
            report["passed"] = pass;
            code = pass ? kExitOk : kExitFailure;
        } else if (cfg.subcommand == "steady") {
            const double horizon = cfg.t > 0 ? cfg.t : 100.0;
            const auto r = steady_state_audit(make_initial(cfg.phi, grid), cfg.params, horizon);
            report["horizon"] = r.horizon;
            report["spread"] = r.spread;
            report["generator_norm"] = r.g_norm;
            report["level"] = r.level;
            report["spread_tol"] = kSteadySpreadTol;
            report["generator_tol"] = kSteadyGeneratorTol;
            report["passed"] = r.passed;
            code = r.passed ? kExitOk : kExitFailure;
        } else if (cfg.subcommand == "xcheck") {
            code = gheat_xcheck(cfg, grid, report);
        } else {
            throw InputError("unknown gheat subcommand '" + cfg.subcommand + "'");
        }
        emit(cfg.out_path, report.dump(2) + "\n", out);
        log << "gheat " << cfg.subcommand << ": " << (code == kExitOk ? "pass" : "FAIL") << '\n';
        return code;
    });
}

json mc_slln_report(const McConfig& cfg) {
    cfg.params.validate();
    const CircleGrid grid(cfg.grid);
    const GridFn phi = make_initial(cfg.phi, grid);
    std::vector<VolPolicy> policies;
    if (cfg.policies.empty()) {
        policies = default_policies(cfg.params);
    } else {
        for (const auto& s : cfg.policies) policies.push_back(VolPolicy::parse(s));
    }
    const auto seeds = cfg.seeds.empty() ? default_seeds() : cfg.seeds;
    const auto r = slln_experiment(phi, policies, cfg.params, cfg.horizon, cfg.dt, seeds, cfg.tol);

    json report{{"command", "mc slln"}, {"config", params_json(cfg.params, cfg.grid)}};
    report["config"]["phi"] = cfg.phi;
    report["config"]["horizon"] = cfg.horizon;
    report["config"]["dt"] = cfg.dt;
    report["config"]["seeds"] = seeds;
    report["config"]["tol"] = cfg.tol;
    std::vector<std::string> names;
    for (const auto& p : policies) names.push_back(p.name());
    report["config"]["policies"] = names;
    report["target"] = r.target;
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"policy", e.policy}, {"seed", e.seed}, {"average", e.average}, {"deviation", e.deviation}});
    report["entries"] = std::move(entries);
    report["max_deviation"] = r.max_deviation;
    report["passed"] = r.passed;
    return report;
}

int cmd_mc_slln(const McConfig& cfg, std::ostream& out, std::ostream& log) {
    return guarded(log, [&] {
        const auto report = mc_slln_report(cfg);
        emit(cfg.out_path, report.dump(2) + "\n", out);
        log << "mc slln: max deviation " << report["max_deviation"].get<double>() << " (tol " << cfg.tol << ")\n";
        return report["passed"].get<bool>() ? kExitOk : kExitFailure;
    });
}

}  // namespace subergo::cli
