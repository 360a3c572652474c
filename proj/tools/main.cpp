#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ddesim/compare.hpp"
#include "ddesim/dde_solver.hpp"
#include "ddesim/distributed.hpp"
#include "ddesim/ensemble.hpp"
#include "ddesim/errors.hpp"
#include "ddesim/polyexact.hpp"
#include "ddesim/version.hpp"
#include "outputs.hpp"
#include "run_config.hpp"

namespace {

using namespace ddesim;
using cli::RunConfig;

bool has_zero_atom(const DiscreteLaw& law) {
    return !law.atoms.empty() && law.atoms.front().delay == 0.0;
}

SolverConfig solver_config(const RunConfig& cfg) {
    return SolverConfig{cfg.step, {}};
}

int cmd_solve(const RunConfig& cfg, double delay) {
    WeightedDelays prob(cfg.alpha, {{delay, 1.0}});
    SolverConfig sc = solver_config(cfg);
    sc.mandatory_points = breakpoints(prob.delays(), cfg.t0(), cfg.t_end);
    const Trajectory traj = solve_numeric(prob, cfg.history, cfg.t_end, sc);
    const auto grid = cfg.grid();
    const std::vector<std::string> header{"t", "value"};
    const std::vector<std::vector<double>> cols{grid, traj.eval_on(grid)};
    cli::write_csv(cfg.output.csv, header, cols);
    return 0;
}

int cmd_ensemble(const RunConfig& cfg) {
    const auto grid = cfg.grid();
    const auto res = run_ensemble(cfg.alpha, cfg.delay, cfg.history, cfg.t_end, cfg.samples,
                                  cfg.seed, solver_config(cfg), grid);
    std::vector<double> se(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
        se[k] = std::sqrt(res.variance[k] / static_cast<double>(res.samples));
    const std::vector<std::string> header{"t", "mean", "variance", "stderr"};
    const std::vector<std::vector<double>> cols{grid, res.mean, res.variance, se};
    cli::write_csv(cfg.output.csv, header, cols);

    nlohmann::json sidecar{{"command", "ensemble"},
                           {"version", kVersion},
                           {"seed", res.seed},
                           {"samples", res.samples},
                           {"atom_counts", res.atom_counts},
                           {"config", cli::to_json(cfg)}};
    cli::write_text(cfg.output.json, sidecar.dump(2) + "\n");
    return 0;
}

MixtureResult make_mixture(const RunConfig& cfg) {
    if (const auto* law = std::get_if<DiscreteLaw>(&cfg.delay)) {
        if (has_zero_atom(*law))
            return numeric_mixture(cfg.alpha, *law, cfg.history, cfg.t_end, solver_config(cfg));
        return exact_mixture(cfg.alpha, *law, cfg.history, cfg.t_end);
    }
    return quadrature_mixture(cfg.alpha, std::get<ContinuousLaw>(cfg.delay), cfg.history,
                              cfg.t_end, cfg.quadrature_nodes, solver_config(cfg));
}

int cmd_mixture(const RunConfig& cfg) {
    const auto grid = cfg.grid();
    const auto mixture = make_mixture(cfg);
    const std::vector<std::string> header{"t", "value"};
    const std::vector<std::vector<double>> cols{grid, mixture.eval_on(grid)};
    cli::write_csv(cfg.output.csv, header, cols);
    return 0;
}

DistributedSolution make_distributed(const RunConfig& cfg, const DistributedProblem& prob,
                                     const std::string& mode) {
    bool exact = false;
    if (mode == "exact") {
        exact = true;
    } else if (mode == "auto") {
        // Exact is the default for discrete laws; quadrature lattices of many
        // incommensurate nodes are better served by the numerical path.
        exact = is_discrete(cfg.delay) && prob.effective_atoms.front().delay > 0.0;
    }
    return solve_distributed(prob, cfg.history, cfg.t_end,
                             exact ? SolveMode::exact : SolveMode::numeric, solver_config(cfg));
}

int cmd_distributed(const RunConfig& cfg, const std::string& mode) {
    const auto prob = build_distributed(cfg.alpha, cfg.delay,
                                        is_discrete(cfg.delay)
                                            ? std::optional<int>{}
                                            : std::optional<int>{cfg.quadrature_nodes});
    const auto solution = make_distributed(cfg, prob, mode);
    const auto grid = cfg.grid();
    const std::vector<std::string> header{"t", "value"};
    const std::vector<std::vector<double>> cols{grid, eval_solution_on(solution, grid)};
    cli::write_csv(cfg.output.csv, header, cols);
    return 0;
}

int cmd_compare(const RunConfig& cfg, double tol) {
    const auto grid = cfg.grid();
    const auto vR = make_mixture(cfg);
    const auto prob = build_distributed(cfg.alpha, cfg.delay,
                                        is_discrete(cfg.delay)
                                            ? std::optional<int>{}
                                            : std::optional<int>{cfg.quadrature_nodes});
    const auto vD = make_distributed(cfg, prob, "auto");
    std::optional<double> window_end;
    if (const auto* law = std::get_if<DiscreteLaw>(&cfg.delay))
        window_end = 2.0 * min_delay(*law);
    const auto report = compare(vR, vD, grid, tol, window_end);

    std::vector<double> absdiff(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
        absdiff[k] = std::abs(report.vR[k] - report.vD[k]);
    const std::vector<std::string> header{"t", "vR", "vD", "absdiff"};
    const std::vector<std::vector<double>> cols{grid, report.vR, report.vD, absdiff};
    cli::write_csv(cfg.output.csv, header, cols);
    cli::write_text(cfg.output.json,
                    cli::report_to_json(report, prob.quadrature, cfg).dump(2) + "\n");
    return 0;
}

int cmd_slln(const RunConfig& cfg, const std::vector<std::uint64_t>& sample_counts, int batches) {
    const auto grid = cfg.grid();
    const auto table = slln_diagnostics(cfg.alpha, cfg.delay, cfg.history, cfg.t_end,
                                        sample_counts, batches, cfg.seed, solver_config(cfg),
                                        grid);
    std::vector<double> ms, errs;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        ms.push_back(static_cast<double>(row.samples));
        errs.push_back(row.mean_sup_error);
        rows.push_back({{"M", row.samples}, {"mean_sup_error", row.mean_sup_error}});
    }
    const std::vector<std::string> header{"M", "mean_sup_error"};
    const std::vector<std::vector<double>> cols{ms, errs};
    cli::write_csv(cfg.output.csv, header, cols);

    nlohmann::json sidecar{{"command", "slln"}, {"version", kVersion},
                           {"seed", table.seed},  {"batches", batches},
                           {"slope", table.slope}, {"rows", rows},
                           {"config", cli::to_json(cfg)}};
    cli::write_text(cfg.output.json, sidecar.dump(2) + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scalar linear DDEs with a random delay: averaged sampled solutions (vR) "
                 "versus the distributed-delay equation (vD)."};
    app.set_version_flag("--version", ddesim::kVersion);

    std::string config_path;
    app.add_option("-c,--config", config_path, "JSON problem description (see docs/config.md)");
    bool dump_config = false;
    app.add_flag("--dump-config", dump_config, "print the normalized config and exit");
    std::optional<std::uint64_t> seed_override;
    app.add_option("--seed", seed_override, "override the config seed");
    std::optional<std::string> csv_override, json_override;
    app.add_option("--csv", csv_override, "override the CSV output path");
    app.add_option("--json", json_override, "override the JSON output path");

    auto* solve = app.add_subcommand("solve", "solve one fixed-delay problem, write (t, value)");
    double fixed_delay = 0.0;
    solve->add_option("--delay", fixed_delay, "the fixed delay")->required();

    auto* ensemble =
        app.add_subcommand("ensemble", "Monte Carlo mean over sampled delays, write "
                                       "(t, mean, variance, stderr) plus a JSON sidecar");
    std::optional<std::uint64_t> samples_override;
    ensemble->add_option("--samples", samples_override, "override the sample count");

    auto* mixture = app.add_subcommand(
        "mixture", "large-sample limit of the ensemble (exact or quadrature), write (t, value)");
    std::optional<int> nodes_override;
    mixture->add_option("--nodes", nodes_override, "override the quadrature node count");

    auto* distributed =
        app.add_subcommand("distributed", "solve the operator-averaged equation, write (t, value)");
    std::string mode = "auto";
    distributed->add_option("--mode", mode, "exact | numeric | auto")
        ->check(CLI::IsMember({"exact", "numeric", "auto"}));
    distributed->add_option("--nodes", nodes_override, "override the quadrature node count");

    auto* compare = app.add_subcommand(
        "compare", "vR versus vD: CSV (t, vR, vD, absdiff) plus a JSON report");
    std::optional<double> tol_override;
    compare->add_option("--tol", tol_override, "divergence threshold");

    auto* slln = app.add_subcommand(
        "slln", "ensemble-mean convergence diagnostics over growing sample counts");
    std::vector<std::uint64_t> sample_counts{100, 1000, 10000};
    slln->add_option("--Ms", sample_counts, "sample counts to test");
    int batches = 20;
    slln->add_option("--batches", batches, "independent batches per sample count");

    app.require_subcommand(0, 1);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
        app.exit(e);
        return 2;
    }

    try {
        if (config_path.empty()) {
            std::cerr << "error: --config is required\n";
            return 2;
        }
        RunConfig cfg = ddesim::cli::load_run_config(config_path);
        if (seed_override) cfg.seed = *seed_override;
        if (samples_override) cfg.samples = *samples_override;
        if (nodes_override) cfg.quadrature_nodes = *nodes_override;
        if (csv_override) cfg.output.csv = *csv_override;
        if (json_override) cfg.output.json = *json_override;
        ddesim::cli::validate_config(cfg);

        if (dump_config) {
            std::cout << ddesim::cli::to_json(cfg).dump(2) << "\n";
            return 0;
        }
        if (solve->parsed()) return cmd_solve(cfg, fixed_delay);
        if (ensemble->parsed()) return cmd_ensemble(cfg);
        if (mixture->parsed()) return cmd_mixture(cfg);
        if (distributed->parsed()) return cmd_distributed(cfg, mode);
        if (compare->parsed()) return cmd_compare(cfg, tol_override.value_or(cfg.compare_tol));
        if (slln->parsed()) return cmd_slln(cfg, sample_counts, batches);
        std::cerr << "error: no subcommand given (try --help)\n";
        return 2;
    } catch (const ddesim::ValidationError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const ddesim::SolverError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    }
}
