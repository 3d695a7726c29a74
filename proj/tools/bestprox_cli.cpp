// bestprox: hypothesis checks and best-proximity solver runs on scenario files.
//
//   bestprox check <scenario.json> [--out DIR]
//   bestprox solve <scenario.json> [--out DIR] [--max-iter N] [--tol T]
//   bestprox run <scenario.json> [--out DIR] [--max-iter N] [--tol T]
//   bestprox compare-routes <scenario.json> [--out DIR] [--max-iter N] [--tol T]
//   bestprox gen --seed N [--size K] [--dim D] [--out FILE]
//
// Exit codes: 0 success, 1 check or convergence failure, 2 input error.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "bestprox/bestprox.hpp"

namespace {

struct ScenarioArgs {
    std::string path;
    std::string out;
    std::optional<std::size_t> max_iter;
    std::optional<double> tol;
};

CLI::App* add_scenario_verb(CLI::App& app, const std::string& name, const std::string& help, ScenarioArgs& args,
                            bool solver_flags) {
    CLI::App* cmd = app.add_subcommand(name, help);
    cmd->add_option("scenario", args.path, "Scenario file (JSON)")->required();
    cmd->add_option("--out", args.out, "Directory for report.json and trace_<k>.csv");
    if (solver_flags) {
        cmd->add_option("--max-iter", args.max_iter, "Override stop.max_iter")->check(CLI::PositiveNumber);
        cmd->add_option("--tol", args.tol, "Override stop.tol_step and stop.tol_residual")
            ->check(CLI::NonNegativeNumber);
    }
    return cmd;
}

int run_verb(const ScenarioArgs& args, bestprox::RunMode mode) {
    bestprox::ScenarioFile sc = bestprox::load_scenario(args.path);
    if (args.max_iter) sc.stop.max_iter = *args.max_iter;
    if (args.tol) sc.stop.tol_step = sc.stop.tol_residual = *args.tol;
    const bestprox::RunReport report = bestprox::run_scenario(sc, mode);
    if (!args.out.empty()) bestprox::write_outputs(report, args.out);
    std::cout << bestprox::report_to_json(report).dump(2) << "\n";
    return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Best-proximity and fixed-point hypothesis checker and solver"};
    app.require_subcommand(1);

    ScenarioArgs args;
    CLI::App* check = add_scenario_verb(app, "check", "Run hypothesis checks only", args, false);
    CLI::App* solve = add_scenario_verb(app, "solve", "Run the best-proximity iteration only", args, true);
    CLI::App* run = add_scenario_verb(app, "run", "Checks, solver runs and route comparison", args, true);
    CLI::App* compare =
        add_scenario_verb(app, "compare-routes", "Compare direct and induced-map iterations", args, true);

    std::uint64_t seed = 0;
    bestprox::GeneratorParams gen_params;
    std::string gen_out;
    CLI::App* gen = app.add_subcommand("gen", "Write a random translation-structured scenario");
    gen->add_option("--seed", seed, "Random seed")->required();
    gen->add_option("--size", gen_params.size, "Number of points in A (and B), at most 1 + 12 (dim - 1)")->check(CLI::PositiveNumber);
    gen->add_option("--dim", gen_params.dim, "Ambient dimension (>= 2)")->check(CLI::Range(2, 64));
    gen->add_option("--out", gen_out, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*check) return run_verb(args, bestprox::RunMode::check);
        if (*solve) return run_verb(args, bestprox::RunMode::solve);
        if (*run) return run_verb(args, bestprox::RunMode::run);
        if (*compare) return run_verb(args, bestprox::RunMode::compare_routes);
        if (*gen) {
            const auto text = bestprox::scenario_to_json(bestprox::generate_random_scenario(seed, gen_params)).dump(2);
            if (gen_out.empty()) {
                std::cout << text << "\n";
            } else {
                bestprox::write_text(gen_out, text + "\n");
            }
            return 0;
        }
    } catch (const bestprox::InputError& err) {
        std::cerr << "input error: " << err.what() << "\n";
        return 2;
    } catch (const bestprox::DomainError& err) {
        std::cerr << "domain error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 2;
}
