// SPDX-License-Identifier: Apache-2.0
//
// smgee - energy-efficiency optimization for mmWave large-scale MIMO
// downlinks with spatial modulation and hybrid beamforming
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "smgee/cli.hpp"

#include "smgee/config.hpp"
#include "smgee/experiments.hpp"
#include "smgee/kernels.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace smgee {

namespace {

std::string default_out(const std::string &filename)
{
    if (const char *dir = std::getenv("SMGEE_OUT_DIR"); dir != nullptr && *dir != '\0')
        return (std::filesystem::path(dir) / filename).string();
    return filename;
}

struct CommonArgs
{
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    unsigned threads = 1;
};

void add_common(CLI::App *cmd, CommonArgs &a)
{
    cmd->add_option("--config", a.config_path, "configuration file (flat key = value)")
        ->required();
    cmd->add_option("--out", a.out_path, "output CSV path (default: $SMGEE_OUT_DIR or cwd)");
    cmd->add_option("--seed", a.seed, "override the configured seed")
        ->check(CLI::NonNegativeNumber)
        ->each([&a](const std::string &) { a.seed_set = true; });
    cmd->add_option("--threads", a.threads, "sampling fan-out width (results are identical)")
        ->check(CLI::PositiveNumber);
}

SystemConfig load_with_overrides(const CommonArgs &a)
{
    SystemConfig cfg = load_config(a.config_path);
    if (a.seed_set)
        cfg.seed = a.seed;
    cfg.validate();
    return cfg;
}

template <typename Writer>
void write_file(const std::string &path, Writer &&writer)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::invalid_argument("cannot open output file '" + path + "'");
    writer(out);
    if (!out)
        throw std::runtime_error("write failed for '" + path + "'");
}

GainSampleSet obtain_gains(const SystemConfig &cfg, const std::string &cache_path,
                           unsigned threads)
{
    if (!cache_path.empty())
        return load_gain_cache(cache_path, cfg);
    return sample_gains(cfg, threads);
}

void print_solution(const GeeSolution &sol, std::uint64_t hash, const std::string &trace_path)
{
    std::printf("solver   = %s\n", sol.solver_id.c_str());
    std::printf("status   = %s\n",
                sol.status == SolveStatus::converged ? "converged" : "iteration_cap");
    std::printf("K*       = %d\n", sol.k_star);
    std::printf("rho*     = %.12g W\n", sol.rho_star);
    std::printf("GEE      = %.12g bits/Joule\n", sol.gee);
    std::printf("iters    = %zu\n", sol.trace.size());
    std::printf("config   = %016llx\n", static_cast<unsigned long long>(hash));
    std::printf("backend  = %s\n", kernels::backend_name(kernels::active_backend()));
    if (!trace_path.empty())
        std::printf("trace    -> %s\n", trace_path.c_str());
}

} // namespace

int cli_main(const std::vector<std::string> &args)
{
    CLI::App app{"GEE maximization for a spatially-modulated mmWave massive MIMO downlink"};
    app.require_subcommand(1);

    CommonArgs sample_args, solve_args, oracle_args, sweep_args, joint_args;

    CLI::App *cmd_sample =
        app.add_subcommand("sample", "draw the effective-gain sample set and cache it");
    add_common(cmd_sample, sample_args);

    CLI::App *cmd_solve = app.add_subcommand("solve", "optimize (K, rho) for one configuration");
    add_common(cmd_solve, solve_args);
    std::string solver_name = "sweep";
    std::string solve_gains_path;
    std::string summary_path;
    double rho_init = 0.0;
    double epsilon = 1e-9;
    cmd_solve->add_option("--solver", solver_name, "sweep | alternating")
        ->check(CLI::IsMember({"sweep", "alternating"}));
    cmd_solve->add_option("--gains", solve_gains_path, "reuse a cached gain sample set");
    cmd_solve->add_option("--rho-init", rho_init, "alternating solver start (default rho_max/2)");
    cmd_solve->add_option("--epsilon", epsilon, "alternating convergence tolerance (relative)");
    cmd_solve->add_option("--summary-out", summary_path, "also write the one-row summary CSV");

    CLI::App *cmd_oracle = app.add_subcommand("oracle", "brute-force grid search reference");
    add_common(cmd_oracle, oracle_args);
    std::size_t oracle_points = 10001;
    std::string oracle_gains_path;
    cmd_oracle->add_option("--grid-points", oracle_points, "rho grid resolution")
        ->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));
    cmd_oracle->add_option("--gains", oracle_gains_path, "reuse a cached gain sample set");

    CLI::App *cmd_sweep =
        app.add_subcommand("sweep", "power optimization at fixed K, over the whole K range");
    add_common(cmd_sweep, sweep_args);
    std::vector<int> ntx_list;
    cmd_sweep->add_option("--ntx-list", ntx_list,
                          "repeat the sweep for these per-array antenna counts");

    CLI::App *cmd_joint = app.add_subcommand("joint", "joint (K, rho) optimization comparison");
    add_common(cmd_joint, joint_args);
    bool joint_oracle = false;
    std::size_t joint_points = 100001;
    cmd_joint->add_flag("--oracle", joint_oracle, "also run the grid-search reference");
    cmd_joint->add_option("--grid-points", joint_points, "rho grid resolution for --oracle")
        ->check(CLI::Range(std::size_t{2}, std::size_t{100000000}));

    std::vector<std::string> full;
    full.reserve(args.size() + 1);
    full.emplace_back("smgee");
    full.insert(full.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    argv.reserve(full.size());
    for (const std::string &s : full)
        argv.push_back(s.c_str());

    try
    {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::CallForHelp &e)
    {
        app.exit(e);
        return 0;
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return 1;
    }

    try
    {
        if (cmd_sample->parsed())
        {
            const SystemConfig cfg = load_with_overrides(sample_args);
            const GainSampleSet gains = sample_gains(cfg, sample_args.threads);
            const std::string path = sample_args.out_path.empty()
                                         ? default_out("gains.csv")
                                         : sample_args.out_path;
            save_gain_cache(gains, path);
            std::printf("wrote %zu gain samples -> %s (config %016llx)\n", gains.samples.size(),
                        path.c_str(), static_cast<unsigned long long>(gains.config_hash));
        }
        else if (cmd_solve->parsed())
        {
            const SystemConfig cfg = load_with_overrides(solve_args);
            const GainSampleSet gains = obtain_gains(cfg, solve_gains_path, solve_args.threads);
            const GeeProblem prob = make_problem(gains);
            const GeeSolution sol =
                solver_name == "alternating"
                    ? solve_alternating(prob, rho_init > 0.0 ? rho_init : prob.rho_max / 2.0,
                                        epsilon)
                    : solve_k_sweep(prob);
            const std::string path =
                solve_args.out_path.empty() ? default_out("solve_trace.csv") : solve_args.out_path;
            write_file(path, [&](std::ostream &out) { write_trace_csv(sol, out); });
            if (!summary_path.empty())
                write_file(summary_path, [&](std::ostream &out) {
                    write_solution_summary(sol, gains.config_hash, out);
                });
            print_solution(sol, gains.config_hash, path);
        }
        else if (cmd_oracle->parsed())
        {
            const SystemConfig cfg = load_with_overrides(oracle_args);
            const GainSampleSet gains = obtain_gains(cfg, oracle_gains_path, oracle_args.threads);
            const GeeSolution sol = grid_search(make_problem(gains), oracle_points);
            const std::string path = oracle_args.out_path.empty()
                                         ? default_out("oracle_trace.csv")
                                         : oracle_args.out_path;
            write_file(path, [&](std::ostream &out) { write_trace_csv(sol, out); });
            print_solution(sol, gains.config_hash, path);
        }
        else if (cmd_sweep->parsed())
        {
            const SystemConfig cfg = load_with_overrides(sweep_args);
            ExperimentResult combined;
            combined.config_hash = config_hash(cfg);
            if (ntx_list.empty())
            {
                combined = run_fixed_k_sweep(cfg, sweep_args.threads);
            }
            else
            {
                for (const int ntx : ntx_list)
                {
                    SystemConfig variant = cfg;
                    variant.n_tx_per_aa = ntx;
                    variant.validate();
                    ExperimentResult r = run_fixed_k_sweep(variant, sweep_args.threads);
                    for (ExperimentRow &row : r.rows)
                    {
                        row.experiment_id += "_nt" + std::to_string(ntx);
                        combined.rows.push_back(std::move(row));
                    }
                }
            }
            const std::string path =
                sweep_args.out_path.empty() ? default_out("sweep.csv") : sweep_args.out_path;
            write_file(path, [&](std::ostream &out) { write_experiment_csv(combined, out); });
            std::printf("wrote %zu sweep rows -> %s\n", combined.rows.size(), path.c_str());
        }
        else if (cmd_joint->parsed())
        {
            const SystemConfig cfg = load_with_overrides(joint_args);
            const ExperimentResult r =
                run_joint(cfg, joint_oracle, joint_points, joint_args.threads);
            const std::string path =
                joint_args.out_path.empty() ? default_out("joint.csv") : joint_args.out_path;
            write_file(path, [&](std::ostream &out) { write_experiment_csv(r, out); });
            for (const ExperimentRow &row : r.rows)
                std::printf("%-18s K = %-3d rho = %-12.6g GEE = %.12g\n", row.solver_id.c_str(),
                            row.k, row.rho_watts, row.gee);
            std::printf("wrote %zu rows -> %s\n", r.rows.size(), path.c_str());
        }
        return 0;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    catch (const std::exception &e)
    {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
}

} // namespace smgee
