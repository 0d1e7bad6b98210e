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

#include "smgee/experiments.hpp"

#include <cstdio>
#include <ostream>

namespace smgee {

std::string format_csv_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

namespace {

double sum_rate_at(const GainSampleSet &gains, int k, double rho)
{
    return static_cast<double>(k) * ergodic_rate(gains, rho, static_cast<double>(k)).value;
}

} // namespace

ExperimentResult run_fixed_k_sweep(const SystemConfig &cfg, unsigned n_threads)
{
    cfg.validate();
    const GainSampleSet gains = sample_gains(cfg, n_threads);
    const GeeProblem prob = make_problem(gains);

    // per-K optimal powers come out of the sweep solver's trace
    const GeeSolution sweep = solve_k_sweep(prob);

    ExperimentResult result;
    result.config_hash = gains.config_hash;
    for (const TraceRow &row : sweep.trace)
    {
        result.rows.push_back(ExperimentRow{"fixed_k_sweep", row.k, row.rho,
                                            row.gee, sum_rate_at(gains, row.k, row.rho),
                                            "gee_opt"});
        const double g_max = gee(prob, row.k, prob.rho_max);
        result.rows.push_back(ExperimentRow{"fixed_k_sweep", row.k, prob.rho_max, g_max,
                                            sum_rate_at(gains, row.k, prob.rho_max),
                                            "max_power"});
    }
    return result;
}

ExperimentResult run_joint(const SystemConfig &cfg, bool with_oracle,
                           std::size_t oracle_points, unsigned n_threads)
{
    cfg.validate();
    const GainSampleSet gains = sample_gains(cfg, n_threads);
    const GeeProblem prob = make_problem(gains);

    ExperimentResult result;
    result.config_hash = gains.config_hash;

    auto add = [&](const GeeSolution &sol) {
        result.rows.push_back(ExperimentRow{"joint", sol.k_star, sol.rho_star, sol.gee,
                                            sum_rate_at(gains, sol.k_star, sol.rho_star),
                                            sol.solver_id});
    };

    add(solve_k_sweep(prob));
    add(solve_alternating(prob, prob.rho_max / 2.0));

    const double g_base = gee(prob, prob.k_max, prob.rho_max);
    result.rows.push_back(ExperimentRow{"joint", prob.k_max, prob.rho_max, g_base,
                                        sum_rate_at(gains, prob.k_max, prob.rho_max),
                                        "max_rate_baseline"});

    if (with_oracle)
        add(grid_search(prob, oracle_points));

    return result;
}

void write_experiment_csv(const ExperimentResult &result, std::ostream &out)
{
    out << "experiment_id,K,rho_watts,gee_bits_per_joule,sum_rate_bits,solver_id\n";
    for (const ExperimentRow &r : result.rows)
    {
        out << r.experiment_id << ',' << r.k << ',' << format_csv_double(r.rho_watts) << ','
            << format_csv_double(r.gee) << ',' << format_csv_double(r.sum_rate) << ','
            << r.solver_id << '\n';
    }
}

void write_trace_csv(const GeeSolution &sol, std::ostream &out)
{
    out << "solver_id,iteration,K,rho_watts,gee_bits_per_joule\n";
    for (const TraceRow &r : sol.trace)
    {
        out << sol.solver_id << ',' << r.iteration << ',' << r.k << ','
            << format_csv_double(r.rho) << ',' << format_csv_double(r.gee) << '\n';
    }
}

void write_solution_summary(const GeeSolution &sol, std::uint64_t config_hash, std::ostream &out)
{
    char hash_buf[32];
    std::snprintf(hash_buf, sizeof hash_buf, "%016llx",
                  static_cast<unsigned long long>(config_hash));
    out << "solver_id,status,k_star,rho_star_watts,gee_bits_per_joule,iterations,config_hash\n"
        << sol.solver_id << ','
        << (sol.status == SolveStatus::converged ? "converged" : "iteration_cap") << ','
        << sol.k_star << ',' << format_csv_double(sol.rho_star) << ','
        << format_csv_double(sol.gee) << ',' << sol.trace.size() << ',' << hash_buf << '\n';
}

} // namespace smgee
