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

#ifndef smgee_experiments_H
#define smgee_experiments_H

#include "smgee/gee_solver.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace smgee {

struct ExperimentRow
{
    std::string experiment_id;
    int k;
    double rho_watts;
    double gee;      // bits per Joule
    double sum_rate; // bits per channel use (k * per-user rate)
    std::string solver_id;
};

struct ExperimentResult
{
    std::vector<ExperimentRow> rows;
    std::uint64_t config_hash = 0;
};

// Power optimization at fixed K: for every feasible K, one row at the
// GEE-optimal power ("gee_opt") and one at full power rho_max
// ("max_power").
ExperimentResult run_fixed_k_sweep(const SystemConfig &cfg, unsigned n_threads = 1);

// Joint (K, rho) optimization: the exhaustive-K solver, the alternating
// solver (started at rho_max/2), and the sum-rate-maximizing baseline
// (K = k_max, rho = rho_max); optionally a grid-search reference row.
ExperimentResult run_joint(const SystemConfig &cfg, bool with_oracle = false,
                           std::size_t oracle_points = 100001, unsigned n_threads = 1);

// CSV writers. Numbers carry 15 significant digits and the column order is
// fixed, so identical inputs produce byte-identical files.
void write_experiment_csv(const ExperimentResult &result, std::ostream &out);
void write_trace_csv(const GeeSolution &sol, std::ostream &out);
void write_solution_summary(const GeeSolution &sol, std::uint64_t config_hash, std::ostream &out);

std::string format_csv_double(double v); // shortest round-trippable %.15g rendering

} // namespace smgee

#endif
