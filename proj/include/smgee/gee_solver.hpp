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

#ifndef smgee_gee_solver_H
#define smgee_gee_solver_H

#include "smgee/rate.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace smgee {

// Global energy efficiency: bandwidth * K * E[rate] / (rho + K * p_c),
// maximized over the transmit power rho in [0, rho_max] and the integer
// user count K in [k_min, k_max]. The rate expectation runs over a fixed
// gain sample set, which makes the objective a cheap deterministic function.
struct GeeProblem
{
    std::vector<double> gains; // effective-gain samples, all >= 0
    double p_c = 1.0;          // Watts per active user
    double rho_max = 10.0;     // Watts
    int k_min = 1;
    int k_max = 32;
    double bandwidth_hz = 1.0;

    void validate() const; // throws std::invalid_argument
};

GeeProblem make_problem(const GainSampleSet &gains);

struct TraceRow
{
    int iteration;
    int k;
    double rho;
    double gee;
};

enum class SolveStatus { converged, iteration_cap };

struct GeeSolution
{
    int k_star = 0;
    double rho_star = 0.0;
    double gee = 0.0; // bits per Joule
    std::vector<TraceRow> trace;
    std::string solver_id;
    SolveStatus status = SolveStatus::converged;
};

// Objective value; k may be fractional (relaxed user count). k <= 0 or
// rho < 0 throw.
double gee(const GeeProblem &p, double k, double rho);

// Sign-exact residuals of dGEE/drho and dGEE/dK (positive factors dropped):
//   rho residual: (rho + k*p_c) * mean[a/(k + rho*a)] - mean[ln(1 + rho*a/k)]
//   k residual:   (rho + k*p_c) * g'(k) - p_c * g(k),
//                 g(k) = k * mean[ln(1 + rho*a/k)]
double rho_stationarity_residual(const GeeProblem &p, double k, double rho);
double k_stationarity_residual(const GeeProblem &p, double rho, double k);

// Search interval for the stationary rho at k_next, derived from the sign of
// the rho residual at the previous stationary point. expand_up means the
// upper end is open and gets extended geometrically until the sign flips.
struct RhoBracket
{
    double lo = 0.0;
    double hi = 0.0;
    bool expand_up = true;
};

RhoBracket warm_start_bracket(const GeeProblem &p, double k_next, double rho_prev_stationary);

// Unique positive root of the rho residual (bracket expansion + bisection to
// 1e-10 relative). Throws std::domain_error when every gain sample is zero.
double stationary_rho(const GeeProblem &p, double k);
double stationary_rho(const GeeProblem &p, double k, const RhoBracket &bracket);

// min(rho_max, stationary rho)
double optimal_rho(const GeeProblem &p, double k);

// Unique positive root of the k residual for fixed rho > 0 (unclamped).
double stationary_k(const GeeProblem &p, double rho);

// Clamps the relaxed stationary K to [k_min, k_max] and returns whichever of
// floor/ceil scores the higher GEE; ties go to the smaller K.
int optimal_integer_k(const GeeProblem &p, double rho);

struct KSweepOptions
{
    bool warm_start = true;     // reuse the previous K's stationary rho as a bracket
    bool check_brackets = false; // re-derive each root unbracketed and verify containment
    unsigned n_threads = 1;      // only honored when warm_start is off
};

// Optimal rho for every feasible K, best pair wins (ties to the smaller K).
// Globally optimal up to the root-finder tolerance. Trace: one row per K.
GeeSolution solve_k_sweep(const GeeProblem &p, const KSweepOptions &opts = {});

// Coordinate ascent: optimal integer K for the current rho, then optimal rho
// for that K, until the GEE change falls below epsilon (relative) or the
// iteration cap is hit. Trace: one row per iteration, non-decreasing in GEE.
GeeSolution solve_alternating(const GeeProblem &p, double rho_init,
                              double epsilon = 1e-9, int max_iterations = 100);

// Brute-force reference: every feasible integer K crossed with a uniform
// n_rho_points grid on [0, rho_max]. No calculus, no reuse across K. Trace:
// per-K best grid point.
GeeSolution grid_search(const GeeProblem &p, std::size_t n_rho_points);

} // namespace smgee

#endif
