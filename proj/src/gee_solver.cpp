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

#include "smgee/gee_solver.hpp"

#include "smgee/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace smgee {

namespace {

constexpr double kInvLn2 = std::numbers::log2e;
constexpr double kRootRelTol = 1e-10;
constexpr int kMaxBisectIters = 200;
constexpr int kMaxExpandSteps = 1100; // enough to walk the whole double range

bool any_positive(const std::vector<double> &v)
{
    return std::any_of(v.begin(), v.end(), [](double x) { return x > 0.0; });
}

// Root of a residual that starts positive at lo and is <= 0 at hi.
template <typename F>
double bisect_down(F &&residual, double lo, double hi)
{
    for (int it = 0; it < kMaxBisectIters && (hi - lo) > kRootRelTol * hi; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

void GeeProblem::validate() const
{
    auto fail = [](const char *msg) { throw std::invalid_argument(std::string("problem: ") + msg); };
    if (gains.empty()) fail("empty gain sample set");
    if (std::any_of(gains.begin(), gains.end(), [](double a) { return !(a >= 0.0); }))
        fail("gain samples must be non-negative");
    if (!(p_c > 0.0)) fail("p_c must be positive");
    if (!(rho_max > 0.0)) fail("rho_max must be positive");
    if (k_min < 1) fail("k_min must be >= 1");
    if (k_max < k_min) fail("k_max must be >= k_min");
    if (!(bandwidth_hz > 0.0)) fail("bandwidth_hz must be positive");
}

GeeProblem make_problem(const GainSampleSet &gains)
{
    const SystemConfig &c = gains.config;
    return GeeProblem{gains.samples, c.p_c, c.rho_max_watts(), c.k_min, c.k_max, c.bandwidth_hz};
}

double gee(const GeeProblem &p, double k, double rho)
{
    if (!(k > 0.0))
        throw std::invalid_argument("gee: k must be positive");
    if (rho < 0.0)
        throw std::invalid_argument("gee: rho must be non-negative");

    const double n = static_cast<double>(p.gains.size());
    const double log_sum = kernels::sum_log1p_scaled(p.gains.data(), p.gains.size(), rho / k);
    const double mean_rate_bits = log_sum * kInvLn2 / n;
    return p.bandwidth_hz * k * mean_rate_bits / (rho + k * p.p_c);
}

double rho_stationarity_residual(const GeeProblem &p, double k, double rho)
{
    const double n = static_cast<double>(p.gains.size());
    const auto sums = kernels::rate_sums(p.gains.data(), p.gains.size(), rho / k);
    // mean[a/(k + rho*a)] = ratio_sum / (n*k)
    return (rho + k * p.p_c) * sums.ratio_sum / (n * k) - sums.log1p_sum / n;
}

double k_stationarity_residual(const GeeProblem &p, double rho, double k)
{
    const double n = static_cast<double>(p.gains.size());
    const double c = rho / k;
    const auto sums = kernels::rate_sums(p.gains.data(), p.gains.size(), c);
    const double g = k * sums.log1p_sum / n;
    const double g_prime = (sums.log1p_sum - c * sums.ratio_sum) / n;
    return (rho + k * p.p_c) * g_prime - p.p_c * g;
}

RhoBracket warm_start_bracket(const GeeProblem &p, double k_next, double rho_prev_stationary)
{
    if (rho_prev_stationary < 0.0)
        throw std::invalid_argument("warm_start_bracket: rho must be non-negative");
    if (rho_stationarity_residual(p, k_next, rho_prev_stationary) >= 0.0)
        return RhoBracket{rho_prev_stationary, 0.0, true}; // still climbing: root lies above
    return RhoBracket{0.0, rho_prev_stationary, false};    // past the peak: root lies below
}

double stationary_rho(const GeeProblem &p, double k, const RhoBracket &bracket)
{
    if (!(k > 0.0))
        throw std::invalid_argument("stationary_rho: k must be positive");
    if (!any_positive(p.gains))
        throw std::domain_error("stationary_rho: every gain sample is zero, GEE is identically 0");

    auto residual = [&](double rho) { return rho_stationarity_residual(p, k, rho); };

    double lo = bracket.lo;
    double hi = bracket.hi;
    if (bracket.expand_up)
    {
        hi = std::max({2.0 * lo, k * p.p_c, 1.0});
        int steps = 0;
        while (residual(hi) > 0.0)
        {
            lo = hi;
            hi *= 2.0;
            if (++steps > kMaxExpandSteps)
                throw std::runtime_error("stationary_rho: residual never changed sign");
        }
    }
    return bisect_down(residual, lo, hi);
}

double stationary_rho(const GeeProblem &p, double k)
{
    return stationary_rho(p, k, RhoBracket{0.0, 0.0, true});
}

double optimal_rho(const GeeProblem &p, double k)
{
    return std::min(p.rho_max, stationary_rho(p, k));
}

double stationary_k(const GeeProblem &p, double rho)
{
    if (!(rho > 0.0))
        throw std::invalid_argument("stationary_k: rho must be positive");
    if (!any_positive(p.gains))
        throw std::domain_error("stationary_k: every gain sample is zero, GEE is identically 0");

    auto residual = [&](double k) { return k_stationarity_residual(p, rho, k); };

    // residual is positive for small k and negative for large k
    double lo, hi;
    if (residual(1.0) > 0.0)
    {
        lo = 1.0;
        hi = 2.0;
        int steps = 0;
        while (residual(hi) > 0.0)
        {
            lo = hi;
            hi *= 2.0;
            if (++steps > kMaxExpandSteps)
                throw std::runtime_error("stationary_k: residual never changed sign");
        }
    }
    else
    {
        hi = 1.0;
        lo = 0.5;
        int steps = 0;
        while (residual(lo) <= 0.0)
        {
            hi = lo;
            lo *= 0.5;
            if (++steps > kMaxExpandSteps)
                throw std::runtime_error("stationary_k: residual never changed sign");
        }
    }
    return bisect_down(residual, lo, hi);
}

int optimal_integer_k(const GeeProblem &p, double rho)
{
    const double k_s = stationary_k(p, rho);
    const double k_bar =
        std::clamp(k_s, static_cast<double>(p.k_min), static_cast<double>(p.k_max));
    const int k_floor = std::clamp(static_cast<int>(std::floor(k_bar)), p.k_min, p.k_max);
    const int k_ceil = std::clamp(static_cast<int>(std::ceil(k_bar)), p.k_min, p.k_max);
    if (k_floor == k_ceil)
        return k_floor;
    // tie goes to the smaller K
    return gee(p, k_ceil, rho) > gee(p, k_floor, rho) ? k_ceil : k_floor;
}

GeeSolution solve_k_sweep(const GeeProblem &p, const KSweepOptions &opts)
{
    p.validate();

    const int n_k = p.k_max - p.k_min + 1;
    std::vector<double> rho_opt(static_cast<std::size_t>(n_k));
    std::vector<double> gee_at(static_cast<std::size_t>(n_k));

    auto eval_k = [&](int idx, double rho_s) {
        const double rho = std::min(p.rho_max, rho_s);
        rho_opt[static_cast<std::size_t>(idx)] = rho;
        gee_at[static_cast<std::size_t>(idx)] = gee(p, p.k_min + idx, rho);
    };

    if (opts.warm_start)
    {
        double prev_rho_s = -1.0;
        for (int idx = 0; idx < n_k; ++idx)
        {
            const int k = p.k_min + idx;
            double rho_s;
            if (prev_rho_s < 0.0)
            {
                rho_s = stationary_rho(p, k);
            }
            else
            {
                const RhoBracket bracket = warm_start_bracket(p, k, prev_rho_s);
                rho_s = stationary_rho(p, k, bracket);
                if (opts.check_brackets)
                {
                    // the bracket must contain the root found without it
                    const double reference = stationary_rho(p, k);
                    const bool inside = bracket.expand_up
                                            ? reference >= bracket.lo * (1.0 - 1e-9)
                                            : (reference >= bracket.lo &&
                                               reference <= bracket.hi * (1.0 + 1e-9));
                    if (!inside)
                        throw std::runtime_error("solve_k_sweep: warm-start bracket missed the root");
                    if (std::abs(reference - rho_s) > 1e-9 * std::max(reference, rho_s))
                        throw std::runtime_error("solve_k_sweep: bracketed root drifted");
                }
            }
            prev_rho_s = rho_s;
            eval_k(idx, rho_s);
        }
    }
    else if (opts.n_threads <= 1)
    {
        for (int idx = 0; idx < n_k; ++idx)
            eval_k(idx, stationary_rho(p, p.k_min + idx));
    }
    else
    {
        // independent per-K roots; the partition cannot change the results
        std::vector<std::thread> pool;
        const unsigned width = std::min<unsigned>(opts.n_threads, static_cast<unsigned>(n_k));
        const int chunk = (n_k + static_cast<int>(width) - 1) / static_cast<int>(width);
        for (unsigned t = 0; t < width; ++t)
        {
            const int begin = static_cast<int>(t) * chunk;
            const int end = std::min(begin + chunk, n_k);
            if (begin >= end)
                break;
            pool.emplace_back([&, begin, end]() {
                for (int idx = begin; idx < end; ++idx)
                    eval_k(idx, stationary_rho(p, p.k_min + idx));
            });
        }
        for (auto &th : pool)
            th.join();
    }

    GeeSolution sol;
    sol.solver_id = "k_sweep";
    sol.gee = -std::numeric_limits<double>::infinity();
    for (int idx = 0; idx < n_k; ++idx)
    {
        const int k = p.k_min + idx;
        const double g = gee_at[static_cast<std::size_t>(idx)];
        sol.trace.push_back(TraceRow{idx + 1, k, rho_opt[static_cast<std::size_t>(idx)], g});
        // ties (including root-finder-level noise) go to the smaller K
        if (g > sol.gee * (1.0 + 1e-12) || idx == 0)
        {
            sol.gee = g;
            sol.k_star = k;
            sol.rho_star = rho_opt[static_cast<std::size_t>(idx)];
        }
    }
    return sol;
}

GeeSolution solve_alternating(const GeeProblem &p, double rho_init, double epsilon,
                              int max_iterations)
{
    p.validate();
    if (!(rho_init > 0.0) || rho_init > p.rho_max)
        throw std::invalid_argument("solve_alternating: rho_init must lie in (0, rho_max]");
    if (!(epsilon > 0.0))
        throw std::invalid_argument("solve_alternating: epsilon must be positive");

    GeeSolution sol;
    sol.solver_id = "alternating";
    sol.status = SolveStatus::iteration_cap;

    double rho = rho_init;
    double prev = std::numeric_limits<double>::quiet_NaN();
    int k = p.k_min;
    for (int j = 1; j <= max_iterations; ++j)
    {
        k = optimal_integer_k(p, rho);
        rho = optimal_rho(p, k);
        const double g = gee(p, k, rho);
        sol.trace.push_back(TraceRow{j, k, rho, g});
        if (j > 1 && std::abs(g - prev) <= epsilon * std::abs(g))
        {
            sol.status = SolveStatus::converged;
            break;
        }
        prev = g;
    }

    sol.k_star = k;
    sol.rho_star = rho;
    sol.gee = sol.trace.back().gee;
    return sol;
}

GeeSolution grid_search(const GeeProblem &p, std::size_t n_rho_points)
{
    p.validate();
    if (n_rho_points < 2)
        throw std::invalid_argument("grid_search: need at least two grid points");

    GeeSolution sol;
    sol.solver_id = "grid";
    sol.gee = -std::numeric_limits<double>::infinity();

    const double step = p.rho_max / static_cast<double>(n_rho_points - 1);
    int iteration = 0;
    for (int k = p.k_min; k <= p.k_max; ++k)
    {
        double best_g = -std::numeric_limits<double>::infinity();
        double best_rho = 0.0;
        for (std::size_t i = 0; i < n_rho_points; ++i)
        {
            const double rho =
                i + 1 == n_rho_points ? p.rho_max : static_cast<double>(i) * step;
            const double g = gee(p, k, rho);
            if (g > best_g)
            {
                best_g = g;
                best_rho = rho;
            }
        }
        sol.trace.push_back(TraceRow{++iteration, k, best_rho, best_g});
        if (best_g > sol.gee)
        {
            sol.gee = best_g;
            sol.k_star = k;
            sol.rho_star = best_rho;
        }
    }
    return sol;
}

} // namespace smgee
