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

#include "smgee/rate.hpp"

#include "smgee/beamforming.hpp"
#include "smgee/channel.hpp"
#include "smgee/kernels.hpp"
#include "smgee/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace smgee {

namespace {
constexpr double kInvLn2 = std::numbers::log2e;
}

double effective_gain(const Eigen::MatrixXcd &b)
{
    if (b.size() == 0)
        throw std::invalid_argument("effective_gain: empty coefficient matrix");

    const std::complex<double> mean = b.mean();
    const double a = (b.array() - mean).abs2().mean();
    if (a < 0.0)
    {
        if (a > -1e-12)
            return 0.0;
        throw std::runtime_error("effective_gain: variance negative beyond rounding");
    }
    return a;
}

double rate_bound(double a, double rho, double k)
{
    if (a < 0.0)
        throw std::invalid_argument("rate_bound: gain must be non-negative");
    if (rho < 0.0)
        throw std::invalid_argument("rate_bound: rho must be non-negative");
    if (!(k > 0.0))
        throw std::invalid_argument("rate_bound: k must be positive");
    return std::log1p(rho * a / k) * kInvLn2;
}

GainSampleSet sample_gains(const SystemConfig &cfg, unsigned n_threads)
{
    cfg.validate();

    const Constellation constellation = qam_constellation(cfg.mod_order);
    const std::size_t n = static_cast<std::size_t>(cfg.n_samples);
    std::vector<double> samples(n);

    auto worker = [&](std::size_t begin, std::size_t end) {
        std::vector<ChannelRealization> links(static_cast<std::size_t>(cfg.n_aa));
        std::vector<LinkBeamformers> beams(static_cast<std::size_t>(cfg.n_aa));
        for (std::size_t i = begin; i < end; ++i)
        {
            for (int j = 0; j < cfg.n_aa; ++j)
            {
                auto stream = make_stream(cfg.seed, i, static_cast<std::uint64_t>(j));
                links[static_cast<std::size_t>(j)] =
                    generate_channel(cfg.n_tx_per_aa, cfg.n_rx, cfg.n_paths, stream);
                beams[static_cast<std::size_t>(j)] =
                    link_beamformers(links[static_cast<std::size_t>(j)].matrix,
                                     cfg.phase_only_beamforming);
            }
            samples[i] = effective_gain(link_coefficients(links, beams, constellation, cfg.sigma2));
        }
    };

    if (n_threads <= 1 || n < 2 * n_threads)
    {
        worker(0, n);
    }
    else
    {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        const std::size_t chunk = (n + n_threads - 1) / n_threads;
        for (unsigned t = 0; t < n_threads; ++t)
        {
            const std::size_t begin = std::min<std::size_t>(t * chunk, n);
            const std::size_t end = std::min<std::size_t>(begin + chunk, n);
            if (begin < end)
                pool.emplace_back(worker, begin, end);
        }
        for (auto &th : pool)
            th.join();
    }

    return GainSampleSet{std::move(samples), cfg, config_hash(cfg)};
}

RateEstimate ergodic_rate(const GainSampleSet &gains, double rho, double k)
{
    if (rho < 0.0)
        throw std::invalid_argument("ergodic_rate: rho must be non-negative");
    if (!(k >= 1.0))
        throw std::invalid_argument("ergodic_rate: k must be >= 1");
    if (gains.samples.empty())
        throw std::invalid_argument("ergodic_rate: empty sample set");

    const std::size_t n = gains.samples.size();
    const double c = rho / k;
    const double mean_bits =
        kernels::sum_log1p_scaled(gains.samples.data(), n, c) * kInvLn2 / static_cast<double>(n);

    double sq = 0.0;
    for (const double a : gains.samples)
    {
        const double r = std::log1p(c * a) * kInvLn2;
        sq += (r - mean_bits) * (r - mean_bits);
    }
    const double std_error =
        n > 1 ? std::sqrt(sq / (static_cast<double>(n - 1) * static_cast<double>(n))) : 0.0;
    return RateEstimate{mean_bits, std_error};
}

RateEstimate mutual_information_mc(const Eigen::MatrixXcd &b, std::size_t n_mc,
                                   std::mt19937_64 &rng)
{
    if (b.size() == 0)
        throw std::invalid_argument("mutual_information_mc: empty coefficient matrix");
    if (n_mc < 1)
        throw std::invalid_argument("mutual_information_mc: need at least one sample");

    const std::size_t n_comp = static_cast<std::size_t>(b.size());
    std::vector<double> cr(n_comp), ci(n_comp);
    for (std::size_t j = 0; j < n_comp; ++j)
    {
        const std::complex<double> c = b(static_cast<Eigen::Index>(j));
        cr[j] = c.real();
        ci[j] = c.imag();
    }

    std::vector<double> yr(n_mc), yi(n_mc), nll(n_mc);
    for (std::size_t s = 0; s < n_mc; ++s)
    {
        const auto pick = std::min<std::size_t>(
            n_comp - 1, static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n_comp)));
        const std::complex<double> noise = complex_gaussian(rng);
        yr[s] = cr[pick] + noise.real();
        yi[s] = ci[pick] + noise.imag();
    }

    kernels::gaussian_mixture_nll(yr.data(), yi.data(), n_mc, cr.data(), ci.data(), n_comp,
                                  nll.data());

    // per-sample information: -log2 f_Y(y) - log2(pi*e)
    const double h_noise_bits = std::log2(std::numbers::pi * std::numbers::e);
    double sum = 0.0;
    for (const double v : nll)
        sum += v * kInvLn2 - h_noise_bits;
    const double mean = sum / static_cast<double>(n_mc);

    double sq = 0.0;
    for (const double v : nll)
    {
        const double t = v * kInvLn2 - h_noise_bits - mean;
        sq += t * t;
    }
    const double std_error =
        n_mc > 1
            ? std::sqrt(sq / (static_cast<double>(n_mc - 1) * static_cast<double>(n_mc)))
            : 0.0;

    return RateEstimate{std::max(0.0, mean), std_error};
}

void save_gain_cache(const GainSampleSet &gains, const std::string &path)
{
    std::ofstream out(path, std::ios::binary); // binary: no newline translation
    if (!out)
        throw std::invalid_argument("gain cache: cannot open '" + path + "' for writing");

    char buf[64];
    out << "# smgee-gains v1\n";
    std::snprintf(buf, sizeof buf, "# config_hash = %016llx\n",
                  static_cast<unsigned long long>(gains.config_hash));
    out << buf;
    std::snprintf(buf, sizeof buf, "# seed = %llu\n",
                  static_cast<unsigned long long>(gains.config.seed));
    out << buf;
    std::snprintf(buf, sizeof buf, "# count = %zu\n", gains.samples.size());
    out << buf;
    out << "a\n";
    for (const double a : gains.samples)
    {
        std::snprintf(buf, sizeof buf, "%.17g\n", a);
        out << buf;
    }
    if (!out)
        throw std::runtime_error("gain cache: write failed for '" + path + "'");
}

GainSampleSet load_gain_cache(const std::string &path, const SystemConfig &expected)
{
    expected.validate();
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("gain cache: cannot open '" + path + "'");

    std::string line;
    std::uint64_t hash = 0, seed = 0;
    std::size_t count = 0;
    bool have_hash = false, have_seed = false, have_count = false;

    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        if (line[0] != '#')
        {
            if (line != "a")
                throw std::invalid_argument("gain cache: malformed header in '" + path + "'");
            break;
        }
        std::istringstream ls(line.substr(1));
        std::string key, eq;
        ls >> key >> eq;
        if (eq != "=")
            continue; // banner line
        if (key == "config_hash")
        {
            ls >> std::hex >> hash;
            have_hash = true;
        }
        else if (key == "seed")
        {
            ls >> seed;
            have_seed = true;
        }
        else if (key == "count")
        {
            ls >> count;
            have_count = true;
        }
    }
    if (!have_hash || !have_seed || !have_count)
        throw std::invalid_argument("gain cache: incomplete header in '" + path + "'");

    const std::uint64_t expected_hash = config_hash(expected);
    if (hash != expected_hash)
        throw std::invalid_argument("gain cache: config hash mismatch for '" + path +
                                    "' (cache was built from a different configuration)");
    if (seed != expected.seed)
        throw std::invalid_argument("gain cache: seed mismatch for '" + path + "'");
    if (count != static_cast<std::size_t>(expected.n_samples))
        throw std::invalid_argument("gain cache: sample count mismatch for '" + path + "'");

    GainSampleSet set;
    set.config = expected;
    set.config_hash = expected_hash;
    set.samples.reserve(count);
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        std::size_t pos = 0;
        double value = 0.0;
        try
        {
            value = std::stod(line, &pos);
        }
        catch (const std::exception &)
        {
            pos = 0;
        }
        if (pos != line.size() || !(value >= 0.0))
            throw std::invalid_argument("gain cache: malformed record in '" + path + "'");
        set.samples.push_back(value);
    }
    if (set.samples.size() != count)
        throw std::invalid_argument("gain cache: truncated data in '" + path + "'");
    return set;
}

} // namespace smgee
