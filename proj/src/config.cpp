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

#include "smgee/config.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string_view>

namespace smgee {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

int parse_int(const std::string &key, const std::string &v)
{
    try
    {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument("");
        return static_cast<int>(x);
    }
    catch (const std::exception &)
    {
        throw std::invalid_argument("config: invalid integer for '" + key + "': " + v);
    }
}

double parse_double(const std::string &key, const std::string &v)
{
    try
    {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument("");
        return x;
    }
    catch (const std::exception &)
    {
        throw std::invalid_argument("config: invalid number for '" + key + "': " + v);
    }
}

std::uint64_t parse_u64(const std::string &key, const std::string &v)
{
    try
    {
        std::size_t pos = 0;
        const unsigned long long x = std::stoull(v, &pos, 0);
        if (pos != v.size())
            throw std::invalid_argument("");
        return static_cast<std::uint64_t>(x);
    }
    catch (const std::exception &)
    {
        throw std::invalid_argument("config: invalid unsigned integer for '" + key + "': " + v);
    }
}

bool parse_bool(const std::string &key, const std::string &v)
{
    if (v == "true" || v == "1")
        return true;
    if (v == "false" || v == "0")
        return false;
    throw std::invalid_argument("config: invalid boolean for '" + key + "': " + v);
}

std::uint64_t fnv1a64(std::string_view s)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (const char c : s)
    {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace

void SystemConfig::validate() const
{
    auto fail = [](const std::string &msg) { throw std::invalid_argument("config: " + msg); };

    if (n_aa < 1) fail("n_aa must be >= 1");
    if (n_tx_per_aa < 1) fail("n_tx_per_aa must be >= 1");
    if (n_rx < 1) fail("n_rx must be >= 1");
    if (n_paths < 1) fail("n_paths must be >= 1");
    if (mod_order != 2 && mod_order != 4 && mod_order != 16 && mod_order != 64)
        fail("mod_order must be one of {2, 4, 16, 64}");
    if (!(p_c > 0.0)) fail("p_c must be positive");
    if (!std::isfinite(rho_max_dbw)) fail("rho_max_dbw must be finite");
    if (k_min < 1) fail("k_min must be >= 1");
    if (k_max < k_min) fail("k_max must be >= k_min");
    if (!(sigma2 > 0.0)) fail("sigma2 must be positive");
    if (!(bandwidth_hz > 0.0)) fail("bandwidth_hz must be positive");
    if (n_samples < 1) fail("n_samples must be >= 1");
}

void apply_config_entry(SystemConfig &cfg, const std::string &key, const std::string &value)
{
    if (key == "n_aa") cfg.n_aa = parse_int(key, value);
    else if (key == "n_tx_per_aa") cfg.n_tx_per_aa = parse_int(key, value);
    else if (key == "n_rx") cfg.n_rx = parse_int(key, value);
    else if (key == "n_paths") cfg.n_paths = parse_int(key, value);
    else if (key == "mod_order") cfg.mod_order = parse_int(key, value);
    else if (key == "p_c") cfg.p_c = parse_double(key, value);
    else if (key == "rho_max_dbw") cfg.rho_max_dbw = parse_double(key, value);
    else if (key == "k_min") cfg.k_min = parse_int(key, value);
    else if (key == "k_max") cfg.k_max = parse_int(key, value);
    else if (key == "sigma2") cfg.sigma2 = parse_double(key, value);
    else if (key == "bandwidth_hz") cfg.bandwidth_hz = parse_double(key, value);
    else if (key == "n_samples") cfg.n_samples = parse_int(key, value);
    else if (key == "seed") cfg.seed = parse_u64(key, value);
    else if (key == "phase_only_beamforming") cfg.phase_only_beamforming = parse_bool(key, value);
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

SystemConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("config: cannot open '" + path + "'");

    SystemConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty())
            continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: missing '=' at " + path + ":" + std::to_string(lineno));
        apply_config_entry(cfg, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
    cfg.validate();
    return cfg;
}

std::string canonical_config_text(const SystemConfig &c)
{
    char buf[512];
    std::string out;
    auto add_int = [&](const char *k, long long v) {
        std::snprintf(buf, sizeof buf, "%s = %lld\n", k, v);
        out += buf;
    };
    auto add_dbl = [&](const char *k, double v) {
        std::snprintf(buf, sizeof buf, "%s = %.17g\n", k, v);
        out += buf;
    };

    add_int("n_aa", c.n_aa);
    add_int("n_tx_per_aa", c.n_tx_per_aa);
    add_int("n_rx", c.n_rx);
    add_int("n_paths", c.n_paths);
    add_int("mod_order", c.mod_order);
    add_dbl("p_c", c.p_c);
    add_dbl("rho_max_dbw", c.rho_max_dbw);
    add_int("k_min", c.k_min);
    add_int("k_max", c.k_max);
    add_dbl("sigma2", c.sigma2);
    add_dbl("bandwidth_hz", c.bandwidth_hz);
    add_int("n_samples", c.n_samples);
    std::snprintf(buf, sizeof buf, "seed = %llu\n", static_cast<unsigned long long>(c.seed));
    out += buf;
    out += c.phase_only_beamforming ? "phase_only_beamforming = true\n"
                                    : "phase_only_beamforming = false\n";
    return out;
}

std::uint64_t config_hash(const SystemConfig &cfg)
{
    return fnv1a64(canonical_config_text(cfg));
}

SystemConfig preset_config(const std::string &name)
{
    SystemConfig cfg; // defaults already match the reference setup:
                      // n_aa = 4, n_rx = 1, p_c = 1 W, 4-QAM
    if (name == "paper_fig2a")
        cfg.rho_max_dbw = 0.0;
    else if (name == "paper_fig2b")
        cfg.rho_max_dbw = 10.0;
    else if (name == "paper_fig3")
        cfg.rho_max_dbw = 10.0;
    else
        throw std::invalid_argument("unknown preset '" + name + "'");
    return cfg;
}

} // namespace smgee
