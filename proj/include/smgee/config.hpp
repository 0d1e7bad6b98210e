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

#ifndef smgee_config_H
#define smgee_config_H

#include <cmath>
#include <cstdint>
#include <string>

namespace smgee {

// All model and solver parameters. Power limits are configured in dBW and
// converted to Watts only at this boundary.
struct SystemConfig
{
    int n_aa = 4;          // transmit antenna arrays at the BS
    int n_tx_per_aa = 32;  // antennas per array
    int n_rx = 1;          // receive antennas per user
    int n_paths = 3;       // propagation paths per link
    int mod_order = 4;     // constellation size M, one of {2, 4, 16, 64}
    double p_c = 1.0;      // static power per active user, Watts
    double rho_max_dbw = 10.0;
    int k_min = 1;         // served-user range
    int k_max = 32;
    double sigma2 = 1.0;   // noise power after combining, Watts
    double bandwidth_hz = 1.0;
    int n_samples = 10000; // Monte-Carlo gain samples
    std::uint64_t seed = 1;
    bool phase_only_beamforming = false;

    double rho_max_watts() const { return std::pow(10.0, rho_max_dbw / 10.0); }

    // throws std::invalid_argument on the first violated constraint
    void validate() const;
};

// Flat "key = value" file with exactly the SystemConfig field names;
// '#' starts a comment. Unknown keys are rejected.
SystemConfig load_config(const std::string &path);

// Parses a single "key" / "value" pair into cfg (shared by the file loader
// and CLI overrides).
void apply_config_entry(SystemConfig &cfg, const std::string &key, const std::string &value);

// Stable canonical rendering (fixed key order, 17 significant digits);
// the hash is FNV-1a over this text.
std::string canonical_config_text(const SystemConfig &cfg);
std::uint64_t config_hash(const SystemConfig &cfg);

// Shipped experiment presets; `name` is one of "paper_fig2a", "paper_fig2b",
// "paper_fig3" (the same settings as the presets/ *.cfg files).
SystemConfig preset_config(const std::string &name);

} // namespace smgee

#endif
