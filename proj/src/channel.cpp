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

#include "smgee/channel.hpp"

#include "smgee/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smgee {

Eigen::VectorXcd steering_vector(const UlaParams &p)
{
    if (p.n_elements < 1)
        throw std::invalid_argument("steering_vector: n_elements must be >= 1");

    const double scale = 1.0 / std::sqrt(static_cast<double>(p.n_elements));
    const double phase_step = std::numbers::pi * std::sin(p.angle);

    Eigen::VectorXcd v(p.n_elements);
    for (int k = 0; k < p.n_elements; ++k)
        v[k] = std::polar(scale, phase_step * k);
    return v;
}

Eigen::MatrixXcd channel_from_paths(const std::vector<PathParams> &paths, int n_tx, int n_rx)
{
    if (paths.empty())
        throw std::invalid_argument("channel_from_paths: need at least one path");
    if (n_tx < 1 || n_rx < 1)
        throw std::invalid_argument("channel_from_paths: antenna counts must be >= 1");

    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n_rx, n_tx);
    for (const PathParams &p : paths)
    {
        const Eigen::VectorXcd a_rx = steering_vector({n_rx, p.aoa});
        const Eigen::VectorXcd a_tx = steering_vector({n_tx, p.aod});
        h.noalias() += p.gain * (a_rx * a_tx.adjoint());
    }
    h *= std::sqrt(static_cast<double>(n_tx) * static_cast<double>(n_rx) /
                   static_cast<double>(paths.size()));
    return h;
}

ChannelRealization generate_channel(int n_tx, int n_rx, int n_paths, std::mt19937_64 &stream)
{
    if (n_paths < 1)
        throw std::invalid_argument("generate_channel: n_paths must be >= 1");

    std::vector<PathParams> paths(static_cast<std::size_t>(n_paths));
    for (PathParams &p : paths)
    {
        p.gain = complex_gaussian(stream);
        p.aoa = uniform_angle(stream);
        p.aod = uniform_angle(stream);
    }
    Eigen::MatrixXcd h = channel_from_paths(paths, n_tx, n_rx);
    return ChannelRealization{std::move(h), std::move(paths)};
}

} // namespace smgee
