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

#ifndef smgee_channel_H
#define smgee_channel_H

#include <Eigen/Dense>

#include <complex>
#include <random>
#include <vector>

namespace smgee {

struct UlaParams
{
    int n_elements = 1; // antenna count, >= 1
    double angle = 0.0; // radians
};

struct PathParams
{
    std::complex<double> gain; // CN(0,1)
    double aod = 0.0;          // departure angle, radians, (0, 2*pi]
    double aoa = 0.0;          // arrival angle, radians, (0, 2*pi]
};

struct ChannelRealization
{
    Eigen::MatrixXcd matrix;       // n_rx x n_tx
    std::vector<PathParams> paths; // the generating paths
};

// Unit-norm ULA response with half-wavelength spacing:
// element k = sqrt(1/N) * exp(j*pi*k*sin(angle)), k = 0..N-1.
Eigen::VectorXcd steering_vector(const UlaParams &p);

// sqrt(n_tx*n_rx/L) * sum_l gain_l * a_rx(aoa_l) * a_tx(aod_l)^H
Eigen::MatrixXcd channel_from_paths(const std::vector<PathParams> &paths, int n_tx, int n_rx);

// Draws per-path gains CN(0,1) and angles uniform on (0, 2*pi] from the
// stream (order per path: gain, aoa, aod), then assembles the matrix.
ChannelRealization generate_channel(int n_tx, int n_rx, int n_paths, std::mt19937_64 &stream);

} // namespace smgee

#endif
