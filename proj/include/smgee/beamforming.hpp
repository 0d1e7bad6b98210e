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

#ifndef smgee_beamforming_H
#define smgee_beamforming_H

#include "smgee/channel.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace smgee {

struct LinkBeamformers
{
    Eigen::VectorXcd f; // transmit beamformer, unit norm, length n_tx
    Eigen::VectorXcd w; // receive combiner, unit norm, length n_rx
};

struct Constellation
{
    std::vector<std::complex<double>> symbols; // unit mean energy
};

// Dominant singular pair of h: f is the leading right singular vector, w the
// leading left one, each phase-rotated so its first non-negligible entry is
// real non-negative (makes the output deterministic). With phase_only set,
// f keeps only its element phases and gets constant modulus 1/sqrt(n_tx).
// An all-zero matrix is rejected.
LinkBeamformers link_beamformers(const Eigen::MatrixXcd &h, bool phase_only = false);

// m in {2, 4, 16, 64}. Square constellations sit on the odd-integer grid,
// enumerated row-major (imaginary part descending, real part ascending) and
// scaled to unit mean energy; m = 2 is {+1, -1}.
Constellation qam_constellation(int m);

// b(j, m) = (w_j^H h_j f_j) * s_m / sqrt(sigma2)
Eigen::MatrixXcd link_coefficients(const std::vector<ChannelRealization> &links,
                                   const std::vector<LinkBeamformers> &beams,
                                   const Constellation &c, double sigma2);

} // namespace smgee

#endif
