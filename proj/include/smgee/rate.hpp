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

#ifndef smgee_rate_H
#define smgee_rate_H

#include "smgee/config.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace smgee {

struct RateEstimate
{
    double value = 0.0;     // bits per channel use
    double std_error = 0.0; // bits per channel use
};

// Monte-Carlo samples of the per-user effective gain coefficient. The
// samples depend on neither the transmit power nor the user count, so one
// set serves every (K, rho) evaluation of an optimization run (common
// random numbers).
struct GainSampleSet
{
    std::vector<double> samples;
    SystemConfig config; // generating config, including the seed
    std::uint64_t config_hash = 0;
};

// Variance of the link coefficients over uniform (array, symbol) pairs:
// mean|b|^2 - |mean b|^2, evaluated in two passes so rounding cannot push it
// negative. A residual below -1e-12 would indicate a broken invariant and
// throws.
double effective_gain(const Eigen::MatrixXcd &b);

// log2(1 + rho*a/k); k may be any positive real (relaxed user count).
double rate_bound(double a, double rho, double k);

// N independent effective-gain samples for one user. Each realization n
// draws the channels of all n_aa arrays from streams keyed by
// (seed, n, array), builds the per-link beamformers and reduces to a. Any
// thread count yields bit-identical samples.
GainSampleSet sample_gains(const SystemConfig &cfg, unsigned n_threads = 1);

// Empirical mean and standard error of rate_bound over the samples; the
// network sum-rate is k times the value.
RateEstimate ergodic_rate(const GainSampleSet &gains, double rho, double k);

// Mutual information between the (array index, symbol) input and the
// combined output, for one realization whose scaled link coefficients are b
// (unit noise variance). Output samples are drawn from the Gaussian mixture
// (uniform component, CN(0,1) noise) and the differential entropy estimated
// as -mean log2 f_Y; the noise entropy log2(pi*e) is subtracted. The value
// is clamped at 0; std_error is the raw Monte-Carlo standard error.
RateEstimate mutual_information_mc(const Eigen::MatrixXcd &b, std::size_t n_mc,
                                   std::mt19937_64 &rng);

// Cache file: '#'-prefixed header lines carrying config hash, seed and
// count, then one a-value per line with 17 significant digits (lossless
// round-trip). Loading verifies the header against `expected`.
void save_gain_cache(const GainSampleSet &gains, const std::string &path);
GainSampleSet load_gain_cache(const std::string &path, const SystemConfig &expected);

} // namespace smgee

#endif
