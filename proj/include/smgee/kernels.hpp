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

#ifndef smgee_kernels_H
#define smgee_kernels_H

#include <cstddef>

// Data-parallel inner loops shared by the rate estimator, the GEE solvers
// and the mutual-information estimator. Every kernel has a scalar reference
// implementation and an AVX2 variant; the top-level entry points dispatch
// once at startup based on the CPU (override with SMGEE_BACKEND=scalar|avx2).
// The two variants are equivalence-tested against each other.

namespace smgee::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend() noexcept;
const char *backend_name(Backend b) noexcept;
bool avx2_available() noexcept;

struct RateSums
{
    double log1p_sum; // sum_i ln(1 + c*x[i])
    double ratio_sum; // sum_i x[i] / (1 + c*x[i])
};

// sum_i ln(1 + c*x[i]); requires x[i] >= 0 and c >= 0
double sum_log1p_scaled(const double *x, std::size_t n, double c) noexcept;

// Log sum and ratio sum in one pass; both stationarity residuals need them.
RateSums rate_sums(const double *x, std::size_t n, double c) noexcept;

// out[s] = -ln( 1/(k*pi) * sum_j exp(-((yr[s]-cr[j])^2 + (yi[s]-ci[j])^2)) )
// Negative log density of an equal-weight complex Gaussian mixture with unit
// noise variance, evaluated with log-sum-exp stabilization. Requires k >= 1.
void gaussian_mixture_nll(const double *yr, const double *yi, std::size_t n,
                          const double *cr, const double *ci, std::size_t k,
                          double *out);

// Per-backend entry points (used directly by the equivalence tests).
namespace scalar {
double sum_log1p_scaled(const double *x, std::size_t n, double c) noexcept;
RateSums rate_sums(const double *x, std::size_t n, double c) noexcept;
void gaussian_mixture_nll(const double *yr, const double *yi, std::size_t n,
                          const double *cr, const double *ci, std::size_t k,
                          double *out);
} // namespace scalar

#ifdef SMGEE_HAVE_AVX2
namespace avx2 {
double sum_log1p_scaled(const double *x, std::size_t n, double c) noexcept;
RateSums rate_sums(const double *x, std::size_t n, double c) noexcept;
void gaussian_mixture_nll(const double *yr, const double *yi, std::size_t n,
                          const double *cr, const double *ci, std::size_t k,
                          double *out);
} // namespace avx2
#endif

} // namespace smgee::kernels

#endif
