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

#include "smgee/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace smgee::kernels::scalar {

double sum_log1p_scaled(const double *x, std::size_t n, double c) noexcept
{
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += std::log1p(c * x[i]);
    return acc;
}

RateSums rate_sums(const double *x, std::size_t n, double c) noexcept
{
    double logs = 0.0, ratios = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double t = c * x[i];
        logs += std::log1p(t);
        ratios += x[i] / (1.0 + t);
    }
    return RateSums{logs, ratios};
}

void gaussian_mixture_nll(const double *yr, const double *yi, std::size_t n,
                          const double *cr, const double *ci, std::size_t k,
                          double *out)
{
    const double ln_k_pi = std::log(static_cast<double>(k) * std::numbers::pi);
    std::vector<double> d2(k);

    for (std::size_t s = 0; s < n; ++s)
    {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < k; ++j)
        {
            const double dr = yr[s] - cr[j];
            const double di = yi[s] - ci[j];
            d2[j] = dr * dr + di * di;
            m = d2[j] < m ? d2[j] : m;
        }
        double acc = 0.0;
        for (std::size_t j = 0; j < k; ++j)
            acc += std::exp(m - d2[j]);
        out[s] = ln_k_pi + m - std::log(acc);
    }
}

} // namespace smgee::kernels::scalar
