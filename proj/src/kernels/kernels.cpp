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

#include <cstdlib>
#include <cstring>

namespace smgee::kernels {

bool avx2_available() noexcept
{
#ifdef SMGEE_HAVE_AVX2
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

Backend resolve_backend() noexcept
{
    if (const char *env = std::getenv("SMGEE_BACKEND"))
    {
        if (std::strcmp(env, "scalar") == 0)
            return Backend::scalar;
        if (std::strcmp(env, "avx2") == 0)
            return avx2_available() ? Backend::avx2 : Backend::scalar;
    }
    return avx2_available() ? Backend::avx2 : Backend::scalar;
}

} // namespace

Backend active_backend() noexcept
{
    static const Backend b = resolve_backend();
    return b;
}

const char *backend_name(Backend b) noexcept
{
    return b == Backend::avx2 ? "avx2" : "scalar";
}

double sum_log1p_scaled(const double *x, std::size_t n, double c) noexcept
{
#ifdef SMGEE_HAVE_AVX2
    if (active_backend() == Backend::avx2)
        return avx2::sum_log1p_scaled(x, n, c);
#endif
    return scalar::sum_log1p_scaled(x, n, c);
}

RateSums rate_sums(const double *x, std::size_t n, double c) noexcept
{
#ifdef SMGEE_HAVE_AVX2
    if (active_backend() == Backend::avx2)
        return avx2::rate_sums(x, n, c);
#endif
    return scalar::rate_sums(x, n, c);
}

void gaussian_mixture_nll(const double *yr, const double *yi, std::size_t n,
                          const double *cr, const double *ci, std::size_t k,
                          double *out)
{
#ifdef SMGEE_HAVE_AVX2
    if (active_backend() == Backend::avx2)
    {
        avx2::gaussian_mixture_nll(yr, yi, n, cr, ci, k, out);
        return;
    }
#endif
    scalar::gaussian_mixture_nll(yr, yi, n, cr, ci, k, out);
}

} // namespace smgee::kernels
