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

#ifdef SMGEE_HAVE_AVX2

#include <immintrin.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

// 4-wide double-precision ln/exp built on the classic Cephes range
// reductions and rational approximations (~1 ulp on the reduced interval).
// ln is valid for positive normal inputs; exp clamps its argument to
// [-708.396, 709.0], so results below ~2.3e-308 flush to that bound instead
// of producing denormals. Both restrictions are fine for the call sites
// here (log1p of non-negative arguments, log-sum-exp with arguments <= 0).

namespace {

inline __m256d fmadd(__m256d a, __m256d b, __m256d c) { return _mm256_fmadd_pd(a, b, c); }

inline __m256d log_pd(__m256d x)
{
    const __m256i bits = _mm256_castpd_si256(x);

    // split x = m * 2^e with m in [sqrt(0.5), sqrt(2))
    __m256i e64 = _mm256_sub_epi64(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(1023));
    const __m256i mant = _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL));
    __m256d m = _mm256_castsi256_pd(_mm256_or_si256(mant, _mm256_set1_epi64x(0x3FF0000000000000LL)));

    const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730950488), _CMP_GE_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
    e64 = _mm256_sub_epi64(e64, _mm256_castpd_si256(big)); // mask is -1 where big

    // int64 -> double (exponents are tiny, low 32 bits suffice)
    const __m256i shuf = _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0);
    const __m128i e32 = _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(e64, shuf));
    const __m256d e = _mm256_cvtepi32_pd(e32);

    const __m256d z = _mm256_sub_pd(m, _mm256_set1_pd(1.0));
    const __m256d z2 = _mm256_mul_pd(z, z);

    __m256d p = _mm256_set1_pd(1.01875663804580931796e-4);
    p = fmadd(p, z, _mm256_set1_pd(4.97494994976747001425e-1));
    p = fmadd(p, z, _mm256_set1_pd(4.70579119878881725854e0));
    p = fmadd(p, z, _mm256_set1_pd(1.44989225341610930846e1));
    p = fmadd(p, z, _mm256_set1_pd(1.79368678507819816313e1));
    p = fmadd(p, z, _mm256_set1_pd(7.70838733755885391666e0));

    __m256d q = _mm256_add_pd(z, _mm256_set1_pd(1.12873587189167450590e1));
    q = fmadd(q, z, _mm256_set1_pd(4.52279145837532221105e1));
    q = fmadd(q, z, _mm256_set1_pd(8.29875266912776603211e1));
    q = fmadd(q, z, _mm256_set1_pd(7.11544750618563894466e1));
    q = fmadd(q, z, _mm256_set1_pd(2.31251620126765340583e1));

    __m256d y = _mm256_mul_pd(_mm256_mul_pd(z, z2), _mm256_div_pd(p, q));
    y = fmadd(e, _mm256_set1_pd(-2.121944400546905827679e-4), y);
    y = fmadd(z2, _mm256_set1_pd(-0.5), y);

    __m256d r = _mm256_add_pd(z, y);
    r = fmadd(e, _mm256_set1_pd(0.693359375), r);
    return r;
}

inline __m256d exp_pd(__m256d x)
{
    x = _mm256_max_pd(x, _mm256_set1_pd(-708.396418532264106224));
    x = _mm256_min_pd(x, _mm256_set1_pd(709.0));

    const __m256d nd = _mm256_round_pd(
        fmadd(x, _mm256_set1_pd(std::numbers::log2e), _mm256_set1_pd(0.5)),
        _MM_FROUND_TO_NEG_INF | _MM_FROUND_NO_EXC);

    // extended-precision x - n*ln2
    x = fmadd(nd, _mm256_set1_pd(-6.93145751953125e-1), x);
    x = fmadd(nd, _mm256_set1_pd(-1.42860682030941723212e-6), x);

    const __m256d xx = _mm256_mul_pd(x, x);

    __m256d p = _mm256_set1_pd(1.26177193074810590878e-4);
    p = fmadd(p, xx, _mm256_set1_pd(3.02994407707441961300e-2));
    p = fmadd(p, xx, _mm256_set1_pd(9.99999999999999999910e-1));
    p = _mm256_mul_pd(p, x);

    __m256d q = _mm256_set1_pd(3.00198505138664455042e-6);
    q = fmadd(q, xx, _mm256_set1_pd(2.52448340349684104192e-3));
    q = fmadd(q, xx, _mm256_set1_pd(2.27265548208155028766e-1));
    q = fmadd(q, xx, _mm256_set1_pd(2.00000000000000000005e0));

    const __m256d r = _mm256_div_pd(p, _mm256_sub_pd(q, p));
    __m256d res = fmadd(r, _mm256_set1_pd(2.0), _mm256_set1_pd(1.0));

    // scale by 2^n through the exponent bits
    const __m128i n32 = _mm256_cvtpd_epi32(nd);
    const __m256i n64 = _mm256_cvtepi32_epi64(n32);
    const __m256i pow2 = _mm256_slli_epi64(_mm256_add_epi64(n64, _mm256_set1_epi64x(1023)), 52);
    return _mm256_mul_pd(res, _mm256_castsi256_pd(pow2));
}

// ln(1 + x) for x >= 0: the rounding residual of (1 + x) is recovered with a
// Fast2Sum and folded back in as d/u.
inline __m256d log1p_nonneg_pd(__m256d x)
{
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d u = _mm256_add_pd(one, x);
    const __m256d a = _mm256_max_pd(x, one);
    const __m256d b = _mm256_min_pd(x, one);
    const __m256d d = _mm256_sub_pd(b, _mm256_sub_pd(u, a));
    return _mm256_add_pd(log_pd(u), _mm256_div_pd(d, u));
}

inline double hsum(__m256d v)
{
    __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

} // namespace

namespace smgee::kernels::avx2 {

double sum_log1p_scaled(const double *x, std::size_t n, double c) noexcept
{
    const __m256d cv = _mm256_set1_pd(c);
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();

    std::size_t i = 0;
    for (; i + 8 <= n; i += 8)
    {
        acc0 = _mm256_add_pd(acc0, log1p_nonneg_pd(_mm256_mul_pd(cv, _mm256_loadu_pd(x + i))));
        acc1 = _mm256_add_pd(acc1, log1p_nonneg_pd(_mm256_mul_pd(cv, _mm256_loadu_pd(x + i + 4))));
    }
    if (i + 4 <= n)
    {
        acc0 = _mm256_add_pd(acc0, log1p_nonneg_pd(_mm256_mul_pd(cv, _mm256_loadu_pd(x + i))));
        i += 4;
    }

    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) // leftovers
        s += std::log1p(c * x[i]);
    return s;
}

RateSums rate_sums(const double *x, std::size_t n, double c) noexcept
{
    const __m256d cv = _mm256_set1_pd(c);
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d lacc = _mm256_setzero_pd();
    __m256d racc = _mm256_setzero_pd();

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
    {
        const __m256d xv = _mm256_loadu_pd(x + i);
        const __m256d t = _mm256_mul_pd(cv, xv);
        const __m256d u = _mm256_add_pd(one, t);
        const __m256d a = _mm256_max_pd(t, one);
        const __m256d b = _mm256_min_pd(t, one);
        const __m256d d = _mm256_sub_pd(b, _mm256_sub_pd(u, a));
        lacc = _mm256_add_pd(lacc, _mm256_add_pd(log_pd(u), _mm256_div_pd(d, u)));
        racc = _mm256_add_pd(racc, _mm256_div_pd(xv, u));
    }

    double logs = hsum(lacc);
    double ratios = hsum(racc);
    for (; i < n; ++i)
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
    const __m256d lkp = _mm256_set1_pd(ln_k_pi);
    std::vector<double> d2buf(4 * k);

    std::size_t s = 0;
    for (; s + 4 <= n; s += 4)
    {
        const __m256d yrv = _mm256_loadu_pd(yr + s);
        const __m256d yiv = _mm256_loadu_pd(yi + s);

        __m256d m = _mm256_set1_pd(std::numeric_limits<double>::infinity());
        for (std::size_t j = 0; j < k; ++j)
        {
            const __m256d dr = _mm256_sub_pd(yrv, _mm256_set1_pd(cr[j]));
            const __m256d di = _mm256_sub_pd(yiv, _mm256_set1_pd(ci[j]));
            const __m256d d2 = fmadd(dr, dr, _mm256_mul_pd(di, di));
            _mm256_storeu_pd(d2buf.data() + 4 * j, d2);
            m = _mm256_min_pd(m, d2);
        }

        __m256d acc = _mm256_setzero_pd();
        for (std::size_t j = 0; j < k; ++j)
            acc = _mm256_add_pd(acc, exp_pd(_mm256_sub_pd(m, _mm256_loadu_pd(d2buf.data() + 4 * j))));

        _mm256_storeu_pd(out + s, _mm256_add_pd(lkp, _mm256_sub_pd(m, log_pd(acc))));
    }

    if (s < n)
        scalar::gaussian_mixture_nll(yr + s, yi + s, n - s, cr, ci, k, out + s);
}

} // namespace smgee::kernels::avx2

#endif // SMGEE_HAVE_AVX2
