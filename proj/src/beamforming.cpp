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

#include "smgee/beamforming.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace smgee {

namespace {

// Rotate v by a global phase so its first non-negligible entry lands on the
// non-negative real axis. Resolves the inherent phase ambiguity of singular
// vectors into one reproducible representative.
void normalize_leading_phase(Eigen::VectorXcd &v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i)
    {
        const double mag = std::abs(v[i]);
        if (mag > 1e-12)
        {
            v *= std::conj(v[i]) / mag;
            return;
        }
    }
}

} // namespace

LinkBeamformers link_beamformers(const Eigen::MatrixXcd &h, bool phase_only)
{
    if (h.size() == 0)
        throw std::invalid_argument("link_beamformers: empty channel matrix");

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double sigma1 = svd.singularValues()(0);
    if (!(sigma1 > 0.0) || !std::isfinite(sigma1))
        throw std::invalid_argument("link_beamformers: degenerate (all-zero) channel");

    LinkBeamformers bf;
    bf.f = svd.matrixV().col(0);
    bf.w = svd.matrixU().col(0);

    if (phase_only)
    {
        const double modulus = 1.0 / std::sqrt(static_cast<double>(bf.f.size()));
        for (Eigen::Index i = 0; i < bf.f.size(); ++i)
            bf.f[i] = std::polar(modulus, std::arg(bf.f[i]));
    }

    normalize_leading_phase(bf.f);
    normalize_leading_phase(bf.w);
    return bf;
}

Constellation qam_constellation(int m)
{
    if (m == 2)
        return Constellation{{{1.0, 0.0}, {-1.0, 0.0}}};
    if (m != 4 && m != 16 && m != 64)
        throw std::invalid_argument("qam_constellation: order must be one of {2, 4, 16, 64}");

    const int side = m == 4 ? 2 : (m == 16 ? 4 : 8);
    // mean energy of the odd-integer grid {+/-1, ..., +/-(side-1)}^2
    const double mean_energy = 2.0 * (static_cast<double>(side) * side - 1.0) / 3.0;
    const double scale = 1.0 / std::sqrt(mean_energy);

    Constellation c;
    c.symbols.reserve(static_cast<std::size_t>(m));
    for (int row = 0; row < side; ++row)
    {
        const double im = static_cast<double>(side - 1 - 2 * row); // top row first
        for (int col = 0; col < side; ++col)
        {
            const double re = static_cast<double>(2 * col - (side - 1));
            c.symbols.emplace_back(re * scale, im * scale);
        }
    }
    return c;
}

Eigen::MatrixXcd link_coefficients(const std::vector<ChannelRealization> &links,
                                   const std::vector<LinkBeamformers> &beams,
                                   const Constellation &c, double sigma2)
{
    if (!(sigma2 > 0.0))
        throw std::invalid_argument("link_coefficients: sigma2 must be positive");
    if (links.empty() || links.size() != beams.size())
        throw std::invalid_argument("link_coefficients: need one beamformer pair per link");
    if (c.symbols.empty())
        throw std::invalid_argument("link_coefficients: empty constellation");

    const double inv_sigma = 1.0 / std::sqrt(sigma2);
    Eigen::MatrixXcd b(links.size(), c.symbols.size());
    for (std::size_t j = 0; j < links.size(); ++j)
    {
        const std::complex<double> g = beams[j].w.dot(links[j].matrix * beams[j].f);
        for (std::size_t m = 0; m < c.symbols.size(); ++m)
            b(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(m)) =
                g * c.symbols[m] * inv_sigma;
    }
    return b;
}

} // namespace smgee
