// rsmmf - closed-form max-min fair rate and power allocation for a
// two-user rate-splitting multiple access downlink
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

#include "rsmmf/beamform.hpp"

#include "rsmmf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rsmmf
{

namespace
{

// v minus its component along the unit vector u.
ComplexVec reject(const ComplexVec &v, const ComplexVec &u)
{
    const Complex c = inner_product(u, v);
    ComplexVec out(v);
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] -= c * u[i];
    return out;
}

// Unit direction orthogonal to `other`, seeded from `own`. One extra
// rejection pass keeps the residual orthogonal to working precision even
// when the channels are strongly correlated.
ComplexVec zf_direction(const ComplexVec &own_n, const ComplexVec &other_n)
{
    ComplexVec r = reject(own_n, other_n);
    if (norm_sq(r) <= kCollinearEps)
        throw CollinearChannelsError("zf_directions: channels are collinear to working precision");

    r = normalized(r);
    r = reject(r, other_n);
    return normalized(r);
}

} // namespace

std::pair<ComplexVec, ComplexVec> zf_directions(const ChannelPair &pair)
{
    if (pair.h1.size() < 2)
        throw std::invalid_argument("zf_directions: need at least two antennas");

    const ComplexVec h1n = normalized(pair.h1);
    const ComplexVec h2n = normalized(pair.h2);
    return {zf_direction(h1n, h2n), zf_direction(h2n, h1n)};
}

ComplexVec common_precoder(const ChannelPair &pair)
{
    const ComplexVec h1n = normalized(pair.h1);
    const ComplexVec h2n = normalized(pair.h2);

    const Complex z = inner_product(h1n, h2n);
    const Complex rot = std::polar(1.0, -std::arg(z)); // arg(0) == 0, no special case
    const double scale = 1.0 / std::sqrt(2.0 * (1.0 + std::abs(z)));

    ComplexVec pc(h1n.size());
    for (std::size_t i = 0; i < pc.size(); ++i)
        pc[i] = scale * (h1n[i] + rot * h2n[i]);
    return pc;
}

PrecoderSet precoder_set(const ChannelPair &pair)
{
    PrecoderSet set;
    auto [d1, d2] = zf_directions(pair);
    set.dir1 = std::move(d1);
    set.dir2 = std::move(d2);
    set.dir_c = common_precoder(pair);
    return set;
}

EffectiveGains effective_gains(const ChannelPair &pair)
{
    const ComplexVec h1n = normalized(pair.h1);
    const ComplexVec h2n = normalized(pair.h2);

    const double abs_z = std::min(std::abs(inner_product(h1n, h2n)), 1.0);
    const double rho = (1.0 - abs_z) * (1.0 + abs_z);

    const double g1 = pair.norm1 * pair.norm1;
    const double g2 = pair.norm2 * pair.norm2;

    const ComplexVec pc = common_precoder(pair);

    EffectiveGains g;
    g.rho = rho;
    g.rho1 = g1 * rho;
    g.rho2 = g2 * rho;
    g.rho_c1 = std::norm(inner_product(pair.h1, pc));
    g.rho_c2 = std::norm(inner_product(pair.h2, pc));
    g.gamma_gap = (rho <= kCollinearEps) ? std::numeric_limits<double>::infinity() : 1.0 / g.rho2 - 1.0 / g.rho1;
    return g;
}

nlohmann::json precoders_to_json(const PrecoderSet &set)
{
    auto vec = [](const ComplexVec &v) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto &x : v)
            arr.push_back({x.real(), x.imag()});
        return arr;
    };
    return nlohmann::json{{"dir1", vec(set.dir1)}, {"dir2", vec(set.dir2)}, {"dir_c", vec(set.dir_c)}};
}

nlohmann::json gains_to_json(const EffectiveGains &g)
{
    nlohmann::json j{{"rho", g.rho},       {"rho1", g.rho1},     {"rho2", g.rho2},
                     {"rho_c1", g.rho_c1}, {"rho_c2", g.rho_c2}, {"collinear", g.collinear()}};
    // +inf is not representable in JSON; the "collinear" flag carries it.
    j["gamma_gap"] = g.collinear() ? nlohmann::json(nullptr) : nlohmann::json(g.gamma_gap);
    return j;
}

} // namespace rsmmf
