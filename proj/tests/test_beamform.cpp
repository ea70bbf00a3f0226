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

#include "rsmmf/channel.hpp"
#include "rsmmf/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace rsmmf;

TEST_CASE("orthogonal channels: ZF keeps the channel directions")
{
    const ComplexVec e1 = {Complex(1.0, 0.0), Complex(0.0, 0.0)};
    const ComplexVec e2 = {Complex(0.0, 0.0), Complex(1.0, 0.0)};
    const ChannelPair p = make_channel_pair(e1, e2);

    const auto [d1, d2] = zf_directions(p);
    CHECK(std::abs(inner_product(p.h2, d1)) <= 1e-14);
    CHECK(std::abs(inner_product(p.h1, d2)) <= 1e-14);
    CHECK(norm(d1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(norm(d2) == doctest::Approx(1.0).epsilon(1e-14));

    const EffectiveGains g = effective_gains(p);
    CHECK(g.rho == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.rho_c1 == doctest::Approx(0.5).epsilon(1e-14)); // (1+|z|)/2 with z = 0
    CHECK(g.rho_c2 == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(g.gamma_gap == doctest::Approx(0.0));
}

TEST_CASE("correlated pair with |z| = 0.6: gains match the closed forms")
{
    const ComplexVec h1 = {Complex(1.0, 0.0), Complex(0.0, 0.0)};
    const ComplexVec h2 = {Complex(0.6, 0.0), Complex(0.0, 0.8)};
    const ChannelPair p = make_channel_pair(h1, h2);

    const EffectiveGains g = effective_gains(p);
    CHECK(g.rho == doctest::Approx(0.64).epsilon(1e-14));
    CHECK(g.rho1 == doctest::Approx(0.64).epsilon(1e-14));
    CHECK(g.rho2 == doctest::Approx(0.64).epsilon(1e-14));
    CHECK(g.rho_c1 == doctest::Approx(0.8).epsilon(1e-12)); // (1+0.6)/2
    CHECK(g.rho_c2 == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(g.gamma_gap == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_FALSE(g.collinear());
}

TEST_CASE("structural gain identities on a random ensemble")
{
    ChannelEnsembleSpec spec;
    spec.count = 200;
    spec.seed = 11;

    for (const ChannelPair &p : sample_gaussian_ensemble(spec))
    {
        const EffectiveGains g = effective_gains(p);
        const double abs_z = std::abs(inner_product(normalized(p.h1), normalized(p.h2)));

        // rho_k = 2 rho_ck (1 - |z|), the algebraic link between private
        // and common gains
        CHECK(g.rho1 == doctest::Approx(2.0 * g.rho_c1 * (1.0 - abs_z)).epsilon(1e-9));
        CHECK(g.rho2 == doctest::Approx(2.0 * g.rho_c2 * (1.0 - abs_z)).epsilon(1e-9));
        // rho_ck = ||h_k||^2 (1 + |z|)/2
        CHECK(g.rho_c1 == doctest::Approx(p.norm1 * p.norm1 * (1.0 + abs_z) / 2.0).epsilon(1e-9));
        CHECK(g.rho_c2 == doctest::Approx(p.norm2 * p.norm2 * (1.0 + abs_z) / 2.0).epsilon(1e-9));
        CHECK(g.gamma_gap >= 0.0);

        // equal common-stream projections on the unit channels
        const ComplexVec pc = common_precoder(p);
        const double pr1 = std::abs(inner_product(normalized(p.h1), pc));
        const double pr2 = std::abs(inner_product(normalized(p.h2), pc));
        CHECK(pr1 == doctest::Approx(pr2).epsilon(1e-12));
        CHECK(pr1 == doctest::Approx(std::sqrt((1.0 + abs_z) / 2.0)).epsilon(1e-12));
        CHECK(norm(pc) == doctest::Approx(1.0).epsilon(1e-12));

        const auto [d1, d2] = zf_directions(p);
        CHECK(std::abs(inner_product(p.h2, d1)) <= 1e-10 * p.norm2);
        CHECK(std::abs(inner_product(p.h1, d2)) <= 1e-10 * p.norm1);
    }
}

TEST_CASE("collinear pair: ZF refuses, common precoder still works")
{
    const ComplexVec h1 = {Complex(1.0, 0.5), Complex(-0.25, 2.0)};
    ComplexVec h2 = h1;
    for (auto &x : h2)
        x *= Complex(0.0, 0.5); // h2 = 0.5i * h1

    const ChannelPair p = make_channel_pair(h1, h2);
    CHECK_THROWS_AS(zf_directions(p), CollinearChannelsError);
    CHECK_THROWS_AS(precoder_set(p), CollinearChannelsError);

    const EffectiveGains g = effective_gains(p);
    CHECK(g.collinear());
    CHECK(std::isinf(g.gamma_gap));

    // full projection: the common beam is the (phase-aligned) channel itself
    const ComplexVec pc = common_precoder(p);
    CHECK(std::abs(inner_product(normalized(p.h1), pc)) == doctest::Approx(1.0).epsilon(1e-12));

    SUBCASE("single antenna is rejected")
    {
        const ChannelPair one =
            make_channel_pair(ComplexVec{Complex(1.0, 0.0)}, ComplexVec{Complex(0.5, 0.0)});
        CHECK_THROWS_AS(zf_directions(one), std::invalid_argument);
    }
}
