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

#include "rsmmf/oracle.hpp"

#include "rsmmf/channel.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

using namespace rsmmf;

TEST_CASE("piecewise objective: closed expressions at the region landmarks")
{
    EffectiveGains g;
    g.rho = 1.0;
    g.rho1 = 2.0;
    g.rho2 = 1.0;
    g.rho_c1 = 1.5;
    g.rho_c2 = 0.75;
    g.gamma_gap = 1.0 / g.rho2 - 1.0 / g.rho1; // 0.5
    const double P = 10.0;

    // t = 0: multicast, half of log2(1 + rho_c2 * P)
    CHECK(oracle::piecewise_objective(g, 0.0, P) == doctest::Approx(0.5 * std::log2(8.5)).epsilon(1e-14));

    // t = 1: SDMA, weak-user rate with p2 = (P - gap)/2
    const double p2 = 0.5 * (P - g.gamma_gap);
    CHECK(oracle::piecewise_objective(g, 1.0, P) == doctest::Approx(std::log2(1.0 + p2)).epsilon(1e-14));

    CHECK_THROWS_AS(oracle::piecewise_objective(g, -0.01, P), std::invalid_argument);
    CHECK_THROWS_AS(oracle::piecewise_objective(g, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("grid spec validation rejects sub-resolution refinement")
{
    oracle::GridSpec spec;
    CHECK_NOTHROW(spec.validate()); // defaults: 1e-4 down to 1e-6

    spec.refine_rounds = 5; // would reach 1e-9
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

    spec = {};
    spec.coarse_step = 0.0;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
    spec = {};
    spec.refine_factor = 1;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
}

TEST_CASE("grid search agrees with the closed-form solver")
{
    ChannelEnsembleSpec spec;
    spec.count = 40;
    spec.seed = 3;

    for (const ChannelPair &p : sample_gaussian_ensemble(spec))
    {
        const EffectiveGains g = effective_gains(p);
        for (double P : {1.0, 10.0, 100.0})
        {
            const MmfSolution sol = solve_mmf(g, P);
            const oracle::GridResult res = oracle::grid_mmf(g, P);
            CHECK(std::abs(sol.mmf - res.mmf_best) <= 1e-3);
            // the grid can only see feasible points
            CHECK(res.mmf_best <= sol.mmf + 1e-9);
        }
    }
}

TEST_CASE("grid search confirms the branch-boundary regression case")
{
    const double rho = 1.0 - 0.95 * 0.95;
    EffectiveGains g;
    g.rho = rho;
    g.rho1 = rho;
    g.rho2 = 0.5 * rho;
    g.rho_c1 = 0.975;
    g.rho_c2 = 0.4875;
    g.gamma_gap = 1.0 / g.rho2 - 1.0 / g.rho1;
    const double P = 2.0 * g.gamma_gap;

    const MmfSolution sol = solve_mmf(g, P);
    const oracle::GridResult res = oracle::grid_mmf(g, P);
    CHECK(std::abs(sol.mmf - res.mmf_best) <= 1e-6);
    CHECK(res.t_best == doctest::Approx(sol.t_opt).epsilon(1e-9));
}

TEST_CASE("collinear channels: the grid lands on t = 0")
{
    EffectiveGains g;
    g.rho = 0.0;
    g.rho1 = 0.0;
    g.rho2 = 0.0;
    g.rho_c1 = 8.0;
    g.rho_c2 = 4.0;
    g.gamma_gap = std::numeric_limits<double>::infinity();

    const oracle::GridResult res = oracle::grid_mmf(g, 10.0, {});
    CHECK(res.t_best == 0.0);
    CHECK(res.mmf_best == doctest::Approx(0.5 * std::log2(41.0)).epsilon(1e-14));
}

TEST_CASE("common-split grid is dominated by the closed form")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uni(0.0, 1.0);

    for (int i = 0; i < 200; ++i)
    {
        RateTuple r;
        r.r1 = 3.0 * uni(rng);
        r.r2 = r.r1 * uni(rng);
        r.rc = 0.05 + 2.0 * uni(rng);
        r.rc1 = r.rc2 = r.rc;

        const CommonSplit closed = optimal_common_split(r);
        const CommonSplit grid = oracle::grid_common_split(r, 1e-3);

        CHECK(closed.mmf >= grid.mmf - 1e-12);
        CHECK(closed.mmf - grid.mmf <= 1e-3); // grid is step-tight
        CHECK(grid.c1 >= 0.0);
        CHECK(grid.c1 + grid.c2 <= r.rc + 1e-12);
    }

    SUBCASE("step validation")
    {
        RateTuple r;
        r.r1 = 1.0;
        r.rc = 0.5;
        CHECK_THROWS_AS(oracle::grid_common_split(r, 0.2), std::invalid_argument); // > rc/10
        CHECK_THROWS_AS(oracle::grid_common_split(r, 0.0), std::invalid_argument);
    }
}

TEST_CASE("full power-simplex grid stays within a small margin of the closed form")
{
    ChannelEnsembleSpec spec;
    spec.count = 15;
    spec.seed = 17;

    double worst_under = 0.0;
    double worst_over = 0.0;
    for (const ChannelPair &p : sample_gaussian_ensemble(spec))
    {
        const EffectiveGains g = effective_gains(p);
        const double P = 10.0;
        const MmfSolution sol = solve_mmf(g, P);
        const double grid = oracle::grid_power_3d(g, P, 60);

        worst_under = std::max(worst_under, sol.mmf - grid);
        worst_over = std::max(worst_over, grid - sol.mmf);
    }
    // the free search relaxes the water-filling structure, so it may sit a
    // little above the closed form; far above would mean a broken solver,
    // far below a broken grid
    CHECK(worst_over <= 0.3);
    CHECK(worst_under <= 0.2);

    CHECK_THROWS_AS(oracle::grid_power_3d(effective_gains(make_region_channel(0.0, 1.0)), 10.0, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(oracle::grid_power_3d(effective_gains(make_region_channel(0.0, 1.0)), 10.0, 401),
                    std::invalid_argument);
}
