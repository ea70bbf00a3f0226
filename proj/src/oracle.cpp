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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rsmmf::oracle
{

namespace
{

double lg2p1(double x)
{
    return std::log1p(x) / M_LN2;
}

// Best min-total over all feasible divisions of rc, for either user order:
// each user first gets min(r1, r2) matched, the rest of the analysis
// reduces to sharing the surplus. Equivalent closed form below.
double best_split_min_total(double r1, double r2, double rc)
{
    return 0.5 * (r1 + r2 + rc - std::max(std::abs(r1 - r2) - rc, 0.0));
}

} // namespace

void GridSpec::validate() const
{
    if (!(coarse_step > 0.0) || !(coarse_step <= 0.5))
        throw std::invalid_argument("GridSpec: coarse_step must lie in (0, 0.5]");
    if (refine_factor < 2)
        throw std::invalid_argument("GridSpec: refine_factor must be >= 2");
    if (refine_rounds < 0)
        throw std::invalid_argument("GridSpec: refine_rounds must be >= 0");

    const double final_step = coarse_step / std::pow(static_cast<double>(refine_factor), refine_rounds);
    if (final_step < 1e-8)
        throw std::invalid_argument("GridSpec: final step below 1e-8 would only resolve rounding noise");
}

double piecewise_objective(const EffectiveGains &g, double t, double total_power)
{
    if (!(t >= 0.0) || !(t <= 1.0))
        throw std::invalid_argument("piecewise_objective: t must lie in [0, 1]");
    if (!std::isfinite(total_power) || !(total_power > 0.0))
        throw std::invalid_argument("piecewise_objective: total_power must be positive and finite");

    const double tp = t * total_power;
    const double gap = g.gamma_gap;

    double p1, p2;
    if (tp <= gap)
    {
        p1 = tp;
        p2 = 0.0;
    }
    else
    {
        p1 = 0.5 * (tp + gap);
        p2 = 0.5 * (tp - gap);
    }
    const double pc = (1.0 - t) * total_power;

    const double r1 = lg2p1(g.rho1 * p1);
    const double r2 = lg2p1(g.rho2 * p2);
    const double rc =
        std::min(lg2p1(g.rho_c1 * pc / (1.0 + g.rho1 * p1)), lg2p1(g.rho_c2 * pc / (1.0 + g.rho2 * p2)));

    double best = -std::numeric_limits<double>::infinity();

    if (t == 0.0)
        best = std::max(best, 0.5 * rc); // multicast: common stream shared evenly
    if (t == 1.0)
        best = std::max(best, std::min(r1, r2)); // SDMA: no common stream
    if (t > 0.0 && tp <= gap)
        best = std::max(best, std::min(r1, r2 + rc)); // NOMA
    if (t < 1.0 && tp >= gap)
        best = std::max(best, best_split_min_total(r1, r2, rc)); // RSMA (closed at the boundary)

    return best;
}

GridResult grid_mmf(const EffectiveGains &g, double total_power, const GridSpec &spec)
{
    spec.validate();

    GridResult res{0.0, piecewise_objective(g, 0.0, total_power)};
    auto consider = [&](double t) {
        const double v = piecewise_objective(g, t, total_power);
        if (v > res.mmf_best)
        {
            res.mmf_best = v;
            res.t_best = t;
        }
    };

    // Exact structural points first: endpoints and the branch boundary.
    consider(1.0);
    if (!g.collinear())
    {
        const double t_lo = g.gamma_gap / total_power;
        if (t_lo > 0.0 && t_lo < 1.0)
            consider(t_lo);
    }

    const long n = std::lround(std::ceil(1.0 / spec.coarse_step));
    for (long i = 1; i < n; ++i)
        consider(static_cast<double>(i) * spec.coarse_step);

    // Local refinement around the incumbent. The incumbent only improves,
    // so the structural points above can never be lost.
    double step = spec.coarse_step;
    for (int round = 0; round < spec.refine_rounds; ++round)
    {
        const double center = res.t_best;
        const double fine = step / spec.refine_factor;
        for (int k = -spec.refine_factor; k <= spec.refine_factor; ++k)
        {
            const double t = std::clamp(center + k * fine, 0.0, 1.0);
            consider(t);
        }
        step = fine;
    }
    return res;
}

CommonSplit grid_common_split(const RateTuple &rates, double step)
{
    if (!(step > 0.0))
        throw std::invalid_argument("grid_common_split: step must be positive");
    if (rates.rc > 0.0 && step > rates.rc / 10.0)
        throw std::invalid_argument("grid_common_split: step too coarse for this rc");

    CommonSplit best{0.0, rates.rc, std::min(rates.r1, rates.r2 + rates.rc)};
    if (rates.rc <= 0.0)
    {
        best.c2 = 0.0;
        best.mmf = std::min(rates.r1, rates.r2);
        return best;
    }

    const long n = std::lround(std::floor(rates.rc / step));
    for (long k = 0; k <= n + 1; ++k)
    {
        const double c1 = std::min(static_cast<double>(k) * step, rates.rc);
        const double c2 = rates.rc - c1;
        const double v = std::min(rates.r1 + c1, rates.r2 + c2);
        if (v > best.mmf)
            best = CommonSplit{c1, c2, v};
    }
    return best;
}

double grid_power_3d(const EffectiveGains &g, double total_power, int n)
{
    if (n < 2 || n > 400)
        throw std::invalid_argument("grid_power_3d: n must lie in [2, 400]");
    if (!std::isfinite(total_power) || !(total_power > 0.0))
        throw std::invalid_argument("grid_power_3d: total_power must be positive and finite");

    const double step = total_power / (n - 1);
    double best = -std::numeric_limits<double>::infinity();

    for (int i = 0; i < n; ++i)
    {
        const double p1 = i * step;
        for (int j = 0; j < n - i; ++j)
        {
            const double p2 = j * step;
            const double pc = std::max(total_power - p1 - p2, 0.0);

            const double r1 = lg2p1(g.rho1 * p1);
            const double r2 = lg2p1(g.rho2 * p2);
            const double rc =
                std::min(lg2p1(g.rho_c1 * pc / (1.0 + g.rho1 * p1)), lg2p1(g.rho_c2 * pc / (1.0 + g.rho2 * p2)));

            best = std::max(best, best_split_min_total(r1, r2, rc));
        }
    }
    return best;
}

} // namespace rsmmf::oracle
