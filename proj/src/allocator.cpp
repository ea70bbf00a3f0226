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

#include "rsmmf/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace rsmmf
{

namespace
{

constexpr double kInvLn2 = 1.4426950408889634074;

double log2_1p(double x)
{
    return std::log1p(x) * kInvLn2;
}

void check_inputs(const EffectiveGains &g, double total_power, const char *who)
{
    if (!std::isfinite(total_power) || !(total_power > 0.0))
        throw std::invalid_argument(std::string(who) + ": total_power must be positive and finite");
    if (!(g.rho1 >= g.rho2) || !(g.rho2 >= 0.0))
        throw std::invalid_argument(std::string(who) + ": gains must satisfy rho1 >= rho2 >= 0 (canonical order)");
    if (!(g.rho_c1 >= 0.0) || !(g.rho_c2 >= 0.0))
        throw std::invalid_argument(std::string(who) + ": common-stream gains must be non-negative");
}

// Common rate allocation and resulting MMF value for one strategy at an
// already water-filled operating point. Shared by strategy_mmf, solve_mmf
// and strategy_bests so the three agree bitwise.
CommonSplit split_for(Strategy s, const RateTuple &r)
{
    switch (s)
    {
    case Strategy::Rsma:
    case Strategy::Multicast:
        return optimal_common_split(r);
    case Strategy::Noma:
        return CommonSplit{0.0, r.rc, std::min(r.r1, r.r2 + r.rc)};
    case Strategy::Sdma:
        return CommonSplit{0.0, 0.0, std::min(r.r1, r.r2)};
    }
    throw std::logic_error("split_for: unknown strategy");
}

double eval_mmf(const EffectiveGains &g, double t, double total_power, Strategy s)
{
    const PowerSplit split = water_fill(g, t, total_power);
    return split_for(s, rates_at(g, split)).mmf;
}

// Upper end of the NOMA region, expressed on the t axis. Candidate
// construction and the strategy_mmf region checks must share this exact
// expression; comparing t * P against gamma_gap instead can flip the
// verdict by one ulp at the boundary.
double noma_upper(const EffectiveGains &g, double total_power)
{
    return std::min(g.gamma_gap / total_power, 1.0);
}

} // namespace

const char *to_string(Strategy s)
{
    switch (s)
    {
    case Strategy::Rsma:
        return "rsma";
    case Strategy::Noma:
        return "noma";
    case Strategy::Sdma:
        return "sdma";
    case Strategy::Multicast:
        return "multicast";
    }
    return "?";
}

PowerSplit water_fill(const EffectiveGains &g, double t, double total_power)
{
    if (!std::isfinite(total_power) || !(total_power > 0.0))
        throw std::invalid_argument("water_fill: total_power must be positive and finite");
    if (!(t >= 0.0) || !(t <= 1.0))
        throw std::invalid_argument("water_fill: t must lie in [0, 1]");

    const double tp = t * total_power;

    PowerSplit s;
    s.t = t;
    s.total = total_power;
    s.pc = (1.0 - t) * total_power;
    if (tp <= g.gamma_gap) // also the collinear case, gamma_gap = +inf
    {
        s.p1 = tp;
        s.p2 = 0.0;
    }
    else
    {
        s.p1 = 0.5 * (tp + g.gamma_gap);
        s.p2 = 0.5 * (tp - g.gamma_gap);
    }
    return s;
}

RateTuple rates_at(const EffectiveGains &g, const PowerSplit &split)
{
    const double q1 = g.rho1 * split.p1;
    const double q2 = g.rho2 * split.p2;

    RateTuple r;
    r.r1 = log2_1p(q1);
    r.r2 = log2_1p(q2);
    r.rc1 = log2_1p(g.rho_c1 * split.pc / (1.0 + q1));
    r.rc2 = log2_1p(g.rho_c2 * split.pc / (1.0 + q2));
    r.rc = std::min(r.rc1, r.rc2);
    return r;
}

CommonSplit optimal_common_split(const RateTuple &rates)
{
    const double lead = rates.r1 - rates.r2;

    CommonSplit cs;
    if (rates.rc <= lead)
    {
        cs.c1 = 0.0;
        cs.c2 = rates.rc;
    }
    else
    {
        cs.c1 = 0.5 * (rates.rc - lead);
        cs.c2 = rates.rc - cs.c1;
    }
    cs.mmf = std::min(rates.r1 + cs.c1, rates.r2 + cs.c2);
    return cs;
}

double strategy_mmf(const EffectiveGains &g, double t, double total_power, Strategy s)
{
    check_inputs(g, total_power, "strategy_mmf");

    switch (s)
    {
    case Strategy::Sdma:
        return eval_mmf(g, 1.0, total_power, s);
    case Strategy::Multicast:
        return eval_mmf(g, 0.0, total_power, s);
    case Strategy::Noma:
    {
        const double hi = noma_upper(g, total_power);
        if (!(t > 0.0) || !(t <= hi))
        {
            std::ostringstream msg;
            msg << "strategy_mmf: NOMA is valid for t in (0, " << hi << "], got t = " << t;
            throw std::domain_error(msg.str());
        }
        return eval_mmf(g, t, total_power, s);
    }
    case Strategy::Rsma:
    {
        const double lo = g.gamma_gap / total_power;
        if (!(t > lo) || !(t < 1.0))
        {
            std::ostringstream msg;
            msg << "strategy_mmf: RSMA is valid for t in (" << lo << ", 1), got t = " << t;
            throw std::domain_error(msg.str());
        }
        return eval_mmf(g, t, total_power, s);
    }
    }
    throw std::invalid_argument("strategy_mmf: unknown strategy");
}

std::vector<Candidate> candidate_splits(const EffectiveGains &g, double total_power)
{
    check_inputs(g, total_power, "candidate_splits");

    std::vector<Candidate> out;
    out.push_back({0.0, Strategy::Multicast});
    if (g.collinear())
        return out; // only the common stream can carry information

    const double P = total_power;
    const double gap = g.gamma_gap;
    const double t_lo = gap / P;          // NOMA/RSMA branch boundary
    const double hi = noma_upper(g, P);   // min(t_lo, 1)

    // Candidates whose closed forms involve a division are dropped when the
    // denominator is smaller than this; the adjacent region-boundary
    // candidates cover those degenerate cases.
    const double eps_den = 1e-12 * std::max(g.rho1 * P, 1.0);

    // NOMA: crossing of the private and common rate curves, then the region
    // boundary itself.
    const double t_d = g.rho_c2 / (g.rho1 + g.rho_c2);
    if (t_d > 0.0 && t_d <= hi)
        out.push_back({t_d, Strategy::Noma});
    if (t_lo > 0.0 && t_lo < 1.0)
        out.push_back({t_lo, Strategy::Noma});

    // RSMA stationary points, only meaningful when the region is non-empty.
    if (t_lo < 1.0)
    {
        const double den_a = P * (g.rho1 - g.rho2 + 2.0 * g.rho_c2);
        if (std::abs(den_a) > eps_den)
        {
            const double t_a = (2.0 * g.rho_c2 * P - (g.rho1 + g.rho2) * gap) / den_a;
            if (std::isfinite(t_a) && t_a > t_lo && t_a < 1.0)
                out.push_back({t_a, Strategy::Rsma});
        }
        const double den_b = P * (g.rho2 - 2.0 * g.rho_c2);
        if (std::abs(den_b) > eps_den)
        {
            const double t_b =
                (0.5 * g.rho2 * gap - g.rho_c2 * P - 1.0) / den_b - 1.0 / (g.rho1 * P) - gap / (2.0 * P);
            if (std::isfinite(t_b) && t_b > t_lo && t_b < 1.0)
                out.push_back({t_b, Strategy::Rsma});
        }
    }

    out.push_back({1.0, Strategy::Sdma});
    return out;
}

MmfSolution solve_mmf(const EffectiveGains &g, double total_power)
{
    check_inputs(g, total_power, "solve_mmf");

    const std::vector<Candidate> cands = candidate_splits(g, total_power);

    std::vector<CandidateEval> evals;
    evals.reserve(cands.size() + 1);
    for (const Candidate &c : cands)
        evals.push_back({c.t, c.strategy, eval_mmf(g, c.t, total_power, c.strategy)});

    // The objective jumps upward at the branch boundary whenever the common
    // stream can outrun user 1 there, so the RSMA closure at t = gap/P must
    // be evaluated as well; the open-interval stationary points do not
    // cover it.
    if (!g.collinear())
    {
        const double t_lo = g.gamma_gap / total_power;
        if (t_lo > 0.0 && t_lo < 1.0)
            evals.push_back({t_lo, Strategy::Rsma, eval_mmf(g, t_lo, total_power, Strategy::Rsma)});
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i < evals.size(); ++i)
        if (evals[i].mmf > evals[best].mmf)
            best = i;

    const Strategy s = evals[best].strategy;
    const double t_opt = evals[best].t;

    MmfSolution sol;
    sol.strategy = s;
    sol.t_opt = t_opt;
    sol.split = water_fill(g, t_opt, total_power);
    sol.rates = rates_at(g, sol.split);

    const CommonSplit cs = split_for(s, sol.rates);
    sol.c1 = cs.c1;
    sol.c2 = cs.c2;
    sol.user_total1 = sol.rates.r1 + cs.c1;
    sol.user_total2 = sol.rates.r2 + cs.c2;
    sol.mmf = std::min(sol.user_total1, sol.user_total2);
    sol.candidates = std::move(evals);
    return sol;
}

StrategyBests strategy_bests(const EffectiveGains &g, double total_power)
{
    check_inputs(g, total_power, "strategy_bests");

    StrategyBests b;
    b.multicast = eval_mmf(g, 0.0, total_power, Strategy::Multicast);
    b.sdma = eval_mmf(g, 1.0, total_power, Strategy::Sdma);

    // NOMA value is min(increasing, decreasing) in t, so its maximum sits at
    // the exact crossing t_d or, when that lies outside, at the region edge.
    const double hi = noma_upper(g, total_power);
    if (hi > 0.0)
    {
        const double t_d = g.rho_c2 / (g.rho1 + g.rho_c2);
        b.noma = eval_mmf(g, std::min(t_d, hi), total_power, Strategy::Noma);
    }

    // RSMA: closures of the region endpoints plus any interior stationary
    // points. Empty region (gap >= P, or collinear) reports 0.
    if (!g.collinear())
    {
        const double t_lo = g.gamma_gap / total_power;
        if (t_lo < 1.0)
        {
            double v = std::max(eval_mmf(g, t_lo, total_power, Strategy::Rsma),
                                eval_mmf(g, 1.0, total_power, Strategy::Rsma));
            for (const Candidate &c : candidate_splits(g, total_power))
                if (c.strategy == Strategy::Rsma)
                    v = std::max(v, eval_mmf(g, c.t, total_power, c.strategy));
            b.rsma = v;
        }
    }
    return b;
}

HighSnrGaps high_snr_gaps(const EffectiveGains &g)
{
    if (g.collinear())
        throw std::domain_error("high_snr_gaps: collinear channels carry no private streams");
    if (!(g.rho1 > g.rho2))
        throw std::domain_error("high_snr_gaps: requires rho1 > rho2 strictly");
    if (!(2.0 * g.rho_c2 > g.rho2))
        throw std::domain_error("high_snr_gaps: requires 2 rho_c2 > rho2 (fails only for orthogonal channels)");

    HighSnrGaps gaps;
    gaps.boundary = std::log2(2.0 * g.rho1 * g.rho_c2 / (g.rho2 * (g.rho1 - g.rho2 + 2.0 * g.rho_c2)));
    gaps.interior = 0.5 * std::log2(g.rho1 * g.rho_c2 * g.rho_c2 / (g.rho2 * g.rho2 * (2.0 * g.rho_c2 - g.rho2)));
    return gaps;
}

void validate_solution(const MmfSolution &sol, double total_power)
{
    auto fail = [](const std::string &what) { throw std::logic_error("validate_solution: " + what); };

    const double ptol = 1e-9 * std::max(total_power, 1.0);
    const PowerSplit &sp = sol.split;

    if (!(sol.t_opt >= 0.0) || !(sol.t_opt <= 1.0))
        fail("t_opt outside [0, 1]");
    if (sp.p1 < 0.0 || sp.p2 < 0.0 || sp.pc < 0.0)
        fail("negative power");
    if (sp.p1 + 1e-12 * std::max(total_power, 1.0) < sp.p2)
        fail("water-filling order violated (p1 < p2)");
    if (std::abs(sp.p1 + sp.p2 + sp.pc - total_power) > ptol)
        fail("power not conserved");
    if (std::abs(sp.p1 + sp.p2 - sol.t_opt * total_power) > ptol)
        fail("private budget does not match t_opt");

    const RateTuple &r = sol.rates;
    for (double x : {r.r1, r.r2, r.rc1, r.rc2, r.rc})
        if (!std::isfinite(x) || x < 0.0)
            fail("non-finite or negative rate");
    if (r.rc != std::min(r.rc1, r.rc2))
        fail("rc is not the min of the per-user common rates");

    if (sol.c1 < 0.0 || sol.c2 < 0.0)
        fail("negative common-rate share");
    if (sol.c1 + sol.c2 > r.rc + 1e-9 * std::max(r.rc, 1.0))
        fail("common-rate shares exceed rc");

    if (sol.user_total1 != r.r1 + sol.c1 || sol.user_total2 != r.r2 + sol.c2)
        fail("user totals inconsistent with rates and shares");
    if (sol.mmf != std::min(sol.user_total1, sol.user_total2))
        fail("mmf is not the min user total");

    if (sol.candidates.empty())
        fail("empty candidate list");
    for (const CandidateEval &e : sol.candidates)
        if (sol.mmf < e.mmf)
            fail("a candidate beats the reported optimum");
}

nlohmann::json to_json(const MmfSolution &sol)
{
    nlohmann::json cands = nlohmann::json::array();
    for (const CandidateEval &e : sol.candidates)
        cands.push_back({{"t", e.t}, {"strategy", to_string(e.strategy)}, {"mmf", e.mmf}});

    return nlohmann::json{
        {"strategy", to_string(sol.strategy)},
        {"t_opt", sol.t_opt},
        {"split",
         {{"t", sol.split.t}, {"p1", sol.split.p1}, {"p2", sol.split.p2}, {"pc", sol.split.pc},
          {"total", sol.split.total}}},
        {"rates",
         {{"r1", sol.rates.r1}, {"r2", sol.rates.r2}, {"rc1", sol.rates.rc1}, {"rc2", sol.rates.rc2},
          {"rc", sol.rates.rc}}},
        {"c1", sol.c1},
        {"c2", sol.c2},
        {"user_total1", sol.user_total1},
        {"user_total2", sol.user_total2},
        {"mmf", sol.mmf},
        {"candidates", cands}};
}

} // namespace rsmmf
