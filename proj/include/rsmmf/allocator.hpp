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
//
// Closed-form max-min fair (MMF) allocation over the private/common power
// split t in [0,1]. With total power P, the private budget tP is
// water-filled between the two users, (1-t)P feeds the common stream, and
// the common rate is split to equalize the user totals. The t axis
// decomposes into
//
//   t = 0          Multicast   (common stream only)
//   0 < t <= G/P   NOMA        (weak user rides the common stream only)
//   G/P < t < 1    RSMA        (both private streams active)
//   t = 1          SDMA        (no common stream)
//
// where G = gamma_gap = 1/rho2 - 1/rho1. The global optimum is found by
// evaluating a small closed-form candidate set; no iteration anywhere.

#pragma once

#include "rsmmf/beamform.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace rsmmf
{

enum class Strategy
{
    Rsma,
    Noma,
    Sdma,
    Multicast
};

const char *to_string(Strategy s);

/// Outcome of the two-user water-filling at split t: p1 + p2 = t * total,
/// pc = (1 - t) * total, and p1 - p2 = gamma_gap whenever p2 > 0.
struct PowerSplit
{
    double t = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
    double pc = 0.0;
    double total = 0.0;
};

/// Achievable rates (bits/s/Hz) at a power split. rc1/rc2 are the per-user
/// decoding rates of the common stream, rc = min(rc1, rc2) the rate it can
/// actually carry.
struct RateTuple
{
    double r1 = 0.0;
    double r2 = 0.0;
    double rc1 = 0.0;
    double rc2 = 0.0;
    double rc = 0.0;
};

/// Division of the common rate between the users and the resulting
/// min user total.
struct CommonSplit
{
    double c1 = 0.0;
    double c2 = 0.0;
    double mmf = 0.0;
};

/// One closed-form candidate operating point.
struct Candidate
{
    double t = 0.0;
    Strategy strategy = Strategy::Multicast;
};

struct CandidateEval
{
    double t = 0.0;
    Strategy strategy = Strategy::Multicast;
    double mmf = 0.0;
};

/// Full solution record. Users are in canonical (stronger-first) order;
/// mapping back to caller labels is the caller's job (see ChannelPair).
struct MmfSolution
{
    Strategy strategy = Strategy::Multicast;
    double t_opt = 0.0;
    PowerSplit split;
    RateTuple rates;
    double c1 = 0.0;
    double c2 = 0.0;
    double user_total1 = 0.0; ///< r1 + c1
    double user_total2 = 0.0; ///< r2 + c2
    double mmf = 0.0;         ///< min(user_total1, user_total2)

    /// Every candidate that was evaluated, in construction order. The RSMA
    /// entry pinned at t = gamma_gap/P (if present) is the continuous
    /// extension of the RSMA branch onto the NOMA boundary; strategy_mmf's
    /// open-interval contract deliberately excludes that point.
    std::vector<CandidateEval> candidates;
};

/// Best achievable MMF value per strategy, each maximized over its own
/// t region. A strategy whose region is empty reports 0.
struct StrategyBests
{
    double rsma = 0.0;
    double noma = 0.0;
    double sdma = 0.0;
    double multicast = 0.0;
};

/// The two closed-form high-SNR MMF gaps of RSMA over SDMA, in bits:
/// `boundary` applies when the optimum sits on the NOMA/RSMA branch
/// boundary, `interior` when it is the interior stationary point.
struct HighSnrGaps
{
    double boundary = 0.0;
    double interior = 0.0;
};

/// Split the private budget t * total_power between the users
/// (water-filling): all of it to user 1 while t * total <= gamma_gap,
/// else both users get power with p1 - p2 = gamma_gap.
/// Throws std::invalid_argument for t outside [0,1] or total_power <= 0.
PowerSplit water_fill(const EffectiveGains &g, double t, double total_power);

/// Rates (base-2, via log1p) at a given split. Private streams are
/// zero-forced, so user k's common-stream SINR sees only its own private
/// stream as interference.
RateTuple rates_at(const EffectiveGains &g, const PowerSplit &split);

/// Max-min optimal division of rates.rc between the users. Valid for
/// r1 >= r2 (canonical order): either the whole common rate goes to the
/// weak user, or the surplus beyond the rate lead is shared equally.
CommonSplit optimal_common_split(const RateTuple &rates);

/// MMF value of one strategy at one operating point.
///
/// SDMA and Multicast pin t to 1 and 0 and ignore the argument. NOMA
/// requires t in (0, min(gamma_gap/P, 1)], RSMA requires t strictly inside
/// (gamma_gap/P, 1); anything else raises std::domain_error naming the
/// valid interval.
double strategy_mmf(const EffectiveGains &g, double t, double total_power, Strategy s);

/// The closed-form candidate set: region endpoints, the NOMA rate-crossing
/// point, the RSMA branch boundary and the two RSMA stationary points,
/// each kept only when finite, well-conditioned and inside its region.
/// Collinear channels yield the single candidate {t = 0, Multicast}.
std::vector<Candidate> candidate_splits(const EffectiveGains &g, double total_power);

/// Globally optimal MMF allocation: evaluates candidate_splits plus the
/// RSMA closure at the branch boundary and keeps the best (ties go to the
/// earliest candidate in construction order).
MmfSolution solve_mmf(const EffectiveGains &g, double total_power);

/// Per-strategy optima (see StrategyBests). solve_mmf equals the max of
/// the four values by construction.
StrategyBests strategy_bests(const EffectiveGains &g, double total_power);

/// Closed-form asymptotic gaps (see HighSnrGaps). Requires non-collinear
/// channels with rho1 > rho2 and 2 rho_c2 > rho2; std::domain_error
/// otherwise.
HighSnrGaps high_snr_gaps(const EffectiveGains &g);

/// Re-check every structural invariant of a solution (power conservation,
/// region membership, split consistency, candidate dominance).
/// Throws std::logic_error with a description of the first violation.
void validate_solution(const MmfSolution &sol, double total_power);

nlohmann::json to_json(const MmfSolution &sol);

} // namespace rsmmf
