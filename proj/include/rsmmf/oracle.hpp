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
// Brute-force reference solvers. These deliberately do not reuse the
// closed-form machinery in allocator.cpp: the objective is written out
// again from the rate expressions and maximized by exhaustive search, so
// that the two paths can check each other. Slow by design; used by tests
// and the `verify` command only.

#pragma once

#include "rsmmf/allocator.hpp"
#include "rsmmf/beamform.hpp"

namespace rsmmf::oracle
{

/// Search resolution for grid_mmf. The refinement schedule must not try to
/// resolve t below 1e-8 (validate() rejects such specs): at that scale the
/// objective is flat to double precision and the search would only chase
/// rounding noise.
struct GridSpec
{
    double coarse_step = 1e-4;
    int refine_factor = 10;
    int refine_rounds = 2;

    void validate() const;
};

struct GridResult
{
    double t_best = 0.0;
    double mmf_best = 0.0;
};

/// MMF value of the best multiple-access mode at a given split t, computed
/// from scratch. At the NOMA/RSMA branch boundary both modes apply and the
/// larger value is kept.
double piecewise_objective(const EffectiveGains &g, double t, double total_power);

/// Exhaustive search of piecewise_objective over t in [0, 1]: coarse grid
/// plus the exact region endpoints and branch boundary, then local
/// refinement around the incumbent.
GridResult grid_mmf(const EffectiveGains &g, double total_power, const GridSpec &spec = {});

/// Exhaustive search over the division of rates.rc (step must be positive
/// and, when rc > 0, no larger than rc / 10). Valid for r1 >= r2.
CommonSplit grid_common_split(const RateTuple &rates, double step);

/// Best MMF value over the full 3-d power simplex p1 + p2 + pc = total,
/// n points per axis (2 <= n <= 400), with the common rate split optimally
/// in symmetric form (no user-order assumption). This relaxes the
/// water-filling structure entirely and bounds how much the closed form
/// can leave on the table.
double grid_power_3d(const EffectiveGains &g, double total_power, int n);

} // namespace rsmmf::oracle
