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
// Microbenchmarks: the closed-form solve itself, the brute-force oracle it
// replaces, and the experiment drivers on both execution policies. Run the
// Serial/Parallel pairs to see the OpenMP speedup on this machine.

#include "rsmmf/beamform.hpp"
#include "rsmmf/channel.hpp"
#include "rsmmf/harness.hpp"
#include "rsmmf/oracle.hpp"

#include <benchmark/benchmark.h>

namespace
{

using namespace rsmmf;
using harness::ExecPolicy;

ChannelPair fixed_pair()
{
    ChannelEnsembleSpec es;
    es.count = 1;
    es.seed = 7;
    return sample_gaussian_ensemble(es).front();
}

void BM_SolveClosedForm(benchmark::State &state)
{
    const ChannelPair pair = fixed_pair();
    for (auto _ : state)
    {
        const EffectiveGains g = effective_gains(pair);
        benchmark::DoNotOptimize(solve_mmf(g, 100.0).mmf);
    }
}
BENCHMARK(BM_SolveClosedForm);

void BM_OracleGridSearch(benchmark::State &state)
{
    const EffectiveGains g = effective_gains(fixed_pair());
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle::grid_mmf(g, 100.0).mmf_best);
}
BENCHMARK(BM_OracleGridSearch);

void run_sweep(benchmark::State &state, ExecPolicy policy)
{
    harness::SweepSpec spec;
    spec.snr_db_list = {0.0, 15.0, 30.0};
    spec.ensemble.count = 200;
    for (auto _ : state)
        benchmark::DoNotOptimize(harness::run_snr_sweep(spec, policy).front().mean_mmf);
}
void BM_SweepSerial(benchmark::State &state) { run_sweep(state, ExecPolicy::Serial); }
void BM_SweepParallel(benchmark::State &state) { run_sweep(state, ExecPolicy::Parallel); }
BENCHMARK(BM_SweepSerial);
BENCHMARK(BM_SweepParallel);

void run_region(benchmark::State &state, ExecPolicy policy)
{
    const auto spec = harness::RegionSpec::default_grid(20.0, 31);
    for (auto _ : state)
        benchmark::DoNotOptimize(harness::run_region_map(spec, policy).front().t_opt);
}
void BM_RegionSerial(benchmark::State &state) { run_region(state, ExecPolicy::Serial); }
void BM_RegionParallel(benchmark::State &state) { run_region(state, ExecPolicy::Parallel); }
BENCHMARK(BM_RegionSerial);
BENCHMARK(BM_RegionParallel);

} // namespace

BENCHMARK_MAIN();
