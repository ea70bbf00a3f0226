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
// Experiment drivers. Each driver fills per-item slots inside an OpenMP
// loop and reduces serially in index order afterwards, so Serial and
// Parallel policies produce bit-identical results; Serial is kept as the
// reference implementation for tests and benchmarks.

#pragma once

#include "rsmmf/allocator.hpp"
#include "rsmmf/channel.hpp"
#include "rsmmf/oracle.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace rsmmf::harness
{

enum class ExecPolicy
{
    Serial,
    Parallel
};

/// Mean MMF per SNR point and strategy over one Rayleigh ensemble.
struct SweepSpec
{
    std::vector<double> snr_db_list = {0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
    ChannelEnsembleSpec ensemble;

    void validate() const;
};

struct SweepRow
{
    double snr_db = 0.0;
    std::string strategy; ///< "proposed" (full solve) or one of the fixed modes
    double mean_mmf = 0.0;
};

std::vector<SweepRow> run_snr_sweep(const SweepSpec &spec, ExecPolicy policy = ExecPolicy::Parallel);

/// Strategy/gain map over the deterministic (rho, gamma_db) channel family.
struct RegionSpec
{
    std::vector<double> rho_axis;
    std::vector<double> gamma_db_axis;
    double snr_db = 30.0;

    /// n x n grid: rho_i = (i+1)/n, gamma linearly spaced on [lo, hi].
    static RegionSpec default_grid(double snr_db, int n = 101, double gamma_lo = -20.0, double gamma_hi = 0.0);

    void validate() const;
};

struct RegionCell
{
    double rho = 0.0;
    double gamma_db = 0.0;
    double t_opt = 0.0;
    Strategy strategy = Strategy::Multicast;
    double rel_gain_pct = 0.0; ///< RSMA best over best fixed alternative, percent
};

std::vector<RegionCell> run_region_map(const RegionSpec &spec, ExecPolicy policy = ExecPolicy::Parallel);

/// Wall-clock statistics of the full closed-form pipeline
/// (effective gains + candidate evaluation + selection), measured per
/// solve over a fixed internally-seeded ensemble. Always serial.
struct TimingResult
{
    int count = 0;
    double mean_us = 0.0;
    double p99_us = 0.0;
};

TimingResult run_timing(int count, double snr_db);

/// Randomized cross-check of the closed form against the grid oracle.
struct VerifySpec
{
    std::vector<double> snr_db_list = {0.0, 10.0, 20.0, 30.0};
    ChannelEnsembleSpec ensemble; ///< ensemble.count channels, default spec
    oracle::GridSpec grid;
    double tolerance = 1e-3;

    /// Self-test hook: report each solver value inflated past the
    /// tolerance so the comparison must fail. Exercises the failure path.
    bool inject_fault = false;

    void validate() const;
};

struct VerifyReport
{
    long cases = 0;
    double max_abs_dev = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    nlohmann::json worst; ///< channel + both values at the largest deviation
};

VerifyReport run_verify(const VerifySpec &spec, ExecPolicy policy = ExecPolicy::Parallel);

/// Write-to-temp-then-rename; partial files never appear under `path`.
void atomic_write_text(const std::string &path, const std::string &content);

// CSV/JSON emission. Floating-point fields are printed with %.17g
// (lossless round trip); every writer re-validates what it writes.
void write_sweep_csv(const std::string &path, const std::vector<SweepRow> &rows);
void write_region_csv(const std::string &path, const std::vector<RegionCell> &cells);
void write_gain_csv(const std::string &path, const std::vector<std::pair<double, std::vector<RegionCell>>> &by_snr);
void write_timing_csv(const std::string &path, const TimingResult &t);

/// Config echo next to a CSV: same stem, ".json" extension.
void write_sidecar(const std::string &csv_path, const nlohmann::json &config);

} // namespace rsmmf::harness
