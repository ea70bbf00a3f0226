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
// Command line front end.
//
// Exit codes: 0 success, 1 internal error, 2 usage or malformed input,
// 3 degenerate channel, 4 verification failure.

#include "rsmmf/allocator.hpp"
#include "rsmmf/beamform.hpp"
#include "rsmmf/channel.hpp"
#include "rsmmf/errors.hpp"
#include "rsmmf/harness.hpp"
#include "rsmmf/oracle.hpp"
#include "rsmmf/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

namespace
{

namespace fs = std::filesystem;
using nlohmann::json;

double db_to_power(double snr_db)
{
    return std::pow(10.0, snr_db / 10.0);
}

rsmmf::harness::ExecPolicy policy_of(bool serial)
{
    return serial ? rsmmf::harness::ExecPolicy::Serial : rsmmf::harness::ExecPolicy::Parallel;
}

struct EnsembleFlags
{
    int count = 1000;
    std::uint64_t seed = 1;
    double sigma1_sq = 1.0;
    double sigma2_sq = 0.3;

    void attach(CLI::App *cmd)
    {
        cmd->add_option("--ensemble-count", count, "Number of random channel pairs")->capture_default_str();
        cmd->add_option("--seed", seed, "Base RNG seed")->capture_default_str();
        cmd->add_option("--sigma1-sq", sigma1_sq, "Per-entry channel variance, user a")->capture_default_str();
        cmd->add_option("--sigma2-sq", sigma2_sq, "Per-entry channel variance, user b")->capture_default_str();
    }

    rsmmf::ChannelEnsembleSpec spec() const
    {
        rsmmf::ChannelEnsembleSpec es;
        es.count = count;
        es.seed = seed;
        es.sigma1_sq = sigma1_sq;
        es.sigma2_sq = sigma2_sq;
        return es;
    }

    json to_json() const
    {
        return json{{"ensemble_count", count}, {"seed", seed}, {"sigma1_sq", sigma1_sq}, {"sigma2_sq", sigma2_sq}};
    }
};

// Axes for region/gain-map: default n = 101, or derived from a step width.
rsmmf::harness::RegionSpec grid_for(double snr_db, int points, double step)
{
    int n = points;
    if (step > 0.0)
        n = std::max(2, static_cast<int>(std::lround(1.0 / step)));
    return rsmmf::harness::RegionSpec::default_grid(snr_db, n);
}

int run_solve(const std::string &channel_path, double snr_db, bool as_json)
{
    const rsmmf::ChannelPair pair = rsmmf::load_channel(channel_path);
    const rsmmf::EffectiveGains g = rsmmf::effective_gains(pair);
    const double P = db_to_power(snr_db);

    const rsmmf::MmfSolution sol = rsmmf::solve_mmf(g, P);
    rsmmf::validate_solution(sol, P);

    // Canonical order is stronger-user-first; map shares and totals back to
    // the labels the input file used.
    const double c_a = pair.swapped ? sol.c2 : sol.c1;
    const double c_b = pair.swapped ? sol.c1 : sol.c2;
    const double tot_a = pair.swapped ? sol.user_total2 : sol.user_total1;
    const double tot_b = pair.swapped ? sol.user_total1 : sol.user_total2;

    json precoders;
    bool collinear = false;
    try
    {
        precoders = rsmmf::precoders_to_json(rsmmf::precoder_set(pair));
    }
    catch (const rsmmf::CollinearChannelsError &)
    {
        collinear = true;
        precoders = json{{"dir_c", rsmmf::precoders_to_json({{}, {}, rsmmf::common_precoder(pair)})["dir_c"]}};
    }

    if (as_json)
    {
        json out{{"version", rsmmf::kVersion},
                 {"snr_db", snr_db},
                 {"total_power", P},
                 {"strategy", rsmmf::to_string(sol.strategy)},
                 {"t_opt", sol.t_opt},
                 {"mmf", sol.mmf},
                 {"per_user",
                  {{"a", {{"common_share", c_a}, {"total", tot_a}}},
                   {"b", {{"common_share", c_b}, {"total", tot_b}}}}},
                 {"swapped", pair.swapped},
                 {"collinear", collinear},
                 {"gains", rsmmf::gains_to_json(g)},
                 {"precoders", precoders},
                 {"solution", rsmmf::to_json(sol)}};
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    std::printf("strategy      %s\n", rsmmf::to_string(sol.strategy));
    std::printf("t*            %.6g\n", sol.t_opt);
    std::printf("power split   p1=%.6g  p2=%.6g  pc=%.6g  (P=%.6g)\n", sol.split.p1, sol.split.p2, sol.split.pc, P);
    std::printf("rates         r1=%.6g  r2=%.6g  rc=%.6g\n", sol.rates.r1, sol.rates.r2, sol.rates.rc);
    std::printf("common share  a=%.6g  b=%.6g\n", c_a, c_b);
    std::printf("user totals   a=%.6g  b=%.6g\n", tot_a, tot_b);
    std::printf("mmf           %.6g bits/s/Hz\n", sol.mmf);
    if (pair.swapped)
        std::printf("note          user b has the stronger channel (internally reordered)\n");
    if (collinear)
        std::printf("note          channels are collinear; only the common stream is active\n");
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Closed-form max-min fair allocation for a two-user rate-splitting downlink"};
    app.set_version_flag("--version", rsmmf::kVersion);
    app.set_config("--config", "", "Read options from an INI file (command line wins)");
    app.require_subcommand(1);

    // solve ------------------------------------------------------------
    auto *solve = app.add_subcommand("solve", "Solve a single channel pair from a JSON file");
    std::string channel_path;
    double solve_snr = 20.0;
    bool solve_json = false;
    solve->add_option("--channels", channel_path, "Channel file with \"h1\"/\"h2\" as [re,im] lists")
        ->required();
    solve->add_option("--snr-db", solve_snr, "SNR in dB; total power is 10^(snr/10)")->capture_default_str();
    solve->add_flag("--json", solve_json, "Emit the full solution as JSON");

    // sweep ------------------------------------------------------------
    auto *sweep = app.add_subcommand("sweep", "Mean MMF vs SNR per strategy over a Rayleigh ensemble");
    std::vector<double> sweep_snrs = {0, 5, 10, 15, 20, 25, 30};
    EnsembleFlags sweep_ens;
    std::string sweep_out = ".";
    bool sweep_serial = false;
    sweep->add_option("--snr-db", sweep_snrs, "SNR points in dB (comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    sweep_ens.attach(sweep);
    sweep->add_option("--out", sweep_out, "Output directory")->capture_default_str();
    sweep->add_flag("--serial", sweep_serial, "Use the serial reference path");

    // region -----------------------------------------------------------
    auto *region = app.add_subcommand("region", "Winning strategy and t* over the (rho, gamma_db) plane");
    double region_snr = 30.0;
    int region_points = 101;
    double region_step = 0.0;
    std::string region_out = ".";
    bool region_serial = false;
    region->add_option("--snr-db", region_snr, "SNR in dB")->capture_default_str();
    region->add_option("--grid-points", region_points, "Points per axis")->capture_default_str();
    region->add_option("--grid-step", region_step, "Axis step as a fraction (overrides --grid-points)");
    region->add_option("--out", region_out, "Output directory")->capture_default_str();
    region->add_flag("--serial", region_serial, "Use the serial reference path");

    // gain-map ---------------------------------------------------------
    auto *gainmap = app.add_subcommand("gain-map", "Relative RSMA gain over the plane, one layer per SNR");
    std::vector<double> gain_snrs = {10, 20, 30};
    int gain_points = 101;
    double gain_step = 0.0;
    std::string gain_out = ".";
    bool gain_serial = false;
    gainmap->add_option("--snr-db", gain_snrs, "SNR layers in dB (comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    gainmap->add_option("--grid-points", gain_points, "Points per axis")->capture_default_str();
    gainmap->add_option("--grid-step", gain_step, "Axis step as a fraction (overrides --grid-points)");
    gainmap->add_option("--out", gain_out, "Output directory")->capture_default_str();
    gainmap->add_flag("--serial", gain_serial, "Use the serial reference path");

    // bench ------------------------------------------------------------
    auto *bench = app.add_subcommand("bench", "Per-solve latency of the closed-form pipeline");
    int bench_count = 10000;
    double bench_snr = 20.0;
    std::string bench_out = ".";
    bench->add_option("--ensemble-count", bench_count, "Number of timed solves")->capture_default_str();
    bench->add_option("--snr-db", bench_snr, "SNR in dB")->capture_default_str();
    bench->add_option("--out", bench_out, "Output directory")->capture_default_str();

    // verify -----------------------------------------------------------
    auto *verify = app.add_subcommand("verify", "Cross-check the closed form against the grid oracle");
    std::vector<double> verify_snrs = {0, 10, 20, 30};
    EnsembleFlags verify_ens;
    double verify_grid_step = 1e-4;
    double verify_tol = 1e-3;
    std::string verify_out = ".";
    bool verify_serial = false;
    bool inject_fault = false;
    verify->add_option("--snr-db", verify_snrs, "SNR points in dB (comma separated)")
        ->delimiter(',')
        ->capture_default_str();
    verify_ens.attach(verify);
    verify->add_option("--grid-step", verify_grid_step, "Coarse oracle step on the t axis")->capture_default_str();
    verify->add_option("--tolerance", verify_tol, "Max allowed |solver - oracle|")->capture_default_str();
    verify->add_option("--out", verify_out, "Directory for the failure report")->capture_default_str();
    verify->add_flag("--serial", verify_serial, "Use the serial reference path");
    verify->add_flag("--inject-fault", inject_fault, "Self-test: force a failure to exercise the error path");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2; // --help/--version exit 0, any usage error 2
    }

    try
    {
        if (*solve)
            return run_solve(channel_path, solve_snr, solve_json);

        if (*sweep)
        {
            rsmmf::harness::SweepSpec spec;
            spec.snr_db_list = sweep_snrs;
            spec.ensemble = sweep_ens.spec();
            const auto rows = rsmmf::harness::run_snr_sweep(spec, policy_of(sweep_serial));
            const fs::path csv = fs::path(sweep_out) / "snr_sweep.csv";
            rsmmf::harness::write_sweep_csv(csv.string(), rows);
            json cfg = sweep_ens.to_json();
            cfg["snr_db"] = sweep_snrs;
            cfg["serial"] = sweep_serial;
            cfg["command"] = "sweep";
            rsmmf::harness::write_sidecar(csv.string(), cfg);
            std::cout << "wrote " << csv.string() << " (" << rows.size() << " rows)\n";
            return 0;
        }

        if (*region)
        {
            const auto spec = grid_for(region_snr, region_points, region_step);
            const auto cells = rsmmf::harness::run_region_map(spec, policy_of(region_serial));
            const fs::path csv = fs::path(region_out) / "region_map.csv";
            rsmmf::harness::write_region_csv(csv.string(), cells);
            json cfg{{"command", "region"},
                     {"snr_db", region_snr},
                     {"rho_points", spec.rho_axis.size()},
                     {"gamma_points", spec.gamma_db_axis.size()},
                     {"serial", region_serial}};
            rsmmf::harness::write_sidecar(csv.string(), cfg);
            std::cout << "wrote " << csv.string() << " (" << cells.size() << " cells)\n";
            return 0;
        }

        if (*gainmap)
        {
            std::vector<std::pair<double, std::vector<rsmmf::harness::RegionCell>>> layers;
            for (double snr : gain_snrs)
            {
                const auto spec = grid_for(snr, gain_points, gain_step);
                layers.emplace_back(snr, rsmmf::harness::run_region_map(spec, policy_of(gain_serial)));
            }
            const fs::path csv = fs::path(gain_out) / "gain_map.csv";
            rsmmf::harness::write_gain_csv(csv.string(), layers);
            json cfg{{"command", "gain-map"},
                     {"snr_db", gain_snrs},
                     {"grid_points", gain_points},
                     {"serial", gain_serial}};
            rsmmf::harness::write_sidecar(csv.string(), cfg);
            std::cout << "wrote " << csv.string() << "\n";
            return 0;
        }

        if (*bench)
        {
            const auto t = rsmmf::harness::run_timing(bench_count, bench_snr);
            const fs::path csv = fs::path(bench_out) / "timing.csv";
            rsmmf::harness::write_timing_csv(csv.string(), t);
            json cfg{{"command", "bench"}, {"count", bench_count}, {"snr_db", bench_snr}};
            rsmmf::harness::write_sidecar(csv.string(), cfg);
            std::printf("%d solves: mean %.3f us, p99 %.3f us\n", t.count, t.mean_us, t.p99_us);
            return 0;
        }

        if (*verify)
        {
            rsmmf::harness::VerifySpec spec;
            spec.snr_db_list = verify_snrs;
            spec.ensemble = verify_ens.spec();
            spec.grid.coarse_step = verify_grid_step;
            spec.tolerance = verify_tol;
            spec.inject_fault = inject_fault;
            const auto rep = rsmmf::harness::run_verify(spec, policy_of(verify_serial));
            std::printf("verify: %ld cases, max |solver - oracle| = %.3g (tolerance %.3g): %s\n", rep.cases,
                        rep.max_abs_dev, rep.tolerance, rep.pass ? "PASS" : "FAIL");
            if (!rep.pass)
            {
                const fs::path report = fs::path(verify_out) / "verify_worst.json";
                rsmmf::harness::atomic_write_text(report.string(), rep.worst.dump(2) + "\n");
                std::cerr << "worst case written to " << report.string() << "\n";
                return 4;
            }
            return 0;
        }
    }
    catch (const rsmmf::DegenerateChannelError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    catch (const rsmmf::CollinearChannelsError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    return 0;
}
