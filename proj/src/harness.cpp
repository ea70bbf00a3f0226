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

#include "rsmmf/harness.hpp"

#include "rsmmf/beamform.hpp"
#include "rsmmf/version.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace rsmmf::harness
{

namespace
{

std::string g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double db_to_power(double snr_db)
{
    return std::pow(10.0, snr_db / 10.0);
}

// Exceptions must not unwind through an OpenMP region; loop bodies catch
// into per-slot messages and the first one (in index order) is rethrown.
void rethrow_first(const std::vector<std::string> &errors)
{
    for (const std::string &e : errors)
        if (!e.empty())
            throw std::runtime_error(e);
}

void check_snr_list(const std::vector<double> &list, const char *who)
{
    if (list.empty())
        throw std::invalid_argument(std::string(who) + ": snr_db_list must be non-empty");
    for (double s : list)
        if (!std::isfinite(s))
            throw std::invalid_argument(std::string(who) + ": non-finite SNR");
}

} // namespace

void SweepSpec::validate() const
{
    check_snr_list(snr_db_list, "SweepSpec");
    ensemble.validate();
}

std::vector<SweepRow> run_snr_sweep(const SweepSpec &spec, ExecPolicy policy)
{
    spec.validate();

    const std::vector<ChannelPair> pairs = sample_gaussian_ensemble(spec.ensemble);
    const int count = spec.ensemble.count;
    const int nf = static_cast<int>(spec.snr_db_list.size());

    // Slot matrices [snr][channel]; filled in parallel, reduced in order.
    std::vector<std::vector<double>> proposed(nf, std::vector<double>(count, 0.0));
    auto rsma = proposed, noma = proposed, sdma = proposed, multicast = proposed;
    std::vector<std::string> errors(count);

    const bool par = policy == ExecPolicy::Parallel;
#pragma omp parallel for schedule(static) if (par)
    for (int c = 0; c < count; ++c)
    {
        try
        {
            const EffectiveGains g = effective_gains(pairs[static_cast<std::size_t>(c)]);
            for (int f = 0; f < nf; ++f)
            {
                const double P = db_to_power(spec.snr_db_list[static_cast<std::size_t>(f)]);
                const MmfSolution sol = solve_mmf(g, P);
                validate_solution(sol, P);
                const StrategyBests b = strategy_bests(g, P);
                proposed[f][c] = sol.mmf;
                rsma[f][c] = b.rsma;
                noma[f][c] = b.noma;
                sdma[f][c] = b.sdma;
                multicast[f][c] = b.multicast;
            }
        }
        catch (const std::exception &e)
        {
            errors[static_cast<std::size_t>(c)] = e.what();
        }
    }
    rethrow_first(errors);

    auto mean = [count](const std::vector<double> &v) {
        double s = 0.0;
        for (double x : v)
            s += x;
        return s / count;
    };

    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(nf) * 5);
    for (int f = 0; f < nf; ++f)
    {
        const double snr = spec.snr_db_list[static_cast<std::size_t>(f)];
        rows.push_back({snr, "proposed", mean(proposed[f])});
        rows.push_back({snr, "rsma", mean(rsma[f])});
        rows.push_back({snr, "noma", mean(noma[f])});
        rows.push_back({snr, "sdma", mean(sdma[f])});
        rows.push_back({snr, "multicast", mean(multicast[f])});
    }
    return rows;
}

RegionSpec RegionSpec::default_grid(double snr_db, int n, double gamma_lo, double gamma_hi)
{
    if (n < 2)
        throw std::invalid_argument("RegionSpec: grid needs at least 2 points per axis");
    if (!(gamma_lo < gamma_hi))
        throw std::invalid_argument("RegionSpec: gamma_lo must be below gamma_hi");

    RegionSpec spec;
    spec.snr_db = snr_db;
    spec.rho_axis.reserve(static_cast<std::size_t>(n));
    spec.gamma_db_axis.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        spec.rho_axis.push_back(static_cast<double>(i + 1) / n);
    for (int i = 0; i < n; ++i)
        spec.gamma_db_axis.push_back(gamma_lo + (gamma_hi - gamma_lo) * i / (n - 1));
    return spec;
}

void RegionSpec::validate() const
{
    if (rho_axis.empty() || gamma_db_axis.empty())
        throw std::invalid_argument("RegionSpec: axes must be non-empty");
    for (double r : rho_axis)
        if (!(r > 0.0) || !(r <= 1.0))
            throw std::invalid_argument("RegionSpec: rho values must lie in (0, 1]");
    for (double gdb : gamma_db_axis)
        if (!std::isfinite(gdb))
            throw std::invalid_argument("RegionSpec: non-finite gamma_db");
    if (!std::isfinite(snr_db))
        throw std::invalid_argument("RegionSpec: non-finite snr_db");
}

std::vector<RegionCell> run_region_map(const RegionSpec &spec, ExecPolicy policy)
{
    spec.validate();

    const double P = db_to_power(spec.snr_db);
    const long ng = static_cast<long>(spec.gamma_db_axis.size());
    const long total = static_cast<long>(spec.rho_axis.size()) * ng;

    std::vector<RegionCell> cells(static_cast<std::size_t>(total));
    std::vector<std::string> errors(static_cast<std::size_t>(total));

    const bool par = policy == ExecPolicy::Parallel;
#pragma omp parallel for schedule(static) if (par)
    for (long idx = 0; idx < total; ++idx)
    {
        try
        {
            const double rho = spec.rho_axis[static_cast<std::size_t>(idx / ng)];
            const double gamma_db = spec.gamma_db_axis[static_cast<std::size_t>(idx % ng)];
            const double theta = 2.0 * std::asin(std::sqrt(rho));

            const ChannelPair pair = make_region_channel(gamma_db, theta);
            const EffectiveGains g = effective_gains(pair);
            const MmfSolution sol = solve_mmf(g, P);
            validate_solution(sol, P);
            const StrategyBests b = strategy_bests(g, P);

            // multicast gain is positive for any feasible channel, so the
            // denominator cannot vanish
            const double alt = std::max({b.noma, b.sdma, b.multicast});
            cells[static_cast<std::size_t>(idx)] =
                RegionCell{rho, gamma_db, sol.t_opt, sol.strategy, 100.0 * (b.rsma - alt) / alt};
        }
        catch (const std::exception &e)
        {
            errors[static_cast<std::size_t>(idx)] = e.what();
        }
    }
    rethrow_first(errors);
    return cells;
}

TimingResult run_timing(int count, double snr_db)
{
    if (count < 100)
        throw std::invalid_argument("run_timing: count must be >= 100 for stable percentiles");
    if (!std::isfinite(snr_db))
        throw std::invalid_argument("run_timing: non-finite snr_db");

    // Fixed seed: the statistic of interest is the pipeline latency, not
    // the channel draw.
    ChannelEnsembleSpec es;
    es.count = count;
    es.seed = 0x7f4a7c15ULL;
    const std::vector<ChannelPair> pairs = sample_gaussian_ensemble(es);

    const double P = db_to_power(snr_db);
    std::vector<double> us(static_cast<std::size_t>(count));
    volatile double sink = 0.0;

    for (int i = 0; i < count; ++i)
    {
        const auto t0 = std::chrono::steady_clock::now();
        const EffectiveGains g = effective_gains(pairs[static_cast<std::size_t>(i)]);
        const MmfSolution sol = solve_mmf(g, P);
        const auto t1 = std::chrono::steady_clock::now();
        sink = sink + sol.mmf;
        us[static_cast<std::size_t>(i)] = std::chrono::duration<double, std::micro>(t1 - t0).count();
    }
    (void)sink;

    TimingResult r;
    r.count = count;
    r.mean_us = std::accumulate(us.begin(), us.end(), 0.0) / count;
    std::sort(us.begin(), us.end());
    const std::size_t idx =
        std::min(us.size() - 1, static_cast<std::size_t>(std::ceil(0.99 * count)) - 1);
    r.p99_us = us[idx];
    return r;
}

void VerifySpec::validate() const
{
    check_snr_list(snr_db_list, "VerifySpec");
    ensemble.validate();
    grid.validate();
    if (!(tolerance > 0.0))
        throw std::invalid_argument("VerifySpec: tolerance must be positive");
}

VerifyReport run_verify(const VerifySpec &spec, ExecPolicy policy)
{
    spec.validate();

    const std::vector<ChannelPair> pairs = sample_gaussian_ensemble(spec.ensemble);
    const long count = spec.ensemble.count;
    const long nf = static_cast<long>(spec.snr_db_list.size());
    const long total = count * nf;

    std::vector<double> dev(static_cast<std::size_t>(total), 0.0);
    auto solver_v = dev, solver_t = dev, oracle_v = dev, oracle_t = dev;
    std::vector<std::string> errors(static_cast<std::size_t>(count));

    const bool par = policy == ExecPolicy::Parallel;
#pragma omp parallel for schedule(static) if (par)
    for (long c = 0; c < count; ++c)
    {
        try
        {
            const EffectiveGains g = effective_gains(pairs[static_cast<std::size_t>(c)]);
            for (long f = 0; f < nf; ++f)
            {
                const double P = db_to_power(spec.snr_db_list[static_cast<std::size_t>(f)]);
                const MmfSolution sol = solve_mmf(g, P);
                validate_solution(sol, P);
                const oracle::GridResult res = oracle::grid_mmf(g, P, spec.grid);

                const double v = sol.mmf + (spec.inject_fault ? 2.0 * spec.tolerance : 0.0);
                const std::size_t k = static_cast<std::size_t>(c * nf + f);
                solver_v[k] = v;
                solver_t[k] = sol.t_opt;
                oracle_v[k] = res.mmf_best;
                oracle_t[k] = res.t_best;
                dev[k] = std::abs(v - res.mmf_best);
            }
        }
        catch (const std::exception &e)
        {
            errors[static_cast<std::size_t>(c)] = e.what();
        }
    }
    rethrow_first(errors);

    std::size_t worst = 0;
    for (std::size_t k = 1; k < dev.size(); ++k)
        if (dev[k] > dev[worst])
            worst = k;

    VerifyReport rep;
    rep.cases = total;
    rep.max_abs_dev = dev[worst];
    rep.tolerance = spec.tolerance;
    rep.pass = rep.max_abs_dev <= spec.tolerance;

    const std::size_t wc = worst / static_cast<std::size_t>(nf);
    const std::size_t wf = worst % static_cast<std::size_t>(nf);
    rep.worst = nlohmann::json{{"channel", channel_to_json(pairs[wc])},
                               {"snr_db", spec.snr_db_list[wf]},
                               {"solver", {{"mmf", solver_v[worst]}, {"t_opt", solver_t[worst]}}},
                               {"oracle", {{"mmf", oracle_v[worst]}, {"t_best", oracle_t[worst]}}},
                               {"abs_dev", dev[worst]}};
    return rep;
}

void atomic_write_text(const std::string &path, const std::string &content)
{
    namespace fs = std::filesystem;

    const fs::path target(path);
    if (target.has_parent_path())
        fs::create_directories(target.parent_path());

    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("atomic_write_text: cannot open " + tmp.string());
        out << content;
        out.flush();
        if (!out)
            throw std::runtime_error("atomic_write_text: write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

void write_sweep_csv(const std::string &path, const std::vector<SweepRow> &rows)
{
    if (rows.empty())
        throw std::invalid_argument("write_sweep_csv: no rows");

    std::ostringstream os;
    os << "snr_db,strategy,mean_mmf_bits\n";
    for (const SweepRow &r : rows)
    {
        if (r.strategy.empty() || !std::isfinite(r.mean_mmf) || r.mean_mmf < 0.0)
            throw std::invalid_argument("write_sweep_csv: invalid row");
        os << g17(r.snr_db) << ',' << r.strategy << ',' << g17(r.mean_mmf) << '\n';
    }
    atomic_write_text(path, os.str());
}

void write_region_csv(const std::string &path, const std::vector<RegionCell> &cells)
{
    if (cells.empty())
        throw std::invalid_argument("write_region_csv: no cells");

    std::ostringstream os;
    os << "rho,gamma_db,t_opt,strategy,rel_gain_pct\n";
    for (const RegionCell &c : cells)
    {
        if (!(c.rho > 0.0) || !(c.rho <= 1.0) || !(c.t_opt >= 0.0) || !(c.t_opt <= 1.0) ||
            !std::isfinite(c.rel_gain_pct))
            throw std::invalid_argument("write_region_csv: invalid cell");
        os << g17(c.rho) << ',' << g17(c.gamma_db) << ',' << g17(c.t_opt) << ','
           << to_string(c.strategy) << ',' << g17(c.rel_gain_pct) << '\n';
    }
    atomic_write_text(path, os.str());
}

void write_gain_csv(const std::string &path, const std::vector<std::pair<double, std::vector<RegionCell>>> &by_snr)
{
    if (by_snr.empty())
        throw std::invalid_argument("write_gain_csv: no data");

    std::ostringstream os;
    os << "snr_db,rho,gamma_db,rel_gain_pct\n";
    for (const auto &[snr, cells] : by_snr)
        for (const RegionCell &c : cells)
        {
            if (!std::isfinite(c.rel_gain_pct))
                throw std::invalid_argument("write_gain_csv: invalid cell");
            os << g17(snr) << ',' << g17(c.rho) << ',' << g17(c.gamma_db) << ',' << g17(c.rel_gain_pct)
               << '\n';
        }
    atomic_write_text(path, os.str());
}

void write_timing_csv(const std::string &path, const TimingResult &t)
{
    if (t.count < 1 || !(t.mean_us > 0.0) || !(t.p99_us > 0.0))
        throw std::invalid_argument("write_timing_csv: invalid result");

    std::ostringstream os;
    os << "count,mean_us,p99_us\n";
    os << t.count << ',' << g17(t.mean_us) << ',' << g17(t.p99_us) << '\n';
    atomic_write_text(path, os.str());
}

void write_sidecar(const std::string &csv_path, const nlohmann::json &config)
{
    std::filesystem::path p(csv_path);
    p.replace_extension(".json");
    const nlohmann::json j{{"tool", "rsmmf"}, {"version", kVersion}, {"config", config}};
    atomic_write_text(p.string(), j.dump(2) + "\n");
}

} // namespace rsmmf::harness
