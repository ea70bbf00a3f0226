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
// End-to-end tests of the installed binary: spawns the real executable and
// checks exit codes, stdout and the files it writes.

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace
{

struct RunResult
{
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path &p)
{
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path fresh_dir(const std::string &tag)
{
    const fs::path dir = fs::temp_directory_path() / ("rsmmf_cli_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

RunResult run_cli(const std::string &args, const fs::path &dir)
{
    const fs::path outp = dir / "stdout.txt";
    const fs::path errp = dir / "stderr.txt";
    const std::string cmd =
        std::string(RSMMF_CLI_PATH) + " " + args + " > '" + outp.string() + "' 2> '" + errp.string() + "'";

    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.code = (raw != -1 && WIFEXITED(raw)) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(outp);
    r.err = slurp(errp);
    return r;
}

void write_file(const fs::path &p, const std::string &text)
{
    std::ofstream os(p);
    os << text;
    REQUIRE(os.good());
}

std::size_t line_count(const std::string &s)
{
    std::size_t n = 0;
    for (char c : s)
        if (c == '\n')
            ++n;
    return n;
}

} // namespace

TEST_CASE("cli: solve on orthogonal unit channels picks SDMA")
{
    const auto dir = fresh_dir("solve");
    const fs::path ch = dir / "channels.json";
    write_file(ch, R"({"h1": [[1,0],[0,0]], "h2": [[0,0],[1,0]]})");

    const auto r = run_cli("solve --channels '" + ch.string() + "' --snr-db 10", dir);
    CHECK(r.code == 0);
    CHECK(r.out.find("strategy      sdma") != std::string::npos);
    CHECK(r.out.find("2.58496") != std::string::npos); // log2(6) to 6 digits
    fs::remove_all(dir);
}

TEST_CASE("cli: solve --json reports per-user results under the input labels")
{
    const auto dir = fresh_dir("solve_json");
    const fs::path ch = dir / "channels.json";
    // user b is the stronger one here, so the solver reorders internally
    write_file(ch, R"({"h1": [[0,0],[0.5,0]], "h2": [[2,0],[0,0]]})");

    const auto r = run_cli("solve --channels '" + ch.string() + "' --snr-db 10 --json", dir);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);

    CHECK(j.at("swapped") == true);
    CHECK(j.at("strategy") == "noma");
    const double mmf = j.at("mmf").get<double>();
    CHECK(mmf == doctest::Approx(std::log2(73.0 / 33.0)).epsilon(1e-12));

    const double tot_a = j.at("per_user").at("a").at("total").get<double>();
    const double tot_b = j.at("per_user").at("b").at("total").get<double>();
    CHECK(std::min(tot_a, tot_b) == doctest::Approx(mmf).epsilon(1e-12));
    // under NOMA everything common goes to the weaker user, label a here
    CHECK(j.at("per_user").at("b").at("common_share").get<double>() == 0.0);
    CHECK(j.at("per_user").at("a").at("common_share").get<double>() > 1.0);
    fs::remove_all(dir);
}

TEST_CASE("cli: exit codes for bad inputs")
{
    const auto dir = fresh_dir("codes");

    SUBCASE("zero channel is a degenerate input, exit 3")
    {
        const fs::path ch = dir / "zero.json";
        write_file(ch, R"({"h1": [[0,0],[0,0]], "h2": [[1,0],[0,0]]})");
        CHECK(run_cli("solve --channels '" + ch.string() + "'", dir).code == 3);
    }
    SUBCASE("malformed JSON, exit 2")
    {
        const fs::path ch = dir / "bad.json";
        write_file(ch, "not json at all");
        CHECK(run_cli("solve --channels '" + ch.string() + "'", dir).code == 2);
    }
    SUBCASE("missing required flag, exit 2")
    {
        CHECK(run_cli("solve", dir).code == 2);
    }
    SUBCASE("unknown flag, exit 2")
    {
        CHECK(run_cli("solve --no-such-flag", dir).code == 2);
    }
    SUBCASE("bench count too small for percentiles, exit 2")
    {
        CHECK(run_cli("bench --ensemble-count 50 --out '" + dir.string() + "'", dir).code == 2);
    }
    SUBCASE("--help and --version exit 0")
    {
        CHECK(run_cli("--help", dir).code == 0);
        const auto r = run_cli("--version", dir);
        CHECK(r.code == 0);
        CHECK(r.out.rfind("0.1.0", 0) == 0);
    }
    fs::remove_all(dir);
}

TEST_CASE("cli: sweep writes CSV plus sidecar, serial matches parallel")
{
    const auto dir = fresh_dir("sweep");
    const auto a = dir / "a";
    const auto b = dir / "b";
    fs::create_directories(a);
    fs::create_directories(b);

    const std::string common = "sweep --snr-db 0,10 --ensemble-count 8 --out '";
    REQUIRE(run_cli(common + a.string() + "'", dir).code == 0);
    REQUIRE(run_cli(common + b.string() + "' --serial", dir).code == 0);

    const std::string csv_a = slurp(a / "snr_sweep.csv");
    CHECK(line_count(csv_a) == 11); // header + 2 SNRs x 5 strategies
    CHECK(csv_a == slurp(b / "snr_sweep.csv"));

    const auto side = nlohmann::json::parse(slurp(a / "snr_sweep.json"));
    CHECK(side.at("tool") == "rsmmf");
    CHECK(side.at("config").at("ensemble_count") == 8);
    fs::remove_all(dir);
}

TEST_CASE("cli: region grid size flags are equivalent ways to say 5 points")
{
    const auto dir = fresh_dir("region");
    const auto a = dir / "a";
    const auto b = dir / "b";
    fs::create_directories(a);
    fs::create_directories(b);

    REQUIRE(run_cli("region --grid-points 5 --snr-db 20 --out '" + a.string() + "'", dir).code == 0);
    REQUIRE(run_cli("region --grid-step 0.2 --snr-db 20 --out '" + b.string() + "'", dir).code == 0);

    const std::string csv = slurp(a / "region_map.csv");
    CHECK(line_count(csv) == 26); // header + 5 x 5 cells
    CHECK(csv == slurp(b / "region_map.csv"));
    fs::remove_all(dir);
}

TEST_CASE("cli: gain-map stacks one layer per SNR")
{
    const auto dir = fresh_dir("gainmap");
    REQUIRE(run_cli("gain-map --snr-db 10,20 --grid-points 4 --out '" + dir.string() + "'", dir).code == 0);
    const std::string csv = slurp(dir / "gain_map.csv");
    CHECK(line_count(csv) == 33); // header + 2 layers x 16 cells
    CHECK(csv.rfind("snr_db,rho,gamma_db,rel_gain_pct\n", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("cli: bench writes timing.csv")
{
    const auto dir = fresh_dir("bench");
    const auto r = run_cli("bench --ensemble-count 150 --out '" + dir.string() + "'", dir);
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "timing.csv"));
    CHECK(r.out.find("150 solves") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("cli: verify passes clean and fails loudly when asked to")
{
    const auto dir = fresh_dir("verify");
    const std::string base = "verify --snr-db 0,20 --ensemble-count 6 --grid-step 1e-3 --out '" + dir.string() + "'";

    const auto ok = run_cli(base, dir);
    CHECK(ok.code == 0);
    CHECK(ok.out.find("PASS") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "verify_worst.json"));

    const auto bad = run_cli(base + " --inject-fault", dir);
    CHECK(bad.code == 4);
    CHECK(bad.out.find("FAIL") != std::string::npos);
    REQUIRE(fs::exists(dir / "verify_worst.json"));
    const auto worst = nlohmann::json::parse(slurp(dir / "verify_worst.json"));
    CHECK(worst.contains("channel"));
    CHECK(worst.contains("abs_dev"));
    fs::remove_all(dir);
}

TEST_CASE("cli: INI config feeds subcommand options, command line wins")
{
    const auto dir = fresh_dir("config");
    const auto a = dir / "a";
    const auto b = dir / "b";
    fs::create_directories(a);
    fs::create_directories(b);

    const fs::path ini = dir / "rsmmf.ini";
    write_file(ini, "[sweep]\nensemble-count=6\nsnr-db=0,10\n");

    REQUIRE(run_cli("--config '" + ini.string() + "' sweep --out '" + a.string() + "'", dir).code == 0);
    auto side = nlohmann::json::parse(slurp(a / "snr_sweep.json"));
    CHECK(side.at("config").at("ensemble_count") == 6);
    CHECK(side.at("config").at("snr_db").size() == 2);

    REQUIRE(run_cli("--config '" + ini.string() + "' sweep --ensemble-count 4 --out '" + b.string() + "'", dir)
                .code == 0);
    side = nlohmann::json::parse(slurp(b / "snr_sweep.json"));
    CHECK(side.at("config").at("ensemble_count") == 4);
    fs::remove_all(dir);
}
