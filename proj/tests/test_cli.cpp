// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <random>
#include <string>
#include <vector>

#include "sphbin/gbd.hpp"
#include "subprocess.hpp"

using testsupport::env_or_empty;
using testsupport::read_file;
using testsupport::run_cli;

namespace {

std::string golden_path(const std::string& name)
{
    return env_or_empty("SPHBIN_GOLDEN_DIR") + "/" + name;
}

// Data section of a CSV payload: everything after the comment block.
std::string csv_rows(const std::string& text)
{
    std::string out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        if (text[pos] != '#') out += text.substr(pos, eol - pos) + "\n";
        pos = eol + 1;
    }
    return out;
}

}  // namespace

TEST_CASE("golden files are byte-identical")
{
    const std::vector<std::pair<std::string, std::string>> cases = {
        {"pmf_B1_m0_mu05.csv", "pmf --B 1 --m 0 --mu 0.5"},
        {"pmf_B1_m1_mu025.csv", "pmf --B 1 --m 1 --mu 0.25"},
        {"pmf_B1_m1_r1.csv", "pmf --B 1 --m 1 --radius 1"},
        {"pmf_B1_m1_mu025.json", "pmf --B 1 --m 1 --mu 0.25 --format json"},
        {"stats_B1_m1_mu05.csv", "stats --B 1 --m 1 --mu 0.5"},
        {"stats_B3_m0_mu04.csv", "stats --B 3 --m 0 --mu 0.4"},
        {"stats_B0_m0_mu03.csv", "stats --B 0 --m 0 --mu 0.3"},
        {"regions_B1_m1.csv", "regions --B 1 --m 1"},
        {"charfn_B1_m1_mu05.csv", "charfn --B 1 --m 1 --mu 0.5"},
        {"sample_B1_m1_mu05_c100000_s42.csv",
         "sample --B 1 --m 1 --mu 0.5 --count 100000 --seed 42"},
    };
    for (const auto& [file, args] : cases) {
        INFO(file, " <- ", args);
        const std::string expected = read_file(golden_path(file));
        REQUIRE_FALSE(expected.empty());
        const auto result = run_cli(args);
        CHECK(result.exit_code == 0);
        CHECK(result.output == expected);
    }
}

TEST_CASE("radius flag is equivalent to the mapped mu")
{
    const auto by_radius = run_cli("pmf --B 1 --m 1 --radius 1");
    const auto by_mu = run_cli("pmf --B 1 --m 1 --mu 0.5");
    CHECK(by_radius.exit_code == 0);
    CHECK(by_mu.exit_code == 0);
    CHECK(csv_rows(by_radius.output) == csv_rows(by_mu.output));

    const auto at_infinity = run_cli("pmf --B 1 --m 1 --radius inf --format json");
    CHECK(at_infinity.exit_code == 0);
    const nlohmann::json parsed = nlohmann::json::parse(at_infinity.output);
    CHECK(parsed["params"]["mu"] == 1.0);
    CHECK(parsed["rows"][3]["pmf"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("charfn abs_diff column stays below the identity tolerance")
{
    const auto result = run_cli("charfn --B 2 --m 2 --mu 0.35 --format json");
    CHECK(result.exit_code == 0);
    const nlohmann::json parsed = nlohmann::json::parse(result.output);
    CHECK(parsed["rows"].size() == 101);
    for (const auto& row : parsed["rows"])
        CHECK(row["abs_diff"].get<double>() <= 1e-10);
}

TEST_CASE("sample output is reproducible and --out matches stdout")
{
    const std::string args = "sample --B 2 --m 1 --mu 0.3 --count 5000 --seed 7";
    const auto first = run_cli(args);
    const auto second = run_cli(args);
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);

    const std::string path = "/tmp/sphbin_cli_out_test.csv";
    std::remove(path.c_str());
    const auto to_file = run_cli(args + " --out " + path);
    CHECK(to_file.exit_code == 0);
    CHECK(to_file.output.empty());
    CHECK(read_file(path) == first.output);
    std::remove(path.c_str());
}

TEST_CASE("single draw equals the library inverse transform at the seed's first uniform")
{
    std::mt19937_64 gen(31);
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    const int expected = sphbin::gbd::sample(sphbin::gbd::GbdParams(1, 1, 0.25), u);

    const auto result = run_cli("sample --B 1 --m 1 --mu 0.25 --count 1 --seed 31 --format json");
    CHECK(result.exit_code == 0);
    const nlohmann::json parsed = nlohmann::json::parse(result.output);
    for (const auto& row : parsed["rows"]) {
        const long long count = row["count"].get<long long>();
        if (row["j"].get<int>() == expected)
            CHECK(count == 1);
        else
            CHECK(count == 0);
    }
}

TEST_CASE("sampled moments sit in the CLT band of the closed forms")
{
    const auto result =
        run_cli("sample --B 1 --m 1 --mu 0.5 --count 100000 --seed 42 --format json");
    CHECK(result.exit_code == 0);
    const nlohmann::json parsed = nlohmann::json::parse(result.output);
    CHECK(parsed["schema_version"] == "1");
    // 3 sigma of the sample mean: 3 sqrt(2.5/100000) ~ 0.015
    CHECK(std::abs(parsed["params"]["empirical_mean"].get<double>() - 2.0) <= 0.015);
    CHECK(std::abs(parsed["params"]["empirical_variance"].get<double>() - 2.5) <= 0.1);
}

TEST_CASE("JSON output carries the schema version and exact values")
{
    const auto result = run_cli("pmf --B 1 --m 1 --mu 0.25 --format json");
    CHECK(result.exit_code == 0);
    const nlohmann::json parsed = nlohmann::json::parse(result.output);
    CHECK(parsed["schema_version"] == "1");
    CHECK(parsed["command"] == "pmf");
    CHECK(parsed["rows"].size() == 5);
    CHECK(std::abs(parsed["rows"][0]["pmf"].get<double>() - 0.421875) <= 1e-12);
    CHECK(std::abs(parsed["rows"][2]["cdf"].get<double>() - 0.703125) <= 1e-12);

    const auto stats = run_cli("stats --B 0 --m 0 --mu 0.3 --format json");
    const nlohmann::json stats_parsed = nlohmann::json::parse(stats.output);
    CHECK(stats_parsed["rows"][0]["mandel_q"].is_null());
    CHECK(stats_parsed["rows"][0]["regime"] == "DEGENERATE");
}

TEST_CASE("exit codes: usage 2, domain 3, verification failure 4")
{
    CHECK(run_cli("pmf --B 1 --m 1 --mu 0.5 --radius 1").exit_code == 2);
    CHECK(run_cli("pmf --B 1 --m 1").exit_code == 2);
    CHECK(run_cli("nosuchcommand").exit_code == 2);
    CHECK(run_cli("pmf --B 1 --m 1 --mu 1.5").exit_code == 3);
    CHECK(run_cli("pmf --B -1 --m 0 --mu 0.5").exit_code == 3);
    CHECK(run_cli("regions --B 1 --m 0").exit_code == 3);
    CHECK(run_cli("charfn --B 1 --m 1 --mu 0.5 --n_points 1").exit_code == 3);
    CHECK(run_cli("sample --B 1 --m 1 --mu 0.5 --count 0").exit_code == 3);
    CHECK(run_cli("verify --suite specfun --tol -1").exit_code == 3);
    CHECK(run_cli("verify --suite specfun --tol 1e-30").exit_code == 4);
    CHECK(run_cli("verify --suite specfun").exit_code == 0);

    const auto domain_msg = run_cli("pmf --B 1 --m 1 --mu 1.5", /*keep_stderr=*/true);
    CHECK(domain_msg.output.find("0 <= mu <= 1") != std::string::npos);
}

TEST_CASE("verify emits one row per check with pass/fail status")
{
    const auto result = run_cli("verify --suite gbd --B_max 4 --m_max 2 --format json");
    CHECK(result.exit_code == 0);
    const nlohmann::json parsed = nlohmann::json::parse(result.output);
    CHECK(parsed["rows"].size() >= 10);
    for (const auto& row : parsed["rows"]) {
        CHECK(row["suite"] == "gbd");
        CHECK(row["status"] == "pass");
        CHECK(row["max_residual"].get<double>() <= row["tolerance"].get<double>());
    }
}
