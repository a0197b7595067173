// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: probability tables, moment summaries, photon
// statistics region maps, characteristic-function comparisons, the invariant
// verification suites and reproducible sampling, with CSV (default) or JSON
// output.
//
// Exit codes: 0 success, 2 usage error, 3 domain error, 4 verification
// failure.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sphbin/gbd.hpp"
#include "sphbin/output.hpp"
#include "sphbin/verify.hpp"

namespace {

namespace gbd = sphbin::gbd;
namespace verify = sphbin::verify;
using sphbin::output::OutputRecord;
using sphbin::output::Value;

struct OutputFlags {
    std::string format = "csv";
    std::string out_path;
};

void add_output_flags(CLI::App* cmd, OutputFlags& flags)
{
    cmd->add_option("--format", flags.format, "Output format (csv or json)")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", flags.out_path, "Write output to this path instead of stdout");
}

void emit(const OutputRecord& record, const OutputFlags& flags)
{
    const std::string text = flags.format == "json" ? sphbin::output::to_json(record)
                                                    : sphbin::output::to_csv(record);
    if (flags.out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream file(flags.out_path, std::ios::binary);
    file << text;
    if (!file) throw std::runtime_error("failed to write " + flags.out_path);
}

Value mandel_value(const std::optional<double>& q)
{
    if (!q) return std::monostate{};
    return *q;
}

// Uniform draws for inverse-transform sampling: the top 53 bits of the
// standard 64-bit Mersenne Twister, scaled to [0, 1).  Both pieces are fixed
// by the language standard, so a seed reproduces the same stream everywhere.
struct UniformStream {
    std::mt19937_64 gen;
    explicit UniformStream(std::uint64_t seed) : gen(seed) {}
    double next() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
};

int run_verify(const std::string& suite, int b_max, int m_max, std::optional<double> tol,
               const OutputFlags& flags)
{
    if (tol && !(*tol > 0.0)) throw std::domain_error("tol must satisfy tol > 0");
    if (b_max < 0 && b_max != -1) throw std::domain_error("B_max must satisfy B_max >= 0");
    if (m_max < 0 && m_max != -1) throw std::domain_error("m_max must satisfy m_max >= 0");

    std::vector<verify::CheckResult> checks;
    const auto append = [&](std::vector<verify::CheckResult> more) {
        checks.insert(checks.end(), more.begin(), more.end());
    };
    if (suite == "specfun" || suite == "all") append(verify::specfun_checks(tol));
    if (suite == "gbd" || suite == "all")
        append(verify::gbd_checks(b_max == -1 ? 20 : b_max, m_max == -1 ? 8 : m_max, tol));
    if (suite == "sphere" || suite == "all")
        append(verify::sphere_checks(b_max == -1 ? 6 : b_max, m_max == -1 ? 4 : m_max, tol));

    OutputRecord record;
    record.command = "verify";
    record.params = {{"suite", suite}};
    if (b_max != -1) record.params.emplace_back("B_max", static_cast<long long>(b_max));
    if (m_max != -1) record.params.emplace_back("m_max", static_cast<long long>(m_max));
    if (tol) record.params.emplace_back("tol", *tol);
    record.columns = {"suite", "check", "max_residual", "tolerance", "status"};
    bool all_passed = true;
    for (const auto& check : checks) {
        all_passed = all_passed && check.passed();
        record.rows.push_back({check.suite, check.name, check.max_residual, check.tolerance,
                               std::string(check.passed() ? "pass" : "fail")});
    }
    emit(record, flags);
    return all_passed ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Generalized binomial statistics of spherical Landau levels"};
    app.require_subcommand(1);

    // pmf
    auto* pmf_cmd = app.add_subcommand("pmf", "Probability table p_j, cdf over the full support");
    int pmf_B = 0, pmf_m = 0;
    double pmf_mu = 0.0, pmf_radius = 0.0;
    OutputFlags pmf_out;
    pmf_cmd->add_option("--B", pmf_B, "Field strength B >= 0")->required();
    pmf_cmd->add_option("--m", pmf_m, "Landau level index m >= 0")->required();
    auto* mu_opt = pmf_cmd->add_option("--mu", pmf_mu, "Parameter mu in [0, 1]");
    auto* radius_opt =
        pmf_cmd->add_option("--radius", pmf_radius, "Stereographic radius |z| (mu = r^2/(1+r^2))");
    mu_opt->excludes(radius_opt);
    radius_opt->excludes(mu_opt);
    add_output_flags(pmf_cmd, pmf_out);

    // stats
    auto* stats_cmd = app.add_subcommand("stats", "Mean, variance, Mandel Q and regime");
    int stats_B = 0, stats_m = 0;
    double stats_mu = 0.0;
    OutputFlags stats_out;
    stats_cmd->add_option("--B", stats_B, "Field strength B >= 0")->required();
    stats_cmd->add_option("--m", stats_m, "Landau level index m >= 0")->required();
    stats_cmd->add_option("--mu", stats_mu, "Parameter mu in [0, 1]")->required();
    add_output_flags(stats_cmd, stats_out);

    // regions
    auto* regions_cmd =
        app.add_subcommand("regions", "Critical radii and the radial regime map (m >= 1)");
    int regions_B = 0, regions_m = 0, regions_n = 21;
    double regions_rmax = 2.0;
    OutputFlags regions_out;
    regions_cmd->add_option("--B", regions_B, "Field strength B >= 0")->required();
    regions_cmd->add_option("--m", regions_m, "Landau level index m >= 1")->required();
    regions_cmd->add_option("--r_max", regions_rmax, "Largest radius in the map")
        ->capture_default_str();
    regions_cmd->add_option("--n_grid", regions_n, "Number of radii from 0 to r_max")
        ->capture_default_str();
    add_output_flags(regions_cmd, regions_out);

    // charfn
    auto* charfn_cmd =
        app.add_subcommand("charfn", "Characteristic function, direct sum vs closed form");
    int charfn_B = 0, charfn_m = 0, charfn_n = 101;
    double charfn_mu = 0.0;
    double charfn_tmin = -std::numbers::pi, charfn_tmax = std::numbers::pi;
    OutputFlags charfn_out;
    charfn_cmd->add_option("--B", charfn_B, "Field strength B >= 0")->required();
    charfn_cmd->add_option("--m", charfn_m, "Landau level index m >= 0")->required();
    charfn_cmd->add_option("--mu", charfn_mu, "Parameter mu in [0, 1]")->required();
    charfn_cmd->add_option("--t_min", charfn_tmin, "Left end of the t grid")
        ->capture_default_str();
    charfn_cmd->add_option("--t_max", charfn_tmax, "Right end of the t grid")
        ->capture_default_str();
    charfn_cmd->add_option("--n_points", charfn_n, "Number of t grid points (>= 2)")
        ->capture_default_str();
    add_output_flags(charfn_cmd, charfn_out);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suites");
    std::string verify_suite = "all";
    int verify_bmax = -1, verify_mmax = -1;
    double verify_tol = 0.0;
    OutputFlags verify_out;
    verify_cmd->add_option("--suite", verify_suite, "Which suite to run")
        ->check(CLI::IsMember({"specfun", "gbd", "sphere", "all"}))
        ->capture_default_str();
    verify_cmd->add_option("--B_max", verify_bmax, "Largest B in the grid (default per suite)");
    verify_cmd->add_option("--m_max", verify_mmax, "Largest m in the grid (default per suite)");
    auto* tol_opt = verify_cmd->add_option(
        "--tol", verify_tol, "Override the tolerance of every precision check");
    add_output_flags(verify_cmd, verify_out);

    // sample
    auto* sample_cmd =
        app.add_subcommand("sample", "Reproducible inverse-transform sampling with histogram");
    int sample_B = 0, sample_m = 0;
    double sample_mu = 0.0;
    long long sample_count = 1000;
    std::uint64_t sample_seed = 0;
    OutputFlags sample_out;
    sample_cmd->add_option("--B", sample_B, "Field strength B >= 0")->required();
    sample_cmd->add_option("--m", sample_m, "Landau level index m >= 0")->required();
    sample_cmd->add_option("--mu", sample_mu, "Parameter mu in [0, 1]")->required();
    sample_cmd->add_option("--count", sample_count, "Number of draws (>= 1)")
        ->capture_default_str();
    sample_cmd->add_option("--seed", sample_seed, "Seed of the mt19937_64 uniform stream")
        ->capture_default_str();
    add_output_flags(sample_cmd, sample_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(pmf_cmd)) {
            if (mu_opt->count() + radius_opt->count() != 1) {
                std::cerr << "usage error: exactly one of --mu or --radius must be given\n";
                return 2;
            }
            const bool by_radius = radius_opt->count() > 0;
            const double mu = by_radius ? gbd::mu_from_radius(pmf_radius) : pmf_mu;
            const gbd::PmfTable table = gbd::pmf_table(gbd::GbdParams(pmf_B, pmf_m, mu));

            OutputRecord record;
            record.command = "pmf";
            record.params = {{"B", static_cast<long long>(pmf_B)},
                             {"m", static_cast<long long>(pmf_m)}};
            if (by_radius) record.params.emplace_back("radius", pmf_radius);
            record.params.emplace_back("mu", mu);
            record.columns = {"j", "pmf", "cdf"};
            for (int j = 0; j < table.probs.size(); ++j)
                record.rows.push_back(
                    {static_cast<long long>(j), table.probs[j], table.cumulative[j]});
            emit(record, pmf_out);
            return 0;
        }

        if (app.got_subcommand(stats_cmd)) {
            const gbd::GbdParams params(stats_B, stats_m, stats_mu);
            const gbd::MomentSummary summary = gbd::moments(params);
            OutputRecord record;
            record.command = "stats";
            record.params = {{"B", static_cast<long long>(stats_B)},
                             {"m", static_cast<long long>(stats_m)},
                             {"mu", stats_mu}};
            record.columns = {"mean", "variance", "mandel_q", "regime"};
            record.rows.push_back({summary.mean, summary.variance,
                                   mandel_value(summary.mandel_q),
                                   std::string(gbd::to_string(summary.regime))});
            emit(record, stats_out);
            return 0;
        }

        if (app.got_subcommand(regions_cmd)) {
            if (!(regions_rmax > 0.0)) throw std::domain_error("r_max must satisfy r_max > 0");
            if (regions_n < 2) throw std::domain_error("n_grid must satisfy n_grid >= 2");
            const gbd::RegimeBoundary bd = gbd::regime_boundaries(regions_B, regions_m);

            OutputRecord record;
            record.command = "regions";
            record.params = {{"B", static_cast<long long>(regions_B)},
                             {"m", static_cast<long long>(regions_m)},
                             {"r_max", regions_rmax},
                             {"n_grid", static_cast<long long>(regions_n)},
                             {"r_minus", bd.r_minus},
                             {"r_plus", bd.r_plus},
                             {"mu_minus", bd.mu_minus},
                             {"mu_plus", bd.mu_plus}};
            record.columns = {"radius", "mandel_q", "regime"};
            for (int k = 0; k < regions_n; ++k) {
                const double r = regions_rmax * (double(k) / double(regions_n - 1));
                const gbd::GbdParams params(regions_B, regions_m, gbd::mu_from_radius(r));
                record.rows.push_back({r, mandel_value(gbd::mandel_q(params)),
                                       std::string(gbd::to_string(
                                           gbd::classify(regions_B, regions_m, r)))});
            }
            emit(record, regions_out);
            return 0;
        }

        if (app.got_subcommand(charfn_cmd)) {
            if (charfn_n < 2) throw std::domain_error("n_points must satisfy n_points >= 2");
            if (!(charfn_tmax >= charfn_tmin))
                throw std::domain_error("t_max must satisfy t_max >= t_min");
            const gbd::GbdParams params(charfn_B, charfn_m, charfn_mu);
            const gbd::PmfTable table = gbd::pmf_table(params);

            OutputRecord record;
            record.command = "charfn";
            record.params = {{"B", static_cast<long long>(charfn_B)},
                             {"m", static_cast<long long>(charfn_m)},
                             {"mu", charfn_mu},
                             {"t_min", charfn_tmin},
                             {"t_max", charfn_tmax},
                             {"n_points", static_cast<long long>(charfn_n)}};
            record.columns = {"t", "re_direct", "im_direct", "re_closed", "im_closed",
                              "abs_diff"};
            for (int k = 0; k < charfn_n; ++k) {
                const double t =
                    charfn_tmin + (charfn_tmax - charfn_tmin) * (double(k) / double(charfn_n - 1));
                const std::complex<double> direct = gbd::char_fn_direct(table, t);
                const std::complex<double> closed = gbd::char_fn_closed(params, t);
                record.rows.push_back({t, direct.real(), direct.imag(), closed.real(),
                                       closed.imag(), std::abs(direct - closed)});
            }
            emit(record, charfn_out);
            return 0;
        }

        if (app.got_subcommand(verify_cmd)) {
            std::optional<double> tol;
            if (tol_opt->count() > 0) tol = verify_tol;
            return run_verify(verify_suite, verify_bmax, verify_mmax, tol, verify_out);
        }

        if (app.got_subcommand(sample_cmd)) {
            if (sample_count < 1) throw std::domain_error("count must satisfy count >= 1");
            const gbd::GbdParams params(sample_B, sample_m, sample_mu);
            const gbd::PmfTable table = gbd::pmf_table(params);
            const int d = params.support_size();

            UniformStream uniforms(sample_seed);
            std::vector<long long> histogram(d, 0);
            double sum = 0.0, sum_sq = 0.0;
            for (long long k = 0; k < sample_count; ++k) {
                const int j = gbd::sample(table, uniforms.next());
                ++histogram[j];
                sum += j;
                sum_sq += double(j) * j;
            }
            const double emp_mean = sum / double(sample_count);
            const double emp_var = sum_sq / double(sample_count) - emp_mean * emp_mean;

            OutputRecord record;
            record.command = "sample";
            record.params = {{"B", static_cast<long long>(sample_B)},
                             {"m", static_cast<long long>(sample_m)},
                             {"mu", sample_mu},
                             {"count", sample_count},
                             {"seed", static_cast<long long>(sample_seed)},
                             {"empirical_mean", emp_mean},
                             {"empirical_variance", emp_var}};
            record.columns = {"j", "count", "frequency"};
            for (int j = 0; j < d; ++j)
                record.rows.push_back({static_cast<long long>(j), histogram[j],
                                       double(histogram[j]) / double(sample_count)});
            emit(record, sample_out);
            return 0;
        }
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::out_of_range& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
