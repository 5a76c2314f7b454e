#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "qmlab/report.hpp"
#include "qmlab/suites.hpp"

namespace {

constexpr int kExitAllPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsageError = 2;

qmlab::RunConfig load_config(const std::string& config_path) {
    if (config_path.empty()) return {};
    std::ifstream in(config_path);
    if (!in) throw qmlab::ConfigInvalidError("cannot open config file: " + config_path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw qmlab::ConfigInvalidError("config is not valid JSON: " + std::string(e.what()));
    }
    return qmlab::RunConfig::from_json(j);
}

int run_verify(const std::string& suite, const std::string& config_path,
               const std::optional<std::uint64_t>& seed, const std::string& out_dir,
               const std::vector<double>& theta_over_hbar,
               const std::optional<double>& tolerance_scale) {
    qmlab::RunConfig cfg = load_config(config_path);
    cfg.suite = suite;
    if (seed) cfg.seed = *seed;
    if (!out_dir.empty()) {
        cfg.output_dir = out_dir;
    } else if (const char* env = std::getenv("QMLAB_OUT_DIR")) {
        cfg.output_dir = env;
    }
    if (!theta_over_hbar.empty()) cfg.theta_over_hbar = theta_over_hbar;
    if (tolerance_scale) cfg.tolerance_scale = *tolerance_scale;
    cfg.validate();

    const qmlab::VerificationReport report = qmlab::run_suite(cfg);
    for (const auto& c : report.checks) {
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.check_id
                  << "  residual=" << c.residual << "  tolerance=" << c.tolerance << "\n";
    }
    std::cout << report.passed() << "/" << report.checks.size() << " checks passed; report in "
              << (cfg.output_dir / (cfg.suite + "-report.json")).string() << "\n";
    return report.all_pass() ? kExitAllPass : kExitCheckFailure;
}

int run_diff(const std::string& path_a, const std::string& path_b) {
    const auto a = qmlab::read_report(path_a);
    const auto b = qmlab::read_report(path_b);
    const auto summary = qmlab::diff_reports(a, b);
    for (const auto& e : summary.entries) {
        if (e.flagged)
            std::cout << "REGRESSION  " << e.check_id << "  " << e.residual_a << " -> "
                      << e.residual_b << "  (x" << e.ratio << ")\n";
    }
    std::cout << summary.regressions << " regression(s) across " << summary.entries.size()
              << " compared checks\n";
    return summary.regressions == 0 ? kExitAllPass : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qmlab verification harness"};
    app.require_subcommand(0, 1);

    std::string suite;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::vector<double> theta_over_hbar;
    std::optional<double> tolerance_scale;

    app.add_option("suite", suite, "suite to run: ccr, rotation, symmetry, continuity, "
                                   "dynamics, twobody, hybrid-theta-sweep, all");
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--seed", seed, "64-bit seed for all random test states");
    app.add_option("--out", out_dir, "output directory for reports and series");
    app.add_option("--theta-over-hbar", theta_over_hbar,
                   "theta/hbar ratios for the hybrid sweep")
        ->delimiter(',');
    app.add_option("--tolerance-scale", tolerance_scale,
                   "multiply every check tolerance by this factor");

    auto* diff = app.add_subcommand("diff", "compare two reports for regressions");
    std::string diff_a, diff_b;
    diff->add_option("a", diff_a, "baseline report JSON")->required();
    diff->add_option("b", diff_b, "candidate report JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsageError;
    }

    try {
        if (diff->parsed()) return run_diff(diff_a, diff_b);
        if (suite.empty()) {
            std::cerr << "error: no suite given (try --help)\n";
            return kExitUsageError;
        }
        return run_verify(suite, config_path, seed, out_dir, theta_over_hbar, tolerance_scale);
    } catch (const qmlab::ConfigInvalidError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const qmlab::SchemaMismatchError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsageError;
    }
}
