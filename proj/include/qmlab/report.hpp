#pragma once

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

#include "qmlab/errors.hpp"

namespace qmlab {

inline constexpr int kReportSchemaVersion = 1;

/// One verified identity. `identity` is the plain-text formula being checked
/// (e.g. "[x, p] = i theta"), so a failing check reads as a statement about
/// the mathematics, not about the code path.
struct CheckResult {
    std::string check_id;
    std::string identity;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double runtime_s = 0.0;
};

struct VerificationReport {
    int schema_version = kReportSchemaVersion;
    std::string suite;
    nlohmann::json config_echo;
    std::vector<CheckResult> checks;

    int passed() const;
    int failed() const;
    bool all_pass() const { return failed() == 0; }
};

nlohmann::json report_to_json(const VerificationReport& report);
VerificationReport report_from_json(const nlohmann::json& j);

void write_report(const std::filesystem::path& path, const VerificationReport& report);
VerificationReport read_report(const std::filesystem::path& path);

struct RegressionEntry {
    std::string check_id;
    double residual_a = 0.0;
    double residual_b = 0.0;
    double ratio = 0.0;  // b / a, with a floored at 1e-300
    bool flagged = false;
};

struct RegressionSummary {
    std::vector<RegressionEntry> entries;
    int regressions = 0;  // entries with ratio > threshold
};

/// Per-check residual ratios between two reports of the same schema version;
/// residual growth beyond `threshold` (default 2x) is flagged.
RegressionSummary diff_reports(const VerificationReport& a, const VerificationReport& b,
                               double threshold = 2.0);

}  // namespace qmlab
