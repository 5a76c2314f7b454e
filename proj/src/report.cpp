#include "qmlab/report.hpp"

#include <algorithm>
#include <fstream>

namespace qmlab {

using nlohmann::json;

int VerificationReport::passed() const {
    return static_cast<int>(std::count_if(checks.begin(), checks.end(),
                                          [](const CheckResult& c) { return c.pass; }));
}

int VerificationReport::failed() const {
    return static_cast<int>(checks.size()) - passed();
}

json report_to_json(const VerificationReport& report) {
    json j;
    j["schema_version"] = report.schema_version;
    j["suite"] = report.suite;
    j["config"] = report.config_echo;
    j["summary"] = {{"total", report.checks.size()},
                    {"passed", report.passed()},
                    {"failed", report.failed()}};
    json checks = json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"check_id", c.check_id},
                          {"identity", c.identity},
                          {"residual", c.residual},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass},
                          {"runtime_s", c.runtime_s}});
    }
    j["checks"] = std::move(checks);
    return j;
}

VerificationReport report_from_json(const json& j) {
    VerificationReport report;
    try {
        report.schema_version = j.at("schema_version").get<int>();
        if (report.schema_version != kReportSchemaVersion)
            throw SchemaMismatchError("unsupported report schema version");
        report.suite = j.at("suite").get<std::string>();
        report.config_echo = j.value("config", json::object());
        for (const auto& c : j.at("checks")) {
            CheckResult r;
            r.check_id = c.at("check_id").get<std::string>();
            r.identity = c.value("identity", "");
            r.residual = c.at("residual").get<double>();
            r.tolerance = c.at("tolerance").get<double>();
            r.pass = c.at("pass").get<bool>();
            r.runtime_s = c.value("runtime_s", 0.0);
            report.checks.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw SchemaMismatchError("malformed report: " + std::string(e.what()));
    }
    return report;
}

void write_report(const std::filesystem::path& path, const VerificationReport& report) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << report_to_json(report).dump(2) << "\n";
    if (!out) throw IoError("write failed: " + path.string());
}

VerificationReport read_report(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw SchemaMismatchError("report is not valid JSON: " + std::string(e.what()));
    }
    return report_from_json(j);
}

RegressionSummary diff_reports(const VerificationReport& a, const VerificationReport& b,
                               double threshold) {
    if (a.schema_version != b.schema_version)
        throw SchemaMismatchError("reports have different schema versions");
    RegressionSummary summary;
    for (const auto& ca : a.checks) {
        const auto it = std::find_if(b.checks.begin(), b.checks.end(),
                                     [&](const CheckResult& cb) {
                                         return cb.check_id == ca.check_id;
                                     });
        if (it == b.checks.end()) continue;
        RegressionEntry e;
        e.check_id = ca.check_id;
        e.residual_a = ca.residual;
        e.residual_b = it->residual;
        e.ratio = it->residual / std::max(ca.residual, 1e-300);
        e.flagged = e.ratio > threshold;
        if (e.flagged) ++summary.regressions;
        summary.entries.push_back(std::move(e));
    }
    return summary;
}

}  // namespace qmlab
