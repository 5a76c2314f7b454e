#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "qmlab/io.hpp"
#include "qmlab/report.hpp"

using namespace qmlab;
namespace fs = std::filesystem;

namespace {
fs::path temp_file(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "qmlab-io-tests";
    fs::create_directories(dir);
    return dir / name;
}
}  // namespace

TEST_CASE("binary snapshot round-trips exactly") {
    const GridSpec grid{1, 64, 24.0};
    PhysicsParams params;
    params.theta = 1.5;
    const WaveFunction psi = gaussian_packet(grid, {1.0}, {1.2}, {0.7});
    const fs::path path = temp_file("state.qmb");
    write_state_binary(path, psi, params);
    const LoadedState loaded = read_state_binary(path);
    CHECK(loaded.psi.grid() == grid);
    CHECK(loaded.params.theta == 1.5);
    for (std::size_t i = 0; i < psi.size(); ++i) CHECK(loaded.psi[i] == psi[i]);
}

TEST_CASE("a corrupted payload fails the checksum") {
    const GridSpec grid{1, 32, 16.0};
    const WaveFunction psi = gaussian_packet(grid, {0.0}, {0.8}, {0.0});
    const fs::path path = temp_file("corrupt.qmb");
    write_state_binary(path, psi, PhysicsParams{});
    {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(-8, std::ios::end);
        const char junk[8] = {0x13, 0x37, 0x13, 0x37, 0x13, 0x37, 0x13, 0x37};
        f.write(junk, sizeof junk);
    }
    CHECK_THROWS_AS(read_state_binary(path), IoError);
}

TEST_CASE("missing files raise IoError") {
    CHECK_THROWS_AS(read_state_binary(temp_file("does-not-exist.qmb")), IoError);
}

TEST_CASE("csv writers emit one row per sample") {
    const GridSpec grid{1, 16, 16.0};
    const WaveFunction psi = gaussian_packet(grid, {0.0}, {0.8}, {0.0});
    const fs::path spath = temp_file("state.csv");
    write_state_csv(spath, psi);
    std::ifstream sf(spath);
    std::string line;
    int rows = 0;
    while (std::getline(sf, line)) ++rows;
    CHECK(rows == 17);  // header + 16 grid points

    const fs::path tpath = temp_file("series.csv");
    write_series_csv(tpath, "t,value", {{0.0, 1.0}, {0.1, 2.0}});
    std::ifstream tf(tpath);
    rows = 0;
    while (std::getline(tf, line)) ++rows;
    CHECK(rows == 3);
}

TEST_CASE("fnv1a is stable and order-sensitive") {
    CHECK(fnv1a(std::string("a")) != fnv1a(std::string("b")));
    CHECK(fnv1a(std::string("ab")) != fnv1a(std::string("ba")));
    CHECK(fnv1a(std::string("ccr.grid")) == fnv1a(std::string("ccr.grid")));
}

TEST_CASE("report round-trips through json") {
    VerificationReport rep;
    rep.suite = "ccr";
    rep.config_echo = {{"seed", 7}};
    rep.checks.push_back({"ccr.grid-expectation", "<[x, p]> = i theta", 1e-9, 1e-7, true, 0.01});
    rep.checks.push_back({"ccr.matrix-canonical", "[x, p] = i theta on the safe subspace",
                          2e-13, 1e-12, true, 0.002});
    const fs::path path = temp_file("report.json");
    write_report(path, rep);
    const VerificationReport back = read_report(path);
    CHECK(back.suite == "ccr");
    CHECK(back.checks.size() == 2);
    CHECK(back.checks[0].check_id == "ccr.grid-expectation");
    CHECK(back.checks[0].residual == 1e-9);
    CHECK(back.checks[0].pass);
    CHECK(back.passed() == 2);
    CHECK(back.failed() == 0);
}

TEST_CASE("schema version mismatches are rejected") {
    VerificationReport rep;
    rep.suite = "ccr";
    nlohmann::json j = report_to_json(rep);
    j["schema_version"] = kReportSchemaVersion + 1;
    CHECK_THROWS_AS(report_from_json(j), SchemaMismatchError);
    CHECK_THROWS_AS(report_from_json(nlohmann::json::parse("{\"suite\": 3}")),
                    SchemaMismatchError);
}

TEST_CASE("diff flags residual growth") {
    VerificationReport a, b;
    a.suite = b.suite = "ccr";
    a.checks.push_back({"c1", "id", 1e-10, 1e-8, true, 0.0});
    a.checks.push_back({"c2", "id", 1e-10, 1e-8, true, 0.0});
    b.checks.push_back({"c1", "id", 1.5e-10, 1e-8, true, 0.0});
    b.checks.push_back({"c2", "id", 3e-9, 1e-8, true, 0.0});
    const RegressionSummary s = diff_reports(a, b);
    CHECK(s.regressions == 1);
    bool saw_c2 = false;
    for (const auto& e : s.entries)
        if (e.check_id == "c2") {
            saw_c2 = true;
            CHECK(e.flagged);
            CHECK(e.ratio == doctest::Approx(30.0));
        }
    CHECK(saw_c2);
}
