#include "qmlab/io.hpp"

#include <json.hpp>

#include <bit>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace qmlab {
namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path, std::ios::openmode mode) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, mode);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    return out;
}

void format_double(std::ostream& os, double v) {
    // round-trippable without locale surprises
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

}  // namespace

void write_state_csv(const std::filesystem::path& path, const WaveFunction& psi) {
    const GridSpec& g = psi.grid();
    std::ofstream out = open_out(path, std::ios::out);
    for (int d = 0; d < g.dim; ++d) out << "x" << d << ",";
    out << "re,im,rho\n";
    const auto rho = probability_density(psi);
    for (std::size_t i = 0; i < psi.size(); ++i) {
        const auto idx = g.unflatten(i);
        for (int d = 0; d < g.dim; ++d) {
            format_double(out, g.coord(idx[d]));
            out << ",";
        }
        format_double(out, psi[i].real());
        out << ",";
        format_double(out, psi[i].imag());
        out << ",";
        format_double(out, rho[i]);
        out << "\n";
    }
    if (!out) throw IoError("write failed: " + path.string());
}

void write_state_binary(const std::filesystem::path& path, const WaveFunction& psi,
                        const PhysicsParams& params) {
    static_assert(std::endian::native == std::endian::little,
                  "snapshot format is little-endian");
    const GridSpec& g = psi.grid();
    std::vector<double> payload;
    payload.reserve(2 * psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        payload.push_back(psi[i].real());
        payload.push_back(psi[i].imag());
    }
    const std::uint64_t checksum = fnv1a(payload.data(), payload.size() * sizeof(double));

    json header;
    header["format"] = "qmlab-state";
    header["version"] = 1;
    header["grid"] = {{"dim", g.dim}, {"n", g.n}, {"length", g.length}};
    header["params"] = {{"theta", params.theta}, {"h", params.h}, {"masses", params.masses}};
    header["checksum_fnv1a"] = checksum;
    header["doubles"] = payload.size();

    std::ofstream out = open_out(path, std::ios::out | std::ios::binary);
    out << header.dump() << "\n";
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size() * sizeof(double)));
    if (!out) throw IoError("write failed: " + path.string());
}

LoadedState read_state_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::in | std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw IoError("missing header: " + path.string());

    json header;
    try {
        header = json::parse(line);
    } catch (const json::exception& e) {
        throw SchemaMismatchError("bad snapshot header: " + std::string(e.what()));
    }
    if (header.value("format", "") != "qmlab-state" || header.value("version", 0) != 1)
        throw SchemaMismatchError("unknown snapshot format/version: " + path.string());

    GridSpec g;
    g.dim = header["grid"]["dim"].get<int>();
    g.n = header["grid"]["n"].get<int>();
    g.length = header["grid"]["length"].get<double>();
    g.validate();

    PhysicsParams params;
    params.theta = header["params"]["theta"].get<double>();
    params.h = header["params"]["h"].get<double>();
    params.masses = header["params"]["masses"].get<std::vector<double>>();
    params.validate();

    const auto count = header["doubles"].get<std::size_t>();
    if (count != 2 * g.size()) throw SchemaMismatchError("payload size mismatch");
    std::vector<double> payload(count);
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (!in) throw IoError("truncated payload: " + path.string());
    if (fnv1a(payload.data(), count * sizeof(double)) !=
        header["checksum_fnv1a"].get<std::uint64_t>())
        throw IoError("checksum mismatch: " + path.string());

    std::vector<cdouble> amp(g.size());
    for (std::size_t i = 0; i < amp.size(); ++i)
        amp[i] = cdouble(payload[2 * i], payload[2 * i + 1]);
    return LoadedState{WaveFunction(g, std::move(amp)), params};
}

void write_series_csv(const std::filesystem::path& path, const std::string& header,
                      const std::vector<std::vector<double>>& rows) {
    std::ofstream out = open_out(path, std::ios::out);
    out << header << "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ",";
            format_double(out, row[c]);
        }
        out << "\n";
    }
    if (!out) throw IoError("write failed: " + path.string());
}

std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t seed) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t hash = seed;
    for (std::size_t i = 0; i < bytes; ++i) {
        hash ^= p[i];
        hash *= 1099511628211ull;
    }
    return hash;
}

std::uint64_t fnv1a(const std::string& s, std::uint64_t seed) {
    return fnv1a(s.data(), s.size(), seed);
}

}  // namespace qmlab
