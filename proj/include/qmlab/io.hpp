#pragma once

#include <filesystem>
#include <string>

#include "qmlab/wavefunction.hpp"

namespace qmlab {

/// CSV snapshot: one row per grid point, columns coordinate(s), Re psi,
/// Im psi, rho. Header row included.
void write_state_csv(const std::filesystem::path& path, const WaveFunction& psi);

/// Self-describing binary snapshot: a one-line JSON header (grid spec,
/// physics params, payload checksum) followed by interleaved little-endian
/// doubles (Re, Im) in grid order. Checksum is FNV-1a over the payload bytes.
void write_state_binary(const std::filesystem::path& path, const WaveFunction& psi,
                        const PhysicsParams& params);

struct LoadedState {
    WaveFunction psi;
    PhysicsParams params;
};

LoadedState read_state_binary(const std::filesystem::path& path);

/// Generic time-series CSV: `header` is the comma-joined column names, each
/// row one time sample.
void write_series_csv(const std::filesystem::path& path, const std::string& header,
                      const std::vector<std::vector<double>>& rows);

/// FNV-1a over a byte range; the snapshot checksum and the per-check seed
/// forking share this primitive.
std::uint64_t fnv1a(const void* data, std::size_t bytes, std::uint64_t seed = 1469598103934665603ull);
std::uint64_t fnv1a(const std::string& s, std::uint64_t seed = 1469598103934665603ull);

}  // namespace qmlab
