#pragma once

#include <cstdint>
#include <random>

#include "qmlab/report.hpp"
#include "qmlab/wavefunction.hpp"

namespace qmlab {

/// Everything a verification run needs. The seed fully determines all random
/// test states, so identical configs produce identical report values.
struct RunConfig {
    std::string suite = "all";
    std::uint64_t seed = 1;
    std::filesystem::path output_dir = "qmlab-out";
    int grid_n = 256;
    double grid_length = 32.0;
    double theta = 1.0;
    double h = 2.0 * kPi;
    double dt = 1e-3;
    std::vector<double> theta_over_hbar{0.5, 1.0, 2.0};
    double tolerance_scale = 1.0;

    static const std::vector<std::string>& known_suites();
    static RunConfig from_json(const nlohmann::json& j);
    nlohmann::json echo() const;
    void validate() const;
};

/// Deterministic normal/uniform source. The gaussians are hand-rolled
/// Box-Muller on raw mt19937_64 bits because std::normal_distribution is
/// implementation-defined and would break cross-platform report identity.
class DeterministicRng {
  public:
    explicit DeterministicRng(std::uint64_t seed) : eng_(seed) {}

    double uniform();                      // [0, 1)
    double uniform(double lo, double hi);  // [lo, hi)
    double normal();

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Stable per-check seed: forking by check-id hash means adding a check never
/// perturbs the random states of the others.
std::uint64_t fork_seed(std::uint64_t base, const std::string& check_id);

/// Band-limited random test state: a seeded superposition of Gaussian packets
/// with centers well inside the box, so both the spectral tail and the
/// boundary tail are negligible.
WaveFunction random_packet_superposition(const GridSpec& grid, std::uint64_t seed,
                                         int packets = 6);

/// Runs the named suite (or all of them), writes report JSON and series CSVs
/// under config.output_dir, and returns the report.
VerificationReport run_suite(const RunConfig& config);

}  // namespace qmlab
