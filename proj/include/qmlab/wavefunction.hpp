#pragma once

#include <array>
#include <complex>
#include <vector>

#include "qmlab/fft.hpp"
#include "qmlab/grid.hpp"
#include "qmlab/physics_params.hpp"

namespace qmlab {

/// A state sampled on a periodic grid: amplitudes psi(r) with the
/// discrete-sum * dV normalization convention, so continuum formulas hold
/// verbatim for band-limited states. Values are immutable after construction.
class WaveFunction {
  public:
    WaveFunction(GridSpec grid, std::vector<cdouble> amplitudes);

    const GridSpec& grid() const { return grid_; }
    const std::vector<cdouble>& amplitudes() const { return amp_; }
    std::size_t size() const { return amp_.size(); }
    cdouble operator[](std::size_t i) const { return amp_[i]; }

    double norm_sq() const;

  private:
    GridSpec grid_;
    std::vector<cdouble> amp_;
};

WaveFunction normalize(const WaveFunction& psi);

cdouble inner_product(const WaveFunction& phi, const WaveFunction& psi);

std::vector<double> probability_density(const WaveFunction& psi);

/// Probability mass within `margin_cells` grid cells of any box face.
double boundary_tail_mass(const WaveFunction& psi, int margin_cells = 2);

/// Fraction of |psi|^2 carried by the top `band` fraction of the spectrum
/// (per-axis |k| above (1-band)*k_nyquist). Used as the aliasing guard.
double spectral_tail_fraction(const WaveFunction& psi, double band = 0.1);

/// Normalized Gaussian packet exp(-(r-r0)^2/(4 sigma^2)) * exp(i k0.r).
/// Throws BoundaryLeakError if more than 1e-10 of its mass sits at the box
/// boundary.
WaveFunction gaussian_packet(const GridSpec& grid,
                             const std::vector<double>& center,
                             const std::vector<double>& width,
                             const std::vector<double>& wavevector);

struct PlaneWaveResult {
    WaveFunction psi;
    std::vector<double> momentum;       // effective (snapped) momentum
    std::vector<int> mode;              // integer grid mode per axis
    bool snapped = false;               // true if the request was off-lattice
    double continuum_norm_constant = 0; // (2*pi*theta)^(-dim/2)
};

/// Unit-norm eigenstate of the spectral momentum operator. Requested momenta
/// are snapped to the grid lattice 2*pi*theta*m/L and the snap is reported,
/// never silent.
PlaneWaveResult plane_wave(const GridSpec& grid, const std::vector<double>& p,
                           const PhysicsParams& params);

/// <x_j> and <p_j> computed directly (position sum / spectral sum).
std::vector<double> position_expectation(const WaveFunction& psi);
std::vector<double> momentum_expectation(const WaveFunction& psi, const PhysicsParams& params);

}  // namespace qmlab
