#pragma once

#include <functional>
#include <string>

#include "qmlab/wavefunction.hpp"

namespace qmlab {

/// Grid operators applied through the Fourier basis: coordinate
/// multiplication in position space, multiplier tables f(theta*k) in
/// momentum space. Multiplier tables are cached at construction and the
/// operator is immutable afterwards.
class SpectralOperator {
  public:
    enum class Kind { Position, Momentum, FunctionOfR, FunctionOfP, FreeHamiltonian };

    static SpectralOperator position(const GridSpec& grid, int axis = 0);
    static SpectralOperator momentum(const GridSpec& grid, const PhysicsParams& params,
                                     int axis = 0);
    static SpectralOperator free_hamiltonian(const GridSpec& grid, const PhysicsParams& params,
                                             std::size_t mass_index = 0);
    /// Pointwise function of the position vector.
    static SpectralOperator function_of_r(const GridSpec& grid,
                                          std::function<double(const std::vector<double>&)> g,
                                          std::string label = "g(r)");
    /// Multiplier function of the momentum vector p = theta*k.
    static SpectralOperator function_of_p(const GridSpec& grid, const PhysicsParams& params,
                                          std::function<double(const std::vector<double>&)> f,
                                          std::string label = "f(p)");

    WaveFunction apply(const WaveFunction& psi) const;

    Kind kind() const { return kind_; }
    const std::string& label() const { return label_; }
    const GridSpec& grid() const { return grid_; }

  private:
    SpectralOperator(Kind kind, GridSpec grid, std::vector<double> multiplier, bool in_k_space,
                     std::string label);

    Kind kind_;
    GridSpec grid_;
    std::vector<double> multiplier_;  // real table, position- or k-indexed
    bool in_k_space_;
    std::string label_;
};

/// <psi|A|psi>. Kept complex on purpose: the imaginary part is a
/// self-adjointness diagnostic.
cdouble expectation(const SpectralOperator& op, const WaveFunction& psi);

/// <psi|(AB - BA)|psi>.
cdouble commutator_expectation(const SpectralOperator& a, const SpectralOperator& b,
                               const WaveFunction& psi);

}  // namespace qmlab
