#include "qmlab/spectral_ops.hpp"

#include <cmath>

namespace qmlab {

SpectralOperator::SpectralOperator(Kind kind, GridSpec grid, std::vector<double> multiplier,
                                   bool in_k_space, std::string label)
    : kind_(kind), grid_(grid), multiplier_(std::move(multiplier)), in_k_space_(in_k_space),
      label_(std::move(label)) {}

SpectralOperator SpectralOperator::position(const GridSpec& grid, int axis) {
    grid.validate();
    if (axis < 0 || axis >= grid.dim) throw ConfigInvalidError("position: axis out of range");
    std::vector<double> table(grid.size());
    for (std::size_t f = 0; f < table.size(); ++f)
        table[f] = grid.coord(grid.unflatten(f)[axis]);
    return SpectralOperator(Kind::Position, grid, std::move(table), false,
                            "x_" + std::to_string(axis));
}

SpectralOperator SpectralOperator::momentum(const GridSpec& grid, const PhysicsParams& params,
                                            int axis) {
    grid.validate();
    params.validate();
    if (axis < 0 || axis >= grid.dim) throw ConfigInvalidError("momentum: axis out of range");
    std::vector<double> table(grid.size());
    for (std::size_t f = 0; f < table.size(); ++f)
        table[f] = params.theta * grid.wavenumber(grid.unflatten(f)[axis]);
    return SpectralOperator(Kind::Momentum, grid, std::move(table), true,
                            "p_" + std::to_string(axis));
}

SpectralOperator SpectralOperator::free_hamiltonian(const GridSpec& grid,
                                                    const PhysicsParams& params,
                                                    std::size_t mass_index) {
    grid.validate();
    params.validate();
    const double m = params.mass(mass_index);
    const double coeff = params.h / (4.0 * kPi * params.theta * m);
    std::vector<double> table(grid.size());
    for (std::size_t f = 0; f < table.size(); ++f) {
        auto idx = grid.unflatten(f);
        double p2 = 0.0;
        for (int d = 0; d < grid.dim; ++d) {
            const double p = params.theta * grid.wavenumber(idx[d]);
            p2 += p * p;
        }
        table[f] = coeff * p2;
    }
    return SpectralOperator(Kind::FreeHamiltonian, grid, std::move(table), true, "H_free");
}

SpectralOperator SpectralOperator::function_of_r(
    const GridSpec& grid, std::function<double(const std::vector<double>&)> g, std::string label) {
    grid.validate();
    std::vector<double> table(grid.size());
    std::vector<double> r(grid.dim);
    for (std::size_t f = 0; f < table.size(); ++f) {
        auto idx = grid.unflatten(f);
        for (int d = 0; d < grid.dim; ++d) r[d] = grid.coord(idx[d]);
        table[f] = g(r);
    }
    return SpectralOperator(Kind::FunctionOfR, grid, std::move(table), false, std::move(label));
}

SpectralOperator SpectralOperator::function_of_p(
    const GridSpec& grid, const PhysicsParams& params,
    std::function<double(const std::vector<double>&)> f, std::string label) {
    grid.validate();
    params.validate();
    std::vector<double> table(grid.size());
    std::vector<double> p(grid.dim);
    for (std::size_t f_i = 0; f_i < table.size(); ++f_i) {
        auto idx = grid.unflatten(f_i);
        for (int d = 0; d < grid.dim; ++d) p[d] = params.theta * grid.wavenumber(idx[d]);
        table[f_i] = f(p);
    }
    return SpectralOperator(Kind::FunctionOfP, grid, std::move(table), true, std::move(label));
}

WaveFunction SpectralOperator::apply(const WaveFunction& psi) const {
    require_same_grid(grid_, psi.grid());
    std::vector<cdouble> out(psi.amplitudes());
    if (in_k_space_) {
        fft_forward(grid_, out);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] *= multiplier_[i];
        fft_backward_normalized(grid_, out);
    } else {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] *= multiplier_[i];
    }
    return WaveFunction(grid_, std::move(out));
}

cdouble expectation(const SpectralOperator& op, const WaveFunction& psi) {
    return inner_product(psi, op.apply(psi));
}

cdouble commutator_expectation(const SpectralOperator& a, const SpectralOperator& b,
                               const WaveFunction& psi) {
    const WaveFunction ab = a.apply(b.apply(psi));
    const WaveFunction ba = b.apply(a.apply(psi));
    return inner_product(psi, ab) - inner_product(psi, ba);
}

}  // namespace qmlab
