#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "qmlab/errors.hpp"

namespace qmlab {

/// Periodic spatial grid: `n` points per axis on a box of side `length`,
/// centered at the origin. Power-of-two n keeps the spectral transforms fast
/// and the momentum lattice exact.
struct GridSpec {
    int dim = 1;
    int n = 64;
    double length = 16.0;

    double spacing() const { return length / n; }

    double volume_element() const {
        double dv = 1.0;
        for (int d = 0; d < dim; ++d) dv *= spacing();
        return dv;
    }

    std::size_t size() const {
        std::size_t s = 1;
        for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(n);
        return s;
    }

    /// Coordinate of grid index i along one axis, in [-L/2, L/2).
    double coord(int i) const { return -0.5 * length + i * spacing(); }

    /// Angular wavenumber of FFT bin i along one axis: 2*pi*m/L with
    /// m in [-n/2, n/2).
    double wavenumber(int i) const {
        const int m = (i < n / 2) ? i : i - n;
        return 2.0 * kPiLocal * m / length;
    }

    /// Flatten a multi-index (row-major, axis 0 slowest).
    std::size_t flatten(const std::array<int, 3>& idx) const {
        std::size_t f = 0;
        for (int d = 0; d < dim; ++d) f = f * n + static_cast<std::size_t>(idx[d]);
        return f;
    }

    std::array<int, 3> unflatten(std::size_t f) const {
        std::array<int, 3> idx{0, 0, 0};
        for (int d = dim - 1; d >= 0; --d) {
            idx[d] = static_cast<int>(f % n);
            f /= n;
        }
        return idx;
    }

    /// Wrap a displacement into the minimum image (-L/2, L/2].
    double minimum_image(double u) const;

    void validate() const;

    bool operator==(const GridSpec& o) const {
        return dim == o.dim && n == o.n && length == o.length;
    }

  private:
    static constexpr double kPiLocal = 3.14159265358979323846;
};

void require_same_grid(const GridSpec& a, const GridSpec& b);

}  // namespace qmlab
