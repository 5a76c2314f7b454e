#include "qmlab/grid.hpp"

#include <cmath>

namespace qmlab {

void GridSpec::validate() const {
    if (dim < 1 || dim > 3) throw ConfigInvalidError("grid dim must be 1..3");
    if (n < 8) throw ConfigInvalidError("grid needs at least 8 points per axis");
    if ((n & (n - 1)) != 0) throw ConfigInvalidError("points per axis must be a power of two");
    if (!(length > 0.0)) throw ConfigInvalidError("box length must be positive");
}

double GridSpec::minimum_image(double u) const {
    u = std::remainder(u, length);
    return u;
}

void require_same_grid(const GridSpec& a, const GridSpec& b) {
    if (!(a == b)) throw GridMismatchError("grids differ");
}

}  // namespace qmlab
