#include <doctest.h>

#include <cmath>

#include "qmlab/fft.hpp"
#include "qmlab/physics_params.hpp"
#include "qmlab/grid.hpp"

using namespace qmlab;

TEST_CASE("grid coordinates and wavenumbers") {
    GridSpec g{1, 64, 16.0};
    CHECK(g.spacing() == doctest::Approx(0.25));
    CHECK(g.coord(0) == doctest::Approx(-8.0));
    CHECK(g.coord(32) == doctest::Approx(0.0));
    CHECK(g.wavenumber(0) == doctest::Approx(0.0));
    CHECK(g.wavenumber(1) == doctest::Approx(2.0 * kPi / 16.0));
    // upper half of the FFT bins carries negative wavenumbers
    CHECK(g.wavenumber(63) == doctest::Approx(-2.0 * kPi / 16.0));
    CHECK(g.wavenumber(32) == doctest::Approx(-2.0 * kPi * 32 / 16.0));
}

TEST_CASE("flatten and unflatten round-trip in 3D") {
    GridSpec g{3, 8, 16.0};
    for (std::size_t f : {std::size_t{0}, std::size_t{7}, std::size_t{200}, g.size() - 1}) {
        CHECK(g.flatten(g.unflatten(f)) == f);
    }
    CHECK(g.flatten({1, 2, 3}) == 1 * 64 + 2 * 8 + 3);
}

TEST_CASE("minimum image wraps into the centered box") {
    GridSpec g{1, 64, 16.0};
    CHECK(g.minimum_image(0.5) == doctest::Approx(0.5));
    CHECK(g.minimum_image(9.0) == doctest::Approx(-7.0));
    CHECK(g.minimum_image(-9.0) == doctest::Approx(7.0));
    CHECK(g.minimum_image(16.0) == doctest::Approx(0.0));
}

TEST_CASE("grid validation rejects bad shapes") {
    CHECK_THROWS_AS((GridSpec{0, 64, 16.0}.validate()), ConfigInvalidError);
    CHECK_THROWS_AS((GridSpec{1, 63, 16.0}.validate()), ConfigInvalidError);
    CHECK_THROWS_AS((GridSpec{1, 4, 16.0}.validate()), ConfigInvalidError);
    CHECK_THROWS_AS((GridSpec{1, 64, -1.0}.validate()), ConfigInvalidError);
    CHECK_NOTHROW((GridSpec{2, 64, 16.0}.validate()));
}

TEST_CASE("forward/backward FFT round-trips") {
    GridSpec g{2, 16, 8.0};
    std::vector<cdouble> f(g.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = cdouble(std::sin(0.13 * i), std::cos(0.07 * i));
    std::vector<cdouble> copy(f);
    fft_forward(g, copy);
    fft_backward_normalized(g, copy);
    double worst = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::abs(f[i] - copy[i]));
    CHECK(worst < 1e-13);
}

TEST_CASE("FFT diagonalizes a single mode") {
    GridSpec g{1, 32, 8.0};
    const double k = g.wavenumber(3);
    std::vector<cdouble> f(g.size());
    for (int i = 0; i < g.n; ++i) f[i] = std::exp(cdouble(0.0, k * g.coord(i)));
    fft_forward(g, f);
    // all energy in bin 3
    for (int i = 0; i < g.n; ++i) {
        if (i == 3)
            CHECK(std::abs(f[i]) == doctest::Approx(32.0));
        else
            CHECK(std::abs(f[i]) < 1e-12);
    }
}
