#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "gammalab/matrix.hpp"

namespace gammalab {

/// Deterministic random source.
///
/// Distributions are implemented directly on top of the raw mt19937_64
/// stream so that a given seed produces the same values on every platform
/// (the std:: distribution objects are implementation-defined).
class Rng {
public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * M_PI * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    Complex complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return Complex(re, im) / std::sqrt(2.0);
    }

    /// Uniform on the closed disc of the given radius.
    Complex unit_disc(double radius = 1.0) {
        const double r = radius * std::sqrt(uniform());
        const double t = 2.0 * M_PI * uniform();
        return std::polar(r, t);
    }

    /// Uniform on the unit circle.
    Complex unit_circle() { return std::polar(1.0, 2.0 * M_PI * uniform()); }

    CMatrix gaussian_matrix(int rows, int cols) {
        CMatrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = complex_gaussian();
        return m;
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace gammalab
