#pragma once

#include <cmath>
#include <cstdint>

#include "kakforge/matrix.hpp"

namespace kakforge {

// splitmix64: small, portable, and good enough for test-matrix generation.
// Every randomized path in the project runs off this generator so that a
// fixed seed reproduces the same matrices everywhere.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed = 42) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u = 1.0 - uniform();  // (0, 1]
        const double r = std::sqrt(-2.0 * std::log(u));
        const double t = 2.0 * kPi * uniform();
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    cdouble complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return {re, im};
    }

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Haar-adequate random unitary: modified Gram-Schmidt on a complex Gaussian
// matrix. MGS leaves the R diagonal real-positive, which fixes the column
// phases.
inline ComplexMatrix random_unitary(std::size_t dim, SplitMix64& rng) {
    ComplexMatrix a(dim);
    for (auto& v : a.entries()) v = rng.complex_gaussian();
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<cdouble> v = column(a, j);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t i = 0; i < j; ++i) {
                const std::vector<cdouble> qi = column(a, i);
                const cdouble proj = dot(qi, v);
                for (std::size_t r = 0; r < dim; ++r) v[r] -= proj * qi[r];
            }
        }
        const double nrm = vec_norm(v);
        if (nrm < 1e-12) throw error("random_unitary: degenerate Gaussian sample");
        for (auto& x : v) x /= nrm;
        set_column(a, j, v);
    }
    return a;
}

inline ComplexMatrix random_hermitian(std::size_t dim, SplitMix64& rng) {
    ComplexMatrix h(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        h(r, r) = rng.gaussian();
        for (std::size_t c = r + 1; c < dim; ++c) {
            const cdouble z = rng.complex_gaussian();
            h(r, c) = z;
            h(c, r) = std::conj(z);
        }
    }
    return h;
}

}  // namespace kakforge
