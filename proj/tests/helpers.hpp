#pragma once

// Test-only oracles, deliberately independent of the library code paths they
// check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "kakforge/involution.hpp"
#include "kakforge/matrix.hpp"
#include "kakforge/random.hpp"

namespace oracle {

using kakforge::cdouble;
using kakforge::ComplexMatrix;

// plain triple loop, index arithmetic only
inline ComplexMatrix naive_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t n = a.dim();
    ComplexMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cdouble s{};
            for (std::size_t k = 0; k < n; ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

inline double naive_frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c) {
            const cdouble d = a(r, c) - b(r, c);
            s += d.real() * d.real() + d.imag() * d.imag();
        }
    return std::sqrt(s);
}

// Monic characteristic polynomial coefficients via Newton's identities on
// power-sum traces; returns c so that p(z) = z^n + c[n-1] z^{n-1} + ... + c[0].
inline std::vector<cdouble> char_poly_coeffs(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    std::vector<cdouble> power_sums(n + 1);
    ComplexMatrix ak = ComplexMatrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        ak = naive_matmul(ak, a);
        cdouble tr{};
        for (std::size_t i = 0; i < n; ++i) tr += ak(i, i);
        power_sums[k] = tr;
    }
    std::vector<cdouble> e(n + 1);
    e[0] = 1.0;
    for (std::size_t k = 1; k <= n; ++k) {
        cdouble s{};
        double sign = 1.0;
        for (std::size_t i = 1; i <= k; ++i) {
            s += sign * e[k - i] * power_sums[i];
            sign = -sign;
        }
        e[k] = s / static_cast<double>(k);
    }
    std::vector<cdouble> c(n);
    for (std::size_t j = 1; j <= n; ++j) c[n - j] = (j % 2 ? -1.0 : 1.0) * e[j];
    return c;
}

// Durand-Kerner iteration for the roots of a monic polynomial.
inline std::vector<cdouble> poly_roots(const std::vector<cdouble>& coeffs) {
    const std::size_t n = coeffs.size();
    auto eval = [&](cdouble z) {
        cdouble v{1.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) v = v * z + coeffs[n - 1 - j];
        return v;
    };
    std::vector<cdouble> z(n);
    const cdouble seed{0.4, 0.9};
    cdouble acc{1.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        acc *= seed;
        z[i] = acc;
    }
    for (int iter = 0; iter < 1000; ++iter) {
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cdouble denom{1.0, 0.0};
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) denom *= z[i] - z[j];
            const cdouble step = eval(z[i]) / denom;
            z[i] -= step;
            delta = std::max(delta, std::abs(step));
        }
        if (delta < 1e-14) break;
    }
    return z;
}

inline std::vector<cdouble> char_poly_eigenvalues(const ComplexMatrix& a) {
    return poly_roots(char_poly_coeffs(a));
}

// Taylor series with scaling and squaring.
inline ComplexMatrix expm(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    double nrm = 0.0;
    for (const auto& v : a.entries()) nrm = std::max(nrm, std::abs(v));
    int s = 0;
    double scaled = nrm * static_cast<double>(n);
    while (scaled > 0.5 && s < 60) {
        scaled /= 2.0;
        ++s;
    }
    ComplexMatrix x = (cdouble{1.0 / std::pow(2.0, s), 0.0}) * a;
    ComplexMatrix result = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    for (int k = 1; k <= 24; ++k) {
        term = (cdouble{1.0 / k, 0.0}) * naive_matmul(term, x);
        result = result + term;
    }
    for (int i = 0; i < s; ++i) result = naive_matmul(result, result);
    return result;
}

// Random element of exp(k): exponential of i * (Theta-even Hermitian).
inline ComplexMatrix random_exp_k(const kakforge::CartanInvolution& inv, kakforge::SplitMix64& rng) {
    ComplexMatrix h = kakforge::random_hermitian(inv.dim(), rng);
    const std::size_t mask = inv.axis_mask();
    for (std::size_t r = 0; r < h.dim(); ++r)
        for (std::size_t c = 0; c < h.dim(); ++c)
            if ((r ^ c) & mask) h(r, c) = 0.0;  // keep only the Theta-fixed pattern
    return expm(cdouble{0.0, 1.0} * h);
}

inline bool same_vector_up_to_phase(const std::vector<cdouble>& a, const std::vector<cdouble>& b,
                                    double tol) {
    const cdouble ip = kakforge::dot(a, b);
    return std::abs(std::abs(ip) - 1.0) <= tol;
}

// multiset comparison of complex values
inline bool same_value_multiset(std::vector<cdouble> a, std::vector<cdouble> b, double tol) {
    if (a.size() != b.size()) return false;
    for (const cdouble& x : a) {
        bool found = false;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (std::abs(b[j] - x) <= tol) {
                b.erase(b.begin() + static_cast<long>(j));
                found = true;
                break;
            }
        if (!found) return false;
    }
    return b.empty();
}

}  // namespace oracle
