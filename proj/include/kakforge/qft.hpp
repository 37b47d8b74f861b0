#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "kakforge/circuit.hpp"
#include "kakforge/config.hpp"
#include "kakforge/kak.hpp"
#include "kakforge/matrix.hpp"

namespace kakforge {

// F_n(j,l) = omega_n^{(j-1)(l-1)} / sqrt(2^n), omega_n = exp(2*pi*i/2^n).
inline ComplexMatrix qft_matrix(int n, std::size_t dim_cap = std::size_t{1} << 12) {
    if (n < 1) throw error("qft_matrix: n must be >= 1");
    const std::size_t dim = std::size_t{1} << n;
    if (dim > dim_cap) throw error("qft_matrix: dimension exceeds the configured cap");
    ComplexMatrix f(dim);
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t l = 0; l < dim; ++l) {
            const std::size_t e = (j * l) % dim;
            f(j, l) = scale * std::polar(1.0, 2.0 * kPi * static_cast<double>(e) / static_cast<double>(dim));
        }
    return f;
}

// Q_n = chi_{n-1}^n ... chi_1^n; as a bit permutation it rotates
// (b1 ... bn) -> (bn b1 ... b_{n-1}).
inline ComplexMatrix qft_q_permutation(int n) {
    const std::size_t dim = std::size_t{1} << n;
    ComplexMatrix q(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        const std::size_t y = (x >> 1) | ((x & 1) << (n - 1));
        q(y, x) = 1.0;
    }
    return q;
}

// Omega_{n-1} = diag(1, omega_n, ..., omega_n^{2^{n-1}-1})
inline ComplexMatrix qft_omega(int n) {
    if (n < 2) throw error("qft_omega: n must be >= 2");
    const std::size_t half = std::size_t{1} << (n - 1);
    ComplexMatrix om(half);
    for (std::size_t t = 0; t < half; ++t)
        om(t, t) = std::polar(1.0, 2.0 * kPi * static_cast<double>(t) / static_cast<double>(2 * half));
    return om;
}

inline ComplexMatrix qft_d(int n) {
    const std::size_t half = std::size_t{1} << (n - 1);
    const ComplexMatrix om = qft_omega(n);
    ComplexMatrix d(2 * half);
    for (std::size_t t = 0; t < half; ++t) {
        d(t, t) = 1.0;
        d(half + t, half + t) = om(t, t);
    }
    return d;
}

struct QftArtifacts {
    ComplexMatrix f;      // F_n
    ComplexMatrix q;      // qubit rotation permutation
    ComplexMatrix d;      // diag(I, Omega)
    ComplexMatrix omega;  // Omega_{n-1}
    ComplexMatrix s;      // (I ⊗ F_{n-1}) Q_n
};

inline QftArtifacts qft_artifacts(int n) {
    if (n < 2) throw error("qft_artifacts: n must be >= 2");
    QftArtifacts art;
    art.f = qft_matrix(n);
    art.q = qft_q_permutation(n);
    art.d = qft_d(n);
    art.omega = qft_omega(n);
    art.s = kron(ComplexMatrix::identity(2), qft_matrix(n - 1)) * art.q;
    return art;
}

// The textbook circuit: per qubit one Hadamard followed by controlled phases
// from the lower-significance qubits, then the bit-reversal SWAP layer.
inline Circuit qft_known_circuit(int n) {
    if (n < 1) throw error("qft_known_circuit: n must be >= 1");
    Circuit c;
    c.n = n;
    for (int j = 1; j <= n; ++j) {
        c.gates.push_back(Gate::h(j));
        for (int k = j + 1; k <= n; ++k)
            c.gates.push_back(Gate::cphase(2.0 * kPi / std::pow(2.0, k - j + 1), k, j));
    }
    for (int j = 1; j <= n / 2; ++j) c.gates.push_back(Gate::swap(j, n + 1 - j));
    return c;
}

// Tensor-factor a diagonal into 2x2 diagonal factors (most significant qubit
// first), when the exponential-ladder structure admits it.
inline std::optional<std::vector<std::array<cdouble, 2>>> omega_factorize(const ComplexMatrix& omega,
                                                                          double tol = 1e-11) {
    const std::size_t dim = omega.dim();
    if (dim < 2 || (dim & (dim - 1)) != 0) throw error("omega_factorize: dimension must be a power of two");
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c)
            if (r != c && std::abs(omega(r, c)) > tol) throw error("omega_factorize: input is not diagonal");

    std::vector<cdouble> diag(dim);
    for (std::size_t i = 0; i < dim; ++i) diag[i] = omega(i, i);

    std::vector<std::array<cdouble, 2>> factors;
    while (diag.size() > 2) {
        const std::size_t half = diag.size() / 2;
        std::vector<cdouble> even(half), odd(half);
        for (std::size_t t = 0; t < half; ++t) {
            even[t] = diag[2 * t];
            odd[t] = diag[2 * t + 1];
        }
        if (std::abs(even[0]) < tol) return std::nullopt;
        const cdouble ratio = odd[0] / even[0];
        for (std::size_t t = 0; t < half; ++t)
            if (std::abs(odd[t] - ratio * even[t]) > tol) return std::nullopt;
        factors.push_back({cdouble{1.0, 0.0}, ratio});
        diag = std::move(even);
    }
    factors.push_back({diag[0], diag[1]});
    std::reverse(factors.begin(), factors.end());
    return factors;
}

struct QftKakReport {
    int n = 0;
    double reconstruction_residual = 0.0;
    double b_block_deviation = 0.0;      // vs I^{(n-2)} ⊗ diag(1,-1,-1,1), per block
    double y_block_deviation = 0.0;      // vs exp(i pi (XX+YY)/4) blocks
    double closed_form_residual = 0.0;   // F_n vs H1 D_n (I ⊗ F_{n-1}) Q_n
    bool spectrum_ok = false;            // m² carries ±1, each with multiplicity 2^{n-1}
    bool membership_ok = false;
    bool pass = false;
};

// Reproduction harness for the closed-form KAK factors of F_n. The
// involution is the last-qubit one: with it, m² of F_n collapses to
// S† sigma_1z sigma_nz S, whose spectrum is ±1 with equal multiplicities,
// and the XX+YY subalgebra applies. Factor-level identities are checked
// instead of any particular circuit layout.
inline QftKakReport qft_kak_check(int n, const Tolerances& tol = {}) {
    if (n < 2) throw error("qft_kak_check: n must be >= 2");
    QftKakReport rep;
    rep.n = n;
    const ComplexMatrix f = qft_matrix(n);
    const CartanInvolution inv(n, n);

    const KakFactors factors = kak_decompose(f, inv, Subalgebra::H2, false, tol);
    const VerificationReport v = verify_factors(f, inv, factors, tol.recon);
    rep.reconstruction_residual = v.residual;
    rep.membership_ok =
        v.k_tilde_in_exp_k && v.p_dagger_in_exp_k && v.y_exp_m_condition && v.y_block_shape;

    // canonical-frame b and y for the closed-form block comparison
    const ComplexMatrix m2 = compute_m_squared(f, inv, tol);
    const SymmetrizedBasis basis = build_symmetric_eigenbasis(m2, inv, tol);
    const SubalgebraFactors sf = assemble_p_h2(basis, m2, tol);
    const ComplexMatrix y = sqrt_b_h2(sf.b, sf.angles, tol);

    const std::size_t blocks = sf.angles.size();
    double bdev = 0.0, ydev = 0.0;
    for (std::size_t j = 0; j < blocks; ++j) {
        const std::size_t base = 4 * j;
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) {
                const double want_b = (r == c) ? ((r == 0 || r == 3) ? 1.0 : -1.0) : 0.0;
                bdev = std::max(bdev, std::abs(sf.b(base + r, base + c) - cdouble{want_b, 0.0}));
                cdouble want_y{};
                if (r == c && (r == 0 || r == 3)) want_y = {1.0, 0.0};
                if ((r == 1 && c == 2) || (r == 2 && c == 1)) want_y = {0.0, 1.0};
                ydev = std::max(ydev, std::abs(y(base + r, base + c) - want_y));
            }
    }
    rep.b_block_deviation = bdev;
    rep.y_block_deviation = ydev;

    // independent closed-form identity
    const QftArtifacts art = qft_artifacts(n);
    ComplexMatrix hmat(2);
    hmat(0, 0) = hmat(0, 1) = hmat(1, 0) = 1.0 / std::sqrt(2.0);
    hmat(1, 1) = -1.0 / std::sqrt(2.0);
    const ComplexMatrix h_full = kron(hmat, ComplexMatrix::identity(std::size_t{1} << (n - 1)));
    rep.closed_form_residual = frobenius_distance(art.f, h_full * art.d * art.s);

    // spectrum of m²: ±1 with equal multiplicities
    const EigenSystem es = unitary_eigen(m2, tol);
    std::size_t plus = 0, minus = 0;
    for (const cdouble v2 : es.values) {
        if (std::abs(v2 - cdouble{1.0, 0.0}) <= 1e-6) ++plus;
        if (std::abs(v2 + cdouble{1.0, 0.0}) <= 1e-6) ++minus;
    }
    rep.spectrum_ok = plus == (std::size_t{1} << (n - 1)) && minus == (std::size_t{1} << (n - 1));

    rep.pass = rep.reconstruction_residual <= 1e-9 && rep.b_block_deviation <= 1e-9 &&
               rep.y_block_deviation <= 1e-9 && rep.closed_form_residual <= 1e-10 &&
               rep.spectrum_ok && rep.membership_ok;
    return rep;
}

}  // namespace kakforge
