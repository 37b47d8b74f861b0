#pragma once

#include <cstddef>
#include <utility>

#include "kakforge/matrix.hpp"

namespace kakforge {

// Conjugation by a single-qubit sigma_z: Theta(X) = sigma_{jz} X sigma_{jz}.
// Qubit 1 is the most significant tensor factor, so qubit j owns bit (n - j)
// of a basis index.
struct CartanInvolution {
    int n = 1;     // qubit count
    int axis = 1;  // 1..n

    CartanInvolution(int n_, int axis_) : n(n_), axis(axis_) {
        if (n < 1) throw error("CartanInvolution: qubit count must be >= 1");
        if (axis < 1 || axis > n) throw error("CartanInvolution: axis out of range");
    }

    std::size_t dim() const { return std::size_t{1} << n; }
    std::size_t axis_mask() const { return std::size_t{1} << (n - axis); }
};

// Pure sign flips, no rounding: entry (r,c) is negated iff the axis bits of
// r and c differ.
inline ComplexMatrix apply_theta(const CartanInvolution& inv, const ComplexMatrix& x) {
    if (x.dim() != inv.dim()) throw error("apply_theta: dimension mismatch");
    const std::size_t mask = inv.axis_mask();
    ComplexMatrix out = x;
    for (std::size_t r = 0; r < x.dim(); ++r)
        for (std::size_t c = 0; c < x.dim(); ++c)
            if (((r ^ c) & mask) != 0) out(r, c) = -out(r, c);
    return out;
}

inline std::vector<cdouble> reflect_vector(const CartanInvolution& inv, const std::vector<cdouble>& v) {
    if (v.size() != inv.dim()) throw error("reflect_vector: length mismatch");
    const std::size_t mask = inv.axis_mask();
    std::vector<cdouble> out = v;
    for (std::size_t r = 0; r < v.size(); ++r)
        if ((r & mask) != 0) out[r] = -out[r];
    return out;
}

// Fixed-point characterization of exp(k): Theta(X) = X.
inline bool is_in_exp_k(const CartanInvolution& inv, const ComplexMatrix& x, double tol) {
    return frobenius_distance(apply_theta(inv, x), x) <= tol;
}

// Necessary condition for exp(m): Theta(X) = X†.
inline bool satisfies_exp_m_condition(const CartanInvolution& inv, const ComplexMatrix& x, double tol) {
    return frobenius_distance(apply_theta(inv, x), adjoint(x)) <= tol;
}

// Frobenius mass sitting on the entries Theta flips, i.e. how far X is from
// the exp(k) sparsity pattern.
inline double exp_k_pattern_defect(const CartanInvolution& inv, const ComplexMatrix& x) {
    if (x.dim() != inv.dim()) throw error("exp_k_pattern_defect: dimension mismatch");
    const std::size_t mask = inv.axis_mask();
    double s = 0.0;
    for (std::size_t r = 0; r < x.dim(); ++r)
        for (std::size_t c = 0; c < x.dim(); ++c)
            if (((r ^ c) & mask) != 0) s += std::norm(x(r, c));
    return std::sqrt(s);
}

// Basis index with the axis bit and the last-qubit bit exchanged.
inline std::size_t swap_axis_with_last_index(const CartanInvolution& inv, std::size_t r) {
    if (inv.axis == inv.n) return r;
    const std::size_t hi = inv.axis_mask();
    const std::size_t lo = 1;
    const std::size_t bh = (r & hi) ? 1 : 0;
    const std::size_t bl = r & lo;
    std::size_t out = r & ~(hi | lo);
    if (bl) out |= hi;
    if (bh) out |= lo;
    return out;
}

// X' = chi_{axis,n} X chi_{axis,n}. Entry permutation only; conjugating twice
// returns the input bit-exactly.
inline std::pair<ComplexMatrix, CartanInvolution> conjugate_by_swap_to_last(const CartanInvolution& inv,
                                                                            const ComplexMatrix& x) {
    if (x.dim() != inv.dim()) throw error("conjugate_by_swap_to_last: dimension mismatch");
    const CartanInvolution canonical(inv.n, inv.n);
    if (inv.axis == inv.n) return {x, canonical};
    ComplexMatrix out(x.dim());
    for (std::size_t r = 0; r < x.dim(); ++r) {
        const std::size_t pr = swap_axis_with_last_index(inv, r);
        for (std::size_t c = 0; c < x.dim(); ++c) out(r, c) = x(pr, swap_axis_with_last_index(inv, c));
    }
    return {out, canonical};
}

}  // namespace kakforge
