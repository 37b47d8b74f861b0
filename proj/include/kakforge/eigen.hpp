#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "kakforge/config.hpp"
#include "kakforge/matrix.hpp"

namespace kakforge {

struct EigenSystem {
    std::vector<cdouble> values;  // values[i] belongs to column i of vectors
    ComplexMatrix vectors;        // orthonormal columns
};

namespace detail {

// One complex Jacobi rotation zeroing a(p,q), accumulated into v.
inline void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const std::size_t n = a.dim();
    const cdouble apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) return;
    const cdouble u = apq / r;  // phase of the pivot
    const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
    // zero condition: t^2 - 2*theta*t - 1 = 0; take the small-magnitude root
    const double t = (theta >= 0.0 ? -1.0 : 1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    // columns: new_p = c*col_p + s*conj(u)*col_q, new_q = -s*u*col_p + c*col_q
    for (std::size_t i = 0; i < n; ++i) {
        const cdouble aip = a(i, p), aiq = a(i, q);
        a(i, p) = c * aip + s * std::conj(u) * aiq;
        a(i, q) = -s * u * aip + c * aiq;
    }
    // rows: new_p = c*row_p + s*u*row_q, new_q = -s*conj(u)*row_p + c*row_q
    for (std::size_t i = 0; i < n; ++i) {
        const cdouble api = a(p, i), aqi = a(q, i);
        a(p, i) = c * api + s * u * aqi;
        a(q, i) = -s * std::conj(u) * api + c * aqi;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = {a(p, p).real(), 0.0};
    a(q, q) = {a(q, q).real(), 0.0};

    for (std::size_t i = 0; i < n; ++i) {
        const cdouble vip = v(i, p), viq = v(i, q);
        v(i, p) = c * vip + s * std::conj(u) * viq;
        v(i, q) = -s * u * vip + c * viq;
    }
}

inline double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    const std::size_t n = a.dim();
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
}

}  // namespace detail

// Cyclic Jacobi diagonalization. Eigenvalues are returned real and ascending,
// eigenvectors orthonormal (even inside degenerate eigenspaces, since the
// accumulated rotation stays unitary to rounding).
inline EigenSystem hermitian_eigen(const ComplexMatrix& h, const Tolerances& tol = {}) {
    const std::size_t n = h.dim();
    if (n == 0) throw error("hermitian_eigen: empty matrix");
    if (frobenius_distance(h, adjoint(h)) > tol.unitary * static_cast<double>(n))
        throw error("hermitian_eigen: input is not Hermitian");

    ComplexMatrix a(n);
    for (std::size_t r = 0; r < n; ++r) {
        a(r, r) = {h(r, r).real(), 0.0};
        for (std::size_t c = r + 1; c < n; ++c) {
            const cdouble z = 0.5 * (h(r, c) + std::conj(h(c, r)));
            a(r, c) = z;
            a(c, r) = std::conj(z);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(frobenius_norm(a), 1e-300);
    const int max_sweeps = 100;
    bool converged = false;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (detail::offdiag_norm(a) <= 1e-14 * scale) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (std::abs(a(p, q)) > 1e-18 * scale) detail::jacobi_rotate(a, v, p, q);
    }
    if (!converged && detail::offdiag_norm(a) > 1e-14 * scale)
        throw error("hermitian_eigen: Jacobi sweeps did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem es;
    es.values.resize(n);
    es.vectors = ComplexMatrix(n);
    for (std::size_t j = 0; j < n; ++j) {
        es.values[j] = {a(order[j], order[j]).real(), 0.0};
        for (std::size_t r = 0; r < n; ++r) es.vectors(r, j) = v(r, order[j]);
    }
    return es;
}

// Eigendecomposition of a unitary (normal) matrix with orthonormal vectors
// inside degenerate eigenspaces. Strategy: U = H_r + i*H_i with commuting
// Hermitian parts; diagonalize H_r, then re-diagonalize the projection of
// H_i inside each (near-)degenerate H_r eigenspace.
inline EigenSystem unitary_eigen(const ComplexMatrix& u, const Tolerances& tol = {}) {
    const std::size_t n = u.dim();
    if (unitarity_defect(u) > tol.unitary * static_cast<double>(n))
        throw error("unitary_eigen: input is not unitary");

    ComplexMatrix hr(n), hi(n);
    const cdouble inv2i{0.0, -0.5};  // 1/(2i)
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            const cdouble z = u(r, c), w = std::conj(u(c, r));
            hr(r, c) = 0.5 * (z + w);
            hi(r, c) = inv2i * (z - w);
        }

    EigenSystem base = hermitian_eigen(hr, tol);
    ComplexMatrix& vec = base.vectors;

    std::size_t start = 0;
    while (start < n) {
        std::size_t stop = start + 1;
        while (stop < n && std::abs(base.values[stop].real() - base.values[stop - 1].real()) <= tol.group)
            ++stop;
        const std::size_t g = stop - start;
        if (g > 1) {
            ComplexMatrix b(g);
            std::vector<std::vector<cdouble>> cols(g);
            for (std::size_t j = 0; j < g; ++j) cols[j] = matvec(hi, column(vec, start + j));
            for (std::size_t i = 0; i < g; ++i)
                for (std::size_t j = 0; j < g; ++j)
                    b(i, j) = dot(column(vec, start + i), cols[j]);
            for (std::size_t i = 0; i < g; ++i) {
                b(i, i) = {b(i, i).real(), 0.0};
                for (std::size_t j = i + 1; j < g; ++j) {
                    const cdouble z = 0.5 * (b(i, j) + std::conj(b(j, i)));
                    b(i, j) = z;
                    b(j, i) = std::conj(z);
                }
            }
            EigenSystem sub = hermitian_eigen(b, tol);
            ComplexMatrix mixed(n);
            for (std::size_t j = 0; j < g; ++j)
                for (std::size_t r = 0; r < n; ++r) {
                    cdouble s{};
                    for (std::size_t k = 0; k < g; ++k) s += vec(r, start + k) * sub.vectors(k, j);
                    mixed(r, j) = s;
                }
            for (std::size_t j = 0; j < g; ++j)
                for (std::size_t r = 0; r < n; ++r) vec(r, start + j) = mixed(r, j);
        }
        start = stop;
    }

    EigenSystem es;
    es.vectors = vec;
    es.values.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::vector<cdouble> vj = column(vec, j);
        es.values[j] = dot(vj, matvec(u, vj));  // Rayleigh quotient
    }
    return es;
}

enum class GroupKind { PositiveReal, NegativeReal, Complex };

struct EigenGroup {
    std::vector<std::size_t> indices;
    GroupKind kind = GroupKind::Complex;
    cdouble value;  // group mean
};

// Partition eigenvalues into clusters, maximal under the transitive closure
// of "differ by <= tol_group". Groups come out ordered by smallest index.
inline std::vector<EigenGroup> group_eigenvalues(const std::vector<cdouble>& values, double tol_group) {
    const std::size_t k = values.size();
    std::vector<std::size_t> parent(k);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (std::abs(values[i] - values[j]) <= tol_group) {
                const std::size_t a = find(i), b = find(j);
                if (a != b) parent[std::max(a, b)] = std::min(a, b);
            }

    std::vector<EigenGroup> groups;
    std::vector<long> slot(k, -1);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t root = find(i);
        if (slot[root] < 0) {
            slot[root] = static_cast<long>(groups.size());
            groups.push_back({});
        }
        groups[static_cast<std::size_t>(slot[root])].indices.push_back(i);
    }
    for (auto& g : groups) {
        cdouble mean{};
        for (std::size_t i : g.indices) mean += values[i];
        mean /= static_cast<double>(g.indices.size());
        g.value = mean;
        if (std::abs(mean.imag()) <= tol_group)
            g.kind = mean.real() > 0.0 ? GroupKind::PositiveReal : GroupKind::NegativeReal;
        else
            g.kind = GroupKind::Complex;
    }
    return groups;
}

}  // namespace kakforge
