#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kakforge {

using cdouble = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dense row-major complex matrix. The dimension is arbitrary (>= 1);
// everything circuit-facing uses powers of two.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(const std::vector<cdouble>& d) {
        ComplexMatrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t dim() const { return dim_; }

    cdouble& operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
    const cdouble& operator()(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }

    std::vector<cdouble>& entries() { return a_; }
    const std::vector<cdouble>& entries() const { return a_; }

private:
    std::size_t dim_ = 0;
    std::vector<cdouble> a_;
};

inline void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* who) {
    if (a.dim() != b.dim())
        throw error(std::string(who) + ": dimension mismatch (" + std::to_string(a.dim()) +
                    " vs " + std::to_string(b.dim()) + ")");
}

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "matmul");
    const std::size_t n = a.dim();
    ComplexMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cdouble aik = a(i, k);
            if (aik == cdouble{}) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return matmul(a, b); }

inline ComplexMatrix operator*(const cdouble& z, const ComplexMatrix& a) {
    ComplexMatrix c = a;
    for (auto& v : c.entries()) v *= z;
    return c;
}

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "add");
    ComplexMatrix c = a;
    for (std::size_t i = 0; i < c.entries().size(); ++i) c.entries()[i] += b.entries()[i];
    return c;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "sub");
    ComplexMatrix c = a;
    for (std::size_t i = 0; i < c.entries().size(); ++i) c.entries()[i] -= b.entries()[i];
    return c;
}

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
    const std::size_t n = a.dim();
    ComplexMatrix c(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t col = 0; col < n; ++col) c(col, r) = std::conj(a(r, col));
    return c;
}

inline double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& v : a.entries()) s += std::norm(v);
    return std::sqrt(s);
}

inline double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "frobenius_distance");
    double s = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) s += std::norm(a.entries()[i] - b.entries()[i]);
    return std::sqrt(s);
}

// ||A†A - I||_F
inline double unitarity_defect(const ComplexMatrix& a) {
    return frobenius_distance(adjoint(a) * a, ComplexMatrix::identity(a.dim()));
}

inline bool is_unitary(const ComplexMatrix& a, double tol) {
    return unitarity_defect(a) <= tol * static_cast<double>(a.dim());
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.dim(), nb = b.dim();
    ComplexMatrix c(na * nb);
    for (std::size_t ra = 0; ra < na; ++ra)
        for (std::size_t ca = 0; ca < na; ++ca) {
            const cdouble f = a(ra, ca);
            if (f == cdouble{}) continue;
            for (std::size_t rb = 0; rb < nb; ++rb)
                for (std::size_t cb = 0; cb < nb; ++cb)
                    c(ra * nb + rb, ca * nb + cb) = f * b(rb, cb);
        }
    return c;
}

inline std::vector<cdouble> matvec(const ComplexMatrix& a, const std::vector<cdouble>& v) {
    if (v.size() != a.dim()) throw error("matvec: vector length mismatch");
    std::vector<cdouble> out(a.dim());
    for (std::size_t r = 0; r < a.dim(); ++r) {
        cdouble s{};
        for (std::size_t c = 0; c < a.dim(); ++c) s += a(r, c) * v[c];
        out[r] = s;
    }
    return out;
}

inline std::vector<cdouble> column(const ComplexMatrix& a, std::size_t j) {
    std::vector<cdouble> v(a.dim());
    for (std::size_t r = 0; r < a.dim(); ++r) v[r] = a(r, j);
    return v;
}

inline void set_column(ComplexMatrix& a, std::size_t j, const std::vector<cdouble>& v) {
    for (std::size_t r = 0; r < a.dim(); ++r) a(r, j) = v[r];
}

inline cdouble dot(const std::vector<cdouble>& u, const std::vector<cdouble>& v) {
    cdouble s{};
    for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

inline double vec_norm(const std::vector<cdouble>& v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return std::sqrt(s);
}

// Determinant by LU with partial pivoting.
inline cdouble determinant(ComplexMatrix a) {
    const std::size_t n = a.dim();
    cdouble det{1.0, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            const double m = std::abs(a(r, k));
            if (m > best) { best = m; piv = r; }
        }
        if (best == 0.0) return cdouble{};
        if (piv != k) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            const cdouble f = a(r, k) / a(k, k);
            if (f == cdouble{}) continue;
            for (std::size_t c = k; c < n; ++c) a(r, c) -= f * a(k, c);
        }
    }
    return det;
}

}  // namespace kakforge
