#pragma once

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "kakforge/config.hpp"
#include "kakforge/eigen.hpp"
#include "kakforge/matrix.hpp"

namespace kakforge {

enum class GateKind {
    H,
    Rx,
    Ry,
    Rz,
    Phase,        // diag(1, e^{i angle}) on the target
    CPhase,
    Cnot,
    Swap,
    UcrX,         // uniformly controlled rotation; 2^|controls| angles
    UcrY,
    UcrZ,
    XXPlusYY,     // exp(i angle (XX + YY)) on a qubit pair
    Mux1q,        // block selection on one control: sub0 / sub1 gate lists
    Raw1q,        // explicit 2x2 unitary
    GlobalPhase,
};

inline const char* gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "h";
        case GateKind::Rx: return "rx";
        case GateKind::Ry: return "ry";
        case GateKind::Rz: return "rz";
        case GateKind::Phase: return "phase";
        case GateKind::CPhase: return "cphase";
        case GateKind::Cnot: return "cnot";
        case GateKind::Swap: return "swap";
        case GateKind::UcrX: return "ucrx";
        case GateKind::UcrY: return "ucry";
        case GateKind::UcrZ: return "ucrz";
        case GateKind::XXPlusYY: return "xx_plus_yy";
        case GateKind::Mux1q: return "mux1q";
        case GateKind::Raw1q: return "raw1q";
        case GateKind::GlobalPhase: return "global_phase";
    }
    return "?";
}

struct Gate {
    GateKind kind = GateKind::H;
    std::vector<int> targets;            // 1-based, qubit 1 = most significant
    std::vector<int> controls;           // for UCR gates: first listed = most significant
    std::vector<double> angles;
    std::array<cdouble, 4> raw{};        // Raw1q, row-major
    cdouble phase{1.0, 0.0};             // GlobalPhase
    std::vector<Gate> sub0, sub1;        // Mux1q branches

    static Gate h(int t) { return {GateKind::H, {t}, {}, {}}; }
    static Gate rx(double a, int t) { return {GateKind::Rx, {t}, {}, {a}}; }
    static Gate ry(double a, int t) { return {GateKind::Ry, {t}, {}, {a}}; }
    static Gate rz(double a, int t) { return {GateKind::Rz, {t}, {}, {a}}; }
    static Gate phase_gate(double a, int t) { return {GateKind::Phase, {t}, {}, {a}}; }
    static Gate cphase(double a, int c, int t) { return {GateKind::CPhase, {t}, {c}, {a}}; }
    static Gate cnot(int c, int t) { return {GateKind::Cnot, {t}, {c}, {}}; }
    static Gate swap(int a, int b) { return {GateKind::Swap, {a, b}, {}, {}}; }
    static Gate ucrx(std::vector<int> cs, int t, std::vector<double> a) {
        return {GateKind::UcrX, {t}, std::move(cs), std::move(a)};
    }
    static Gate ucry(std::vector<int> cs, int t, std::vector<double> a) {
        return {GateKind::UcrY, {t}, std::move(cs), std::move(a)};
    }
    static Gate ucrz(std::vector<int> cs, int t, std::vector<double> a) {
        return {GateKind::UcrZ, {t}, std::move(cs), std::move(a)};
    }
    static Gate xx_plus_yy(double a, int q1, int q2) { return {GateKind::XXPlusYY, {q1, q2}, {}, {a}}; }
    static Gate raw1q(const std::array<cdouble, 4>& u, int t) {
        Gate g{GateKind::Raw1q, {t}, {}, {}};
        g.raw = u;
        return g;
    }
    static Gate global_phase(cdouble z) {
        Gate g{GateKind::GlobalPhase, {}, {}, {}};
        g.phase = z;
        return g;
    }
};

// Gate list in application order: gates[0] acts on the state first, so the
// evaluated matrix is gates[k-1] * ... * gates[0].
struct Circuit {
    int n = 1;
    std::vector<Gate> gates;
    static constexpr const char* kConvention = "q1-msb,first-applied-first";
};

namespace detail {

inline std::size_t qubit_mask(int n, int q) { return std::size_t{1} << (n - q); }

inline void check_qubit(int n, int q, const char* who) {
    if (q < 1 || q > n) throw error(std::string(who) + ": invalid qubit index " + std::to_string(q));
}

inline void rotation_block(GateKind kind, double a, std::array<cdouble, 4>& u) {
    const double c = std::cos(a), s = std::sin(a);
    switch (kind) {
        case GateKind::Rx:
            u = {cdouble{c, 0}, cdouble{0, -s}, cdouble{0, -s}, cdouble{c, 0}};
            break;
        case GateKind::Ry:
            u = {cdouble{c, 0}, cdouble{-s, 0}, cdouble{s, 0}, cdouble{c, 0}};
            break;
        case GateKind::Rz:
            u = {std::polar(1.0, -a), cdouble{}, cdouble{}, std::polar(1.0, a)};
            break;
        default:
            throw error("rotation_block: not a rotation kind");
    }
}

// result <- G * result for a 2x2 block u acting on qubit t
inline void apply_1q_left(ComplexMatrix& m, int n, int t, const std::array<cdouble, 4>& u) {
    check_qubit(n, t, "apply_1q");
    const std::size_t mask = qubit_mask(n, t);
    const std::size_t dim = m.dim();
    for (std::size_t r = 0; r < dim; ++r) {
        if (r & mask) continue;
        const std::size_t r1 = r | mask;
        for (std::size_t c = 0; c < dim; ++c) {
            const cdouble a = m(r, c), b = m(r1, c);
            m(r, c) = u[0] * a + u[1] * b;
            m(r1, c) = u[2] * a + u[3] * b;
        }
    }
}

inline ComplexMatrix evaluate_gates(const std::vector<Gate>& gates, int n);

inline void apply_gate_left(ComplexMatrix& m, int n, const Gate& g) {
    const std::size_t dim = m.dim();
    switch (g.kind) {
        case GateKind::H: {
            const double s = 1.0 / std::sqrt(2.0);
            apply_1q_left(m, n, g.targets.at(0), {cdouble{s, 0}, cdouble{s, 0}, cdouble{s, 0}, cdouble{-s, 0}});
            break;
        }
        case GateKind::Rx:
        case GateKind::Ry:
        case GateKind::Rz: {
            std::array<cdouble, 4> u;
            rotation_block(g.kind, g.angles.at(0), u);
            apply_1q_left(m, n, g.targets.at(0), u);
            break;
        }
        case GateKind::Phase:
            apply_1q_left(m, n, g.targets.at(0),
                          {cdouble{1, 0}, cdouble{}, cdouble{}, std::polar(1.0, g.angles.at(0))});
            break;
        case GateKind::Raw1q:
            apply_1q_left(m, n, g.targets.at(0), g.raw);
            break;
        case GateKind::CPhase: {
            const int c = g.controls.at(0), t = g.targets.at(0);
            check_qubit(n, c, "cphase");
            check_qubit(n, t, "cphase");
            if (c == t) throw error("cphase: control equals target");
            const std::size_t mc = qubit_mask(n, c), mt = qubit_mask(n, t);
            const cdouble ph = std::polar(1.0, g.angles.at(0));
            for (std::size_t r = 0; r < dim; ++r)
                if ((r & mc) && (r & mt))
                    for (std::size_t col = 0; col < dim; ++col) m(r, col) *= ph;
            break;
        }
        case GateKind::Cnot: {
            const int c = g.controls.at(0), t = g.targets.at(0);
            check_qubit(n, c, "cnot");
            check_qubit(n, t, "cnot");
            if (c == t) throw error("cnot: control equals target");
            const std::size_t mc = qubit_mask(n, c), mt = qubit_mask(n, t);
            for (std::size_t r = 0; r < dim; ++r)
                if ((r & mc) && !(r & mt)) {
                    const std::size_t r1 = r | mt;
                    for (std::size_t col = 0; col < dim; ++col) std::swap(m(r, col), m(r1, col));
                }
            break;
        }
        case GateKind::Swap: {
            const int a = g.targets.at(0), b = g.targets.at(1);
            check_qubit(n, a, "swap");
            check_qubit(n, b, "swap");
            if (a == b) throw error("swap: identical qubits");
            const std::size_t ma = qubit_mask(n, a), mb = qubit_mask(n, b);
            for (std::size_t r = 0; r < dim; ++r) {
                const bool ba = r & ma, bb = r & mb;
                if (ba && !bb) {
                    const std::size_t r1 = (r & ~ma) | mb;
                    for (std::size_t col = 0; col < dim; ++col) std::swap(m(r, col), m(r1, col));
                }
            }
            break;
        }
        case GateKind::UcrX:
        case GateKind::UcrY:
        case GateKind::UcrZ: {
            const int t = g.targets.at(0);
            check_qubit(n, t, "ucr");
            const std::size_t k = g.controls.size();
            if (g.angles.size() != (std::size_t{1} << k)) throw error("ucr: angle list length mismatch");
            std::vector<std::size_t> cmasks(k);
            for (std::size_t i = 0; i < k; ++i) {
                check_qubit(n, g.controls[i], "ucr");
                if (g.controls[i] == t) throw error("ucr: control equals target");
                cmasks[i] = qubit_mask(n, g.controls[i]);
            }
            const GateKind rot = g.kind == GateKind::UcrX   ? GateKind::Rx
                                 : g.kind == GateKind::UcrY ? GateKind::Ry
                                                            : GateKind::Rz;
            const std::size_t mt = qubit_mask(n, t);
            std::vector<std::array<cdouble, 4>> blocks(g.angles.size());
            for (std::size_t j = 0; j < g.angles.size(); ++j) rotation_block(rot, g.angles[j], blocks[j]);
            for (std::size_t r = 0; r < dim; ++r) {
                if (r & mt) continue;
                std::size_t word = 0;
                for (std::size_t i = 0; i < k; ++i) word = (word << 1) | ((r & cmasks[i]) ? 1 : 0);
                const auto& u = blocks[word];
                const std::size_t r1 = r | mt;
                for (std::size_t c = 0; c < dim; ++c) {
                    const cdouble a = m(r, c), b = m(r1, c);
                    m(r, c) = u[0] * a + u[1] * b;
                    m(r1, c) = u[2] * a + u[3] * b;
                }
            }
            break;
        }
        case GateKind::XXPlusYY: {
            const int q1 = g.targets.at(0), q2 = g.targets.at(1);
            check_qubit(n, q1, "xx_plus_yy");
            check_qubit(n, q2, "xx_plus_yy");
            if (q1 == q2) throw error("xx_plus_yy: identical qubits");
            const std::size_t m1 = qubit_mask(n, q1), m2 = qubit_mask(n, q2);
            const double a = g.angles.at(0);
            const cdouble cc{std::cos(2.0 * a), 0.0}, ss{0.0, std::sin(2.0 * a)};
            for (std::size_t r = 0; r < dim; ++r) {
                if ((r & m1) || !(r & m2)) continue;  // visit the |01> row of each pair once
                const std::size_t r10 = (r & ~m2) | m1;
                for (std::size_t c = 0; c < dim; ++c) {
                    const cdouble x01 = m(r, c), x10 = m(r10, c);
                    m(r, c) = cc * x01 + ss * x10;
                    m(r10, c) = ss * x01 + cc * x10;
                }
            }
            break;
        }
        case GateKind::Mux1q: {
            const int c = g.controls.at(0);
            check_qubit(n, c, "mux1q");
            const std::size_t mc = qubit_mask(n, c);
            const ComplexMatrix e0 = evaluate_gates(g.sub0, n);
            const ComplexMatrix e1 = evaluate_gates(g.sub1, n);
            // the branches must not touch the selector
            for (const ComplexMatrix* e : {&e0, &e1})
                for (std::size_t r = 0; r < dim; ++r)
                    for (std::size_t col = 0; col < dim; ++col)
                        if (((r ^ col) & mc) && std::abs((*e)(r, col)) > 1e-12)
                            throw error("mux1q: branch acts on the selector qubit");
            ComplexMatrix sel(dim);
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t col = 0; col < dim; ++col) {
                    if ((r ^ col) & mc) continue;
                    sel(r, col) = (r & mc) ? e1(r, col) : e0(r, col);
                }
            m = sel * m;
            break;
        }
        case GateKind::GlobalPhase:
            for (auto& v : m.entries()) v *= g.phase;
            break;
    }
}

inline ComplexMatrix evaluate_gates(const std::vector<Gate>& gates, int n) {
    ComplexMatrix m = ComplexMatrix::identity(std::size_t{1} << n);
    for (const Gate& g : gates) apply_gate_left(m, n, g);
    return m;
}

}  // namespace detail

inline ComplexMatrix evaluate(const Circuit& c) { return detail::evaluate_gates(c.gates, c.n); }

inline ComplexMatrix gate_matrix(const Gate& g, int n) { return detail::evaluate_gates({g}, n); }

inline void count_gates_into(const std::vector<Gate>& gates, std::map<std::string, std::size_t>& hist) {
    for (const Gate& g : gates) {
        ++hist[gate_kind_name(g.kind)];
        if (g.kind == GateKind::Mux1q) {
            count_gates_into(g.sub0, hist);
            count_gates_into(g.sub1, hist);
        }
    }
}

inline std::map<std::string, std::size_t> count_gates(const Circuit& c) {
    std::map<std::string, std::size_t> hist;
    count_gates_into(c.gates, hist);
    return hist;
}

// Gray-code expansion of a uniformly controlled rotation into 2^k rotations
// interleaved with 2^k CNOTs; the angle transform is the Walsh-Hadamard
// matrix scaled by 2^-k. The X axis does not flip under CNOT conjugation, so
// UCRx is expanded through an R_y(pi/4)-conjugated UCRz.
inline std::vector<Gate> expand_ucr(const Gate& g) {
    if (g.kind != GateKind::UcrX && g.kind != GateKind::UcrY && g.kind != GateKind::UcrZ)
        throw error("expand_ucr: not a uniformly controlled rotation");
    const std::size_t k = g.controls.size();
    if (g.angles.size() != (std::size_t{1} << k)) throw error("expand_ucr: angle list length mismatch");
    const int t = g.targets.at(0);

    if (g.kind == GateKind::UcrX) {
        Gate z = g;
        z.kind = GateKind::UcrZ;
        for (auto& a : z.angles) a = -a;
        std::vector<Gate> out;
        out.push_back(Gate::ry(kPi / 4.0, t));
        std::vector<Gate> inner = expand_ucr(z);
        out.insert(out.end(), inner.begin(), inner.end());
        out.push_back(Gate::ry(-kPi / 4.0, t));
        return out;
    }

    auto rot = [&](double a) { return g.kind == GateKind::UcrY ? Gate::ry(a, t) : Gate::rz(a, t); };
    if (k == 0) return {rot(g.angles[0])};

    const std::size_t count = std::size_t{1} << k;
    std::vector<Gate> out;
    out.reserve(2 * count);
    for (std::size_t i = 1; i <= count; ++i) {
        const std::size_t gray_prev = (i - 1) ^ ((i - 1) >> 1);
        double theta = 0.0;
        for (std::size_t j = 0; j < count; ++j) {
            const std::size_t par = gray_prev & j;
            const bool neg = __builtin_popcountll(par) & 1;
            theta += neg ? -g.angles[j] : g.angles[j];
        }
        theta /= static_cast<double>(count);
        out.push_back(rot(theta));
        const std::size_t flip_bit = (i == count) ? k - 1 : static_cast<std::size_t>(__builtin_ctzll(i));
        out.push_back(Gate::cnot(g.controls[k - 1 - flip_bit], t));
    }
    return out;
}

// Replace every UCR gate by its elementary expansion; other gates pass through.
inline Circuit expand_circuit(const Circuit& c) {
    Circuit out;
    out.n = c.n;
    for (const Gate& g : c.gates) {
        if (g.kind == GateKind::UcrX || g.kind == GateKind::UcrY || g.kind == GateKind::UcrZ) {
            std::vector<Gate> ex = expand_ucr(g);
            out.gates.insert(out.gates.end(), ex.begin(), ex.end());
        } else {
            out.gates.push_back(g);
        }
    }
    return out;
}

struct DemuxFactors {
    ComplexMatrix v;
    std::vector<cdouble> d;
    ComplexMatrix w;
};

// diag(u1, u2) = (v ⊕ v)(d ⊕ d†)(w ⊕ w) with u1 u2† = v d² v† and w = d v† u2.
// The square root halves each eigenphase taken in [0, 2pi), with a guard band
// just below the positive real axis so near-identity inputs stay near d = 1.
inline DemuxFactors demux_block_diag(const ComplexMatrix& u1, const ComplexMatrix& u2,
                                     const Tolerances& tol = {}) {
    require_same_dim(u1, u2, "demux_block_diag");
    if (!is_unitary(u1, tol.unitary) || !is_unitary(u2, tol.unitary))
        throw error("demux_block_diag: inputs are not unitary");
    const ComplexMatrix prod = u1 * adjoint(u2);
    const EigenSystem es = unitary_eigen(prod, tol);
    DemuxFactors out;
    out.v = es.vectors;
    out.d.resize(es.values.size());
    for (std::size_t j = 0; j < es.values.size(); ++j) {
        double theta = std::arg(es.values[j]);
        if (theta < -1e-12) theta += 2.0 * kPi;
        out.d[j] = std::polar(1.0, 0.5 * theta);
    }
    out.w = ComplexMatrix::diagonal(out.d) * adjoint(out.v) * u2;
    return out;
}

}  // namespace kakforge
