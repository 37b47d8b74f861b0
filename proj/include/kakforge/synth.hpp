#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "kakforge/circuit.hpp"
#include "kakforge/config.hpp"
#include "kakforge/involution.hpp"
#include "kakforge/kak.hpp"
#include "kakforge/matrix.hpp"

namespace kakforge {

struct SplitExpK {
    ComplexMatrix g0;  // even rows/columns (last-qubit bit 0)
    ComplexMatrix g1;  // odd rows/columns
};

// X in exp(k) w.r.t. the last qubit decomposes as g0 ⊗ |0><0| + g1 ⊗ |1><1|.
inline SplitExpK split_exp_k(const ComplexMatrix& x, const Tolerances& tol = {}) {
    const std::size_t dim = x.dim();
    if (dim < 4 || dim % 2 != 0) throw error("split_exp_k: dimension must be an even power of two >= 4");
    const CartanInvolution last(static_cast<int>(std::round(std::log2(static_cast<double>(dim)))),
                                static_cast<int>(std::round(std::log2(static_cast<double>(dim)))));
    if (exp_k_pattern_defect(last, x) > tol.recon * static_cast<double>(dim))
        throw error("split_exp_k: off-pattern mass too large; input is not in exp(k)");
    const std::size_t half = dim / 2;
    SplitExpK out{ComplexMatrix(half), ComplexMatrix(half)};
    for (std::size_t r = 0; r < half; ++r)
        for (std::size_t c = 0; c < half; ++c) {
            out.g0(r, c) = x(2 * r, 2 * c);
            out.g1(r, c) = x(2 * r + 1, 2 * c + 1);
        }
    if (!is_unitary(out.g0, tol.unitary) || !is_unitary(out.g1, tol.unitary))
        throw error("split_exp_k: extracted blocks are not unitary");
    return out;
}

inline ComplexMatrix compose_exp_k(const ComplexMatrix& g0, const ComplexMatrix& g1) {
    require_same_dim(g0, g1, "compose_exp_k");
    const std::size_t half = g0.dim();
    ComplexMatrix x(2 * half);
    for (std::size_t r = 0; r < half; ++r)
        for (std::size_t c = 0; c < half; ++c) {
            x(2 * r, 2 * c) = g0(r, c);
            x(2 * r + 1, 2 * c + 1) = g1(r, c);
        }
    return x;
}

struct ZyzAngles {
    double rz_left = 0.0;   // a in U = phase * Rz(a) Ry(b) Rz(c)
    double ry = 0.0;        // b, in [0, pi]
    double rz_right = 0.0;  // c
    cdouble phase{1.0, 0.0};
};

inline ZyzAngles base_case_1q(const ComplexMatrix& u, const Tolerances& tol = {}) {
    if (u.dim() != 2) throw error("base_case_1q: expected a 2x2 matrix");
    if (!is_unitary(u, tol.unitary)) throw error("base_case_1q: input is not unitary");
    const cdouble det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
    ZyzAngles out;
    out.phase = std::polar(1.0, std::arg(det) / 2.0);
    const cdouble alpha = u(0, 0) / out.phase;
    const cdouble beta = u(1, 0) / out.phase;
    out.ry = std::atan2(std::abs(beta), std::abs(alpha));
    const double sum = std::abs(alpha) > 1e-12 ? -std::arg(alpha) : 0.0;   // a + c
    const double diff = std::abs(beta) > 1e-12 ? std::arg(beta) : 0.0;     // a - c
    out.rz_left = 0.5 * (sum + diff);
    out.rz_right = 0.5 * (sum - diff);
    return out;
}

struct SynthOptions {
    bool ry_branch = false;
    Tolerances tol;
};

namespace detail {

struct SynthNode {
    std::vector<Gate> gates;  // application order; only UCR kinds unless the ry branch is active
    cdouble phase{1.0, 0.0};
};

inline bool ucr_skeletons_match(const std::vector<Gate>& a, const std::vector<Gate>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Gate& x = a[i];
        const Gate& y = b[i];
        if (x.kind != y.kind || x.targets != y.targets || x.controls != y.controls ||
            x.angles.size() != y.angles.size())
            return false;
        if (x.kind != GateKind::UcrX && x.kind != GateKind::UcrY && x.kind != GateKind::UcrZ) return false;
    }
    return true;
}

// Combine the circuits of the two half-size blocks of a multiplexor selected
// by `ctrl`. Matching UCR skeletons merge gate-by-gate with one extra
// control; anything else falls back to an explicit Mux1q wrapper.
inline SynthNode merge_children(SynthNode lo, SynthNode hi, int ctrl) {
    SynthNode out;
    if (ucr_skeletons_match(lo.gates, hi.gates)) {
        out.gates.reserve(lo.gates.size() + 1);
        for (std::size_t i = 0; i < lo.gates.size(); ++i) {
            Gate g = lo.gates[i];
            g.controls.push_back(ctrl);  // appended control = least significant index bit
            std::vector<double> angles(2 * g.angles.size());
            for (std::size_t j = 0; j < g.angles.size(); ++j) {
                angles[2 * j] = lo.gates[i].angles[j];
                angles[2 * j + 1] = hi.gates[i].angles[j];
            }
            g.angles = std::move(angles);
            out.gates.push_back(std::move(g));
        }
        // diag(phase_lo, phase_hi) on the selector collapses to Rz + a scalar
        const double a0 = std::arg(lo.phase), a1 = std::arg(hi.phase);
        out.gates.push_back(Gate::ucrz({}, ctrl, {0.5 * (a1 - a0)}));
        out.phase = std::sqrt(std::abs(lo.phase) * std::abs(hi.phase)) * std::polar(1.0, 0.5 * (a0 + a1));
    } else {
        Gate mux;
        mux.kind = GateKind::Mux1q;
        mux.controls = {ctrl};
        mux.sub0 = std::move(lo.gates);
        mux.sub0.push_back(Gate::global_phase(lo.phase));
        mux.sub1 = std::move(hi.gates);
        mux.sub1.push_back(Gate::global_phase(hi.phase));
        out.gates.push_back(std::move(mux));
    }
    return out;
}

inline void append(std::vector<Gate>& dst, std::vector<Gate> src) {
    for (auto& g : src) dst.push_back(std::move(g));
}

// Multiplexed square-root gate for the H1 angle list. Pure UCRx unless the
// R_y(pi/2) replacement is active and a half-turn block is present, in which
// case a selection tree over the control qubits is emitted.
inline std::vector<Gate> y_gates(const std::vector<double>& angles, int n, bool ry_branch) {
    std::vector<int> controls;
    for (int q = 1; q < n; ++q) controls.push_back(q);
    bool has_half_turn = false;
    for (const double z : angles) has_half_turn |= std::abs(z - 0.5 * kPi) <= 1e-9;
    if (!ry_branch || !has_half_turn) return {Gate::ucrx(controls, n, angles)};

    // leaves: R_x(zeta), or R_y(pi/2) exactly at the half turn
    struct Builder {
        int n;
        const std::vector<double>& angles;
        std::vector<Gate> build(std::size_t lo, std::size_t hi, int level) const {
            if (hi - lo == 1) {
                const double z = angles[lo];
                if (std::abs(z - 0.5 * kPi) <= 1e-9) return {Gate::ry(0.5 * kPi, n)};
                return {Gate::rx(z, n)};
            }
            const std::size_t mid = lo + (hi - lo) / 2;
            Gate mux;
            mux.kind = GateKind::Mux1q;
            mux.controls = {level};
            mux.sub0 = build(lo, mid, level + 1);
            mux.sub1 = build(mid, hi, level + 1);
            return {std::move(mux)};
        }
    };
    const Builder b{n, angles};
    return b.build(0, angles.size(), 1);
}

inline SynthNode synth_rec(const ComplexMatrix& g, int n, const SynthOptions& opts) {
    SynthNode node;
    if (n == 1) {
        const ZyzAngles zyz = base_case_1q(g, opts.tol);
        node.gates.push_back(Gate::ucrz({}, 1, {zyz.rz_right}));
        node.gates.push_back(Gate::ucry({}, 1, {zyz.ry}));
        node.gates.push_back(Gate::ucrz({}, 1, {zyz.rz_left}));
        node.phase = zyz.phase;
        return node;
    }

    const CartanInvolution inv(n, n);
    const KakFactors f = kak_decompose(g, inv, Subalgebra::H1, opts.ry_branch, opts.tol);
    const SplitExpK p_split = split_exp_k(f.p_dagger, opts.tol);
    const SplitExpK k_split = split_exp_k(f.k_tilde, opts.tol);

    SynthNode p_part = merge_children(synth_rec(p_split.g0, n - 1, opts),
                                      synth_rec(p_split.g1, n - 1, opts), n);
    SynthNode k_part = merge_children(synth_rec(k_split.g0, n - 1, opts),
                                      synth_rec(k_split.g1, n - 1, opts), n);

    append(node.gates, std::move(p_part.gates));
    append(node.gates, y_gates(f.angles, n, opts.ry_branch));
    append(node.gates, std::move(k_part.gates));
    node.phase = f.global_phase * p_part.phase * k_part.phase;
    return node;
}

inline bool all_angles_zero(const Gate& g) {
    if (g.kind != GateKind::UcrX && g.kind != GateKind::UcrY && g.kind != GateKind::UcrZ) return false;
    for (const double a : g.angles)
        if (a != 0.0) return false;
    return true;
}

}  // namespace detail

// Recursive synthesis into uniformly controlled rotations: each level factors
// g = k~ y p† at the axis qubit, turns y into a UCRx on that qubit, and
// recurses into the two diagonal blocks of k~ and p†.
inline Circuit synthesize(const ComplexMatrix& g, const CartanInvolution& inv,
                          const SynthOptions& opts = {}) {
    if (g.dim() != inv.dim()) throw error("synthesize: dimension mismatch");
    if (!is_unitary(g, opts.tol.unitary)) throw error("synthesize: input is not unitary");

    ComplexMatrix gc = g;
    const bool bracket = inv.axis != inv.n;
    if (bracket) gc = conjugate_by_swap_to_last(inv, g).first;

    const detail::SynthNode node = detail::synth_rec(gc, inv.n, opts);

    Circuit out;
    out.n = inv.n;
    if (bracket) out.gates.push_back(Gate::swap(inv.axis, inv.n));
    for (const Gate& raw : node.gates) {
        if (detail::all_angles_zero(raw)) continue;
        if (raw.controls.empty() &&
            (raw.kind == GateKind::UcrX || raw.kind == GateKind::UcrY || raw.kind == GateKind::UcrZ)) {
            const GateKind plain = raw.kind == GateKind::UcrX   ? GateKind::Rx
                                   : raw.kind == GateKind::UcrY ? GateKind::Ry
                                                                : GateKind::Rz;
            Gate g1{plain, raw.targets, {}, raw.angles};
            out.gates.push_back(std::move(g1));
        } else {
            out.gates.push_back(raw);
        }
    }
    if (bracket) out.gates.push_back(Gate::swap(inv.axis, inv.n));
    if (node.phase != cdouble{1.0, 0.0}) out.gates.push_back(Gate::global_phase(node.phase));
    return out;
}

}  // namespace kakforge
