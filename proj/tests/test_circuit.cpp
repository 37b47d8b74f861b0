#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "kakforge/circuit.hpp"
#include "kakforge/qft.hpp"
#include "kakforge/random.hpp"

using namespace kakforge;

namespace {

ComplexMatrix hadamard() {
    ComplexMatrix h(2);
    const double s = 1.0 / std::sqrt(2.0);
    h(0, 0) = h(0, 1) = h(1, 0) = s;
    h(1, 1) = -s;
    return h;
}

ComplexMatrix cnot12() {
    ComplexMatrix m(4);
    m(0, 0) = m(1, 1) = 1.0;
    m(2, 3) = m(3, 2) = 1.0;
    return m;
}

Circuit random_circuit(int n, int gates, SplitMix64& rng) {
    Circuit c;
    c.n = n;
    auto q = [&] { return 1 + static_cast<int>(rng.next() % n); };
    for (int i = 0; i < gates; ++i) {
        switch (rng.next() % 6) {
            case 0: c.gates.push_back(Gate::h(q())); break;
            case 1: c.gates.push_back(Gate::rx(2.0 * rng.uniform() - 1.0, q())); break;
            case 2: c.gates.push_back(Gate::rz(2.0 * rng.uniform() - 1.0, q())); break;
            case 3: {
                int a = q(), b = q();
                if (a == b) b = a % n + 1;
                c.gates.push_back(Gate::cnot(a, b));
                break;
            }
            case 4: {
                int a = q(), b = q();
                if (a == b) b = a % n + 1;
                c.gates.push_back(Gate::cphase(2.0 * rng.uniform(), a, b));
                break;
            }
            default: {
                int a = q(), b = q();
                if (a == b) b = a % n + 1;
                c.gates.push_back(Gate::swap(a, b));
                break;
            }
        }
    }
    return c;
}

}  // namespace

TEST_CASE("evaluate fixed cases", "[circuit]") {
    SECTION("empty circuit") {
        Circuit c;
        c.n = 2;
        REQUIRE(frobenius_distance(evaluate(c), ComplexMatrix::identity(4)) == 0.0);
    }
    SECTION("H on qubit 1 is H ⊗ I") {
        Circuit c;
        c.n = 2;
        c.gates.push_back(Gate::h(1));
        REQUIRE(frobenius_distance(evaluate(c), kron(hadamard(), ComplexMatrix::identity(2))) <= 1e-15);
    }
    SECTION("list order: first gate is applied first") {
        Circuit c;
        c.n = 2;
        c.gates.push_back(Gate::cnot(1, 2));
        c.gates.push_back(Gate::h(1));
        const ComplexMatrix want =
            oracle::naive_matmul(kron(hadamard(), ComplexMatrix::identity(2)), cnot12());
        REQUIRE(frobenius_distance(evaluate(c), want) <= 1e-14);
    }
    SECTION("invalid qubit index") {
        Circuit c;
        c.n = 2;
        c.gates.push_back(Gate::h(3));
        REQUIRE_THROWS_AS(evaluate(c), error);
    }
}

TEST_CASE("swap evaluates to the exact bit-exchange permutation", "[circuit]") {
    Circuit c;
    c.n = 3;
    c.gates.push_back(Gate::swap(1, 3));
    const ComplexMatrix m = evaluate(c);
    for (std::size_t col = 0; col < 8; ++col) {
        const std::size_t b1 = (col >> 2) & 1, b3 = col & 1;
        const std::size_t want = (col & 2) | (b3 << 2) | b1;
        for (std::size_t r = 0; r < 8; ++r)
            REQUIRE(m(r, col) == (r == want ? cdouble{1.0, 0.0} : cdouble{}));
    }
}

TEST_CASE("evaluate is a homomorphism over concatenation", "[circuit][property]") {
    SplitMix64 rng(71);
    for (int rep = 0; rep < 10; ++rep) {
        const Circuit c1 = random_circuit(3, 6, rng);
        const Circuit c2 = random_circuit(3, 5, rng);
        Circuit joined;
        joined.n = 3;
        joined.gates = c1.gates;
        joined.gates.insert(joined.gates.end(), c2.gates.begin(), c2.gates.end());
        REQUIRE(frobenius_distance(evaluate(joined), evaluate(c2) * evaluate(c1)) <= 1e-12);
    }
}

TEST_CASE("xx_plus_yy matches the exponential-map oracle", "[circuit]") {
    ComplexMatrix sx(2), sy(2);
    sx(0, 1) = sx(1, 0) = 1.0;
    sy(0, 1) = {0.0, -1.0};
    sy(1, 0) = {0.0, 1.0};
    const double z = 0.37;
    const ComplexMatrix gen = cdouble{0.0, z} * (kron(sx, sx) + kron(sy, sy));
    const ComplexMatrix want = oracle::expm(gen);
    REQUIRE(frobenius_distance(gate_matrix(Gate::xx_plus_yy(z, 1, 2), 2), want) <= 1e-12);
}

TEST_CASE("mux1q selects branches by the control value", "[circuit]") {
    Gate mux;
    mux.kind = GateKind::Mux1q;
    mux.controls = {1};
    mux.sub0 = {Gate::rx(0.4, 2)};
    mux.sub1 = {Gate::ry(1.1, 2)};
    const ComplexMatrix m = gate_matrix(mux, 2);
    const ComplexMatrix b0 = gate_matrix(Gate::rx(0.4, 2), 2);
    const ComplexMatrix b1 = gate_matrix(Gate::ry(1.1, 2), 2);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            const bool hi_r = r & 2, hi_c = c & 2;
            if (hi_r != hi_c)
                REQUIRE(std::abs(m(r, c)) <= 1e-15);
            else
                REQUIRE(std::abs(m(r, c) - (hi_r ? b1(r, c) : b0(r, c))) <= 1e-15);
        }
    SECTION("branches may not touch the selector") {
        mux.sub0 = {Gate::rx(0.2, 1)};
        REQUIRE_THROWS_AS(gate_matrix(mux, 2), error);
    }
}

TEST_CASE("expand_ucr structure and equivalence", "[circuit]") {
    SECTION("no controls collapses to one rotation") {
        const auto ex = expand_ucr(Gate::ucry({}, 1, {0.8}));
        REQUIRE(ex.size() == 1);
        REQUIRE(ex[0].kind == GateKind::Ry);
        REQUIRE(ex[0].angles[0] == 0.8);
    }
    SECTION("one control: half-sum and half-difference rotations") {
        const double a = 0.9, b = -0.4;
        const auto ex = expand_ucr(Gate::ucry({1}, 2, {a, b}));
        REQUIRE(ex.size() == 4);
        REQUIRE(ex[0].kind == GateKind::Ry);
        REQUIRE_THAT(ex[0].angles[0], Catch::Matchers::WithinAbs((a + b) / 2.0, 1e-15));
        REQUIRE(ex[1].kind == GateKind::Cnot);
        REQUIRE(ex[2].kind == GateKind::Ry);
        REQUIRE_THAT(ex[2].angles[0], Catch::Matchers::WithinAbs((a - b) / 2.0, 1e-15));
        REQUIRE(ex[3].kind == GateKind::Cnot);
        Circuit c;
        c.n = 2;
        c.gates = ex;
        REQUIRE(frobenius_distance(evaluate(c), gate_matrix(Gate::ucry({1}, 2, {a, b}), 2)) <= 1e-12);
    }
    SECTION("two controls: four rotations and four CNOTs") {
        SplitMix64 rng(81);
        std::vector<double> angles(4);
        for (auto& a : angles) a = 2.0 * rng.uniform() - 1.0;
        const Gate g = Gate::ucrz({1, 2}, 3, angles);
        const auto ex = expand_ucr(g);
        std::size_t rot = 0, cx = 0;
        for (const auto& e : ex) {
            rot += e.kind == GateKind::Rz;
            cx += e.kind == GateKind::Cnot;
        }
        REQUIRE(rot == 4);
        REQUIRE(cx == 4);
        Circuit c;
        c.n = 3;
        c.gates = ex;
        REQUIRE(frobenius_distance(evaluate(c), gate_matrix(g, 3)) <= 1e-12);
    }
    SECTION("x-axis expansion is conjugated through R_y(pi/4)") {
        SplitMix64 rng(82);
        std::vector<double> angles(2);
        for (auto& a : angles) a = 2.0 * rng.uniform() - 1.0;
        const Gate g = Gate::ucrx({2}, 1, angles);
        const auto ex = expand_ucr(g);
        std::size_t rot = 0, cx = 0;
        for (const auto& e : ex) {
            rot += e.kind == GateKind::Rz || e.kind == GateKind::Ry;
            cx += e.kind == GateKind::Cnot;
        }
        REQUIRE(rot == 4);  // 2 Rz + 2 bracket Ry
        REQUIRE(cx == 2);
        Circuit c;
        c.n = 2;
        c.gates = ex;
        REQUIRE(frobenius_distance(evaluate(c), gate_matrix(g, 2)) <= 1e-12);
    }
}

TEST_CASE("ucr expansion equivalence over many random angle vectors", "[circuit][property]") {
    SplitMix64 rng(91);
    int cases = 0;
    for (std::size_t k = 1; k <= 5; ++k) {
        const int n = static_cast<int>(k) + 1;
        for (int rep = 0; rep < 40; ++rep) {
            std::vector<int> ctrls;
            for (std::size_t i = 1; i <= k; ++i) ctrls.push_back(static_cast<int>(i));
            std::vector<double> angles(std::size_t{1} << k);
            for (auto& a : angles) a = 2.0 * kPi * rng.uniform() - kPi;
            const GateKind kind = rep % 3 == 0   ? GateKind::UcrX
                                  : rep % 3 == 1 ? GateKind::UcrY
                                                 : GateKind::UcrZ;
            Gate g{kind, {n}, ctrls, angles};
            Circuit c;
            c.n = n;
            c.gates = expand_ucr(g);
            REQUIRE(frobenius_distance(evaluate(c), gate_matrix(g, n)) <=
                    1e-12 * static_cast<double>(std::size_t{1} << n));
            ++cases;
        }
    }
    REQUIRE(cases == 200);
}

TEST_CASE("count_gates", "[circuit]") {
    SECTION("empty circuit counts nothing") {
        Circuit c;
        c.n = 1;
        REQUIRE(count_gates(c).empty());
    }
    SECTION("three-qubit QFT census") {
        const auto counts = count_gates(qft_known_circuit(3));
        REQUIRE(counts.at("h") == 3);
        REQUIRE(counts.at("cphase") == 3);
        REQUIRE(counts.at("swap") == 1);
    }
    SECTION("expanded three-control UCR") {
        std::vector<double> angles(8, 0.25);
        Circuit c;
        c.n = 4;
        c.gates = expand_ucr(Gate::ucry({1, 2, 3}, 4, angles));
        const auto counts = count_gates(c);
        REQUIRE(counts.at("cnot") == 8);
        REQUIRE(counts.at("ry") == 8);
    }
}

TEST_CASE("demux_block_diag", "[circuit]") {
    SECTION("equal blocks give a trivial d") {
        SplitMix64 rng(61);
        const ComplexMatrix u = random_unitary(4, rng);
        const DemuxFactors f = demux_block_diag(u, u);
        for (const cdouble& dj : f.d) REQUIRE(std::abs(dj - cdouble{1.0, 0.0}) <= 1e-7);
        REQUIRE(frobenius_distance(f.v * f.w, u) <= 1e-10);
    }
    SECTION("random pairs reassemble") {
        SplitMix64 rng(62);
        for (std::size_t dim : {2u, 4u, 8u, 16u}) {
            const ComplexMatrix u1 = random_unitary(dim, rng);
            const ComplexMatrix u2 = random_unitary(dim, rng);
            const DemuxFactors f = demux_block_diag(u1, u2);
            const ComplexMatrix dd = ComplexMatrix::diagonal(f.d);
            REQUIRE(frobenius_distance(f.v * dd * f.w, u1) <= 1e-10);
            REQUIRE(frobenius_distance(f.v * adjoint(dd) * f.w, u2) <= 1e-10);
            for (const cdouble& dj : f.d) REQUIRE(std::abs(std::abs(dj) - 1.0) <= 1e-10);
        }
    }
    SECTION("the QFT multiplexor diagonal") {
        // u1 = I, u2 = -Omega†: d² = -Omega and d_j = i * omega_{n+1}^{j-1}
        const int n = 3;
        const ComplexMatrix om = qft_omega(n);  // Omega_{n-1}, dim 4
        ComplexMatrix u2(4);
        for (std::size_t j = 0; j < 4; ++j) u2(j, j) = -std::conj(om(j, j));
        const DemuxFactors f = demux_block_diag(ComplexMatrix::identity(4), u2);
        // d comes back in eigenvalue order; compare as multisets
        std::vector<cdouble> want(4);
        for (std::size_t j = 0; j < 4; ++j)
            want[j] = cdouble{0.0, 1.0} * std::polar(1.0, 2.0 * kPi * static_cast<double>(j) / 16.0);
        REQUIRE(oracle::same_value_multiset(f.d, want, 1e-10));
    }
    SECTION("non-unitary input is rejected") {
        ComplexMatrix bad = ComplexMatrix::identity(4);
        bad(1, 1) = 0.5;
        REQUIRE_THROWS_AS(demux_block_diag(bad, ComplexMatrix::identity(4)), error);
    }
}
