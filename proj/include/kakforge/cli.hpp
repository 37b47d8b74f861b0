#pragma once

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kakforge/config.hpp"
#include "kakforge/io.hpp"
#include "kakforge/qft.hpp"
#include "kakforge/random.hpp"
#include "kakforge/synth.hpp"

namespace kakforge::cli {

// exit codes: 0 = pass, 1 = verification failure, 2 = input error
inline constexpr int kExitPass = 0;
inline constexpr int kExitVerifyFail = 1;
inline constexpr int kExitInputError = 2;

namespace detail {

inline long elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
        .count();
}

inline int resolve_axis(int axis, int n) {
    if (axis == 0) return n;
    if (axis < 1 || axis > n) throw io_error("--axis must be in 1..n");
    return axis;
}

struct CommonOptions {
    Config cfg;

    void attach(CLI::App& app) {
        app.add_option("--seed", cfg.seed, "PRNG seed for randomized subcommands")
            ->envname("KAKFORGE_SEED");
        app.add_option("--tol-unitary", cfg.tol.unitary, "unitarity admission tolerance")
            ->envname("KAKFORGE_TOL_UNITARY");
        app.add_option("--tol-eig", cfg.tol.eig, "eigensystem residual tolerance")
            ->envname("KAKFORGE_TOL_EIG");
        app.add_option("--tol-group", cfg.tol.group, "eigenvalue grouping tolerance")
            ->envname("KAKFORGE_TOL_GROUP");
        app.add_option("--tol-recon", cfg.tol.recon, "reconstruction tolerance")
            ->envname("KAKFORGE_TOL_RECON");
        app.add_option("--dim-cap", cfg.dim_cap, "largest admitted matrix dimension")
            ->envname("KAKFORGE_DIM_CAP");
    }
};

inline int cmd_decompose(const CommonOptions& common, const std::string& in_path, int axis_flag,
                         const std::string& subalgebra, bool ry_branch, const std::string& out_path) {
    const auto t0 = std::chrono::steady_clock::now();
    const ComplexMatrix g = load_matrix(in_path);
    const int n = qubit_count_for_dim(g.dim(), "decompose");
    if (g.dim() > common.cfg.dim_cap) throw io_error("decompose: input exceeds --dim-cap");
    const CartanInvolution inv(n, resolve_axis(axis_flag, n));
    const Subalgebra sub = subalgebra == "h2" ? Subalgebra::H2 : Subalgebra::H1;

    KakFactors factors;
    try {
        factors = kak_decompose(g, inv, sub, ry_branch, common.cfg.tol);
    } catch (const h2_not_applicable& e) {
        std::cerr << "h2 not applicable: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    const VerificationReport rep = verify_factors(g, inv, factors, common.cfg.tol.recon);
    write_output(out_path, factors_to_json(factors, n, inv.axis, rep, elapsed_ms(t0)).dump(2));
    return rep.pass ? kExitPass : kExitVerifyFail;
}

inline int cmd_synth(const CommonOptions& common, const std::string& in_path, int axis_flag,
                     bool expand, bool verify, bool ry_branch, const std::string& out_path) {
    const ComplexMatrix g = load_matrix(in_path);
    const int n = qubit_count_for_dim(g.dim(), "synth");
    if (g.dim() > common.cfg.dim_cap) throw io_error("synth: input exceeds --dim-cap");
    const CartanInvolution inv(n, resolve_axis(axis_flag, n));

    SynthOptions opts;
    opts.ry_branch = ry_branch;
    opts.tol = common.cfg.tol;
    Circuit c = synthesize(g, inv, opts);
    if (expand) c = expand_circuit(c);
    write_output(out_path, circuit_to_json(c).dump(2));
    if (verify) {
        const double residual = frobenius_distance(evaluate(c), g);
        std::cout << "residual " << residual << "\n";
        return residual <= common.cfg.tol.recon * static_cast<double>(g.dim()) ? kExitPass
                                                                               : kExitVerifyFail;
    }
    return kExitPass;
}

inline int cmd_qft_demo(const CommonOptions& common, int n, const std::string& mode,
                        const std::string& out_path) {
    const auto t0 = std::chrono::steady_clock::now();
    if (n < 1) throw io_error("qft-demo: --n must be >= 1");
    if ((std::size_t{1} << n) > common.cfg.dim_cap) throw io_error("qft-demo: --n exceeds --dim-cap");
    json rep{{"n", n}, {"mode", mode}};
    bool pass = true;

    if (mode == "known" || mode == "both") {
        const Circuit c = qft_known_circuit(n);
        const double residual = frobenius_distance(evaluate(c), qft_matrix(n));
        json counts = json::object();
        for (const auto& [k, v] : count_gates(c)) counts[k] = v;
        rep["known"] = {{"residual", residual}, {"counts", std::move(counts)}};
        pass = pass && residual <= 1e-10;
    }
    if ((mode == "kak" || mode == "both") && n >= 2) {
        const QftKakReport q = qft_kak_check(n, common.cfg.tol);
        rep["kak"] = {{"reconstruction_residual", q.reconstruction_residual},
                      {"b_block_deviation", q.b_block_deviation},
                      {"y_block_deviation", q.y_block_deviation},
                      {"closed_form_residual", q.closed_form_residual},
                      {"spectrum_ok", q.spectrum_ok},
                      {"membership_ok", q.membership_ok},
                      {"pass", q.pass}};
        pass = pass && q.pass;
    }
    rep["pass"] = pass;
    rep["runtime_ms"] = elapsed_ms(t0);
    write_output(out_path, rep.dump(2));
    return pass ? kExitPass : kExitVerifyFail;
}

inline int cmd_lemma_check(const CommonOptions& common, int count, int n, const std::string& in_path,
                           const std::string& out_path) {
    const auto t0 = std::chrono::steady_clock::now();
    json rep;
    bool pass = true;
    const double tol = 1e-9;

    if (!in_path.empty()) {
        const ComplexMatrix g = load_matrix(in_path);
        const int qn = qubit_count_for_dim(g.dim(), "lemma-check");
        const LemmaReport r = check_lemmas(g, CartanInvolution(qn, qn), tol, common.cfg.tol);
        rep["matrix"] = {{"conjugate_pairs", r.conjugate_pairs_ok},
                         {"real_spectrum", r.real_spectrum_ok},
                         {"transport", r.transport_ok},
                         {"transported_vectors", r.transported_vectors}};
        pass = r.pass();
    } else {
        if (n < 1 || count < 1) throw io_error("lemma-check: --n and --random must be positive");
        if ((std::size_t{1} << n) > common.cfg.dim_cap) throw io_error("lemma-check: --n exceeds --dim-cap");
        SplitMix64 rng(common.cfg.seed);
        const CartanInvolution inv(n, n);
        const std::size_t dim = std::size_t{1} << n;
        int ok = 0;
        std::size_t transported = 0;
        for (int i = 0; i < count; ++i) {
            ComplexMatrix g(dim);
            if (i % 2 == 0) {
                g = random_unitary(dim, rng);
            } else {
                // random element with forced ±1 eigenvalues in m², so the
                // real-spectrum and transport checks are exercised
                const std::size_t half = dim / 2;
                const ComplexMatrix k =
                    compose_exp_k(random_unitary(half, rng), random_unitary(half, rng));
                const ComplexMatrix p =
                    compose_exp_k(random_unitary(half, rng), random_unitary(half, rng));
                std::vector<double> angles(half, 0.0);
                for (std::size_t j = 0; j + 1 < half; j += 2) angles[j] = 0.5 * kPi;
                ComplexMatrix y(dim);
                for (std::size_t j = 0; j < half; ++j) {
                    const double z = angles[j];
                    y(2 * j, 2 * j) = {std::cos(z), 0.0};
                    y(2 * j, 2 * j + 1) = {0.0, -std::sin(z)};
                    y(2 * j + 1, 2 * j) = {0.0, -std::sin(z)};
                    y(2 * j + 1, 2 * j + 1) = {std::cos(z), 0.0};
                }
                g = k * (p * y * adjoint(p));
            }
            const LemmaReport r = check_lemmas(g, inv, tol, common.cfg.tol);
            transported += r.transported_vectors;
            if (r.pass()) ++ok;
        }
        rep["checked"] = count;
        rep["passed"] = ok;
        rep["transported_vectors"] = transported;
        pass = ok == count;
        std::cout << ok << "/" << count << " pass\n";
    }
    rep["pass"] = pass;
    rep["runtime_ms"] = elapsed_ms(t0);
    write_output(out_path, rep.dump(2));
    return pass ? kExitPass : kExitVerifyFail;
}

inline int cmd_verify(const CommonOptions& common, const std::string& in_path,
                      const std::string& factors_path, const std::string& circuit_path, int axis_flag) {
    const auto t0 = std::chrono::steady_clock::now();
    const ComplexMatrix g = load_matrix(in_path);
    const int n = qubit_count_for_dim(g.dim(), "verify");
    json rep;
    bool pass = false;

    if (!factors_path.empty()) {
        const json j = json::parse(read_file(factors_path), nullptr, false);
        if (j.is_discarded()) throw io_error("verify: factors file is not valid JSON");
        const KakFactors f = factors_from_json(j);
        const int axis = j.contains("axis") ? j.at("axis").get<int>() : resolve_axis(axis_flag, n);
        const VerificationReport r = verify_factors(g, CartanInvolution(n, axis), f, common.cfg.tol.recon);
        rep = report_to_json(r, elapsed_ms(t0));
        pass = r.pass;
    } else if (!circuit_path.empty()) {
        const json j = json::parse(read_file(circuit_path), nullptr, false);
        if (j.is_discarded()) throw io_error("verify: circuit file is not valid JSON");
        const Circuit c = circuit_from_json(j);
        if (c.n != n) throw io_error("verify: circuit and matrix qubit counts differ");
        const double residual = frobenius_distance(evaluate(c), g);
        pass = residual <= common.cfg.tol.recon * static_cast<double>(g.dim());
        rep = json{{"residual", residual}, {"pass", pass}, {"runtime_ms", elapsed_ms(t0)}};
    } else {
        throw io_error("verify: provide --factors or --circuit");
    }
    std::cout << rep.dump(2) << "\n";
    return pass ? kExitPass : kExitVerifyFail;
}

}  // namespace detail

inline int run(int argc, const char* const* argv) {
    CLI::App app{"kakforge: type-AIII KAK circuit compiler"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand name

    detail::CommonOptions common;
    common.attach(app);

    auto* dec = app.add_subcommand("decompose", "factor a unitary as global_phase * k~ y p†");
    std::string dec_in, dec_out = "factors.json", dec_sub = "h1";
    int dec_axis = 0;
    bool dec_ry = false;
    dec->add_option("--in", dec_in, "input matrix (JSON or text)")->required();
    dec->add_option("--axis", dec_axis, "involution axis qubit (default: last)");
    dec->add_option("--subalgebra", dec_sub, "h1 or h2")->check(CLI::IsMember({"h1", "h2"}));
    dec->add_flag("--ry-branch", dec_ry, "use R_y(pi/2) square roots for R_x(pi) blocks");
    dec->add_option("--out", dec_out, "output factors file ('-' for stdout)");

    auto* syn = app.add_subcommand("synth", "synthesize a circuit of uniformly controlled rotations");
    std::string syn_in, syn_out = "circuit.json";
    int syn_axis = 0;
    bool syn_expand = false, syn_verify = false, syn_ry = false;
    syn->add_option("--in", syn_in, "input matrix (JSON or text)")->required();
    syn->add_option("--axis", syn_axis, "involution axis qubit (default: last)");
    syn->add_flag("--expand-ucr", syn_expand, "expand UCRs into CNOTs and rotations");
    syn->add_flag("--verify", syn_verify, "evaluate the circuit and print the residual");
    syn->add_flag("--ry-branch", syn_ry, "use R_y(pi/2) square roots for R_x(pi) blocks");
    syn->add_option("--out", syn_out, "output circuit file ('-' for stdout)");

    auto* qft = app.add_subcommand("qft-demo", "QFT generators, known circuit, and KAK closed forms");
    int qft_n = 4;
    std::string qft_mode = "both", qft_out = "-";
    qft->add_option("--n", qft_n, "qubit count")->required();
    qft->add_option("--mode", qft_mode, "kak, known, or both")
        ->check(CLI::IsMember({"kak", "known", "both"}));
    qft->add_option("--out", qft_out, "output report file ('-' for stdout)");

    auto* lem = app.add_subcommand("lemma-check", "eigenstructure checks for m² = Theta(G†)G");
    int lem_count = 100, lem_n = 3;
    std::string lem_in, lem_out = "-";
    lem->add_option("--random", lem_count, "number of random unitaries");
    lem->add_option("--n", lem_n, "qubit count for random unitaries");
    lem->add_option("--in", lem_in, "check a single matrix from a file instead");
    lem->add_option("--out", lem_out, "output report file ('-' for stdout)");

    auto* ver = app.add_subcommand("verify", "check factors or a circuit against a matrix");
    std::string ver_in, ver_factors, ver_circuit;
    int ver_axis = 0;
    ver->add_option("--in", ver_in, "input matrix (JSON or text)")->required();
    ver->add_option("--factors", ver_factors, "factors JSON to verify");
    ver->add_option("--circuit", ver_circuit, "circuit JSON to verify");
    ver->add_option("--axis", ver_axis, "involution axis qubit (default: last)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitPass : kExitInputError;
    }

    try {
        if (dec->parsed())
            return detail::cmd_decompose(common, dec_in, dec_axis, dec_sub, dec_ry, dec_out);
        if (syn->parsed())
            return detail::cmd_synth(common, syn_in, syn_axis, syn_expand, syn_verify, syn_ry, syn_out);
        if (qft->parsed()) return detail::cmd_qft_demo(common, qft_n, qft_mode, qft_out);
        if (lem->parsed()) return detail::cmd_lemma_check(common, lem_count, lem_n, lem_in, lem_out);
        if (ver->parsed()) return detail::cmd_verify(common, ver_in, ver_factors, ver_circuit, ver_axis);
    } catch (const io_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitInputError;
}

}  // namespace kakforge::cli
