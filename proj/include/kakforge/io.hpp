#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kakforge/circuit.hpp"
#include "kakforge/kak.hpp"
#include "kakforge/matrix.hpp"

namespace kakforge {

using json = nlohmann::json;

class io_error : public error {
public:
    using error::error;
};

inline int qubit_count_for_dim(std::size_t dim, const char* who) {
    int n = 0;
    std::size_t d = dim;
    while (d > 1) {
        if (d % 2 != 0) throw io_error(std::string(who) + ": dimension is not a power of two");
        d /= 2;
        ++n;
    }
    if (n < 1) throw io_error(std::string(who) + ": dimension must be at least 2");
    return n;
}

// {"n": qubits, "re": [[...]], "im": [[...]]}
inline json matrix_to_json(const ComplexMatrix& m) {
    const int n = qubit_count_for_dim(m.dim(), "matrix_to_json");
    json re = json::array(), im = json::array();
    for (std::size_t r = 0; r < m.dim(); ++r) {
        json rrow = json::array(), irow = json::array();
        for (std::size_t c = 0; c < m.dim(); ++c) {
            rrow.push_back(m(r, c).real());
            irow.push_back(m(r, c).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return json{{"n", n}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("re") || !j.contains("im"))
        throw io_error("matrix JSON: expected fields n, re, im");
    const int n = j.at("n").get<int>();
    if (n < 1 || n > 12) throw io_error("matrix JSON: field n out of range");
    const std::size_t dim = std::size_t{1} << n;
    const json& re = j.at("re");
    const json& im = j.at("im");
    if (re.size() != dim || im.size() != dim) throw io_error("matrix JSON: row count does not match n");
    ComplexMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        if (re[r].size() != dim || im[r].size() != dim)
            throw io_error("matrix JSON: row " + std::to_string(r) + " has the wrong length");
        for (std::size_t c = 0; c < dim; ++c)
            m(r, c) = {re[r][c].get<double>(), im[r][c].get<double>()};
    }
    return m;
}

// Text format: first line is the qubit count, then 2^n rows of
// whitespace-separated "re im" pairs.
inline std::string matrix_to_text(const ComplexMatrix& m) {
    const int n = qubit_count_for_dim(m.dim(), "matrix_to_text");
    std::string out = std::to_string(n) + "\n";
    char buf[64];
    for (std::size_t r = 0; r < m.dim(); ++r) {
        for (std::size_t c = 0; c < m.dim(); ++c) {
            std::snprintf(buf, sizeof buf, c == 0 ? "%.17g %.17g" : " %.17g %.17g", m(r, c).real(),
                          m(r, c).imag());
            out += buf;
        }
        out += '\n';
    }
    return out;
}

inline ComplexMatrix matrix_from_text(std::istream& in) {
    int n = 0;
    if (!(in >> n)) throw io_error("matrix text: missing qubit count on line 1");
    if (n < 1 || n > 12) throw io_error("matrix text: qubit count out of range on line 1");
    const std::size_t dim = std::size_t{1} << n;
    ComplexMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) {
            double re = 0.0, im = 0.0;
            if (!(in >> re >> im))
                throw io_error("matrix text: malformed entry at row " + std::to_string(r + 1) +
                               ", column " + std::to_string(c + 1));
            m(r, c) = {re, im};
        }
    return m;
}

// Accepts either the JSON or the text matrix format, sniffed from the first
// non-space character.
inline ComplexMatrix parse_matrix(const std::string& content) {
    std::size_t i = 0;
    while (i < content.size() && std::isspace(static_cast<unsigned char>(content[i]))) ++i;
    if (i == content.size()) throw io_error("matrix input is empty");
    if (content[i] == '{') {
        json j = json::parse(content, nullptr, false);
        if (j.is_discarded()) throw io_error("matrix input: invalid JSON");
        return matrix_from_json(j);
    }
    std::istringstream ss(content);
    return matrix_from_text(ss);
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write file: " + path);
    out << content;
}

inline ComplexMatrix load_matrix(const std::string& path) { return parse_matrix(read_file(path)); }

inline json gate_to_json(const Gate& g);

inline json gates_to_json(const std::vector<Gate>& gates) {
    json arr = json::array();
    for (const Gate& g : gates) arr.push_back(gate_to_json(g));
    return arr;
}

inline json gate_to_json(const Gate& g) {
    json j{{"kind", gate_kind_name(g.kind)}};
    if (!g.targets.empty()) j["targets"] = g.targets;
    if (!g.controls.empty()) j["controls"] = g.controls;
    if (!g.angles.empty()) j["angles"] = g.angles;
    if (g.kind == GateKind::Raw1q) {
        json m = json::array();
        for (const cdouble& z : g.raw) m.push_back(json::array({z.real(), z.imag()}));
        j["matrix"] = std::move(m);
    }
    if (g.kind == GateKind::GlobalPhase)
        j["matrix"] = json::array({json::array({g.phase.real(), g.phase.imag()})});
    if (g.kind == GateKind::Mux1q) {
        j["sub0"] = gates_to_json(g.sub0);
        j["sub1"] = gates_to_json(g.sub1);
    }
    return j;
}

inline Gate gate_from_json(const json& j);

inline std::vector<Gate> gates_from_json(const json& arr) {
    std::vector<Gate> out;
    for (const auto& g : arr) out.push_back(gate_from_json(g));
    return out;
}

inline Gate gate_from_json(const json& j) {
    if (!j.contains("kind")) throw io_error("gate JSON: missing kind");
    const std::string kind = j.at("kind").get<std::string>();
    Gate g;
    bool known = false;
    for (int k = 0; k <= static_cast<int>(GateKind::GlobalPhase); ++k)
        if (kind == gate_kind_name(static_cast<GateKind>(k))) {
            g.kind = static_cast<GateKind>(k);
            known = true;
            break;
        }
    if (!known) throw io_error("gate JSON: unknown kind '" + kind + "'");
    if (j.contains("targets")) g.targets = j.at("targets").get<std::vector<int>>();
    if (j.contains("controls")) g.controls = j.at("controls").get<std::vector<int>>();
    if (j.contains("angles")) g.angles = j.at("angles").get<std::vector<double>>();
    if (g.kind == GateKind::Raw1q) {
        const json& m = j.at("matrix");
        if (m.size() != 4) throw io_error("gate JSON: raw1q matrix must have 4 entries");
        for (std::size_t i = 0; i < 4; ++i) g.raw[i] = {m[i][0].get<double>(), m[i][1].get<double>()};
    }
    if (g.kind == GateKind::GlobalPhase) {
        const json& m = j.at("matrix");
        g.phase = {m[0][0].get<double>(), m[0][1].get<double>()};
    }
    if (g.kind == GateKind::Mux1q) {
        g.sub0 = gates_from_json(j.at("sub0"));
        g.sub1 = gates_from_json(j.at("sub1"));
    }
    return g;
}

inline json circuit_to_json(const Circuit& c) {
    return json{{"n", c.n}, {"convention", Circuit::kConvention}, {"gates", gates_to_json(c.gates)}};
}

inline Circuit circuit_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("gates")) throw io_error("circuit JSON: expected fields n, gates");
    Circuit c;
    c.n = j.at("n").get<int>();
    if (c.n < 1 || c.n > 12) throw io_error("circuit JSON: field n out of range");
    c.gates = gates_from_json(j.at("gates"));
    return c;
}

// One gate per line, for golden files.
inline std::string circuit_to_text(const Circuit& c) {
    std::ostringstream out;
    out << "n " << c.n << "\n";
    for (const Gate& g : c.gates) {
        out << gate_kind_name(g.kind);
        if (!g.controls.empty()) {
            out << " c=";
            for (std::size_t i = 0; i < g.controls.size(); ++i)
                out << (i ? "," : "") << g.controls[i];
        }
        if (!g.targets.empty()) {
            out << " t=";
            for (std::size_t i = 0; i < g.targets.size(); ++i) out << (i ? "," : "") << g.targets[i];
        }
        if (!g.angles.empty()) {
            out << " a=";
            char buf[32];
            for (std::size_t i = 0; i < g.angles.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%.12g", g.angles[i]);
                out << (i ? "," : "") << buf;
            }
        }
        if (g.kind == GateKind::GlobalPhase) {
            char buf[80];
            std::snprintf(buf, sizeof buf, " z=%.12g%+.12gi", g.phase.real(), g.phase.imag());
            out << buf;
        }
        out << "\n";
    }
    return out.str();
}

inline json report_to_json(const VerificationReport& rep, long runtime_ms,
                           const std::map<std::string, std::size_t>& counts = {}) {
    json checks{{"k_tilde_in_exp_k", rep.k_tilde_in_exp_k},
                {"p_dagger_in_exp_k", rep.p_dagger_in_exp_k},
                {"y_exp_m_condition", rep.y_exp_m_condition},
                {"y_block_shape", rep.y_block_shape},
                {"pass", rep.pass}};
    json jcounts = json::object();
    for (const auto& [k, v] : counts) jcounts[k] = v;
    return json{{"residual", rep.residual},
                {"checks", std::move(checks)},
                {"counts", std::move(jcounts)},
                {"runtime_ms", runtime_ms}};
}

inline json factors_to_json(const KakFactors& f, int n, int axis, const VerificationReport& rep,
                            long runtime_ms) {
    return json{{"n", n},
                {"axis", axis},
                {"subalgebra", subalgebra_name(f.subalgebra)},
                {"global_phase", {{"re", f.global_phase.real()}, {"im", f.global_phase.imag()}}},
                {"angles", f.angles},
                {"k_tilde", matrix_to_json(f.k_tilde)},
                {"y", matrix_to_json(f.y)},
                {"p_dagger", matrix_to_json(f.p_dagger)},
                {"report", report_to_json(rep, runtime_ms)}};
}

inline KakFactors factors_from_json(const json& j) {
    KakFactors f;
    f.k_tilde = matrix_from_json(j.at("k_tilde"));
    f.y = matrix_from_json(j.at("y"));
    f.p_dagger = matrix_from_json(j.at("p_dagger"));
    f.angles = j.at("angles").get<std::vector<double>>();
    f.subalgebra = j.at("subalgebra").get<std::string>() == "h2" ? Subalgebra::H2 : Subalgebra::H1;
    f.global_phase = {j.at("global_phase").at("re").get<double>(),
                      j.at("global_phase").at("im").get<double>()};
    return f;
}

}  // namespace kakforge
