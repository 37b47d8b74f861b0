#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <string>

namespace kakforge {

struct Tolerances {
    double unitary = 1e-10;  // unitarity / Hermiticity admission checks
    double eig = 1e-9;       // eigensystem residuals
    double group = 1e-8;     // eigenvalue clustering
    double recon = 1e-8;     // factor and circuit reconstruction
};

enum class Subalgebra { H1, H2 };

inline const char* subalgebra_name(Subalgebra s) { return s == Subalgebra::H1 ? "h1" : "h2"; }

struct Config {
    Tolerances tol;
    int axis = 0;  // 0 means "last qubit"
    Subalgebra subalgebra = Subalgebra::H1;
    bool ry_branch = false;  // emit R_y(pi/2) square roots for R_x(pi) blocks
    std::size_t dim_cap = std::size_t{1} << 12;
    std::uint64_t seed = 42;
};

// KAKFORGE_* environment variables override the built-in defaults; explicit
// command-line flags still win over both.
inline void apply_env_overrides(Config& cfg) {
    auto getd = [](const char* name, double& out) {
        if (const char* v = std::getenv(name)) out = std::strtod(v, nullptr);
    };
    getd("KAKFORGE_TOL_UNITARY", cfg.tol.unitary);
    getd("KAKFORGE_TOL_EIG", cfg.tol.eig);
    getd("KAKFORGE_TOL_GROUP", cfg.tol.group);
    getd("KAKFORGE_TOL_RECON", cfg.tol.recon);
    if (const char* v = std::getenv("KAKFORGE_SEED")) cfg.seed = std::strtoull(v, nullptr, 10);
    if (const char* v = std::getenv("KAKFORGE_DIM_CAP")) cfg.dim_cap = std::strtoull(v, nullptr, 10);
}

}  // namespace kakforge
