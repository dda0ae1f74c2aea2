#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spinring {

struct CheckOutcome {
    std::string name;
    bool passed = false;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyOptions {
    int n_max_full = 10;      ///< full 2^n checks for n = 3..n_max_full
    int n_max_subspace = 64;  ///< single-excitation checks for n = 3..n_max_subspace
    std::uint64_t seed = 0;
    /// Test hook: the numerically diagonalized Hamiltonian uses
    /// h * hopping_scale instead of h.
    double hopping_scale = 1.0;
};

/// Cross-checks every closed form against its independent route.
std::vector<CheckOutcome> run_verification(const VerifyOptions& opt = {});

}  // namespace spinring
