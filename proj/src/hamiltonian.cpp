#include "spinring/hamiltonian.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <complex>
#include <string>

#include "spinring/error.hpp"

namespace spinring {

std::string_view to_string(Coupling c) noexcept {
    return c == Coupling::XX ? "xx" : "heisenberg";
}

Coupling parse_coupling(std::string_view s) {
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (lower == "xx") return Coupling::XX;
    if (lower == "heisenberg") return Coupling::Heisenberg;
    throw InvalidSpec("unknown coupling '" + std::string(s) + "' (expected xx or heisenberg)");
}

RingSpec::RingSpec(int n, Coupling coupling, double strength)
    : n_(n), coupling_(coupling), strength_(strength) {
    if (n < 3) throw InvalidSpec("ring needs at least 3 spins, got " + std::to_string(n));
    if (!(strength > 0.0) || !std::isfinite(strength))
        throw InvalidSpec("coupling strength must be positive and finite");
}

namespace {

enum class Pauli { X, Y, Z };

// Single-spin Pauli action on |bit>: returns the output bit and amplitude.
// |0> = (1,0)^T, |1> = (0,1)^T.
struct PauliImage {
    unsigned bit;
    std::complex<double> amplitude;
};

PauliImage apply(Pauli p, unsigned bit) {
    using namespace std::complex_literals;
    switch (p) {
        case Pauli::X: return {bit ^ 1u, 1.0};
        case Pauli::Y: return {bit ^ 1u, bit == 0 ? 1i : -1i};
        case Pauli::Z: return {bit, bit == 0 ? 1.0 : -1.0};
    }
    return {bit, 0.0};
}

// Adds coeff * (P_a P_b) to the full matrix, where P acts on spins a and b.
void add_two_site_term(SymmetricMatrix& h, int n, int a, int b, Pauli p, double coeff) {
    const std::uint64_t dim = std::uint64_t{1} << n;
    const int shift_a = n - 1 - a;
    const int shift_b = n - 1 - b;
    for (std::uint64_t col = 0; col < dim; ++col) {
        const unsigned bit_a = (col >> shift_a) & 1u;
        const unsigned bit_b = (col >> shift_b) & 1u;
        const PauliImage ia = apply(p, bit_a);
        const PauliImage ib = apply(p, bit_b);
        std::uint64_t row = col;
        row = (row & ~(std::uint64_t{1} << shift_a)) | (std::uint64_t{ia.bit} << shift_a);
        row = (row & ~(std::uint64_t{1} << shift_b)) | (std::uint64_t{ib.bit} << shift_b);
        const std::complex<double> amp = coeff * ia.amplitude * ib.amplitude;
        // Products of two identical Pauli factors are real.
        if (row >= col) h.add(row, col, amp.real());
    }
}

}  // namespace

SymmetricMatrix build_full_hamiltonian(const RingSpec& spec) {
    const int n = spec.n();
    if (n > kMaxFullSpaceSpins)
        throw DimensionTooLarge("full Hilbert space limited to " +
                                std::to_string(kMaxFullSpaceSpins) + " spins, got " +
                                std::to_string(n));
    SymmetricMatrix h(std::size_t{1} << n);
    const double j = spec.strength();
    for (int a = 0; a < n; ++a) {
        const int b = (a + 1) % n;
        add_two_site_term(h, n, a, b, Pauli::X, j);
        add_two_site_term(h, n, a, b, Pauli::Y, j);
        if (spec.anisotropy() != 0.0) add_two_site_term(h, n, a, b, Pauli::Z, j * spec.anisotropy());
    }
    return h;
}

SymmetricMatrix build_single_excitation_hamiltonian(const RingSpec& spec) {
    return build_single_excitation_hamiltonian(spec, spec.subspace_coupling());
}

SymmetricMatrix build_single_excitation_hamiltonian(const RingSpec& spec, double hopping) {
    const auto n = static_cast<std::size_t>(spec.n());
    SymmetricMatrix h(n);
    for (std::size_t i = 0; i < n; ++i) {
        h.set(i, i, spec.diagonal_shift());
        h.set(i, (i + 1) % n, hopping);
    }
    return h;
}

RestrictionReport verify_subspace_restriction(const RingSpec& spec, double tol) {
    const SymmetricMatrix full = build_full_hamiltonian(spec);
    const SymmetricMatrix direct = build_single_excitation_hamiltonian(spec);
    const int n = spec.n();
    RestrictionReport report;

    for (int i = 0; i < n; ++i) {
        const std::uint64_t si = excitation_state(n, i);
        for (int j = 0; j < n; ++j) {
            const std::uint64_t sj = excitation_state(n, j);
            const double dev = std::abs(full(si, sj) - direct(i, j));
            report.max_abs_deviation = std::max(report.max_abs_deviation, dev);
            if (dev > tol) throw RestrictionMismatch(si, sj, dev);
        }
        for (std::uint64_t s = 0; s < full.dim(); ++s) {
            if (std::popcount(s) == 1) continue;
            const double leak = std::abs(full(s, si));
            report.max_sector_leakage = std::max(report.max_sector_leakage, leak);
            if (leak > tol) throw RestrictionMismatch(s, si, leak);
        }
    }
    return report;
}

}  // namespace spinring
