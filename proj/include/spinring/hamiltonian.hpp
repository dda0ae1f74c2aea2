#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "spinring/matrix.hpp"

namespace spinring {

enum class Coupling { XX, Heisenberg };

std::string_view to_string(Coupling c) noexcept;
/// Accepts "xx" / "heisenberg" (case-insensitive).
Coupling parse_coupling(std::string_view s);

/// A uniform ring of `n` spins with identical nearest-neighbour coupling
/// `strength` on every bond, including the bond (n, 1).
class RingSpec {
public:
    /// Throws InvalidSpec unless n >= 3 and strength > 0.
    RingSpec(int n, Coupling coupling = Coupling::XX, double strength = 1.0);

    int n() const noexcept { return n_; }
    Coupling coupling() const noexcept { return coupling_; }
    double strength() const noexcept { return strength_; }

    /// 0 for XX, 1 for Heisenberg: weight of the sigma^z sigma^z term.
    double anisotropy() const noexcept { return coupling_ == Coupling::Heisenberg ? 1.0 : 0.0; }

    /// Off-diagonal entry h of the single-excitation Hamiltonian, 2J for
    /// both couplings. verify_subspace_restriction() checks it against the
    /// full-space operator.
    double subspace_coupling() const noexcept { return 2.0 * strength_; }

    /// Uniform diagonal of the single-excitation Hamiltonian: J * eps * (n - 4).
    double diagonal_shift() const noexcept { return strength_ * anisotropy() * (n_ - 4); }

    friend bool operator==(const RingSpec&, const RingSpec&) = default;

private:
    int n_;
    Coupling coupling_;
    double strength_;
};

/// Largest ring handled in the full 2^n space.
inline constexpr int kMaxFullSpaceSpins = 14;

/// Index of the single-excitation state |i> (spin i excited, 0-based) in
/// the 2^n computational basis. Spin 0 is the leftmost Kronecker factor,
/// i.e. the most significant bit.
constexpr std::uint64_t excitation_state(int n, int site) noexcept {
    return std::uint64_t{1} << (n - 1 - site);
}

/// Full 2^n x 2^n Hamiltonian
///   sum_bonds J (sx sx + sy sy + eps sz sz)
/// built from the action of each Pauli string on computational basis states.
/// Throws DimensionTooLarge above kMaxFullSpaceSpins.
SymmetricMatrix build_full_hamiltonian(const RingSpec& spec);

/// n x n circulant restriction to the single-excitation sector.
SymmetricMatrix build_single_excitation_hamiltonian(const RingSpec& spec);

/// Same circulant layout with an explicit hopping value; used for fault
/// injection in the verification suite.
SymmetricMatrix build_single_excitation_hamiltonian(const RingSpec& spec, double hopping);

struct RestrictionReport {
    double max_abs_deviation = 0.0;  ///< restriction vs direct construction
    double max_sector_leakage = 0.0; ///< |<s|H|i>| for s outside the sector
};

/// Restricts the full Hamiltonian to span{|i>} and compares it entrywise
/// with the direct construction; also checks that H does not couple the
/// sector to states with a different excitation count. Throws
/// RestrictionMismatch (carrying full-space indices) when either exceeds
/// `tol`.
RestrictionReport verify_subspace_restriction(const RingSpec& spec, double tol = 1e-12);

}  // namespace spinring
