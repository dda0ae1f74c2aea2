#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "spinring/hamiltonian.hpp"
#include "spinring/matrix.hpp"

namespace spinring {

enum class SpectrumSource { ClosedForm, NumericalSolver };

std::string_view to_string(SpectrumSource s) noexcept;

struct Eigenspace {
    double eigenvalue = 0.0;
    int multiplicity = 0;
    Matrix projector;  ///< orthogonal projector onto the eigenspace
};

/// Eigenvalues grouped into eigenspaces, sorted by ascending eigenvalue.
class SpectralDecomposition {
public:
    SpectralDecomposition(std::vector<Eigenspace> spaces, SpectrumSource source,
                          int merged_collisions = 0);

    std::size_t dim() const noexcept { return dim_; }
    SpectrumSource source() const noexcept { return source_; }
    const std::vector<Eigenspace>& eigenspaces() const noexcept { return spaces_; }
    std::size_t size() const noexcept { return spaces_.size(); }

    std::vector<double> eigenvalues() const;
    std::vector<int> multiplicities() const;

    /// Number of distinct analytic eigenvalues that collided numerically
    /// and were merged into one eigenspace.
    int merged_collisions() const noexcept { return merged_collisions_; }

    /// sum_k lambda_k Pi_k
    Matrix reconstruct() const;

private:
    std::vector<Eigenspace> spaces_;
    SpectrumSource source_;
    std::size_t dim_ = 0;
    int merged_collisions_ = 0;
};

/// Closed-form spectrum of the circulant single-excitation Hamiltonian:
/// lambda_k = delta + 2h cos(2 pi k / n), k = 0..floor(n/2), with real
/// projectors (2/n) cos(2 pi k (i-j) / n) on the double eigenspaces.
SpectralDecomposition circulant_spectrum(const RingSpec& spec);

struct JacobiResult {
    std::vector<double> eigenvalues;  ///< ascending
    Matrix eigenvectors;              ///< column c pairs with eigenvalues[c]
    int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal norm drops below
/// 1e-14 * ||A||_F. Throws NoConvergence after `max_sweeps`.
JacobiResult jacobi_eigensolver(const SymmetricMatrix& a, int max_sweeps = 100);

/// Jacobi eigendecomposition with eigenvalues closer than `degeneracy_tol`
/// merged into one eigenspace. Default tolerance is 1e-8 times the spectral
/// range.
SpectralDecomposition numerical_spectrum(const SymmetricMatrix& a,
                                         std::optional<double> degeneracy_tol = std::nullopt);

/// |<i|Pi_k|j>| for every eigenspace k. Sites are 0-based.
std::vector<double> projector_overlaps(const SpectralDecomposition& dec, std::size_t i,
                                       std::size_t j);

}  // namespace spinring
