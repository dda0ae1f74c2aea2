#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "spinring/matrix.hpp"
#include "spinring/metric.hpp"

namespace spinring {

enum class ModelSpace { Spherical, Euclidean, Hyperbolic };
std::string_view to_string(ModelSpace s) noexcept;
ModelSpace parse_model_space(std::string_view s);

// ---------------------------------------------------------------------------
// Uniform complete graphs: Toeplitz and Cayley-Menger algebra

/// [arccos(-1/(n-1)) / w]^2, the largest sphere curvature admitting n
/// equidistant points at mutual geodesic distance w.
double kappa_max(int n, double w);

/// det of the k x k matrix with unit diagonal and constant off-diagonal c:
/// (1-c)^(k-1) ((k-1)c + 1).
double toeplitz_minor_closed_form(int k, double c);

/// t_1..t_kmax from t_{k+1} = (1-c) t_k + (1-c)^2 t_{k-1} - (1-c)^3 t_{k-2},
/// seeded with t_1 = 1, t_2 = 1 - c^2, t_3 = (1-c)^2 (2c+1).
std::vector<double> toeplitz_minor_recursion(int k_max, double c);

/// The k x k unit-diagonal constant-off-diagonal matrix itself.
SymmetricMatrix toeplitz_matrix(int k, double c);

struct ToeplitzSpectrum {
    double simple;        ///< (n-1)c + 1, eigenvector along (1, ..., 1)
    double repeated;      ///< 1 - c
    int repeated_multiplicity;  ///< n - 1
};

ToeplitzSpectrum toeplitz_eigenvalues(int n, double c);

/// Bordered matrix [[0, 1^T], [1, D∘D]] of size (n+1).
Matrix cayley_menger_matrix(const DistanceMatrix& d);

/// cm_m = det CM(D(1..m)) for m = 2..k_max points at uniform distance d.
/// m = 2, 3 by direct determinant; m >= 4 by the Schur-complement recursion
///   cm_m = -(m / (d^2 (m-1))) h_m,   h_m = -((m-1) d^2 / (m-2)) h_{m-1}
/// where h_m is the det of the m x m hollow matrix with off-diagonal d^2.
std::vector<double> cayley_menger_minors(double d_uniform, int k_max);

/// Same minors by direct LU determinants of the explicit bordered matrix.
std::vector<double> cayley_menger_minors_direct(double d_uniform, int k_max);

// ---------------------------------------------------------------------------
// Constant-curvature Gram criteria

enum class GramRegime { Spherical, Hyperbolic };

struct GramMatrix {
    double curvature;
    GramRegime regime;
    SymmetricMatrix entries;  ///< cos(sqrt(k) d) or cosh(sqrt(-k) d), unit diagonal
};

/// Throws InvalidArgs for kappa == 0, or for kappa > 0 with
/// sqrt(kappa) * max d > pi.
GramMatrix gram_matrix(const DistanceMatrix& d, double kappa);

/// Eigenvalues >= -rel_tol * lambda_max count as nonnegative, those above
/// rel_tol * lambda_max count toward the rank.
inline constexpr double kPsdRelTol = 1e-9;

struct SphericalVerdict {
    bool embeddable = false;
    bool diameter_ok = false;      ///< sqrt(kappa) * max d <= pi
    std::vector<double> gram_eigenvalues;  ///< ascending; empty if !diameter_ok
    int rank = 0;
    bool irreducible = false;      ///< rank < n: lives on a lower sphere
};

SphericalVerdict embeddable_spherical(const DistanceMatrix& d, double kappa,
                                      double rel_tol = kPsdRelTol);

struct MinorSignVerdict {
    bool embeddable = false;
    std::vector<double> minors;   ///< leading principal minors
    std::vector<int> signs;       ///< -1, 0 (numerically zero), +1
    bool degenerate = false;      ///< some minor vanished; decided by inertia
};

/// Leading minors of the cosh-Gram matrix must have sign (-1)^(k+1).
MinorSignVerdict embeddable_hyperbolic(const DistanceMatrix& d, double kappa);

/// Leading Cayley-Menger minors det CM(D(1..k)) must have sign (-1)^k,
/// k = 2..n. Reported minors start at k = 2.
MinorSignVerdict embeddable_euclidean(const DistanceMatrix& d);

struct EmbeddingResult {
    ModelSpace space = ModelSpace::Euclidean;
    double curvature = 0.0;
    int ambient_dim = 0;     ///< length of each coordinate vector
    int manifold_dim = 0;    ///< dimension of the sphere / flat / hyperbolic space used
    Matrix coordinates;      ///< one row per point
    double max_distortion = 0.0;
    bool irreducible = false;
};

/// Factorizes the relevant Gram matrix and places the points in the model
/// space, then re-measures all geodesic distances. Throws NotEmbeddable
/// when the criterion fails, FactorizationFailure when the distortion
/// exceeds tol * max(1, max d).
EmbeddingResult realize(const DistanceMatrix& d, ModelSpace space, double kappa = 0.0,
                        double tol = 1e-8);

/// Geodesic distance between two rows of an embedding.
double geodesic_distance(const EmbeddingResult& e, std::size_t i, std::size_t j);

struct FeasibilitySearch {
    std::optional<double> threshold;  ///< largest PSD-feasible kappa found
    double upper_bound = 0.0;         ///< pi^2 / max d^2
    bool monotone_on_samples = true;  ///< 16 interior probes agree with the threshold
    int iterations = 0;
};

/// Bisection for the largest kappa in (0, pi^2 / max d^2] at which the
/// spherical Gram matrix is PSD. Curvatures below 1e4 * rel_tol times the
/// upper bound are not searched: there the PSD test cannot tell any table
/// from a flat one.
FeasibilitySearch spherical_feasibility_threshold(const DistanceMatrix& d, int iterations = 60,
                                                  double rel_tol = kPsdRelTol);

// ---------------------------------------------------------------------------
// Ring-level report

struct KappaProbe {
    double kappa;
    SphericalVerdict verdict;
};

struct RingEmbeddingReport {
    RingSpec spec;
    RingClassification classification;
    DistanceMatrix distances;  ///< quotient when n is even
    int points = 0;
    /// Uniform rings: the common distance. Otherwise the mean edge weight.
    double edge_weight = 0.0;
    double min_edge_weight = 0.0;
    double max_edge_weight = 0.0;
    double kappa_max_value = 0.0;         ///< kappa_max(points, edge_weight)
    double kappa_max_for_min_weight = 0.0;
    double kappa_max_for_max_weight = 0.0;
    KappaProbe at_kappa_max;
    KappaProbe above_kappa_max;           ///< 1.01 * kappa_max
    FeasibilitySearch feasibility;
    std::optional<EmbeddingResult> spherical;  ///< at kappa_max (uniform) or the threshold
    MinorSignVerdict euclidean;
    MinorSignVerdict hyperbolic;          ///< at kappa = -1
};

RingEmbeddingReport ring_embedding_report(const RingSpec& spec);

}  // namespace spinring
