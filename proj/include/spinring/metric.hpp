#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "spinring/hamiltonian.hpp"
#include "spinring/matrix.hpp"
#include "spinring/spectral.hpp"

namespace spinring {

/// Maximum transition probability (information transfer capacity)
///   p_max(i, j) = ( sum_k |<i|Pi_k|j>| )^2
/// Sites are 0-based.
double p_max(const SpectralDecomposition& dec, std::size_t i, std::size_t j);

/// sqrt(p_max) for a ring of n spins at ring separation m, from the summed
/// cosine formula. Requires n >= 3 and 0 <= m <= n/2.
double sqrt_p_max_closed_form(int n, int separation);
double p_max_closed_form(int n, int separation);

/// Symmetric distance matrix d(i,j) = -log p_max(i,j), optionally on the
/// antipodal quotient of an even ring.
class DistanceMatrix {
public:
    /// Wraps an arbitrary distance table. Throws InvalidArgs unless `entries`
    /// is square, symmetric, nonnegative and has a zero diagonal.
    static DistanceMatrix from_entries(const Matrix& entries);

    DistanceMatrix(Matrix entries, Matrix capacity, bool quotiented, std::optional<RingSpec> source);

    std::size_t size() const noexcept { return entries_.rows(); }
    double operator()(std::size_t i, std::size_t j) const noexcept { return entries_(i, j); }
    const Matrix& entries() const noexcept { return entries_; }
    /// p_max for each pair (exp(-d) when built from raw entries).
    const Matrix& capacity() const noexcept { return capacity_; }
    bool quotiented() const noexcept { return quotiented_; }
    const std::optional<RingSpec>& source_spec() const noexcept { return source_; }

    /// Off-diagonal entries, upper triangle, row-major.
    std::vector<double> off_diagonal() const;
    double max_entry() const noexcept { return entries_.max_abs(); }

private:
    Matrix entries_;
    Matrix capacity_;
    bool quotiented_ = false;
    std::optional<RingSpec> source_;
};

/// Distances from the closed-form circulant eigenprojectors. With
/// `quotient`, the points are the antipodal classes [j] = {j, j + n/2},
/// represented by j = 0..n/2-1. Throws QuotientOnOddRing for odd n.
DistanceMatrix distance_matrix(const RingSpec& spec, bool quotient);

/// Same, from an arbitrary decomposition of the ring Hamiltonian.
DistanceMatrix distance_matrix(const RingSpec& spec, const SpectralDecomposition& dec, bool quotient);

enum class MetricClass { Metric, SemiMetricAntipodal, NotSemiMetric };
std::string_view to_string(MetricClass c) noexcept;

struct PairViolation {
    std::size_t i, j;
    double magnitude;
};

struct TripleViolation {
    std::size_t i, j, k;
    double slack;  ///< d(i,j) - d(i,k) - d(k,j), > tolerance
};

struct MetricReport {
    bool identity_ok = true;
    bool symmetry_ok = true;
    bool triangle_ok = true;
    bool separation_ok = true;
    std::vector<PairViolation> identity_violations;
    std::vector<PairViolation> symmetry_violations;
    std::vector<PairViolation> separation_violations;
    std::vector<TripleViolation> triangle_violations;
    std::uint64_t triples_checked = 0;
    bool exhaustive = true;
    double worst_triangle_slack = 0.0;  ///< max over checked triples
    MetricClass classification = MetricClass::Metric;
};

struct MetricCheckOptions {
    double tolerance = 1e-10;
    std::size_t exhaustive_limit = 200;  ///< above this, sample triples
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::size_t max_recorded = 1000;  ///< per violation kind
};

MetricReport check_metric_axioms(const DistanceMatrix& d, const MetricCheckOptions& opt = {});

/// max over triples of sqrt(p(l,m)) sqrt(p(m,n)) - sqrt(p(l,n)); the
/// multiplicative form of the triangle inequality holds when <= tolerance.
double multiplicative_triangle_excess(const DistanceMatrix& d);

enum class RingKind { Prime, TwicePrime, OddComposite, TwiceComposite };
std::string_view to_string(RingKind k) noexcept;

bool is_prime(std::uint64_t n) noexcept;
RingKind ring_kind(int n);

struct RingClassification {
    RingKind kind = RingKind::Prime;
    bool uniform = false;
    std::vector<double> distinct_values;  ///< ascending, merged within 1e-10
    /// kind is Prime/TwicePrime exactly when the distances are uniform.
    bool matches_prime_rule = false;
    double spread = 0.0;  ///< max - min off-diagonal distance
};

/// Sorted distinct values with neighbours within `tol` merged.
std::vector<double> distinct_values(std::span<const double> values, double tol = 1e-10);

/// Expects the quotient for even n.
RingClassification classify_ring(int n, const DistanceMatrix& d);

/// 2 log(pi/2), the large-ring limit of d(i, j) for non-antipodal i != j.
double asymptotic_distance() noexcept;

enum class QuotientPolicy { QuotientEven, Never };

struct VarianceRow {
    int n;
    RingKind kind = RingKind::Prime;
    bool quotiented;
    double variance;  ///< population variance of off-diagonal distances; 0 when they share one value
    std::size_t distinct_count;
};

/// Per-ring variance of the off-diagonal distance multiset, from the
/// closed-form sums.
std::vector<VarianceRow> distance_variance_sweep(int n_min, int n_max,
                                                 QuotientPolicy policy = QuotientPolicy::QuotientEven);

struct TimeSeries {
    std::vector<double> probability;
    double grid_max = 0.0;
    double argmax_time = 0.0;
    double p_max = 0.0;
    double max_excess = 0.0;  ///< max(p(t) - p_max), negative when bounded
};

/// p(t) = |<i| exp(-iHt) |j>|^2 on the caller's grid via the eigen-expansion.
TimeSeries transfer_probability_time_series(const RingSpec& spec, std::size_t i, std::size_t j,
                                            std::span<const double> times);
TimeSeries transfer_probability_time_series(const SpectralDecomposition& dec, std::size_t i,
                                            std::size_t j, std::span<const double> times);

}  // namespace spinring
