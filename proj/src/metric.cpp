#include "spinring/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <tuple>

#include "spinring/error.hpp"

namespace spinring {

double p_max(const SpectralDecomposition& dec, std::size_t i, std::size_t j) {
    double sum = 0.0;
    for (double o : projector_overlaps(dec, i, j)) sum += o;
    return sum * sum;
}

double sqrt_p_max_closed_form(int n, int separation) {
    if (n < 3) throw InvalidArgs("ring needs at least 3 spins");
    if (separation < 0 || separation > n / 2)
        throw InvalidArgs("separation must lie in [0, n/2]");
    // n = 2N'+1 or n = 2N'+2
    const int half = (n % 2 == 1) ? (n - 1) / 2 : (n - 2) / 2;
    double sum = 0.0;
    for (int k = 1; k <= half; ++k) {
        const long r = (static_cast<long>(k) * separation) % n;
        sum += std::abs(std::cos(2.0 * std::numbers::pi * static_cast<double>(r) / n));
    }
    const double base = (n % 2 == 1) ? 1.0 : 2.0;
    return (base + 2.0 * sum) / n;
}

double p_max_closed_form(int n, int separation) {
    const double s = sqrt_p_max_closed_form(n, separation);
    return s * s;
}

namespace {

double distance_from_capacity(double p) {
    // p may exceed 1 by rounding for coincident or antipodal points
    return std::max(0.0, -std::log(p));
}

}  // namespace

DistanceMatrix DistanceMatrix::from_entries(const Matrix& entries) {
    if (!entries.square()) throw InvalidArgs("distance matrix must be square");
    const std::size_t n = entries.rows();
    Matrix cap(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (entries(i, i) != 0.0) throw InvalidArgs("distance matrix diagonal must be zero");
        for (std::size_t j = 0; j < n; ++j) {
            if (entries(i, j) != entries(j, i)) throw InvalidArgs("distance matrix must be symmetric");
            if (!(entries(i, j) >= 0.0) || !std::isfinite(entries(i, j)))
                throw InvalidArgs("distances must be finite and nonnegative");
            cap(i, j) = std::exp(-entries(i, j));
        }
    }
    return DistanceMatrix(entries, std::move(cap), false, std::nullopt);
}

DistanceMatrix::DistanceMatrix(Matrix entries, Matrix capacity, bool quotiented,
                               std::optional<RingSpec> source)
    : entries_(std::move(entries)),
      capacity_(std::move(capacity)),
      quotiented_(quotiented),
      source_(std::move(source)) {}

std::vector<double> DistanceMatrix::off_diagonal() const {
    std::vector<double> v;
    const std::size_t n = size();
    v.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) v.push_back(entries_(i, j));
    return v;
}

DistanceMatrix distance_matrix(const RingSpec& spec, bool quotient) {
    return distance_matrix(spec, circulant_spectrum(spec), quotient);
}

DistanceMatrix distance_matrix(const RingSpec& spec, const SpectralDecomposition& dec, bool quotient) {
    const int n = spec.n();
    if (quotient && n % 2 != 0)
        throw QuotientOnOddRing("antipodal quotient needs an even ring, got n = " + std::to_string(n));
    if (dec.dim() != static_cast<std::size_t>(n))
        throw InvalidArgs("decomposition dimension does not match ring size");
    const std::size_t points = quotient ? static_cast<std::size_t>(n / 2) : static_cast<std::size_t>(n);
    Matrix d(points, points);
    Matrix cap(points, points);
    for (std::size_t i = 0; i < points; ++i) {
        cap(i, i) = 1.0;
        for (std::size_t j = i + 1; j < points; ++j) {
            const double p = p_max(dec, i, j);
            cap(i, j) = cap(j, i) = p;
            d(i, j) = d(j, i) = distance_from_capacity(p);
        }
    }
    return DistanceMatrix(std::move(d), std::move(cap), quotient, spec);
}

std::string_view to_string(MetricClass c) noexcept {
    switch (c) {
        case MetricClass::Metric: return "Metric";
        case MetricClass::SemiMetricAntipodal: return "SemiMetricAntipodal";
        case MetricClass::NotSemiMetric: return "NotSemiMetric";
    }
    return "?";
}

namespace {

struct TriangleScan {
    std::vector<TripleViolation> violations;
    std::uint64_t count = 0;
    std::uint64_t checked = 0;
    double worst = -std::numeric_limits<double>::infinity();
};

void scan_triples_for_rows(const Matrix& d, std::size_t row_begin, std::size_t row_step, double tol,
                           std::size_t max_recorded, TriangleScan& out) {
    const std::size_t n = d.rows();
    for (std::size_t i = row_begin; i < n; i += row_step)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                const double slack = d(i, j) - d(i, k) - d(k, j);
                ++out.checked;
                out.worst = std::max(out.worst, slack);
                if (slack > tol) {
                    ++out.count;
                    if (out.violations.size() < max_recorded) out.violations.push_back({i, j, k, slack});
                }
            }
}

}  // namespace

MetricReport check_metric_axioms(const DistanceMatrix& dm, const MetricCheckOptions& opt) {
    const Matrix& d = dm.entries();
    const std::size_t n = d.rows();
    const double tol = opt.tolerance;
    MetricReport r;

    auto record = [&](std::vector<PairViolation>& list, std::size_t i, std::size_t j, double m) {
        if (list.size() < opt.max_recorded) list.push_back({i, j, m});
    };

    std::size_t separation_failures = 0;
    bool failures_all_antipodal = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(d(i, i)) > tol) {
            r.identity_ok = false;
            record(r.identity_violations, i, i, std::abs(d(i, i)));
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            const double asym = std::abs(d(i, j) - d(j, i));
            if (asym > tol) {
                r.symmetry_ok = false;
                record(r.symmetry_violations, i, j, asym);
            }
            if (d(i, j) <= tol) {
                r.separation_ok = false;
                ++separation_failures;
                if (n % 2 != 0 || j - i != n / 2) failures_all_antipodal = false;
                record(r.separation_violations, i, j, d(i, j));
            }
        }
    }

    TriangleScan scan;
    if (n < 3) {
        // no triples
    } else if (n <= opt.exhaustive_limit) {
        const unsigned threads = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(n)));
        std::vector<TriangleScan> parts(threads);
        if (threads == 1) {
            scan_triples_for_rows(d, 0, 1, tol, opt.max_recorded, parts[0]);
        } else {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < threads; ++t)
                pool.emplace_back([&, t] { scan_triples_for_rows(d, t, threads, tol, opt.max_recorded, parts[t]); });
        }
        for (auto& p : parts) {
            scan.count += p.count;
            scan.checked += p.checked;
            scan.worst = std::max(scan.worst, p.worst);
            for (auto& v : p.violations)
                if (scan.violations.size() < opt.max_recorded) scan.violations.push_back(v);
        }
        std::sort(scan.violations.begin(), scan.violations.end(), [](const auto& a, const auto& b) {
            return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
        });
    } else {
        r.exhaustive = false;
        std::mt19937_64 rng(opt.seed);
        std::uniform_int_distribution<std::size_t> pick_i(0, n - 1), pick_j(0, n - 2), pick_k(0, n - 3);
        for (std::uint64_t s = 0; s < opt.samples; ++s) {
            // Uniform over ordered triples of distinct indices.
            const std::size_t i = pick_i(rng);
            std::size_t j = pick_j(rng);
            if (j >= i) ++j;
            std::size_t k = pick_k(rng);
            if (k >= std::min(i, j)) ++k;
            if (k >= std::max(i, j)) ++k;
            const double slack = d(i, j) - d(i, k) - d(k, j);
            ++scan.checked;
            scan.worst = std::max(scan.worst, slack);
            if (slack > tol) {
                ++scan.count;
                if (scan.violations.size() < opt.max_recorded) scan.violations.push_back({i, j, k, slack});
            }
        }
    }
    r.triangle_ok = scan.count == 0;
    r.triangle_violations = std::move(scan.violations);
    r.triples_checked = scan.checked;
    r.worst_triangle_slack = scan.checked > 0 ? scan.worst : 0.0;

    if (!r.identity_ok || !r.symmetry_ok || !r.triangle_ok) {
        r.classification = MetricClass::NotSemiMetric;
    } else if (r.separation_ok) {
        r.classification = MetricClass::Metric;
    } else if (failures_all_antipodal && separation_failures == n / 2) {
        r.classification = MetricClass::SemiMetricAntipodal;
    } else {
        r.classification = MetricClass::NotSemiMetric;
    }
    return r;
}

double multiplicative_triangle_excess(const DistanceMatrix& dm) {
    const Matrix& cap = dm.capacity();
    const std::size_t n = cap.rows();
    Matrix root(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) root(i, j) = std::sqrt(cap(i, j));
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < n; ++l)
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t k = 0; k < n; ++k)
                worst = std::max(worst, root(l, m) * root(m, k) - root(l, k));
    return worst;
}

std::string_view to_string(RingKind k) noexcept {
    switch (k) {
        case RingKind::Prime: return "Prime";
        case RingKind::TwicePrime: return "TwicePrime";
        case RingKind::OddComposite: return "OddComposite";
        case RingKind::TwiceComposite: return "TwiceComposite";
    }
    return "?";
}

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t f = 3; f * f <= n; f += 2)
        if (n % f == 0) return false;
    return true;
}

RingKind ring_kind(int n) {
    if (n < 3) throw InvalidSpec("ring needs at least 3 spins");
    if (n % 2 == 1) return is_prime(static_cast<std::uint64_t>(n)) ? RingKind::Prime : RingKind::OddComposite;
    return is_prime(static_cast<std::uint64_t>(n / 2)) ? RingKind::TwicePrime : RingKind::TwiceComposite;
}

std::vector<double> distinct_values(std::span<const double> values, double tol) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> out;
    for (double v : sorted)
        if (out.empty() || v - out.back() > tol) out.push_back(v);
    return out;
}

RingClassification classify_ring(int n, const DistanceMatrix& d) {
    if (n % 2 == 0 && !d.quotiented())
        throw InvalidArgs("classification of an even ring expects the antipodal quotient");
    RingClassification c;
    c.kind = ring_kind(n);
    const std::vector<double> off = d.off_diagonal();
    c.distinct_values = distinct_values(off);
    c.uniform = c.distinct_values.size() == 1;
    if (!off.empty()) {
        const auto [lo, hi] = std::minmax_element(off.begin(), off.end());
        c.spread = *hi - *lo;
    }
    const bool prime_like = c.kind == RingKind::Prime || c.kind == RingKind::TwicePrime;
    c.matches_prime_rule = prime_like == c.uniform;
    return c;
}

double asymptotic_distance() noexcept { return 2.0 * std::log(std::numbers::pi / 2.0); }

namespace {

double population_variance(std::span<const double> v) {
    if (v.empty()) return 0.0;
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    return var / static_cast<double>(v.size());
}

}  // namespace

std::vector<VarianceRow> distance_variance_sweep(int n_min, int n_max, QuotientPolicy policy) {
    if (n_min < 3 || n_max < n_min) throw InvalidArgs("sweep needs 3 <= n_min <= n_max");
    std::vector<VarianceRow> rows;
    for (int n = n_min; n <= n_max; ++n) {
        const bool quotient = policy == QuotientPolicy::QuotientEven && n % 2 == 0;
        // Every row of the (quotient) matrix holds the same multiset.
        const int last = quotient ? n / 2 - 1 : n - 1;
        std::vector<double> values;
        values.reserve(static_cast<std::size_t>(std::max(last, 0)));
        for (int m = 1; m <= last; ++m)
            values.push_back(distance_from_capacity(p_max_closed_form(n, std::min(m, n - m))));
        const std::size_t distinct = distinct_values(values).size();
        // A single distinct value (within the merge tolerance) is a uniform
        // multiset; rounding noise would otherwise show up as ~1e-32.
        rows.push_back({n, ring_kind(n), quotient, distinct <= 1 ? 0.0 : population_variance(values), distinct});
    }
    return rows;
}

TimeSeries transfer_probability_time_series(const RingSpec& spec, std::size_t i, std::size_t j,
                                            std::span<const double> times) {
    return transfer_probability_time_series(circulant_spectrum(spec), i, j, times);
}

TimeSeries transfer_probability_time_series(const SpectralDecomposition& dec, std::size_t i,
                                            std::size_t j, std::span<const double> times) {
    if (i >= dec.dim() || j >= dec.dim()) throw IndexOutOfRange("site index out of range");
    TimeSeries ts;
    ts.p_max = p_max(dec, i, j);
    ts.probability.reserve(times.size());
    ts.max_excess = -std::numeric_limits<double>::infinity();
    for (double t : times) {
        if (!(t >= 0.0)) throw InvalidArgs("time samples must be nonnegative");
        double re = 0.0, im = 0.0;
        for (const auto& s : dec.eigenspaces()) {
            const double a = s.projector(i, j);
            re += std::cos(s.eigenvalue * t) * a;
            im -= std::sin(s.eigenvalue * t) * a;
        }
        const double p = re * re + im * im;
        ts.probability.push_back(p);
        if (p > ts.grid_max || ts.probability.size() == 1) {
            ts.grid_max = p;
            ts.argmax_time = t;
        }
        ts.max_excess = std::max(ts.max_excess, p - ts.p_max);
    }
    if (times.empty()) ts.max_excess = 0.0;
    return ts;
}

}  // namespace spinring
