// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "spinring/embedding.hpp"
#include "spinring/error.hpp"
#include "spinring/hamiltonian.hpp"
#include "spinring/metric.hpp"
#include "spinring/spectral.hpp"
#include "spinring/verify.hpp"

using namespace spinring;

namespace {

struct Result {
    bool passed = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && passed) detail = what;
        passed = passed && cond;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

DistanceMatrix uniform_complete(std::size_t n, double w) {
    Matrix m(n, n, w);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 0.0;
    return DistanceMatrix::from_entries(m);
}

Result asymptotic_limit() {
    Result r;
    const auto t0 = Clock::now();
    double prev = INFINITY;
    double last = 0.0;
    for (int n : {101, 1009, 10007}) {
        const double d = -std::log(p_max_closed_form(n, 1));
        const double err = std::abs(d - asymptotic_distance());
        r.require(err < prev, "error not decreasing at n = " + std::to_string(n));
        prev = err;
        if (n == 10007) r.require(std::abs(d - 0.903160) <= 5e-3, "n = 10007 distance " + fmt(d));
        last = err;
    }
    r.require(std::abs(asymptotic_distance() - 2 * std::log(std::numbers::pi / 2)) < 1e-15, "limit value");
    const double secs = seconds_since(t0);
    r.require(secs < 1.0, "runtime " + fmt(secs) + " s");
    if (r.passed) r.detail = "error at n=10007: " + fmt(last) + ", " + fmt(secs) + " s";
    return r;
}

Result uniformity() {
    Result r;
    const auto t0 = Clock::now();
    for (int n = 3; n <= 199; ++n) {
        const RingKind kind = ring_kind(n);
        if (kind != RingKind::Prime && kind != RingKind::TwicePrime) continue;
        const RingClassification c = classify_ring(n, distance_matrix(RingSpec(n), n % 2 == 0));
        r.require(c.spread < 1e-10, "spread " + fmt(c.spread) + " at n = " + std::to_string(n));
    }
    for (int n : {9, 15, 21, 25, 27}) {
        const RingClassification c = classify_ring(n, distance_matrix(RingSpec(n), false));
        bool separated = false;
        for (std::size_t k = 1; k < c.distinct_values.size(); ++k)
            separated = separated || c.distinct_values[k] - c.distinct_values[k - 1] > 1e-4;
        r.require(c.distinct_values.size() >= 2 && separated, "composite n = " + std::to_string(n) + " looks uniform");
    }
    const double secs = seconds_since(t0);
    r.require(secs < 5.0, "runtime " + fmt(secs) + " s");
    if (r.passed) r.detail = fmt(secs) + " s";
    return r;
}

Result metric_axioms() {
    Result r;
    const auto t0 = Clock::now();
    for (int n = 3; n <= 99; n += 2) {
        const MetricReport m = check_metric_axioms(distance_matrix(RingSpec(n), false));
        r.require(m.exhaustive && m.classification == MetricClass::Metric, "odd n = " + std::to_string(n));
    }
    for (int n = 4; n <= 98; n += 2) {
        const MetricReport semi = check_metric_axioms(distance_matrix(RingSpec(n), false));
        bool antipodal_only = semi.separation_violations.size() == static_cast<std::size_t>(n / 2);
        for (const auto& v : semi.separation_violations) antipodal_only = antipodal_only && v.j - v.i == static_cast<std::size_t>(n / 2);
        r.require(semi.identity_ok && semi.symmetry_ok && semi.triangle_ok && antipodal_only &&
                      semi.classification == MetricClass::SemiMetricAntipodal,
                  "even n = " + std::to_string(n) + " unquotiented");
        const MetricReport q = check_metric_axioms(distance_matrix(RingSpec(n), true));
        r.require(q.classification == MetricClass::Metric, "even n = " + std::to_string(n) + " quotient");
    }
    const double secs = seconds_since(t0);
    r.require(secs < 60.0, "runtime " + fmt(secs) + " s");
    if (r.passed) r.detail = fmt(secs) + " s";
    return r;
}

Result coupling_equivalence() {
    Result r;
    double worst = 0.0;
    for (int n = 3; n <= 64; ++n) {
        const RingSpec xx(n), hb(n, Coupling::Heisenberg);
        const DistanceMatrix a = distance_matrix(xx, numerical_spectrum(build_single_excitation_hamiltonian(xx)), false);
        const DistanceMatrix b = distance_matrix(hb, numerical_spectrum(build_single_excitation_hamiltonian(hb)), false);
        worst = std::max(worst, max_abs_difference(a.entries(), b.entries()));
    }
    r.require(worst <= 1e-10, "distance deviation " + fmt(worst));
    double restriction = 0.0;
    for (int n = 3; n <= 10; ++n)
        for (Coupling c : {Coupling::XX, Coupling::Heisenberg}) {
            try {
                const RestrictionReport rep = verify_subspace_restriction(RingSpec(n, c), 1e-12);
                restriction = std::max({restriction, rep.max_abs_deviation, rep.max_sector_leakage});
            } catch (const RestrictionMismatch& e) {
                r.require(false, e.what());
            }
        }
    r.require(restriction <= 1e-12, "restriction deviation " + fmt(restriction));
    if (r.passed) r.detail = "distances " + fmt(worst) + ", restriction " + fmt(restriction);
    return r;
}

Result oracle_equivalence() {
    Result r;
    double worst = 0.0;
    for (int n = 3; n <= 64; ++n) {
        const SpectralDecomposition dec = numerical_spectrum(build_single_excitation_hamiltonian(RingSpec(n)));
        for (int m = 0; m <= n / 2; ++m)
            worst = std::max(worst, std::abs(p_max_closed_form(n, m) - p_max(dec, 0, static_cast<std::size_t>(m))));
    }
    r.require(worst <= 1e-9, "max deviation " + fmt(worst));
    if (r.passed) r.detail = "max deviation " + fmt(worst);
    return r;
}

Result time_domain_bound() {
    Result r;
    std::mt19937_64 rng(0);
    double worst_excess = -INFINITY;
    double n3_ratio = 0.0;
    for (int n : {3, 4, 5, 7, 8}) {
        const RingSpec spec(n);
        const double h = spec.subspace_coupling();
        const double t_end = 50.0 / h;
        std::uniform_real_distribution<double> u(0.0, t_end);
        std::vector<double> grid(10'000);
        for (std::size_t k = 0; k < grid.size(); ++k)
            grid[k] = k % 2 == 0 ? t_end * static_cast<double>(k) / (grid.size() - 1) : u(rng);
        const SpectralDecomposition dec = circulant_spectrum(spec);
        for (int j = 1; j < n; ++j) {
            const TimeSeries ts = transfer_probability_time_series(dec, 0, static_cast<std::size_t>(j), grid);
            worst_excess = std::max(worst_excess, ts.max_excess);
            if (n == 3 && j == 1) {
                n3_ratio = ts.grid_max / ts.p_max;
                r.require(std::abs(ts.p_max - 4.0 / 9.0) < 1e-12, "n = 3 p_max");
                const double t_star = std::numbers::pi / (3 * h);
                std::size_t nearest = 0;
                for (std::size_t k = 1; k < grid.size(); ++k)
                    if (std::abs(grid[k] - t_star) < std::abs(grid[nearest] - t_star)) nearest = k;
                r.require(ts.probability[nearest] >= 0.999 * ts.p_max, "n = 3 grid value near pi/(3h) below 0.999 p_max");
            }
        }
    }
    r.require(worst_excess <= 1e-10, "p(t) - p_max reached " + fmt(worst_excess));
    r.require(n3_ratio >= 0.999, "n = 3 grid max ratio " + fmt(n3_ratio));
    if (r.passed) r.detail = "max excess " + fmt(worst_excess) + ", n=3 ratio " + fmt(n3_ratio);
    return r;
}

Result toeplitz() {
    Result r;
    double worst = 0.0;
    for (double c : {-0.9, -0.25, 0.0, 0.3, 0.5, 0.99}) {
        const auto rec = toeplitz_minor_recursion(12, c);
        for (int k = 1; k <= 12; ++k) {
            const double closed = toeplitz_minor_closed_form(k, c);
            const double direct = determinant(toeplitz_matrix(k, c).dense());
            const double scale = std::abs(closed);
            const double tol = std::max(1e-10 * scale, 1e-14);
            const double dev = std::max(std::abs(rec[k - 1] - closed), std::abs(direct - closed));
            r.require(dev <= tol, "k = " + std::to_string(k) + ", c = " + fmt(c));
            if (scale > 1e-14) worst = std::max(worst, dev / scale);
        }
    }
    double eig = 0.0;
    for (double c : {-0.9, -0.25, 0.0, 0.3, 0.5, 0.99})
        for (int n = 2; n <= 32; ++n) {
            const ToeplitzSpectrum ts = toeplitz_eigenvalues(n, c);
            std::vector<double> expected(static_cast<std::size_t>(n - 1), ts.repeated);
            expected.push_back(ts.simple);
            std::sort(expected.begin(), expected.end());
            const auto got = jacobi_eigensolver(toeplitz_matrix(n, c)).eigenvalues;
            for (std::size_t k = 0; k < got.size(); ++k) eig = std::max(eig, std::abs(got[k] - expected[k]));
        }
    r.require(eig <= 1e-9, "eigenvalue deviation " + fmt(eig));
    if (r.passed) r.detail = "minors rel " + fmt(worst) + ", eigenvalues " + fmt(eig);
    return r;
}

Result cayley_menger() {
    Result r;
    double worst = 0.0;
    for (double d : {0.5, 1.0, 2.0}) {
        const auto rec = cayley_menger_minors(d, 10);
        const auto dir = cayley_menger_minors_direct(d, 10);
        for (std::size_t idx = 0; idx < dir.size(); ++idx) {
            const int k = static_cast<int>(idx) + 2;
            r.require(dir[idx] * (k % 2 == 0 ? 1.0 : -1.0) > 0.0, "sign at k = " + std::to_string(k));
            if (k >= 4) worst = std::max(worst, std::abs(rec[idx] - dir[idx]) / std::abs(dir[idx]));
        }
    }
    r.require(worst <= 1e-10, "recursion deviation " + fmt(worst));
    if (r.passed) r.detail = "recursion rel " + fmt(worst);
    return r;
}

Result embedding_boundary() {
    Result r;
    double worst = 0.0;
    for (std::size_t n = 3; n <= 10; ++n) {
        const double w = 1.0;
        const double km = kappa_max(static_cast<int>(n), w);
        const DistanceMatrix d = uniform_complete(n, w);
        const FeasibilitySearch f = spherical_feasibility_threshold(d);
        if (!f.threshold) {
            r.require(false, "no threshold at n = " + std::to_string(n));
            continue;
        }
        const double rel = std::abs(*f.threshold - km) / km;
        worst = std::max(worst, rel);
        r.require(rel <= 1e-9, "threshold off by " + fmt(rel) + " at n = " + std::to_string(n));
        const int rank = embeddable_spherical(d, *f.threshold).rank;
        r.require(rank == static_cast<int>(n) - 1, "rank " + std::to_string(rank) + " at n = " + std::to_string(n));
    }
    if (r.passed) r.detail = "threshold rel error " + fmt(worst);
    return r;
}

Result realization() {
    Result r;
    try {
        const DistanceMatrix d5 = distance_matrix(RingSpec(5), false);
        const EmbeddingResult e5 = realize(d5, ModelSpace::Spherical, kappa_max(5, d5(0, 1)));
        r.require(e5.ambient_dim == 4 && e5.max_distortion < 1e-8, "n = 5 spherical");

        const DistanceMatrix d10 = distance_matrix(RingSpec(10), true);
        const EmbeddingResult e10 = realize(d10, ModelSpace::Spherical, kappa_max(5, d10(0, 1)));
        const EmbeddingResult k5 = realize(uniform_complete(5, d10(0, 1)), ModelSpace::Spherical, kappa_max(5, d10(0, 1)));
        r.require(d10.size() == 5 && e10.ambient_dim == k5.ambient_dim && e10.max_distortion < 1e-8 &&
                      max_abs_difference(d10.entries(), uniform_complete(5, d10(0, 1)).entries()) < 1e-12,
                  "n = 10 quotient is not K_5");

        const EmbeddingResult e7 = realize(distance_matrix(RingSpec(7), false), ModelSpace::Euclidean);
        r.require(e7.ambient_dim == 6 && e7.max_distortion < 1e-8, "n = 7 Euclidean");
        if (r.passed)
            r.detail = "distortions " + fmt(e5.max_distortion) + ", " + fmt(e10.max_distortion) + ", " +
                       fmt(e7.max_distortion);
    } catch (const Error& e) {
        r.require(false, e.what());
    }
    return r;
}

Result variance_sweep() {
    Result r;
    const auto rows = distance_variance_sweep(3, 200);
    double low = 0.0, high = 0.0;
    for (const auto& row : rows) {
        const bool uniform_kind = row.kind == RingKind::Prime || row.kind == RingKind::TwicePrime;
        if (uniform_kind)
            r.require(row.variance == 0.0, "nonzero variance at n = " + std::to_string(row.n));
        else
            r.require(row.variance > 0.0, "zero variance at composite n = " + std::to_string(row.n));
        if (row.n < 50) low = std::max(low, row.variance);
        if (row.n >= 100) high = std::max(high, row.variance);
    }
    r.require(high < low, "tail max " + fmt(high) + " not below head max " + fmt(low));
    if (r.passed) r.detail = "max n<50 " + fmt(low) + ", max n>=100 " + fmt(high);
    return r;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
        {"asymptotic limit", asymptotic_limit},
        {"uniformity for p and 2p", uniformity},
        {"metric axioms", metric_axioms},
        {"coupling equivalence", coupling_equivalence},
        {"oracle equivalence", oracle_equivalence},
        {"time-domain bound", time_domain_bound},
        {"Toeplitz minors and eigenvalues", toeplitz},
        {"Cayley-Menger minors", cayley_menger},
        {"spherical embedding boundary", embedding_boundary},
        {"realization round-trip", realization},
        {"variance sweep", variance_sweep},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Result res;
        try {
            res = criteria[k].second();
        } catch (const std::exception& e) {
            res.passed = false;
            res.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s %2zu %s: %s\n", res.passed ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                    res.detail.c_str());
        failed += !res.passed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
