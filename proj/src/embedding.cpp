#include "spinring/embedding.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "spinring/error.hpp"
#include "spinring/spectral.hpp"

namespace spinring {

std::string_view to_string(ModelSpace s) noexcept {
    switch (s) {
        case ModelSpace::Spherical: return "spherical";
        case ModelSpace::Euclidean: return "euclidean";
        case ModelSpace::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

ModelSpace parse_model_space(std::string_view s) {
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (lower == "spherical") return ModelSpace::Spherical;
    if (lower == "euclidean") return ModelSpace::Euclidean;
    if (lower == "hyperbolic") return ModelSpace::Hyperbolic;
    throw InvalidArgs("unknown model space '" + std::string(s) + "'");
}

double kappa_max(int n, double w) {
    if (n < 2) throw InvalidArgs("kappa_max needs n >= 2");
    if (!(w > 0.0)) throw InvalidArgs("edge weight must be positive");
    const double angle = std::acos(-1.0 / (n - 1));
    return (angle / w) * (angle / w);
}

double toeplitz_minor_closed_form(int k, double c) {
    if (k < 1) throw InvalidArgs("Toeplitz minor order must be >= 1");
    return std::pow(1.0 - c, k - 1) * ((k - 1) * c + 1.0);
}

std::vector<double> toeplitz_minor_recursion(int k_max, double c) {
    if (k_max < 3) throw InvalidArgs("recursion needs k_max >= 3");
    const double u = 1.0 - c;
    std::vector<double> t{1.0, 1.0 - c * c, u * u * (2.0 * c + 1.0)};
    t.reserve(static_cast<std::size_t>(k_max));
    while (t.size() < static_cast<std::size_t>(k_max)) {
        const std::size_t k = t.size() - 1;  // t[k] is t_{k+1}
        t.push_back(u * t[k] + u * u * t[k - 1] - u * u * u * t[k - 2]);
    }
    return t;
}

SymmetricMatrix toeplitz_matrix(int k, double c) {
    if (k < 1) throw InvalidArgs("Toeplitz matrix order must be >= 1");
    SymmetricMatrix t(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j) t.set(i, j, i == j ? 1.0 : c);
    return t;
}

ToeplitzSpectrum toeplitz_eigenvalues(int n, double c) {
    if (n < 2) throw InvalidArgs("Toeplitz eigenvalues need n >= 2");
    return {(n - 1) * c + 1.0, 1.0 - c, n - 1};
}

Matrix cayley_menger_matrix(const DistanceMatrix& d) {
    const std::size_t n = d.size();
    Matrix cm(n + 1, n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        cm(0, i) = cm(i, 0) = 1.0;
        for (std::size_t j = 1; j <= n; ++j) cm(i, j) = d(i - 1, j - 1) * d(i - 1, j - 1);
    }
    return cm;
}

namespace {

void check_cm_args(double d, int k_max) {
    if (!(d > 0.0)) throw InvalidArgs("uniform distance must be positive");
    if (k_max < 3) throw InvalidArgs("Cayley-Menger minors need k_max >= 3");
}

Matrix uniform_cayley_menger(double d, int points) {
    Matrix cm(points + 1, points + 1);
    for (int i = 1; i <= points; ++i) {
        cm(0, i) = cm(i, 0) = 1.0;
        for (int j = 1; j <= points; ++j) cm(i, j) = i == j ? 0.0 : d * d;
    }
    return cm;
}

}  // namespace

std::vector<double> cayley_menger_minors_direct(double d_uniform, int k_max) {
    check_cm_args(d_uniform, k_max);
    std::vector<double> out;
    for (int m = 2; m <= k_max; ++m) out.push_back(determinant(uniform_cayley_menger(d_uniform, m)));
    return out;
}

std::vector<double> cayley_menger_minors(double d_uniform, int k_max) {
    check_cm_args(d_uniform, k_max);
    const double d2 = d_uniform * d_uniform;
    std::vector<double> out;
    // Base cases: the recursion's denominators vanish at these sizes.
    out.push_back(determinant(uniform_cayley_menger(d_uniform, 2)));
    out.push_back(determinant(uniform_cayley_menger(d_uniform, 3)));
    // hollow_m = det of the m x m matrix with zero diagonal and d^2 elsewhere
    double hollow = -d2 * d2;  // m = 2
    for (int m = 3; m <= k_max; ++m) {
        hollow = -((m - 1) * d2 / (m - 2)) * hollow;
        if (m >= 4) out.push_back(-(m / (d2 * (m - 1))) * hollow);
    }
    return out;
}

GramMatrix gram_matrix(const DistanceMatrix& d, double kappa) {
    if (kappa == 0.0 || !std::isfinite(kappa)) throw InvalidArgs("Gram matrix needs nonzero finite curvature");
    const std::size_t n = d.size();
    GramMatrix g{kappa, kappa > 0 ? GramRegime::Spherical : GramRegime::Hyperbolic, SymmetricMatrix(n)};
    const double root = std::sqrt(std::abs(kappa));
    if (kappa > 0 && root * d.max_entry() > std::numbers::pi * (1.0 + 1e-12))
        throw InvalidArgs("spherical Gram matrix needs sqrt(kappa) * max d <= pi");
    for (std::size_t i = 0; i < n; ++i) {
        g.entries.set(i, i, 1.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double x = root * d(i, j);
            g.entries.set(i, j, kappa > 0 ? std::cos(x) : std::cosh(x));
        }
    }
    return g;
}

SphericalVerdict embeddable_spherical(const DistanceMatrix& d, double kappa, double rel_tol) {
    if (!(kappa > 0.0)) throw InvalidArgs("spherical embedding needs kappa > 0");
    SphericalVerdict v;
    v.diameter_ok = std::sqrt(kappa) * d.max_entry() <= std::numbers::pi * (1.0 + 1e-12);
    if (!v.diameter_ok) return v;
    const GramMatrix g = gram_matrix(d, kappa);
    v.gram_eigenvalues = jacobi_eigensolver(g.entries).eigenvalues;
    const double top = v.gram_eigenvalues.back();
    v.embeddable = v.gram_eigenvalues.front() >= -rel_tol * top;
    v.rank = static_cast<int>(std::count_if(v.gram_eigenvalues.begin(), v.gram_eigenvalues.end(),
                                            [&](double e) { return e > rel_tol * top; }));
    v.irreducible = v.embeddable && v.rank < static_cast<int>(d.size());
    return v;
}

namespace {

int numerical_sign(double value, double scale) {
    if (std::abs(value) <= 1e-10 * scale) return 0;
    return value > 0 ? 1 : -1;
}

// Signs of leading minors k = first..n of `m` against expected(k).
template <class Expected>
MinorSignVerdict minor_sign_test(const Matrix& m, std::size_t first, Expected expected) {
    MinorSignVerdict v;
    bool wrong = false;
    for (std::size_t k = first; k <= m.rows(); ++k) {
        const double det = determinant(m.leading_block(k));
        const int s = numerical_sign(det, hadamard_bound(m, k));
        v.minors.push_back(det);
        v.signs.push_back(s);
        if (s == 0)
            v.degenerate = true;
        else if (s != expected(k))
            wrong = true;
    }
    v.embeddable = !wrong;
    return v;
}

// Classical multidimensional scaling kernel -1/2 J (D∘D) J.
SymmetricMatrix centered_squared_distances(const DistanceMatrix& d) {
    const std::size_t n = d.size();
    Matrix sq(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) sq(i, j) = d(i, j) * d(i, j);
    std::vector<double> row_mean(n, 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) row_mean[i] += sq(i, j);
        total += row_mean[i];
        row_mean[i] /= static_cast<double>(n);
    }
    total /= static_cast<double>(n * n);
    SymmetricMatrix b(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            b.set(i, j, -0.5 * (sq(i, j) - row_mean[i] - row_mean[j] + total));
    return b;
}

}  // namespace

MinorSignVerdict embeddable_hyperbolic(const DistanceMatrix& d, double kappa) {
    if (!(kappa < 0.0)) throw InvalidArgs("hyperbolic embedding needs kappa < 0");
    const GramMatrix g = gram_matrix(d, kappa);
    MinorSignVerdict v = minor_sign_test(g.entries.dense(), 1, [](std::size_t k) { return k % 2 == 1 ? 1 : -1; });
    if (v.embeddable && v.degenerate) {
        // Exactly one positive eigenvalue, the rest nonpositive.
        const auto eig = jacobi_eigensolver(g.entries).eigenvalues;
        const double top = eig.back();
        const auto positive = std::count_if(eig.begin(), eig.end(), [&](double e) { return e > kPsdRelTol * top; });
        v.embeddable = positive == 1;
    }
    return v;
}

MinorSignVerdict embeddable_euclidean(const DistanceMatrix& d) {
    const Matrix cm = cayley_menger_matrix(d);
    // Block of size k+1 holds k points; sign must be (-1)^k.
    MinorSignVerdict v = minor_sign_test(cm, 3, [](std::size_t size) { return (size - 1) % 2 == 0 ? 1 : -1; });
    if (v.embeddable && v.degenerate) {
        const auto eig = jacobi_eigensolver(centered_squared_distances(d)).eigenvalues;
        const double top = std::max(eig.back(), 0.0);
        v.embeddable = eig.front() >= -kPsdRelTol * std::max(top, 1e-300);
    }
    return v;
}

namespace {

double distortion(const EmbeddingResult& e, const DistanceMatrix& d) {
    double worst = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j)
            worst = std::max(worst, std::abs(geodesic_distance(e, i, j) - d(i, j)));
    return worst;
}

EmbeddingResult realize_spherical(const DistanceMatrix& d, double kappa) {
    const SphericalVerdict verdict = embeddable_spherical(d, kappa);
    if (!verdict.embeddable) throw NotEmbeddable("Gram matrix is not positive semidefinite at this curvature");
    const GramMatrix g = gram_matrix(d, kappa);
    const JacobiResult eig = jacobi_eigensolver(g.entries);
    const std::size_t n = d.size();
    const double top = eig.eigenvalues.back();
    const double radius = 1.0 / std::sqrt(kappa);

    std::vector<std::size_t> kept;
    for (std::size_t c = n; c-- > 0;)
        if (eig.eigenvalues[c] > kPsdRelTol * top) kept.push_back(c);

    EmbeddingResult e;
    e.space = ModelSpace::Spherical;
    e.curvature = kappa;
    e.ambient_dim = static_cast<int>(kept.size());
    e.manifold_dim = e.ambient_dim - 1;
    e.coordinates = Matrix(n, kept.size());
    for (std::size_t i = 0; i < n; ++i) {
        double norm2 = 0.0;
        for (std::size_t a = 0; a < kept.size(); ++a) {
            const std::size_t c = kept[a];
            e.coordinates(i, a) = std::sqrt(eig.eigenvalues[c]) * eig.eigenvectors(i, c);
            norm2 += e.coordinates(i, a) * e.coordinates(i, a);
        }
        const double scale = radius / std::sqrt(norm2);
        for (std::size_t a = 0; a < kept.size(); ++a) e.coordinates(i, a) *= scale;
    }
    e.irreducible = e.ambient_dim < static_cast<int>(n);
    return e;
}

EmbeddingResult realize_euclidean(const DistanceMatrix& d) {
    if (!embeddable_euclidean(d).embeddable) throw NotEmbeddable("Cayley-Menger sign test failed");
    const std::size_t n = d.size();
    const JacobiResult eig = jacobi_eigensolver(centered_squared_distances(d));
    const double top = std::max(eig.eigenvalues.back(), 0.0);
    std::vector<std::size_t> kept;
    for (std::size_t c = n; c-- > 0;)
        if (top > 0.0 && eig.eigenvalues[c] > kPsdRelTol * top) kept.push_back(c);

    EmbeddingResult e;
    e.space = ModelSpace::Euclidean;
    e.curvature = 0.0;
    e.ambient_dim = e.manifold_dim = static_cast<int>(kept.size());
    e.coordinates = Matrix(n, kept.size());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t a = 0; a < kept.size(); ++a)
            e.coordinates(i, a) = std::sqrt(eig.eigenvalues[kept[a]]) * eig.eigenvectors(i, kept[a]);
    e.irreducible = n >= 1 && e.manifold_dim == static_cast<int>(n) - 1;
    return e;
}

EmbeddingResult realize_hyperbolic(const DistanceMatrix& d, double kappa) {
    if (!embeddable_hyperbolic(d, kappa).embeddable) throw NotEmbeddable("hyperbolic minor sign test failed");
    const GramMatrix g = gram_matrix(d, kappa);
    const JacobiResult eig = jacobi_eigensolver(g.entries);
    const std::size_t n = d.size();
    const std::size_t lead = n - 1;
    const double top = eig.eigenvalues[lead];
    const double radius = 1.0 / std::sqrt(-kappa);

    std::vector<std::size_t> spatial;
    for (std::size_t c = 0; c < lead; ++c)
        if (eig.eigenvalues[c] < -kPsdRelTol * top) spatial.push_back(c);

    EmbeddingResult e;
    e.space = ModelSpace::Hyperbolic;
    e.curvature = kappa;
    e.manifold_dim = static_cast<int>(spatial.size());
    e.ambient_dim = e.manifold_dim + 1;
    e.coordinates = Matrix(n, spatial.size() + 1);
    for (std::size_t i = 0; i < n; ++i) {
        double space2 = 0.0;
        for (std::size_t a = 0; a < spatial.size(); ++a) {
            const std::size_t c = spatial[a];
            const double x = radius * std::sqrt(-eig.eigenvalues[c]) * eig.eigenvectors(i, c);
            e.coordinates(i, a + 1) = x;
            space2 += x * x;
        }
        // Time coordinate on the upper sheet <x, x> = -radius^2.
        e.coordinates(i, 0) = std::sqrt(radius * radius + space2);
    }
    e.irreducible = e.manifold_dim == static_cast<int>(n) - 1;
    return e;
}

}  // namespace

double geodesic_distance(const EmbeddingResult& e, std::size_t i, std::size_t j) {
    // Chord-length forms stay accurate for nearby points, where acos and
    // acosh of an inner product lose half the digits.
    const Matrix& x = e.coordinates;
    const std::size_t dim = x.cols();
    double chord2 = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
        const double diff = x(i, a) - x(j, a);
        chord2 += (e.space == ModelSpace::Hyperbolic && a == 0 ? -1.0 : 1.0) * diff * diff;
    }
    chord2 = std::max(chord2, 0.0);
    switch (e.space) {
        case ModelSpace::Euclidean:
            return std::sqrt(chord2);
        case ModelSpace::Spherical: {
            const double r = 1.0 / std::sqrt(e.curvature);
            return 2.0 * r * std::asin(std::min(1.0, std::sqrt(chord2) / (2.0 * r)));
        }
        case ModelSpace::Hyperbolic: {
            const double r = 1.0 / std::sqrt(-e.curvature);
            return 2.0 * r * std::asinh(std::sqrt(chord2) / (2.0 * r));
        }
    }
    return 0.0;
}

EmbeddingResult realize(const DistanceMatrix& d, ModelSpace space, double kappa, double tol) {
    if (d.size() == 0) throw InvalidArgs("cannot embed an empty point set");
    EmbeddingResult e;
    e.space = space;
    e.curvature = 0.0;
    switch (space) {
        case ModelSpace::Spherical:
            if (!(kappa > 0.0)) throw InvalidArgs("spherical realization needs kappa > 0");
            e = realize_spherical(d, kappa);
            break;
        case ModelSpace::Euclidean:
            e = realize_euclidean(d);
            break;
        case ModelSpace::Hyperbolic:
            if (!(kappa < 0.0)) throw InvalidArgs("hyperbolic realization needs kappa < 0");
            e = realize_hyperbolic(d, kappa);
            break;
    }
    e.max_distortion = distortion(e, d);
    const double allowed = tol * std::max(1.0, d.max_entry());
    if (e.max_distortion > allowed)
        throw FactorizationFailure("realized distances deviate by " + std::to_string(e.max_distortion) +
                                   " (allowed " + std::to_string(allowed) + ")");
    return e;
}

FeasibilitySearch spherical_feasibility_threshold(const DistanceMatrix& d, int iterations, double rel_tol) {
    FeasibilitySearch s;
    const double diam = d.max_entry();
    if (!(diam > 0.0)) throw InvalidArgs("feasibility search needs a positive diameter");
    s.upper_bound = std::numbers::pi * std::numbers::pi / (diam * diam);
    auto feasible = [&](double kappa) { return embeddable_spherical(d, kappa, rel_tol).embeddable; };

    if (feasible(s.upper_bound)) {
        s.threshold = s.upper_bound;
    } else {
        // Below this curvature the Gram matrix is within rel_tol of the
        // rank-one all-ones matrix and every table passes the PSD test.
        const double floor = 1e4 * rel_tol * s.upper_bound;
        double lo = 0.0;
        for (int k = 1; s.upper_bound * std::ldexp(1.0, -k) >= floor; ++k) {
            const double probe = s.upper_bound * std::ldexp(1.0, -k);
            if (feasible(probe)) {
                lo = probe;
                break;
            }
        }
        if (lo > 0.0) {
            double hi = std::min(2.0 * lo, s.upper_bound);
            if (feasible(hi)) hi = s.upper_bound;
            for (s.iterations = 0; s.iterations < iterations; ++s.iterations) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                (feasible(mid) ? lo : hi) = mid;
            }
            s.threshold = lo;
        }
    }

    for (int k = 0; k < 16; ++k) {
        const double probe = s.upper_bound * (k + 0.5) / 16.0;
        const bool expected = s.threshold && probe <= *s.threshold;
        if (feasible(probe) != expected) s.monotone_on_samples = false;
    }
    return s;
}

RingEmbeddingReport ring_embedding_report(const RingSpec& spec) {
    const bool quotient = spec.n() % 2 == 0;
    DistanceMatrix d = distance_matrix(spec, quotient);
    RingClassification cls = classify_ring(spec.n(), d);
    const std::vector<double> off = d.off_diagonal();
    const auto [lo, hi] = std::minmax_element(off.begin(), off.end());
    const double mean = std::accumulate(off.begin(), off.end(), 0.0) / static_cast<double>(off.size());
    const int points = static_cast<int>(d.size());
    const double w = cls.uniform ? cls.distinct_values.front() : mean;
    const double kmax = kappa_max(points, w);

    RingEmbeddingReport r{
        .spec = spec,
        .classification = cls,
        .distances = d,
        .points = points,
        .edge_weight = w,
        .min_edge_weight = *lo,
        .max_edge_weight = *hi,
        .kappa_max_value = kmax,
        .kappa_max_for_min_weight = kappa_max(points, *lo),
        .kappa_max_for_max_weight = kappa_max(points, *hi),
        .at_kappa_max = {kmax, embeddable_spherical(d, kmax)},
        .above_kappa_max = {1.01 * kmax, embeddable_spherical(d, 1.01 * kmax)},
        .feasibility = spherical_feasibility_threshold(d),
        .spherical = std::nullopt,
        .euclidean = embeddable_euclidean(d),
        .hyperbolic = embeddable_hyperbolic(d, -1.0),
    };
    const std::optional<double> target = cls.uniform ? std::optional<double>(kmax) : r.feasibility.threshold;
    if (target) {
        try {
            r.spherical = realize(d, ModelSpace::Spherical, *target);
        } catch (const NotEmbeddable&) {
        } catch (const FactorizationFailure&) {
        }
    }
    return r;
}

}  // namespace spinring
