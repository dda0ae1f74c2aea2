#include "spinring/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "spinring/error.hpp"

namespace spinring {

std::string_view to_string(SpectrumSource s) noexcept {
    return s == SpectrumSource::ClosedForm ? "closed_form" : "numerical_solver";
}

SpectralDecomposition::SpectralDecomposition(std::vector<Eigenspace> spaces,
                                             SpectrumSource source, int merged_collisions)
    : spaces_(std::move(spaces)), source_(source), merged_collisions_(merged_collisions) {
    if (spaces_.empty()) throw InvalidArgs("spectral decomposition needs at least one eigenspace");
    dim_ = spaces_.front().projector.rows();
    std::sort(spaces_.begin(), spaces_.end(),
              [](const Eigenspace& a, const Eigenspace& b) { return a.eigenvalue < b.eigenvalue; });
}

std::vector<double> SpectralDecomposition::eigenvalues() const {
    std::vector<double> v;
    v.reserve(spaces_.size());
    for (const auto& s : spaces_) v.push_back(s.eigenvalue);
    return v;
}

std::vector<int> SpectralDecomposition::multiplicities() const {
    std::vector<int> v;
    v.reserve(spaces_.size());
    for (const auto& s : spaces_) v.push_back(s.multiplicity);
    return v;
}

Matrix SpectralDecomposition::reconstruct() const {
    Matrix h(dim_, dim_);
    for (const auto& s : spaces_) h += s.projector * s.eigenvalue;
    return h;
}

namespace {

double default_degeneracy_tol(double lo, double hi) {
    const double range = hi - lo;
    if (range > 0.0) return 1e-8 * range;
    return 1e-8 * std::max(1.0, std::abs(hi));
}

}  // namespace

SpectralDecomposition circulant_spectrum(const RingSpec& spec) {
    const int n = spec.n();
    const double h = spec.subspace_coupling();
    const double shift = spec.diagonal_shift();
    std::vector<Eigenspace> spaces;
    for (int k = 0; k <= n / 2; ++k) {
        Eigenspace s;
        s.eigenvalue = shift + 2.0 * h * std::cos(2.0 * std::numbers::pi * k / n);
        s.multiplicity = (k == 0 || 2 * k == n) ? 1 : 2;
        s.projector = Matrix(n, n);
        const double scale = static_cast<double>(s.multiplicity) / n;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const long r = (static_cast<long>(k) * (((i - j) % n + n) % n)) % n;
                s.projector(i, j) = scale * std::cos(2.0 * std::numbers::pi * r / n);
            }
        spaces.push_back(std::move(s));
    }
    const double lo = shift - 2.0 * h;
    const double hi = shift + 2.0 * h;
    std::vector<Eigenspace> sorted = std::move(spaces);
    std::sort(sorted.begin(), sorted.end(),
              [](const Eigenspace& a, const Eigenspace& b) { return a.eigenvalue < b.eigenvalue; });
    const double tol = default_degeneracy_tol(lo, hi);
    std::vector<Eigenspace> merged;
    int collisions = 0;
    for (auto& s : sorted) {
        if (!merged.empty() && s.eigenvalue - merged.back().eigenvalue <= tol) {
            merged.back().multiplicity += s.multiplicity;
            merged.back().projector += s.projector;
            ++collisions;
        } else {
            merged.push_back(std::move(s));
        }
    }
    return SpectralDecomposition(std::move(merged), SpectrumSource::ClosedForm, collisions);
}

JacobiResult jacobi_eigensolver(const SymmetricMatrix& sym, int max_sweeps) {
    const std::size_t n = sym.dim();
    Matrix a = sym.dense();
    Matrix v = Matrix::identity(n);
    const double threshold = 1e-14 * a.frobenius_norm();

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) s += 2.0 * a(p, q) * a(p, q);
        return std::sqrt(s);
    };

    JacobiResult result;
    int sweep = 0;
    for (;; ++sweep) {
        if (off_norm() <= threshold) break;
        if (sweep >= max_sweeps)
            throw NoConvergence("Jacobi eigensolver did not converge in " +
                                std::to_string(max_sweeps) + " sweeps");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(p, k) = a(k, p);
                    a(k, q) = s * akp + c * akq;
                    a(q, k) = a(k, q);
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
    result.eigenvalues.resize(n);
    result.eigenvectors = Matrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        result.eigenvalues[c] = a(order[c], order[c]);
        for (std::size_t k = 0; k < n; ++k) result.eigenvectors(k, c) = v(k, order[c]);
    }
    result.sweeps = sweep;
    return result;
}

SpectralDecomposition numerical_spectrum(const SymmetricMatrix& a,
                                         std::optional<double> degeneracy_tol) {
    if (a.dim() == 0) throw InvalidArgs("empty matrix");
    if (degeneracy_tol && !(*degeneracy_tol > 0.0))
        throw InvalidArgs("degeneracy tolerance must be positive");
    const JacobiResult eig = jacobi_eigensolver(a);
    const std::size_t n = a.dim();
    const double tol =
        degeneracy_tol.value_or(default_degeneracy_tol(eig.eigenvalues.front(), eig.eigenvalues.back()));

    std::vector<Eigenspace> spaces;
    double sum = 0.0;
    double previous = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
        const double lambda = eig.eigenvalues[c];
        if (spaces.empty() || lambda - previous > tol) {
            spaces.push_back({lambda, 0, Matrix(n, n)});
            sum = 0.0;
        }
        Eigenspace& s = spaces.back();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                s.projector(i, j) += eig.eigenvectors(i, c) * eig.eigenvectors(j, c);
        sum += lambda;
        ++s.multiplicity;
        s.eigenvalue = sum / s.multiplicity;
        previous = lambda;
    }
    return SpectralDecomposition(std::move(spaces), SpectrumSource::NumericalSolver);
}

std::vector<double> projector_overlaps(const SpectralDecomposition& dec, std::size_t i,
                                       std::size_t j) {
    if (i >= dec.dim() || j >= dec.dim())
        throw IndexOutOfRange("site index out of range for dimension " + std::to_string(dec.dim()));
    std::vector<double> out;
    out.reserve(dec.size());
    for (const auto& s : dec.eigenspaces()) out.push_back(std::abs(s.projector(i, j)));
    return out;
}

}  // namespace spinring
