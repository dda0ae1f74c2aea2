#include "spinring/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

#include "spinring/embedding.hpp"
#include "spinring/error.hpp"
#include "spinring/hamiltonian.hpp"
#include "spinring/metric.hpp"
#include "spinring/spectral.hpp"

namespace spinring {

namespace {

double relative_error(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale < 1e-14 ? std::abs(a - b) : std::abs(a - b) / scale;
}

std::string scientific(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(3) << v;
    return os.str();
}

CheckOutcome finish(std::string name, double worst, double tol, std::string detail = {}) {
    return {std::move(name), worst <= tol, worst, tol, std::move(detail)};
}

CheckOutcome check_subspace_restriction(const VerifyOptions& opt) {
    double worst = 0.0;
    std::string detail = "n = 3.." + std::to_string(opt.n_max_full) + ", xx and heisenberg";
    for (int n = 3; n <= opt.n_max_full; ++n)
        for (Coupling c : {Coupling::XX, Coupling::Heisenberg}) {
            try {
                const RestrictionReport r = verify_subspace_restriction(RingSpec(n, c));
                worst = std::max({worst, r.max_abs_deviation, r.max_sector_leakage});
            } catch (const RestrictionMismatch& e) {
                return finish("subspace_restriction", e.deviation(), 1e-12, e.what());
            }
        }
    return finish("subspace_restriction", worst, 1e-12, detail);
}

CheckOutcome check_circulant_symmetry(const VerifyOptions& opt) {
    double worst = 0.0;
    for (int n = 3; n <= opt.n_max_subspace; ++n)
        for (Coupling c : {Coupling::XX, Coupling::Heisenberg}) {
            const SymmetricMatrix h = build_single_excitation_hamiltonian(RingSpec(n, c));
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    worst = std::max(worst, std::abs(h((i + 1) % n, (j + 1) % n) - h(i, j)));
        }
    return finish("circulant_symmetry", worst, 1e-12);
}

struct SpectraPair {
    SpectralDecomposition closed;
    SpectralDecomposition numerical;
};

SpectraPair spectra_for(int n, Coupling c, double hopping_scale) {
    const RingSpec spec(n, c);
    return {circulant_spectrum(spec),
            numerical_spectrum(build_single_excitation_hamiltonian(spec, spec.subspace_coupling() * hopping_scale))};
}

}  // namespace

std::vector<CheckOutcome> run_verification(const VerifyOptions& opt) {
    if (opt.n_max_full < 3 || opt.n_max_full > kMaxFullSpaceSpins)
        throw InvalidArgs("n_max_full must lie in [3, " + std::to_string(kMaxFullSpaceSpins) + "]");
    if (opt.n_max_subspace < 3) throw InvalidArgs("n_max_subspace must be >= 3");

    std::vector<CheckOutcome> out;
    out.push_back(check_subspace_restriction(opt));
    out.push_back(check_circulant_symmetry(opt));

    // Spectrum agreement, p_max oracle and coupling invariance share the
    // numerical decompositions.
    double eig_dev = 0.0, proj_dev = 0.0, pmax_dev = 0.0, coupling_dev = 0.0;
    std::string spectrum_detail;
    for (int n = 3; n <= opt.n_max_subspace; ++n) {
        std::map<Coupling, DistanceMatrix> numeric_distances;
        for (Coupling c : {Coupling::XX, Coupling::Heisenberg}) {
            const SpectraPair s = spectra_for(n, c, opt.hopping_scale);
            if (s.closed.size() != s.numerical.size()) {
                eig_dev = std::max(eig_dev, 1.0);
                if (spectrum_detail.empty())
                    spectrum_detail = "eigenspace count differs at n = " + std::to_string(n);
                continue;
            }
            for (std::size_t k = 0; k < s.closed.size(); ++k) {
                const auto& a = s.closed.eigenspaces()[k];
                const auto& b = s.numerical.eigenspaces()[k];
                eig_dev = std::max(eig_dev, std::abs(a.eigenvalue - b.eigenvalue));
                proj_dev = std::max(proj_dev, max_abs_difference(a.projector, b.projector));
            }
            for (int m = 0; m <= n / 2; ++m)
                pmax_dev = std::max(pmax_dev, std::abs(p_max_closed_form(n, m) - p_max(s.numerical, 0, m)));
            numeric_distances.emplace(c, distance_matrix(RingSpec(n, c), s.numerical, false));
        }
        if (numeric_distances.size() == 2)
            coupling_dev = std::max(coupling_dev, max_abs_difference(numeric_distances.at(Coupling::XX).entries(),
                                                                     numeric_distances.at(Coupling::Heisenberg).entries()));
    }
    const std::string range = "n = 3.." + std::to_string(opt.n_max_subspace);
    if (spectrum_detail.empty()) spectrum_detail = range + ", projector max deviation " + scientific(proj_dev);
    CheckOutcome spectrum = finish("spectrum_agreement", eig_dev, 1e-9, spectrum_detail);
    spectrum.passed = spectrum.passed && proj_dev <= 1e-8;
    out.push_back(spectrum);
    out.push_back(finish("pmax_closed_form_vs_projectors", pmax_dev, 1e-9, range));
    out.push_back(finish("coupling_invariance", coupling_dev, 1e-10, range + ", Jacobi projectors"));

    {
        double worst = 0.0;
        for (double c : {-0.9, -0.25, 0.0, 0.3, 0.5, 0.99}) {
            const std::vector<double> rec = toeplitz_minor_recursion(12, c);
            for (int k = 1; k <= 12; ++k) {
                const double closed = toeplitz_minor_closed_form(k, c);
                const double direct = determinant(toeplitz_matrix(k, c).dense());
                worst = std::max({worst, relative_error(closed, rec[k - 1]), relative_error(closed, direct)});
            }
        }
        out.push_back(finish("toeplitz_minors", worst, 1e-10, "k <= 12, six c values"));
    }
    {
        double worst = 0.0;
        for (double c : {-0.9, -0.25, 0.0, 0.3, 0.5, 0.99})
            for (int n = 2; n <= 32; ++n) {
                const ToeplitzSpectrum ts = toeplitz_eigenvalues(n, c);
                std::vector<double> expected(static_cast<std::size_t>(n - 1), ts.repeated);
                expected.push_back(ts.simple);
                std::sort(expected.begin(), expected.end());
                const auto got = jacobi_eigensolver(toeplitz_matrix(n, c)).eigenvalues;
                for (std::size_t k = 0; k < got.size(); ++k) worst = std::max(worst, std::abs(got[k] - expected[k]));
            }
        out.push_back(finish("toeplitz_eigenvalues", worst, 1e-9, "n <= 32"));
    }
    {
        double worst = 0.0;
        bool signs_ok = true;
        for (double d : {0.5, 1.0, 2.0}) {
            const auto rec = cayley_menger_minors(d, 10);
            const auto direct = cayley_menger_minors_direct(d, 10);
            for (std::size_t idx = 0; idx < direct.size(); ++idx) {
                const int points = static_cast<int>(idx) + 2;
                const double expected_sign = points % 2 == 0 ? 1.0 : -1.0;
                if (!(direct[idx] * expected_sign > 0.0)) signs_ok = false;
                if (points >= 4) worst = std::max(worst, relative_error(rec[idx], direct[idx]));
            }
        }
        CheckOutcome cm = finish("cayley_menger_minors", worst, 1e-10, signs_ok ? "signs alternate" : "sign pattern broken");
        cm.passed = cm.passed && signs_ok;
        out.push_back(cm);
    }
    {
        double worst = -1.0;
        std::mt19937_64 rng(opt.seed);
        for (int n : {3, 4, 5, 7, 8}) {
            const RingSpec spec(n);
            const SpectralDecomposition dec = circulant_spectrum(spec);
            const double t_end = 50.0 / spec.subspace_coupling();
            std::uniform_real_distribution<double> jitter(0.0, t_end);
            std::vector<double> grid(10'000);
            for (std::size_t s = 0; s < grid.size(); ++s)
                grid[s] = s % 2 == 0 ? t_end * static_cast<double>(s) / (grid.size() - 1) : jitter(rng);
            for (int j = 1; j < n; ++j)
                worst = std::max(worst, transfer_probability_time_series(dec, 0, j, grid).max_excess);
        }
        out.push_back(finish("time_domain_bound", worst, 1e-10, "max p(t) - p_max over the sampled grids"));
    }
    {
        double worst = -1.0;
        for (int n = 3; n <= std::min(opt.n_max_subspace, 64); ++n)
            worst = std::max(worst, multiplicative_triangle_excess(distance_matrix(RingSpec(n), false)));
        out.push_back(finish("multiplicative_triangle", worst, 1e-10, "sqrt p(l,m) sqrt p(m,n) <= sqrt p(l,n)"));
    }
    return out;
}

}  // namespace spinring
