#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spinring/embedding.hpp"
#include "spinring/error.hpp"
#include "spinring/hamiltonian.hpp"
#include "spinring/metric.hpp"
#include "spinring/spectral.hpp"
#include "spinring/verify.hpp"

namespace py = pybind11;
using namespace spinring;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array to_numpy(const Matrix& m) {
    Array out({m.rows(), m.cols()});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) view(i, j) = m(i, j);
    return out;
}

Matrix from_numpy(const Array& a) {
    if (a.ndim() != 2) throw InvalidArgs("expected a 2-d array");
    const auto view = a.unchecked<2>();
    Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = view(i, j);
    return m;
}

RingSpec ring(int n, const std::string& coupling, double strength) {
    return RingSpec(n, parse_coupling(coupling), strength);
}

py::list spectrum_list(const SpectralDecomposition& dec) {
    py::list out;
    for (const auto& s : dec.eigenspaces())
        out.append(py::dict(py::arg("eigenvalue") = s.eigenvalue, py::arg("multiplicity") = s.multiplicity,
                            py::arg("projector") = to_numpy(s.projector)));
    return out;
}

py::dict embedding_dict(const EmbeddingResult& e) {
    return py::dict(py::arg("space") = std::string(to_string(e.space)), py::arg("curvature") = e.curvature,
                    py::arg("ambient_dim") = e.ambient_dim, py::arg("manifold_dim") = e.manifold_dim,
                    py::arg("coordinates") = to_numpy(e.coordinates), py::arg("max_distortion") = e.max_distortion,
                    py::arg("irreducible") = e.irreducible);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quantum distance on uniform spin rings and constant-curvature embeddings";

    auto base = py::register_exception<Error>(m, "SpinringError", PyExc_RuntimeError);
    py::register_exception<InvalidSpec>(m, "InvalidSpec", base.ptr());
    py::register_exception<InvalidArgs>(m, "InvalidArgs", base.ptr());
    py::register_exception<QuotientOnOddRing>(m, "QuotientOnOddRing", base.ptr());
    py::register_exception<IndexOutOfRange>(m, "IndexOutOfRange", base.ptr());
    py::register_exception<DimensionTooLarge>(m, "DimensionTooLarge", base.ptr());
    py::register_exception<NotEmbeddable>(m, "NotEmbeddable", base.ptr());
    py::register_exception<FactorizationFailure>(m, "FactorizationFailure", base.ptr());
    py::register_exception<NoConvergence>(m, "NoConvergence", base.ptr());

    m.def(
        "full_hamiltonian",
        [](int n, const std::string& coupling, double strength) {
            return to_numpy(build_full_hamiltonian(ring(n, coupling, strength)).dense());
        },
        py::arg("n"), py::arg("coupling") = "xx", py::arg("strength") = 1.0);

    m.def(
        "single_excitation_hamiltonian",
        [](int n, const std::string& coupling, double strength) {
            return to_numpy(build_single_excitation_hamiltonian(ring(n, coupling, strength)).dense());
        },
        py::arg("n"), py::arg("coupling") = "xx", py::arg("strength") = 1.0);

    m.def(
        "spectrum",
        [](int n, const std::string& coupling, double strength, const std::string& source) {
            const RingSpec spec = ring(n, coupling, strength);
            if (source == "closed_form") return spectrum_list(circulant_spectrum(spec));
            if (source == "numerical") return spectrum_list(numerical_spectrum(build_single_excitation_hamiltonian(spec)));
            throw InvalidArgs("source must be 'closed_form' or 'numerical'");
        },
        py::arg("n"), py::arg("coupling") = "xx", py::arg("strength") = 1.0, py::arg("source") = "closed_form");

    m.def("p_max_closed_form", &p_max_closed_form, py::arg("n"), py::arg("separation"));
    m.def("asymptotic_distance", &asymptotic_distance);

    m.def(
        "distance_matrix",
        [](int n, bool quotient, const std::string& coupling, double strength) {
            return to_numpy(distance_matrix(ring(n, coupling, strength), quotient).entries());
        },
        py::arg("n"), py::arg("quotient") = false, py::arg("coupling") = "xx", py::arg("strength") = 1.0);

    m.def(
        "check_metric",
        [](int n, bool quotient, std::uint64_t seed) {
            MetricCheckOptions opt;
            opt.seed = seed;
            const MetricReport r = check_metric_axioms(distance_matrix(RingSpec(n), quotient), opt);
            return py::dict(py::arg("classification") = std::string(to_string(r.classification)),
                            py::arg("identity_ok") = r.identity_ok, py::arg("symmetry_ok") = r.symmetry_ok,
                            py::arg("triangle_ok") = r.triangle_ok, py::arg("separation_ok") = r.separation_ok,
                            py::arg("triples_checked") = r.triples_checked,
                            py::arg("worst_triangle_slack") = r.worst_triangle_slack);
        },
        py::arg("n"), py::arg("quotient") = false, py::arg("seed") = 0);

    m.def(
        "classify",
        [](int n) {
            const RingClassification c = classify_ring(n, distance_matrix(RingSpec(n), n % 2 == 0));
            return py::dict(py::arg("kind") = std::string(to_string(c.kind)), py::arg("uniform") = c.uniform,
                            py::arg("distinct_values") = c.distinct_values, py::arg("spread") = c.spread);
        },
        py::arg("n"));

    m.def(
        "variance_sweep",
        [](int n_min, int n_max, bool quotient_even) {
            py::list rows;
            for (const auto& r : distance_variance_sweep(
                     n_min, n_max, quotient_even ? QuotientPolicy::QuotientEven : QuotientPolicy::Never))
                rows.append(py::dict(py::arg("n") = r.n, py::arg("kind") = std::string(to_string(r.kind)),
                                     py::arg("quotiented") = r.quotiented, py::arg("variance") = r.variance,
                                     py::arg("distinct_values") = r.distinct_count));
            return rows;
        },
        py::arg("n_min"), py::arg("n_max"), py::arg("quotient_even") = true);

    m.def("kappa_max", &kappa_max, py::arg("n"), py::arg("w"));

    m.def(
        "embeddable_spherical",
        [](const Array& d, double kappa) {
            const SphericalVerdict v = embeddable_spherical(DistanceMatrix::from_entries(from_numpy(d)), kappa);
            return py::dict(py::arg("embeddable") = v.embeddable, py::arg("diameter_ok") = v.diameter_ok,
                            py::arg("gram_eigenvalues") = v.gram_eigenvalues, py::arg("rank") = v.rank,
                            py::arg("irreducible") = v.irreducible);
        },
        py::arg("distances"), py::arg("kappa"));

    m.def(
        "feasibility_threshold",
        [](const Array& d) -> py::object {
            const FeasibilitySearch f = spherical_feasibility_threshold(DistanceMatrix::from_entries(from_numpy(d)));
            return f.threshold ? py::cast(*f.threshold) : py::none();
        },
        py::arg("distances"));

    m.def(
        "realize",
        [](const Array& d, const std::string& space, double kappa, double tol) {
            return embedding_dict(
                realize(DistanceMatrix::from_entries(from_numpy(d)), parse_model_space(space), kappa, tol));
        },
        py::arg("distances"), py::arg("space"), py::arg("kappa") = 0.0, py::arg("tol") = 1e-8);

    m.def(
        "verify",
        [](int n_max_full, int n_max_subspace, std::uint64_t seed) {
            VerifyOptions opt;
            opt.n_max_full = n_max_full;
            opt.n_max_subspace = n_max_subspace;
            opt.seed = seed;
            py::list out;
            for (const auto& c : run_verification(opt))
                out.append(py::dict(py::arg("name") = c.name, py::arg("passed") = c.passed,
                                    py::arg("max_deviation") = c.max_deviation, py::arg("tolerance") = c.tolerance,
                                    py::arg("detail") = c.detail));
            return out;
        },
        py::arg("n_max_full") = 10, py::arg("n_max_subspace") = 64, py::arg("seed") = 0);
}
