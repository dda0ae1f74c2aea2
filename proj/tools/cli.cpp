#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

#include "spinring/embedding.hpp"
#include "spinring/error.hpp"
#include "spinring/hamiltonian.hpp"
#include "spinring/metric.hpp"
#include "spinring/verify.hpp"

namespace spinring::cli {

namespace {

using Json = nlohmann::ordered_json;

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string flag(bool b) { return b ? "true" : "false"; }

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

Json matrix_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

struct OutputOptions {
    std::string format = "json";
    std::string path;
};

void add_output_options(CLI::App* sub, OutputOptions& o, const std::string& default_format = "json") {
    o.format = default_format;
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    sub->add_option("--out", o.path, "Write the document to this path instead of stdout");
}

Json document(const std::string& command, Json params, Json payload) {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = command;
    doc["params"] = std::move(params);
    doc["payload"] = std::move(payload);
    return doc;
}

void emit(const OutputOptions& o, const Json& doc, const CsvTable& csv, std::ostream& out) {
    std::ostringstream body;
    if (o.format == "csv") {
        for (std::size_t c = 0; c < csv.header.size(); ++c) body << (c ? "," : "") << csv.header[c];
        body << '\n';
        for (const auto& row : csv.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) body << (c ? "," : "") << csv_escape(row[c]);
            body << '\n';
        }
    } else {
        body << doc.dump(2) << '\n';
    }
    if (o.path.empty()) {
        out << body.str();
    } else {
        std::ofstream f(o.path);
        if (!f) throw InvalidArgs("cannot open output file '" + o.path + "'");
        f << body.str();
    }
}

// ---------------------------------------------------------------------------

struct RingOptions {
    int n = 0;
    std::string coupling = "xx";
    double strength = 1.0;

    RingSpec spec() const { return RingSpec(n, parse_coupling(coupling), strength); }
    Json params() const { return Json{{"n", n}, {"coupling", coupling}, {"strength", strength}}; }
};

void add_ring_options(CLI::App* sub, RingOptions& r) {
    sub->add_option("--n", r.n, "Number of spins in the ring")->required();
    sub->add_option("--coupling", r.coupling, "xx or heisenberg")
        ->check(CLI::IsMember({"xx", "heisenberg"}, CLI::ignore_case))
        ->capture_default_str();
    sub->add_option("--strength", r.strength, "Uniform coupling strength J")->capture_default_str();
}

// distance ------------------------------------------------------------------

struct DistanceCmd {
    RingOptions ring;
    bool quotient = false;
    OutputOptions output;
};

int cmd_distance(const DistanceCmd& c, std::ostream& out) {
    const RingSpec spec = c.ring.spec();
    const DistanceMatrix d = distance_matrix(spec, c.quotient);
    const bool semi = spec.n() % 2 == 0 && !c.quotient;

    Json antipodal = Json::array();
    if (semi)
        for (int i = 0; i < spec.n() / 2; ++i) antipodal.push_back(Json::array({i, i + spec.n() / 2}));

    Json params = c.ring.params();
    params["quotient"] = c.quotient;
    Json payload;
    payload["n_effective"] = d.size();
    payload["quotiented"] = d.quotiented();
    payload["metric_kind"] = semi ? "semi-metric" : "metric";
    payload["antipodal_pairs"] = std::move(antipodal);
    payload["distances"] = matrix_json(d.entries());
    payload["p_max"] = matrix_json(d.capacity());

    CsvTable csv{{"i", "j", "distance", "p_max"}, {}};
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j)
            csv.rows.push_back({std::to_string(i), std::to_string(j), num(d(i, j)), num(d.capacity()(i, j))});

    emit(c.output, document("distance", std::move(params), std::move(payload)), csv, out);
    return kOk;
}

// metric-check --------------------------------------------------------------

struct MetricCmd {
    RingOptions ring;
    bool quotient = false;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    OutputOptions output;
};

int cmd_metric_check(const MetricCmd& c, std::ostream& out) {
    const RingSpec spec = c.ring.spec();
    const DistanceMatrix d = distance_matrix(spec, c.quotient);
    MetricCheckOptions opt;
    opt.seed = c.seed;
    opt.threads = c.threads;
    const MetricReport r = check_metric_axioms(d, opt);
    const double mult = multiplicative_triangle_excess(d);

    auto pairs = [](const std::vector<PairViolation>& v) {
        Json a = Json::array();
        for (const auto& p : v) a.push_back({{"i", p.i}, {"j", p.j}, {"magnitude", p.magnitude}});
        return a;
    };
    Json triples = Json::array();
    for (const auto& t : r.triangle_violations)
        triples.push_back({{"i", t.i}, {"j", t.j}, {"k", t.k}, {"slack", t.slack}});

    Json params = c.ring.params();
    params["quotient"] = c.quotient;
    params["seed"] = c.seed;
    Json payload;
    payload["n_effective"] = d.size();
    payload["classification"] = to_string(r.classification);
    payload["identity_ok"] = r.identity_ok;
    payload["symmetry_ok"] = r.symmetry_ok;
    payload["triangle_ok"] = r.triangle_ok;
    payload["separation_ok"] = r.separation_ok;
    payload["exhaustive"] = r.exhaustive;
    payload["triples_checked"] = r.triples_checked;
    payload["worst_triangle_slack"] = r.worst_triangle_slack;
    payload["multiplicative_triangle_excess"] = mult;
    payload["violations"] = {{"identity", pairs(r.identity_violations)},
                             {"symmetry", pairs(r.symmetry_violations)},
                             {"separation", pairs(r.separation_violations)},
                             {"triangle", std::move(triples)}};

    CsvTable csv{{"field", "value"}, {}};
    csv.rows = {{"classification", std::string(to_string(r.classification))},
                {"identity_ok", flag(r.identity_ok)},
                {"symmetry_ok", flag(r.symmetry_ok)},
                {"triangle_ok", flag(r.triangle_ok)},
                {"separation_ok", flag(r.separation_ok)},
                {"separation_violations", std::to_string(r.separation_violations.size())},
                {"triangle_violations", std::to_string(r.triangle_violations.size())},
                {"triples_checked", std::to_string(r.triples_checked)},
                {"worst_triangle_slack", num(r.worst_triangle_slack)}};

    emit(c.output, document("metric-check", std::move(params), std::move(payload)), csv, out);
    return r.classification == MetricClass::NotSemiMetric ? kNegative : kOk;
}

// classify ------------------------------------------------------------------

struct ClassifyCmd {
    RingOptions ring;
    OutputOptions output;
};

int cmd_classify(const ClassifyCmd& c, std::ostream& out) {
    const RingSpec spec = c.ring.spec();
    const bool quotient = spec.n() % 2 == 0;
    const RingClassification cls = classify_ring(spec.n(), distance_matrix(spec, quotient));

    Json payload;
    payload["n"] = spec.n();
    payload["kind"] = to_string(cls.kind);
    payload["quotiented"] = quotient;
    payload["uniform"] = cls.uniform;
    payload["distinct_values"] = cls.distinct_values;
    payload["c_n"] = cls.uniform ? Json(cls.distinct_values.front()) : Json(nullptr);
    payload["spread"] = cls.spread;
    payload["matches_prime_rule"] = cls.matches_prime_rule;

    std::string values;
    for (double v : cls.distinct_values) values += (values.empty() ? "" : ";") + num(v);
    CsvTable csv{{"n", "kind", "quotiented", "uniform", "distinct_values"},
                 {{std::to_string(spec.n()), std::string(to_string(cls.kind)), flag(quotient), flag(cls.uniform),
                   values}}};
    emit(c.output, document("classify", c.ring.params(), std::move(payload)), csv, out);
    return kOk;
}

// embed ---------------------------------------------------------------------

struct EmbedCmd {
    RingOptions ring;
    std::string space = "spherical";
    std::string kappa = "auto";
    double tol = 1e-8;
    OutputOptions output;
};

Json spherical_verdict_json(const SphericalVerdict& v) {
    return {{"embeddable", v.embeddable},
            {"diameter_ok", v.diameter_ok},
            {"gram_rank", v.rank},
            {"irreducible", v.irreducible},
            {"gram_eigenvalues", v.gram_eigenvalues}};
}

Json minor_verdict_json(const MinorSignVerdict& v) {
    return {{"embeddable", v.embeddable}, {"degenerate", v.degenerate}, {"minors", v.minors}, {"signs", v.signs}};
}

Json embedding_json(const EmbeddingResult& e) {
    return {{"space", to_string(e.space)},
            {"curvature", e.curvature},
            {"ambient_dim", e.ambient_dim},
            {"manifold_dim", e.manifold_dim},
            {"irreducible", e.irreducible},
            {"max_distortion", e.max_distortion},
            {"coordinates", matrix_json(e.coordinates)}};
}

int cmd_embed(const EmbedCmd& c, std::ostream& out, std::ostream& err) {
    const RingSpec spec = c.ring.spec();
    const ModelSpace space = parse_model_space(c.space);
    std::optional<double> kappa_value;
    if (c.kappa != "auto") {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(c.kappa, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != c.kappa.size()) throw InvalidArgs("--kappa must be 'auto' or a number");
        kappa_value = v;
    }
    if (!(c.tol > 0.0)) throw InvalidArgs("--tol must be positive");

    const RingEmbeddingReport rep = ring_embedding_report(spec);
    const DistanceMatrix& d = rep.distances;

    double kappa = 0.0;
    Json verdict;
    bool embeddable = false;
    switch (space) {
        case ModelSpace::Spherical: {
            if (kappa_value) {
                if (!(*kappa_value > 0.0)) throw InvalidArgs("spherical embedding needs --kappa > 0");
                kappa = *kappa_value;
            } else if (rep.classification.uniform) {
                kappa = rep.kappa_max_value;
            } else if (rep.feasibility.threshold) {
                kappa = *rep.feasibility.threshold;
            }
            if (kappa > 0.0) {
                const SphericalVerdict v = embeddable_spherical(d, kappa);
                embeddable = v.embeddable;
                verdict = spherical_verdict_json(v);
            }
            break;
        }
        case ModelSpace::Euclidean: {
            const MinorSignVerdict v = embeddable_euclidean(d);
            embeddable = v.embeddable;
            verdict = minor_verdict_json(v);
            break;
        }
        case ModelSpace::Hyperbolic: {
            kappa = kappa_value.value_or(-1.0);
            if (!(kappa < 0.0)) throw InvalidArgs("hyperbolic embedding needs --kappa < 0");
            const MinorSignVerdict v = embeddable_hyperbolic(d, kappa);
            embeddable = v.embeddable;
            verdict = minor_verdict_json(v);
            break;
        }
    }

    Json embedding = nullptr;
    if (embeddable) {
        try {
            embedding = embedding_json(realize(d, space, kappa, c.tol));
        } catch (const NotEmbeddable& e) {
            embeddable = false;
            err << "NotEmbeddable: " << e.what() << '\n';
        } catch (const FactorizationFailure& e) {
            embeddable = false;
            err << "FactorizationFailure: " << e.what() << '\n';
        }
    } else {
        err << "NotEmbeddable: ring n = " << spec.n() << " does not embed in " << to_string(space)
            << " space at kappa = " << num(kappa) << '\n';
    }

    Json params = c.ring.params();
    params["space"] = c.space;
    params["kappa"] = c.kappa;
    params["tol"] = c.tol;
    Json payload;
    payload["ring"] = {{"n", spec.n()},
                       {"kind", to_string(rep.classification.kind)},
                       {"uniform", rep.classification.uniform},
                       {"quotiented", d.quotiented()},
                       {"points", rep.points}};
    payload["edge_weight"] = {{"used", rep.edge_weight},
                              {"rule", rep.classification.uniform ? "uniform" : "mean"},
                              {"min", rep.min_edge_weight},
                              {"max", rep.max_edge_weight}};
    payload["kappa_max"] = rep.kappa_max_value;
    payload["kappa_max_bracket"] = {rep.kappa_max_for_max_weight, rep.kappa_max_for_min_weight};
    payload["feasibility"] = {{"threshold", rep.feasibility.threshold ? Json(*rep.feasibility.threshold) : Json(nullptr)},
                              {"upper_bound", rep.feasibility.upper_bound},
                              {"monotone_on_samples", rep.feasibility.monotone_on_samples},
                              {"kappa_max_feasible", rep.at_kappa_max.verdict.embeddable}};
    payload["space"] = to_string(space);
    payload["kappa"] = kappa;
    payload["embeddable"] = embeddable;
    payload["verdict"] = std::move(verdict);
    payload["embedding"] = std::move(embedding);

    CsvTable csv{{"point", "axis", "value"}, {}};
    if (!payload["embedding"].is_null()) {
        const auto& coords = payload["embedding"]["coordinates"];
        for (std::size_t i = 0; i < coords.size(); ++i)
            for (std::size_t a = 0; a < coords[i].size(); ++a)
                csv.rows.push_back({std::to_string(i), std::to_string(a), num(coords[i][a].get<double>())});
    }
    emit(c.output, document("embed", std::move(params), std::move(payload)), csv, out);
    return embeddable ? kOk : kNegative;
}

// sweep ---------------------------------------------------------------------

struct SweepCmd {
    int n_min = 3;
    int n_max = 200;
    std::string policy = "even";
    OutputOptions output;
};

int cmd_sweep(const SweepCmd& c, std::ostream& out) {
    const QuotientPolicy policy = c.policy == "never" ? QuotientPolicy::Never : QuotientPolicy::QuotientEven;
    const auto rows = distance_variance_sweep(c.n_min, c.n_max, policy);
    Json list = Json::array();
    CsvTable csv{{"n", "kind", "quotiented", "variance", "distinct_values"}, {}};
    for (const auto& r : rows) {
        list.push_back({{"n", r.n},
                        {"kind", to_string(r.kind)},
                        {"quotiented", r.quotiented},
                        {"variance", r.variance},
                        {"distinct_values", r.distinct_count}});
        csv.rows.push_back({std::to_string(r.n), std::string(to_string(r.kind)), flag(r.quotiented), num(r.variance),
                            std::to_string(r.distinct_count)});
    }
    Json params{{"n_min", c.n_min}, {"n_max", c.n_max}, {"quotient_policy", c.policy}};
    emit(c.output, document("sweep", std::move(params), Json{{"rows", std::move(list)}}), csv, out);
    return kOk;
}

// verify --------------------------------------------------------------------

struct VerifyCmd {
    int n_max_full = 10;
    int n_max_subspace = 64;
    std::uint64_t seed = 0;
    std::string fault = "none";
    OutputOptions output;
};

int cmd_verify(const VerifyCmd& c, std::ostream& out) {
    VerifyOptions opt;
    opt.n_max_full = c.n_max_full;
    opt.n_max_subspace = c.n_max_subspace;
    opt.seed = c.seed;
    if (c.fault == "spectrum") opt.hopping_scale = 1.0 + 1e-6;
    const auto checks = run_verification(opt);

    bool all = true;
    Json list = Json::array();
    CsvTable csv{{"check", "passed", "max_deviation", "tolerance", "detail"}, {}};
    for (const auto& ch : checks) {
        all = all && ch.passed;
        list.push_back({{"name", ch.name},
                        {"passed", ch.passed},
                        {"max_deviation", ch.max_deviation},
                        {"tolerance", ch.tolerance},
                        {"detail", ch.detail}});
        csv.rows.push_back({ch.name, flag(ch.passed), num(ch.max_deviation), num(ch.tolerance), ch.detail});
    }
    Json params{{"n_max_full", c.n_max_full}, {"n_max_subspace", c.n_max_subspace}, {"seed", c.seed}};
    if (c.fault != "none") params["inject_fault"] = c.fault;
    emit(c.output, document("verify", std::move(params), Json{{"all_passed", all}, {"checks", std::move(list)}}), csv,
         out);
    return all ? kOk : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum distance geometry of uniform spin rings", "spinring"};
    app.require_subcommand(1);

    DistanceCmd distance;
    auto* sub_distance = app.add_subcommand("distance", "Distance and p_max matrices of a ring");
    add_ring_options(sub_distance, distance.ring);
    sub_distance->add_flag("--quotient", distance.quotient, "Identify antipodal spins (even n only)");
    add_output_options(sub_distance, distance.output);

    MetricCmd metric;
    auto* sub_metric = app.add_subcommand("metric-check", "Check the metric axioms exhaustively");
    add_ring_options(sub_metric, metric.ring);
    sub_metric->add_flag("--quotient", metric.quotient, "Identify antipodal spins (even n only)");
    sub_metric->add_option("--seed", metric.seed, "Seed for sampled triangle checks")->capture_default_str();
    sub_metric->add_option("--threads", metric.threads, "Worker threads for the triple scan")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_output_options(sub_metric, metric.output);

    ClassifyCmd classify;
    auto* sub_classify = app.add_subcommand("classify", "Prime / twice-prime classification and uniformity");
    add_ring_options(sub_classify, classify.ring);
    add_output_options(sub_classify, classify.output);

    EmbedCmd embed;
    auto* sub_embed = app.add_subcommand("embed", "Embed the ring metric in a constant-curvature space");
    add_ring_options(sub_embed, embed.ring);
    sub_embed->add_option("--space", embed.space, "spherical, euclidean or hyperbolic")
        ->check(CLI::IsMember({"spherical", "euclidean", "hyperbolic"}, CLI::ignore_case))
        ->capture_default_str();
    sub_embed->add_option("--kappa", embed.kappa, "Curvature, or 'auto'")->capture_default_str();
    sub_embed->add_option("--tol", embed.tol, "Distortion tolerance (relative)")->capture_default_str();
    add_output_options(sub_embed, embed.output);

    SweepCmd sweep;
    auto* sub_sweep = app.add_subcommand("sweep", "Distance variance against ring size");
    sub_sweep->add_option("--n-min", sweep.n_min, "Smallest ring")->capture_default_str();
    sub_sweep->add_option("--n-max", sweep.n_max, "Largest ring")->capture_default_str();
    sub_sweep->add_option("--quotient-policy", sweep.policy, "even: quotient even rings; never")
        ->check(CLI::IsMember({"even", "never"}))
        ->capture_default_str();
    add_output_options(sub_sweep, sweep.output, "csv");

    VerifyCmd verify;
    auto* sub_verify = app.add_subcommand("verify", "Run the cross-check oracle suite");
    sub_verify->add_option("--n-max-full", verify.n_max_full, "Largest ring checked in the full 2^n space")
        ->check(CLI::Range(3, kMaxFullSpaceSpins))
        ->capture_default_str();
    sub_verify->add_option("--n-max-subspace", verify.n_max_subspace, "Largest ring for single-excitation checks")
        ->check(CLI::Range(3, 512))
        ->capture_default_str();
    sub_verify->add_option("--seed", verify.seed, "Seed for randomized time samples")->capture_default_str();
    sub_verify->add_option("--inject-fault", verify.fault, "Test hook")
        ->check(CLI::IsMember({"none", "spectrum"}))
        ->group("");
    add_output_options(sub_verify, verify.output);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*sub_distance) return cmd_distance(distance, out);
        if (*sub_metric) return cmd_metric_check(metric, out);
        if (*sub_classify) return cmd_classify(classify, out);
        if (*sub_embed) return cmd_embed(embed, out, err);
        if (*sub_sweep) return cmd_sweep(sweep, out);
        if (*sub_verify) return cmd_verify(verify, out);
    } catch (const InvalidSpec& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InvalidArgs& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const QuotientOnOddRing& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace spinring::cli
