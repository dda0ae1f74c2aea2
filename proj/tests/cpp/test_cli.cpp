#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "spinring/embedding.hpp"
#include "spinring/verify.hpp"

using Json = nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "spinring");
    std::ostringstream out, err;
    const int code = spinring::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream is(s);
    for (std::string line; std::getline(is, line);) v.push_back(line);
    return v;
}

}  // namespace

TEST_CASE("distance command") {
    const Outcome o = run({"distance", "--n", "3"});
    REQUIRE(o.code == 0);
    const Json j = o.json();
    CHECK(j["schema_version"] == "1");
    CHECK(j["command"] == "distance");
    CHECK(j["params"]["n"] == 3);
    const auto& d = j["payload"]["distances"];
    REQUIRE(d.size() == 3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            CHECK(d[a][b].get<double>() == doctest::Approx(a == b ? 0.0 : 0.81093).epsilon(1e-5));
    CHECK(j["payload"]["metric_kind"] == "metric");

    const Json q = run({"distance", "--n", "4", "--quotient"}).json();
    CHECK(q["payload"]["distances"].size() == 2);
    CHECK(q["payload"]["distances"][0][1].get<double>() == doctest::Approx(1.38629).epsilon(1e-5));

    const Json semi = run({"distance", "--n", "4"}).json();
    CHECK(semi["payload"]["metric_kind"] == "semi-metric");
    CHECK(semi["payload"]["distances"][0][2].get<double>() == 0.0);
    CHECK(semi["payload"]["antipodal_pairs"].size() == 2);

    const Outcome csv = run({"distance", "--n", "3", "--format", "csv"});
    const auto rows = lines(csv.out);
    REQUIRE(rows.size() == 10);
    CHECK(rows[0] == "i,j,distance,p_max");
    CHECK(rows[1] == "0,0,0,1");
}

TEST_CASE("usage errors exit 2 with one diagnostic line") {
    for (const auto& args : std::vector<std::vector<std::string>>{{"distance", "--n", "2"},
                                                                   {"distance", "--n", "5", "--quotient"},
                                                                   {"distance"},
                                                                   {"distance", "--n", "5", "--coupling", "ising"},
                                                                   {"distance", "--n", "5", "--format", "xml"},
                                                                   {"embed", "--n", "5", "--kappa", "abc"},
                                                                   {"embed", "--n", "5", "--space", "hyperbolic", "--kappa", "1"},
                                                                   {"sweep", "--n-min", "10", "--n-max", "5"},
                                                                   {"verify", "--n-max-full", "15"},
                                                                   {"nonsense"},
                                                                   {}}) {
        const Outcome o = run(args);
        CAPTURE(o.err);
        CHECK(o.code == 2);
        CHECK(o.out.empty());
        CHECK(lines(o.err).size() == 1);
    }
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("metric-check command") {
    const Outcome n9 = run({"metric-check", "--n", "9"});
    CHECK(n9.code == 0);
    CHECK(n9.json()["payload"]["classification"] == "Metric");
    const Outcome n8 = run({"metric-check", "--n", "8"});
    CHECK(n8.code == 0);
    CHECK(n8.json()["payload"]["classification"] == "SemiMetricAntipodal");
    CHECK(n8.json()["payload"]["violations"]["separation"].size() == 4);
    const Outcome n8q = run({"metric-check", "--n", "8", "--quotient", "--threads", "2"});
    CHECK(n8q.code == 0);
    CHECK(n8q.json()["payload"]["classification"] == "Metric");
    const auto csv = lines(run({"metric-check", "--n", "9", "--format", "csv"}).out);
    CHECK(csv[0] == "field,value");
    CHECK(csv[1] == "classification,Metric");
}

TEST_CASE("classify command") {
    const Json p13 = run({"classify", "--n", "13"}).json()["payload"];
    CHECK(p13["kind"] == "Prime");
    CHECK(p13["uniform"] == true);
    CHECK(p13["distinct_values"].size() == 1);
    CHECK(p13["c_n"].is_number());
    const Json p26 = run({"classify", "--n", "26"}).json()["payload"];
    CHECK(p26["kind"] == "TwicePrime");
    CHECK(p26["quotiented"] == true);
    CHECK(p26["uniform"] == true);
    const Json p21 = run({"classify", "--n", "21"}).json()["payload"];
    CHECK(p21["kind"] == "OddComposite");
    CHECK(p21["uniform"] == false);
    CHECK(p21["distinct_values"].size() >= 2);
    CHECK(p21["c_n"].is_null());
}

TEST_CASE("embed command") {
    const Outcome s5 = run({"embed", "--n", "5", "--space", "spherical", "--kappa", "auto"});
    REQUIRE(s5.code == 0);
    const Json e = s5.json()["payload"]["embedding"];
    CHECK(e["ambient_dim"] == 4);
    CHECK(e["manifold_dim"] == 3);
    CHECK(e["coordinates"].size() == 5);
    CHECK(e["coordinates"][0].size() == 4);
    CHECK(e["max_distortion"].get<double>() < 1e-8);

    const Json e6 = run({"embed", "--n", "6", "--space", "euclidean"}).json()["payload"];
    CHECK(e6["embeddable"] == true);
    CHECK(e6["embedding"]["ambient_dim"] == 2);
    CHECK(e6["embedding"]["coordinates"].size() == 3);
    CHECK(e6["embedding"]["max_distortion"].get<double>() < 1e-8);

    const double km = s5.json()["payload"]["kappa_max"].get<double>();
    std::ostringstream k;
    k.precision(17);
    k << 1.01 * km;
    const Outcome above = run({"embed", "--n", "5", "--space", "spherical", "--kappa", k.str()});
    CHECK(above.code == 1);
    CHECK(above.err.find("NotEmbeddable") != std::string::npos);
    CHECK(above.json()["payload"]["embedding"].is_null());

    const Json hyp = run({"embed", "--n", "9", "--space", "hyperbolic"}).json()["payload"];
    CHECK(hyp["kappa"] == -1.0);
    CHECK(hyp["embeddable"] == true);

    const Json composite = run({"embed", "--n", "15"}).json()["payload"];
    CHECK(composite["edge_weight"]["rule"] == "mean");
    CHECK(composite["kappa"].get<double>() == composite["feasibility"]["threshold"].get<double>());

    const auto csv = lines(run({"embed", "--n", "5", "--format", "csv"}).out);
    CHECK(csv[0] == "point,axis,value");
    CHECK(csv.size() == 1 + 5 * 4);
}

TEST_CASE("sweep command") {
    const Outcome o = run({"sweep", "--n-min", "3", "--n-max", "30"});
    REQUIRE(o.code == 0);
    const auto rows = lines(o.out);
    REQUIRE(rows.size() == 29);
    CHECK(rows[0] == "n,kind,quotiented,variance,distinct_values");
    CHECK(rows[1] == "3,Prime,false,0,1");
    CHECK(rows[13].rfind("15,OddComposite,false,", 0) == 0);
    const Json j = run({"sweep", "--n-min", "3", "--n-max", "8", "--format", "json"}).json();
    CHECK(j["payload"]["rows"].size() == 6);
    CHECK(j["params"]["quotient_policy"] == "even");
}

TEST_CASE("verify command") {
    const Outcome ok = run({"verify"});
    CHECK(ok.code == 0);
    CHECK(ok.json()["payload"]["all_passed"] == true);

    const Outcome fault = run({"verify", "--inject-fault", "spectrum", "--n-max-subspace", "12"});
    CHECK(fault.code == 1);
    bool spectrum_failed = false;
    const Json doc = fault.json();
    for (const auto& c : doc["payload"]["checks"])
        if (c["name"] == "spectrum_agreement") spectrum_failed = c["passed"] == false;
    CHECK(spectrum_failed);
    CHECK(run({"--help"}).out.find("inject") == std::string::npos);
}

TEST_CASE("output determinism and --out") {
    CHECK(run({"distance", "--n", "7"}).out == run({"distance", "--n", "7"}).out);
    CHECK(run({"metric-check", "--n", "11", "--seed", "3"}).out == run({"metric-check", "--n", "11", "--seed", "3"}).out);
    const auto path = std::filesystem::temp_directory_path() / "spinring_cli_test.json";
    const Outcome o = run({"classify", "--n", "9", "--out", path.string()});
    CHECK(o.code == 0);
    CHECK(o.out.empty());
    std::ifstream f(path);
    const Json j = Json::parse(f);
    CHECK(j["command"] == "classify");
    std::filesystem::remove(path);
}
