#include "doctest.h"

#include <filesystem>
#include <sstream>

#include "picard/cli.hpp"

using namespace picard;

namespace {

std::string inst(const char* name) { return std::string(PICARD_SOURCE_DIR) + "/instances/" + name; }

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_command(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("classify the skewed quasi-metric instance") {
    auto r = cli({"classify", inst("quasi_line.json"), "--format", "json"});
    CHECK(r.code == 0);
    auto rep = json::parse(r.out);
    CHECK(rep["taxonomy"] == "quasi-metric");
    CHECK(rep["axioms"]["a2"]["holds"] == false);
    CHECK(rep["axioms"]["a1"]["holds"] == true);
    CHECK(rep["coverage"]["kind"] == "sampled");
    CHECK(rep["version"] == kVersion);
    CHECK(rep["instance_hash"].is_string());
}

TEST_CASE("classify a finite instance emits the jms witness") {
    auto r = cli({"classify", inst("line_metric_3.json"), "--format", "json"});
    CHECK(r.code == 0);
    auto rep = json::parse(r.out);
    CHECK(rep["taxonomy"] == "metric");
    CHECK(rep["w3"]["holds"] == true);
    CHECK(rep["jms"]["r"] == 2);
    CHECK(rep["jms"]["R"] == 2);
    CHECK(rep["jms"]["delta"] == 1);
    CHECK(rep["jms"]["eta"] == 2);
    CHECK(rep["jms"]["verified"] == true);
}

TEST_CASE("classify an analytic interval instance") {
    auto r = cli({"classify", inst("unit_overlap_analytic.json"), "--format", "json"});
    CHECK(r.code == 0);
    auto rep = json::parse(r.out);
    CHECK(rep["taxonomy"] == "none");
    CHECK(rep["axioms"]["a0"]["holds"] == false);  // d(0,1) = 0 with 0 != 1
    CHECK(rep["axioms"]["a1"]["holds"] == false);  // d(x,x) = 1
    CHECK(rep["axioms"]["a2"]["holds"] == true);
    CHECK(rep["axioms"]["a3"]["holds"] == false);
}

TEST_CASE("check-fn on the plateau function") {
    auto r = cli({"check-fn", inst("halving_plateau.json"), "--format", "json"});
    CHECK(r.code == 0);  // Phi member
    auto rep = json::parse(r.out);
    CHECK(rep["phi"]["verdict"] == true);
    CHECK(rep["boyd_wong"]["holds"] == false);
    CHECK(rep["boyd_wong"]["witness"] == "1/2");
    CHECK(rep["pasicki"]["holds"] == true);
    CHECK(rep["comparison"]["holds"] == true);
    CHECK(rep["matkowski"]["holds"] == true);
}

TEST_CASE("solve the quasi instance from the command line") {
    auto r = cli({"solve", inst("quasi_line.json"), "--mode", "quasi", "--from", "1", "--format", "json"});
    CHECK(r.code == 0);
    auto rep = json::parse(r.out);
    CHECK(rep["certified"] == true);
    CHECK(std::abs(rep["fixed_point"].get<double>()) < 1e-9);
    CHECK(rep["hypothesis"]["holds"] == true);
    CHECK(rep["stop_reason"] == "tolerance");
    CHECK(rep["iterations"].get<int>() <= 60);
}

TEST_CASE("solve a finite instance and export the gap csv") {
    std::string csv = (std::filesystem::temp_directory_path() / "picard_test_gaps.csv").string();
    auto r = cli({"solve", inst("line_metric_3.json"), "--from", "2", "--csv", csv, "--format", "json"});
    CHECK(r.code == 0);
    auto rep = json::parse(r.out);
    CHECK(rep["fixed_point"] == "0");
    CHECK(rep["uniqueness"] == "verified-by-oracle");
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "n,a_n,c_n");
}

TEST_CASE("hypothesis failure exits 1") {
    auto r = cli({"solve", inst("three_cycle.json"), "--from", "0", "--format", "json"});
    CHECK(r.code == 1);
    auto rep = json::parse(r.out);
    CHECK(rep["certified"] == false);
    CHECK(rep["fixed_point"].is_null());
}

TEST_CASE("oracle lists the brute-force fixed points") {
    auto r = cli({"oracle", inst("three_cycle.json"), "--format", "json"});
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["fixed_points"].empty());

    auto r2 = cli({"oracle", inst("line_metric_3.json"), "--format", "json"});
    CHECK(json::parse(r2.out)["fixed_points"] == json::array({"0"}));
}

TEST_CASE("derive star emits the instance plus inheritance verdicts") {
    auto r = cli({"derive", inst("line_metric_3.json"), "--kind", "star", "--format", "json"});
    CHECK(r.code == 0);
    auto rep = json::parse(r.out);
    CHECK(rep["derived"]["type"] == "finite");
    CHECK(rep["derived"]["derived_from"]["kind"] == "star");
    CHECK(rep["inheritance"]["domination"]["pass"] == true);
    CHECK(rep["inheritance"]["cauchy_transfer"]["pass"] == true);
}

TEST_CASE("power lifts the sign flip and rejects the cycle") {
    auto r = cli({"power", inst("sign_flip_quasi.json"), "--l", "2", "--from", "1", "--format", "json"});
    CHECK(r.code == 0);
    auto rep = json::parse(r.out);
    CHECK(rep["outcome"] == "ok");
    CHECK(std::abs(rep["fixed_point"].get<double>()) < 1e-9);

    auto bad = cli({"power", inst("three_cycle.json"), "--l", "3", "--from", "0", "--format", "json"});
    CHECK(bad.code == 1);
    CHECK(json::parse(bad.out)["outcome"] == "lift-failure");
}

TEST_CASE("envelope and combine emit piecewise functions") {
    auto r = cli({"envelope", inst("halving_plateau.json"), "--format", "json"});
    CHECK(r.code == 0);
    auto rep = json::parse(r.out);
    CHECK(rep["result"].contains("breakpoints"));

    auto c = cli({"combine", inst("halving_plateau.json"), inst("halving_plateau.json"),
                  "--format", "json"});
    CHECK(c.code == 0);
}

TEST_CASE("usage and validation errors exit 2") {
    CHECK(cli({"solve"}).code == 2);                                    // missing instance
    CHECK(cli({"nonsense"}).code == 2);                                 // unknown subcommand
    CHECK(cli({"classify", "/nonexistent.json"}).code == 2);            // unreadable file
    CHECK(cli({"solve", inst("quasi_line.json"), "--mode", "weird", "--from", "1"}).code == 2);
    auto r = cli({"solve", inst("overlap_pair.json"), "--mode", "banach", "--from", "0"});
    CHECK(r.code == 2);  // no map in the instance
}

TEST_CASE("instance-embedded mode and start point are used as defaults") {
    auto r = cli({"solve", inst("quasi_line.json"), "--format", "json"});
    CHECK(r.code == 0);  // mode "quasi" and from "1" come from the instance
    auto rep = json::parse(r.out);
    CHECK(rep["mode"] == "quasi");
    CHECK(std::abs(rep["fixed_point"].get<double>()) < 1e-9);

    auto p = cli({"power", inst("sign_flip_quasi.json"), "--l", "2", "--format", "json"});
    CHECK(p.code == 0);  // start point from options.from
}

TEST_CASE("identical inputs and seed give byte-identical json") {
    auto a = cli({"classify", inst("quasi_line.json"), "--format", "json", "--seed", "7"});
    auto b = cli({"classify", inst("quasi_line.json"), "--format", "json", "--seed", "7"});
    CHECK(a.out == b.out);
    auto c = cli({"solve", inst("quasi_line.json"), "--from", "1", "--format", "json", "--seed", "7"});
    auto d = cli({"solve", inst("quasi_line.json"), "--from", "1", "--format", "json", "--seed", "7"});
    CHECK(c.out == d.out);
}
