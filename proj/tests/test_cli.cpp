#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "kgws/cli.hpp"
#include "kgws/errors.hpp"
#include "kgws/params_io.hpp"

using namespace kgws;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "kgws");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> rows;
    std::istringstream is(text);
    std::string line;
    bool header = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            header = true;
            continue;
        }
        rows.push_back(line);
    }
    return rows;
}

}  // namespace

TEST_CASE("spectrum output") {
    const auto r = run({"spectrum", "--V0", "0.4", "--q", "1", "--a", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("# kgws 0.1.0\n", 0) == 0);
    CHECK(r.out.find("# config {") != std::string::npos);
    CHECK(r.out.find("n,branch,E_re,E_im,xi,b_signed,eps,physical,normalizable") != std::string::npos);
    CHECK(data_lines(r.out).size() == 2);

    const auto j = run({"spectrum", "--V0", "0.4", "--format", "json"});
    CHECK(j.code == 0);
    const auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["version"] == kVersion);
    CHECK(doc["levels"].size() == 2);
    CHECK(doc["levels"][0]["E_re"].get<double>() == doctest::Approx(0.23588989435406736).epsilon(1e-12));
}

TEST_CASE("exit codes") {
    CHECK(run({"spectrum", "--V0", "0"}).code == 0);
    const auto bad = run({"spectrum", "--V0", "0.6", "--q", "1", "--a", "1"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("q^2 alpha^2 >= 4 V0^2") != std::string::npos);
    CHECK(run({"spectrum", "--variant", "bogus"}).code == 2);
    CHECK(run({"spectrum", "--a", "-1"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"verify", "--V0", "0"}).code == 0);
    CHECK(run({"verify", "--V0", "0.4", "--perturb-closed", "1e-3"}).code == 3);
    const auto pt = run({"verify", "--variant", "pt", "--V0", "6", "--q", "1"});
    CHECK(pt.code == 0);
    CHECK(nlohmann::json::parse(pt.out)["mode"] == "residual");
}

TEST_CASE("verify on the real well reports the shooting comparison") {
    const auto r = run({"verify", "--V0", "0.4"});
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["mode"] == "shooting");
    for (const char* key : {"found", "matched", "unmatched_closed", "unmatched_numeric", "residuals"})
        CHECK(doc.contains(key));
    CHECK(r.code == (doc["unmatched_closed"].empty() && doc["unmatched_numeric"].empty() ? 0 : 3));
}

TEST_CASE("scan is deterministic across thread counts") {
    const auto a = run({"scan", "--preset", "fig1a", "--jobs", "1"});
    const auto b = run({"scan", "--preset", "fig1a", "--jobs", "4"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("sweep_value,n,E_re,E_im,emitted,branch,q") != std::string::npos);
    CHECK(run({"scan", "--preset", "nope"}).code == 2);
    for (const auto& p : scan_presets()) CHECK(&find_preset(p.name) == &p);
}

TEST_CASE("config file values are overridden by flags") {
    const auto path = std::filesystem::temp_directory_path() / "kgws_test_config.json";
    {
        std::ofstream f(path);
        f << R"({"V0": 0.4, "q": 1.0, "a": 1.0, "m": 1.0, "variant": "real"})";
    }
    const auto from_file = run({"spectrum", "--config", path.string()});
    CHECK(from_file.code == 0);
    CHECK(data_lines(from_file.out).size() == 2);
    const auto overridden = run({"spectrum", "--config", path.string(), "--V0", "0"});
    CHECK(overridden.code == 0);
    CHECK(data_lines(overridden.out).size() == 3);
    std::filesystem::remove(path);

    CHECK_THROWS_AS(parse_params_json(R"({"V0": 1, "extra": 2})"), ConfigError);
    CHECK_THROWS_AS(parse_params_json(R"({"V0": "x"})"), ConfigError);
    CHECK_THROWS_AS(parse_params_json("{"), ConfigError);
    const auto d = parse_params_json(R"({"q": -1.5, "variant": "pseudo"})");
    CHECK(d.q == -1.5);
    CHECK(d.variant == Variant::PseudoHermitian);
}

TEST_CASE("units of m") {
    const auto a = run({"spectrum", "--V0", "0.4", "--m", "2", "--units-m", "--format", "json"});
    REQUIRE(a.code == 0);
    const auto doc = nlohmann::json::parse(a.out);
    REQUIRE(doc["levels"].size() == 2);
    CHECK(doc["levels"][0]["E_re"].get<double>() == doctest::Approx(2 * 0.23588989435406736).epsilon(1e-12));
}

TEST_CASE("wavefunction output") {
    const auto r = run({"wavefunction", "--variant", "pt", "--V0", "6", "--q", "1", "--n", "0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("# E ") != std::string::npos);
    CHECK(r.out.find("# N ") != std::string::npos);
    CHECK(r.out.find("x,s_re,s_im,psi_re,psi_im") != std::string::npos);
    CHECK(!data_lines(r.out).empty());
    CHECK(run({"wavefunction", "--variant", "pt", "--V0", "6", "--q", "1", "--n", "40"}).code == 2);
}

TEST_CASE("installed binary") {
    const std::string cmd = std::string(KGWS_BINARY) + " spectrum --V0 0.6 > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 2);
    CHECK(std::system((std::string(KGWS_BINARY) + " --version > /dev/null").c_str()) == 0);
}
