// End-to-end checks of the command-line tool: spawns the built binary and
// inspects bytes, JSON fields, and exit codes.

#include "doctest.h"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

using json = nlohmann::json;

struct RunResult {
    int exitCode = -1;
    std::string out;
};

RunResult run(const std::string& args, const std::string& envPrefix = "") {
    std::string cmd = envPrefix + MOMENTLAB_CLI_PATH + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    int st = pclose(pipe);
    r.exitCode = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("classify reports the verdict and maps it to the exit code") {
    RunResult ok = run("classify --q 'coeffs=[1]' --p 'coeffs=[5,7,3,1]'");
    CHECK(ok.exitCode == 0);
    json rep = json::parse(ok.out);
    CHECK(rep["schema"] == 1);
    CHECK(rep["verdict"]["decision"] == "Moment");
    CHECK(rep["verdict"]["rule"] == "degree3");
    CHECK(rep["verdict"]["boundaryFlag"] == true);
    CHECK(rep["verdict"]["fdAudit"]["passed"] == true);

    RunResult bad = run("classify --q 'coeffs=[1]' --p 'roots=[(-1,0),(-0.9,2)]'");
    CHECK(bad.exitCode == 3);
    json rep2 = json::parse(bad.out);
    CHECK(rep2["verdict"]["decision"] == "NotMoment");
    CHECK(rep2["verdict"]["sign"]["kind"] == "NegativityWitness");
    CHECK(rep2["verdict"]["sign"]["witnessValue"].get<double>() < 0.0);

    CHECK(run("classify --q 'coeffs=[1]' --p 'coeffs=[oops]'").exitCode == 1);
    CHECK(run("classify --q 'coeffs=[1]' --p 'coeffs=[2,3,1]' --format csv").exitCode == 1);
    CHECK(run("counterexample --format csv").exitCode == 1);
}

TEST_CASE("weight csv emits the sampled grid") {
    RunResult r = run("weight --q 'coeffs=[1]' --p 'coeffs=[2,3,1]' --grid 5 --format csv");
    CHECK(r.exitCode == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 6);
    CHECK(ls[0] == "t,w");
    for (int i = 1; i <= 5; ++i) {
        double t = 0, wv = 0;
        REQUIRE(std::sscanf(ls[i].c_str(), "%lf,%lf", &t, &wv) == 2);
        CHECK(t == doctest::Approx((6.0 - i) / 5.0).epsilon(1e-15));
        CHECK(wv == doctest::Approx(1.0 - t).epsilon(1e-12));  // w = 1 - t for 1/((z+1)(z+2))
    }
}

TEST_CASE("output bytes are deterministic, also across thread counts") {
    const std::string cmd = "weight --q 'coeffs=[1]' --p 'coeffs=[5,7,3,1]' --grid 2000";
    RunResult a = run(cmd);
    RunResult b = run(cmd);
    RunResult c = run(cmd, "MOMENTLAB_THREADS=4 ");
    RunResult d = run(cmd, "MOMENTLAB_THREADS=1 ");
    CHECK(a.exitCode == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(a.out == d.out);
}

TEST_CASE("the request block echoes the arguments") {
    RunResult r = run(
        "classify --q 'coeffs=[5,1]' --p 'coeffs=[6,11,6,1]' --grid 2000 --max-order 20 "
        "--seed 99");
    json rep = json::parse(r.out);
    CHECK(rep["request"]["command"] == "classify");
    CHECK(rep["request"]["q"] == "coeffs=[5,1]");
    CHECK(rep["request"]["p"] == "coeffs=[6,11,6,1]");
    CHECK(rep["request"]["grid"] == 2000);
    CHECK(rep["request"]["maxOrder"] == 20);
    CHECK(rep["request"]["seed"] == 99);
}

TEST_CASE("decompose lists residues for both poles") {
    RunResult r = run("decompose --q 'coeffs=[1]' --p 'coeffs=[2,3,1]'");
    CHECK(r.exitCode == 0);
    json rep = json::parse(r.out);
    REQUIRE(rep["terms"].size() == 2);
    CHECK(rep["leadingCoeff"] == doctest::Approx(1.0));
    for (const auto& term : rep["terms"]) {
        double re = term["pole"]["re"].get<double>();
        double a = term["A"]["re"].get<double>();
        CHECK(term["order"] == 1);
        CHECK(term["pole"]["im"].get<double>() == doctest::Approx(0.0));
        if (re < -1.5)
            CHECK(a == doctest::Approx(-1.0).epsilon(1e-12));  // residue at -2
        else
            CHECK(a == doctest::Approx(1.0).epsilon(1e-12));  // residue at -1
    }

    RunResult csv = run("decompose --q 'coeffs=[1]' --p 'coeffs=[2,3,1]' --format csv");
    auto ls = lines(csv.out);
    REQUIRE(ls.size() == 3);
    CHECK(ls[0] == "pole_re,pole_im,order,A_re,A_im");
}

TEST_CASE("moments csv cross-checks claimed values by quadrature") {
    RunResult r =
        run("moments --q 'coeffs=[1]' --p 'coeffs=[2,3,1]' --max-order 5 --format csv");
    CHECK(r.exitCode == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 7);
    CHECK(ls[0] == "n,claimed,integrated,relError");
    for (int i = 1; i <= 6; ++i) {
        long long n = -1;
        double claimed = 0, integrated = 0, rel = 0;
        REQUIRE(std::sscanf(ls[i].c_str(), "%lld,%lf,%lf,%lf", &n, &claimed, &integrated,
                            &rel) == 4);
        CHECK(n == i - 1);
        CHECK(claimed == doctest::Approx(1.0 / ((n + 1.0) * (n + 2.0))).epsilon(1e-12));
        CHECK(rel <= 1e-9);
    }
}

TEST_CASE("divdiff reports the positivity certificate for simple real poles") {
    RunResult r = run("divdiff --q 'coeffs=[20,9,1]' --p 'coeffs=[6,11,6,1]' --grid 3");
    CHECK(r.exitCode == 0);
    json rep = json::parse(r.out);
    REQUIRE_FALSE(rep["sufficient"].is_null());
    CHECK(rep["sufficient"]["allNonnegative"] == true);
    auto vals = rep["sufficient"]["values"].get<std::vector<double>>();
    REQUIRE(vals.size() == 3);
    CHECK(vals[0] == doctest::Approx(12.0));
    CHECK(vals[1] == doctest::Approx(6.0));
    CHECK(vals[2] == doctest::Approx(1.0));

    RunResult complexCase = run("divdiff --q 'coeffs=[1]' --p 'coeffs=[5,2,1]' --grid 3");
    CHECK(json::parse(complexCase.out)["sufficient"].is_null());
}

TEST_CASE("divdiff and convolve reproduce the weight samples") {
    const std::string tail = " --p 'coeffs=[6,11,6,1]' --grid 4 --format csv";
    auto parseRows = [](const std::string& text) {
        std::vector<std::pair<double, double>> rows;
        for (const auto& line : lines(text)) {
            double t = 0, wv = 0;
            if (std::sscanf(line.c_str(), "%lf,%lf", &t, &wv) == 2) rows.emplace_back(t, wv);
        }
        return rows;
    };
    auto wRows = parseRows(run("weight --q 'coeffs=[1]'" + tail).out);
    auto dRows = parseRows(run("divdiff --q 'coeffs=[1]'" + tail).out);
    auto cRows = parseRows(run("convolve --q 'coeffs=[1]'" + tail).out);
    REQUIRE(wRows.size() == 4);
    REQUIRE(dRows.size() == 4);
    REQUIRE(cRows.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(wRows[i].first == dRows[i].first);
        CHECK(wRows[i].first == cRows[i].first);
        double scale = std::max({1.0, std::fabs(wRows[i].second)});
        CHECK(std::fabs(wRows[i].second - dRows[i].second) <= 1e-8 * scale);
        CHECK(std::fabs(wRows[i].second - cRows[i].second) <= 1e-6 * scale);
    }
    // convolve refuses a non-unit numerator
    CHECK(run("convolve --q 'coeffs=[2]'" + tail).exitCode == 1);
}

TEST_CASE("counterexample pipeline report") {
    RunResult r = run("counterexample --c 1.0");
    CHECK(r.exitCode == 3);
    json rep = json::parse(r.out);
    CHECK(rep["request"]["c"] == 1.0);
    REQUIRE(rep["partialSumPolynomial"].is_array());
    CHECK(rep["partialSumPolynomial"].size() == 8);  // degree 7
    int multSum = 0;
    for (const auto& root : rep["roots"]) multSum += root["multiplicity"].get<int>();
    CHECK(multSum == 7);
    CHECK(rep["verdict"]["decision"] == "NotMoment");
    CHECK(rep["verdict"]["sign"]["witnessValue"].get<double>() < 0.0);
}

TEST_CASE("--out writes the same bytes the terminal would get") {
    const std::string file = "/tmp/momentlab_cli_out_check.csv";
    const std::string base = "weight --q 'coeffs=[1]' --p 'coeffs=[2,3,1]' --grid 20 --format csv";
    RunResult direct = run(base);
    RunResult redirected = run(base + " --out " + file);
    CHECK(redirected.exitCode == 0);
    CHECK(redirected.out.empty());
    std::ifstream in(file, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream gather;
    gather << in.rdbuf();
    CHECK(gather.str() == direct.out);
    std::remove(file.c_str());
}

} // TEST_SUITE("cli")
