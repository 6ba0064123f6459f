#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hartley/transforms.hpp"

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + HARTLEY_CLI + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::vector<double>> rows(const std::string& csv, std::string* header = nullptr) {
    std::stringstream ss(csv);
    std::string line;
    std::getline(ss, line);
    if (header) *header = line;
    std::vector<std::vector<double>> out;
    while (std::getline(ss, line)) {
        std::vector<double> r;
        std::stringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) r.push_back(std::stod(cell));
        out.push_back(r);
    }
    return out;
}

}  // namespace

TEST_CASE("transform") {
    auto r = run("transform --op hh2 --fn exp --route kernel --x 0.25:4:16");
    CHECK(r.code == 0);
    std::string header;
    const auto t = rows(r.out, &header);
    CHECK(header == "x,value");
    REQUIRE(t.size() == 16);
    CHECK(t.front()[0] == 0.25);
    CHECK(t.back()[0] == 4.0);
    CHECK(t[1][0] / t[0][0] == doctest::Approx(t[15][0] / t[14][0]));
    const double ref = hartley::transforms::forward(hartley::transforms::OperatorId::HH2, hartley::catalog("exp"),
                                                    hartley::transforms::Route::kernel, t[5][0]);
    CHECK(t[5][1] == ref);

    r = run("transform --op fc --fn exp --route direct --x 1:1:1");
    CHECK(r.code == 0);
    const auto one = rows(r.out);
    REQUIRE(one.size() == 1);
    CHECK(one[0][1] == doctest::Approx(0.3989422804014327).epsilon(1e-9));

    r = run("transform --op fcfs --fn gauss --route spectral --inverse --x 0.5:2:3");
    CHECK(r.code == 0);
    CHECK(rows(r.out).size() == 3);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("transform --op bogus --fn exp").code == 2);
    CHECK(run("transform --op hh --fn nothing").code == 2);
    CHECK(run("transform --op hh --fn exp --route fast").code == 2);
    CHECK(run("transform --op hh --fn exp --x 1:2").code == 2);
    CHECK(run("transform --op hh --fn exp --x 0:2:3").code == 2);
    CHECK(run("transform --op hh --fn exp --route direct --inverse").code == 2);
    CHECK(run("verify bogus").code == 2);
    CHECK(run("solve --eq nope --g exp").code == 2);
    CHECK(run("solve --eq eq_3_5 --g exp").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("").code == 2);
}

TEST_CASE("verify") {
    auto r = run("verify margins");
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["suite"] == "margins");
    CHECK(j["config_echo"].is_object());
    bool seen = false;
    for (const auto& c : j["checks"]) {
        CHECK(c.contains("name"));
        CHECK(c.contains("value"));
        CHECK(c.contains("threshold"));
        CHECK(c["pass"] == true);
        if (c["name"] == "margins/mu_3_12/lambda0") seen = true;
    }
    CHECK(seen);

    r = run("verify parseval");
    CHECK(r.code == 0);
    const auto p = nlohmann::json::parse(r.out);
    CHECK(p["checks"].size() == 6);
    for (const auto& c : p["checks"]) {
        if (c["name"] != "parseval/runtime_s") CHECK(c["value"].get<double>() < 1e-6);
    }

    r = run("verify specfun --format text");
    CHECK(r.code == 0);
    CHECK(r.out.find("pass specfun/k0_1") != std::string::npos);
}

TEST_CASE("verify reports failure with exit 1") {
    // a coarse tau step under-resolves the spectra, so Parseval fails
    const auto r = run("--tau-step 2 verify parseval");
    CHECK(r.code == 1);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["pass"] == false);
}

TEST_CASE("solve") {
    auto r = run("solve --eq stieltjes2k --g exp-image --x 0.5:2:4");
    CHECK(r.code == 0);
    std::string header;
    const auto t = rows(r.out, &header);
    CHECK(header == "x,f,residual");
    REQUIRE(t.size() == 4);
    for (const auto& row : t) {
        CHECK(row[1] == doctest::Approx(std::exp(-row[0])).epsilon(1e-8));
        CHECK(std::abs(row[2]) < 1e-8);
    }

    r = run("solve --eq stieltjes2k --g zero --x 0.5:2:3");
    CHECK(r.code == 0);
    for (const auto& row : rows(r.out)) {
        CHECK(row[1] == 0.0);
        CHECK(row[2] == 0.0);
    }

    for (const char* eq : {"hilbert2k-c", "hilbert2k-s"}) {
        r = run(std::string("solve --eq ") + eq + " --g gauss-image --x 0.5:2:3");
        CHECK(r.code == 0);
        for (const auto& row : rows(r.out)) {
            CHECK(row[1] == doctest::Approx(std::exp(-row[0] * row[0])).epsilon(1e-6));
            CHECK(std::abs(row[2]) < 1e-6);
        }
    }
}

TEST_CASE("deterministic output and output directory") {
    const std::string args = "transform --op hhfcfs --fn gauss --route kernel --x 0.1:10:7";
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);

    const auto dir = std::filesystem::temp_directory_path() / "hartley_cli_test_out";
    std::filesystem::remove_all(dir);
    const auto c = run(args, "HARTLEY_OUTPUT_DIR=" + dir.string());
    CHECK(c.code == 0);
    const auto file = dir / "transform_hhfcfs_gauss_kernel.csv";
    REQUIRE(std::filesystem::exists(file));
    std::ifstream in(file);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == a.out);
    std::filesystem::remove_all(dir);
}
