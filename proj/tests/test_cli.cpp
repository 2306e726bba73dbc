#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "revsec/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = revsec::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    return lines;
}

std::vector<double> fields(const std::string& line) {
    std::vector<double> out;
    std::istringstream in(line);
    for (std::string item; std::getline(in, item, ',');) out.push_back(std::strtod(item.c_str(), nullptr));
    return out;
}

std::size_t count(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST_CASE("profile subcommand") {
    const Result r = run({"profile", "--profile", "sphere", "--z", "0.6"});
    CHECK(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(std::strtod(lines[0].c_str(), nullptr) == 1.0 - 0.6 * 0.6);
    CHECK(std::strtod(lines[1].c_str(), nullptr) == -1.2);

    const Result list = run({"profile", "--list"});
    CHECK(list.code == 0);
    CHECK(lines_of(list.out).size() == 4);

    const Result bad = run({"profile", "--profile", "sphere", "--z", "2"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("OutOfDomain") != std::string::npos);

    const Result json = run({"profile", "--profile", "quadric:1,2,3,4", "--z", "1", "--json"});
    CHECK(json.code == 0);
    const auto j = nlohmann::json::parse(json.out);
    CHECK(j["F"].get<double>() == 6.0);
    CHECK(j["F_prime"].get<double>() == 4.0);

    CHECK(run({"profile", "--profile", "quadric:1,2", "--z", "0"}).code == 2);
}

TEST_CASE("section subcommand") {
    const Result r = run({"section", "--profile", "sphere", "--slope", "1", "--intercept", "0", "--samples", "64"});
    CHECK(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 128);
    CHECK(lines.front() == "y,z");
    CHECK(lines[1] == lines.back());
    double zmin = 1e300, zmax = -1e300;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto v = fields(lines[i]);
        zmin = std::min(zmin, v[1]);
        zmax = std::max(zmax, v[1]);
    }
    CHECK(std::abs(zmin + 1.0 / std::sqrt(2.0)) <= 1e-14);
    CHECK(std::abs(zmax - 1.0 / std::sqrt(2.0)) <= 1e-14);

    const Result svg =
        run({"section", "--profile", "sphere", "--slope", "1", "--intercept", "0", "--samples", "64", "--format", "svg"});
    CHECK(svg.code == 0);
    CHECK(count(svg.out, "<svg") == 1);
    CHECK(count(svg.out, "<polygon") == 2);
    CHECK(count(svg.out, "<circle") == 1);

    const Result esc = run({"section", "--profile", "sphere", "--slope", "4", "--intercept", "0.9"});
    CHECK(esc.code == 2);
    CHECK(esc.err.find("LoopEscapesDomain") != std::string::npos);

    const Result embed =
        run({"section", "--profile", "sphere", "--slope", "0.5", "--intercept", "0.1", "--samples", "32", "--embed"});
    const auto embedded = lines_of(embed.out);
    CHECK(embedded.front() == "x,y,z");
    for (std::size_t i = 1; i < embedded.size(); ++i) {
        const auto p = fields(embedded[i]);
        CHECK(std::abs(p[0] * p[0] + p[1] * p[1] - (1.0 - p[2] * p[2])) <= 1e-12);
        CHECK(std::abs(p[2] - (0.5 * p[0] + 0.1)) <= 1e-12);
    }

    CHECK(run({"section", "--profile", "sphere", "--slope", "1", "--intercept", "0", "--format", "png"}).code == 2);
    CHECK(run({"section", "--profile", "sphere", "--slope", "1", "--intercept", "0", "--samples", "4"}).code == 2);
}

TEST_CASE("section --out writes a file") {
    const auto path = std::filesystem::temp_directory_path() / "revsec_test_section.csv";
    const Result r = run({"section", "--profile", "sphere", "--slope", "1", "--intercept", "0", "--samples", "16",
                          "--out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(lines_of(text.str()).size() == 32);
    std::filesystem::remove(path);

    CHECK(run({"section", "--profile", "sphere", "--slope", "1", "--intercept", "0", "--out",
               "/nonexistent-dir/x.csv"})
              .code == 2);
}

TEST_CASE("center subcommand") {
    const Result r = run({"center", "--profile", "sphere", "--slope", "1", "--intercept", "0.48"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(std::abs(j["center_z"].get<double>() - 0.24) <= 1e-6);
    CHECK(j["central"].get<bool>());

    const Result k = run({"center", "--profile", "poly:2,0,0,1;1", "--slope", "0.4", "--intercept", "0"});
    CHECK(k.code == 1);
    CHECK_FALSE(nlohmann::json::parse(k.out)["central"].get<bool>());
}

TEST_CASE("detect subcommand") {
    const Result s = run({"detect", "--profile", "sphere", "--delta", "0.1", "--planes", "17", "--samples", "1024",
                          "--tol", "1e-4"});
    CHECK(s.code == 0);
    const auto j = nlohmann::json::parse(s.out);
    CHECK(j["is_quadric"].get<bool>());
    CHECK(std::abs(j["a"].get<double>() + 1.0) <= 1e-6);

    const Result k = run({"detect", "--profile", "poly:2,0,0,1;1", "--delta", "0.1"});
    CHECK(k.code == 1);
    CHECK_FALSE(nlohmann::json::parse(k.out)["is_quadric"].get<bool>());

    const Result bad = run({"detect", "--profile", "sphere", "--delta", "0.9"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("InvalidDomain") != std::string::npos);

    const Result one = run({"detect", "--profile", "hyperboloid:1,2", "--workers", "1"});
    const Result many = run({"detect", "--profile", "hyperboloid:1,2", "--workers", "8"});
    CHECK(one.code == 0);
    CHECK(one.out == many.out);
}

TEST_CASE("reconstruct subcommand") {
    const auto table = [](const Result& r) {
        const auto lines = lines_of(r.out);
        REQUIRE(lines.front() == "beta,zeta,fprime_reconstructed,fprime_analytic,abs_error");
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 1; i < lines.size(); ++i) rows.push_back(fields(lines[i]));
        return rows;
    };

    const Result s = run({"reconstruct", "--profile", "sphere", "--planes", "33"});
    CHECK(s.code == 0);
    const auto rows = table(s);
    CHECK(rows.size() == 33);
    for (const auto& row : rows) {
        CHECK(row[4] <= 1e-3);
        CHECK(std::abs(row[2] - (-2.0 * row[1])) <= 1e-3);
    }

    for (const auto& row : table(run({"reconstruct", "--profile", "cylinder:1,10"}))) CHECK(std::abs(row[2]) <= 1e-6);
    for (const auto& row : table(run({"reconstruct", "--profile", "paraboloid:2,1"}))) {
        CHECK(std::abs(row[2] - 1.0) <= 1e-3);
    }

    CHECK(run({"reconstruct", "--profile", "sphere", "--slope", "4"}).code == 2);
}

TEST_CASE("mvt subcommand") {
    const auto value = [](const Result& r) { return std::strtod(lines_of(r.out).at(0).c_str(), nullptr); };

    const Result quad = run({"mvt", "--poly", "1,2,3"});
    CHECK(quad.code == 0);
    CHECK(value(quad) <= 1e-12);
    CHECK(lines_of(quad.out).at(1) == "quadratic");

    const Result cube = run({"mvt", "--poly", "0,0,0,1"});
    CHECK(std::abs(value(cube) - 1.0) <= 1e-12);
    CHECK(lines_of(cube.out).at(1) == "not-quadratic");

    CHECK(lines_of(run({"mvt", "--poly", "5"}).out).at(1) == "quadratic");

    const auto j = nlohmann::json::parse(run({"mvt", "--poly", "0,0,0,1", "--json"}).out);
    CHECK_FALSE(j["quadratic"].get<bool>());

    CHECK(run({"mvt", "--poly", "1,x"}).code == 2);
    CHECK(run({"mvt", "--poly", ""}).code == 2);
}

TEST_CASE("usage errors and help") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"section", "--profile", "sphere"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}
