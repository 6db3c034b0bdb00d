#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("knotcurv_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
    const std::string cmd = std::string(KNOTCURV_CLI_PATH) + " " + args + " 2>/dev/null";
    const int raw = std::system(cmd.c_str());
    return WEXITSTATUS(raw);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("generate then reload round-trips byte-identically") {
    TempDir dir;
    const std::string first = dir.file("circle.json");
    const std::string second = dir.file("circle2.json");
    REQUIRE(run("generate --family circle --samples 256 --radius 2 -o " + first) == 0);
    const json c = json::parse(slurp(first));
    CHECK(c["closed"].get<bool>());
    CHECK(c["vertices"].size() == 256);

    // re-serialize through the tool: generate same spec again
    REQUIRE(run("generate --family circle --samples 256 --radius 2 -o " + second) == 0);
    CHECK(slurp(first) == slurp(second));
}

TEST_CASE("invariants report for a circle") {
    TempDir dir;
    const std::string curve = dir.file("circle.json");
    const std::string report_path = dir.file("report.json");
    REQUIRE(run("generate --family circle --samples 512 -o " + curve) == 0);
    REQUIRE(run("invariants " + curve + " -o " + report_path) == 0);
    const json report = json::parse(slurp(report_path));
    CHECK(std::abs(report["acn"].get<double>()) < 1e-9);
    CHECK(report["total_curvature"].get<double>() == doctest::Approx(6.2832).epsilon(1e-3));
    CHECK(report["ropelength"].get<double>() == doctest::Approx(6.2832).epsilon(5e-3));
}

TEST_CASE("invariants rejects malformed and self-intersecting input") {
    TempDir dir;
    const std::string bad = dir.file("bad.json");
    std::ofstream(bad) << "{ this is not json";
    CHECK(run("invariants " + bad) == 2);

    const std::string eight = dir.file("eight.json");
    std::ofstream(eight)
        << R"({"closed":true,"vertices":[[0,0,0],[2,2,0],[2,0,0],[0,2,0]]})";
    CHECK(run("invariants " + eight) == 2);
}

TEST_CASE("verify subcommand exit codes and certificates") {
    TempDir dir;
    const std::string trefoil = dir.file("trefoil.json");
    const std::string certs_path = dir.file("certs.json");
    REQUIRE(run("generate --family torus_knot --p 2 --q 3 --major-radius 3 --minor-radius 1 "
                "--samples 512 -o " +
                trefoil) == 0);
    REQUIRE(run("verify " + trefoil + " --which main_theorem -o " + certs_path) == 0);
    const json certs = json::parse(slurp(certs_path));
    REQUIRE(certs.is_array());
    CHECK(certs.size() == 2);
    for (const auto& cert : certs)
        CHECK(cert["pass"].get<bool>());

    // packing equality case on the circle
    const std::string circle = dir.file("circle.json");
    REQUIRE(run("generate --family circle --samples 4096 -o " + circle) == 0);
    REQUIRE(run("verify " + circle + " --which packing -o " + certs_path) == 0);
    const json packing = json::parse(slurp(certs_path));
    CHECK(std::abs(packing[0]["margin"].get<double>()) /
              packing[0]["rhs"].get<double>() <
          1e-6);

    CHECK(run("verify " + trefoil + " --which no_such_selector") == 2);
    CHECK(run("verify " + dir.file("missing.json") + " --which packing") == 2);
}

TEST_CASE("oracle subcommand") {
    TempDir dir;
    const std::string circle = dir.file("circle.json");
    const std::string out = dir.file("oracle.json");
    REQUIRE(run("generate --family circle --samples 256 -o " + circle) == 0);
    REQUIRE(run("oracle " + circle + " --directions 64 --seed 9 -o " + out) == 0);
    const json result = json::parse(slurp(out));
    CHECK(result["mean"].get<double>() == 0.0);
    CHECK(result["min_observed"].get<long long>() == 0);
}

TEST_CASE("sweep produces ordered deterministic CSV") {
    TempDir dir;
    const std::string plan = dir.file("plan.json");
    std::ofstream(plan) << R"({
        "family": "torus_knot",
        "samples": 384,
        "base_params": {"p": 2, "major_radius": 3, "minor_radius": 1},
        "varying": {"name": "q", "values": [5, 3]},
        "certificates": ["packing", "main_theorem"],
        "workers": 2
    })";
    const std::string csv1 = dir.file("sweep1.csv");
    const std::string csv2 = dir.file("sweep2.csv");
    REQUIRE(run("sweep " + plan + " -o " + csv1) == 0);
    REQUIRE(run("sweep " + plan + " -o " + csv2 + " --workers 1") == 0);
    const std::string text = slurp(csv1);
    CHECK(text == slurp(csv2));  // concurrency never changes the file

    std::istringstream lines(text);
    std::string header, row1, row2;
    std::getline(lines, header);
    std::getline(lines, row1);
    std::getline(lines, row2);
    CHECK(header.rfind("id,family,param,value,samples,closed,L,kappa,R,E_L,acn,acn_err", 0) ==
          0);
    CHECK(header.find("main_theorem_c4_margin") != std::string::npos);
    CHECK(row1.find("torus_knot-0,torus_knot,q,3,") == 0);  // sorted by value
    CHECK(row2.find("torus_knot-1,torus_knot,q,5,") == 0);
    CHECK(row1.find("false") == std::string::npos);  // all certificates pass
}

TEST_CASE("sweep records member failures in-row without aborting") {
    TempDir dir;
    const std::string plan = dir.file("plan.json");
    // q = 4 shares a factor with p = 2, so that member fails to generate
    std::ofstream(plan) << R"({
        "family": "torus_knot",
        "samples": 256,
        "base_params": {"p": 2, "major_radius": 3, "minor_radius": 1},
        "varying": {"name": "q", "values": [3, 4]}
    })";
    const std::string csv = dir.file("sweep.csv");
    REQUIRE(run("sweep " + plan + " -o " + csv) == 0);
    std::istringstream lines(slurp(csv));
    std::string header, good, bad;
    std::getline(lines, header);
    std::getline(lines, good);
    std::getline(lines, bad);
    CHECK(good.find("gcd") == std::string::npos);
    CHECK(bad.find("gcd") != std::string::npos);  // error text lands in the row
}

TEST_CASE("sweep rejects an empty varying list") {
    TempDir dir;
    const std::string plan = dir.file("plan.json");
    std::ofstream(plan) << R"({
        "family": "circle",
        "varying": {"name": "radius", "values": []}
    })";
    CHECK(run("sweep " + plan) == 2);
}

TEST_CASE("helix sweep shows decreasing total curvature") {
    TempDir dir;
    const std::string plan = dir.file("plan.json");
    std::ofstream(plan) << R"({
        "family": "helix_composite",
        "samples": 512,
        "varying": {"name": "n", "values": [3, 5]},
        "workers": 2
    })";
    const std::string csv = dir.file("helix.csv");
    REQUIRE(run("sweep " + plan + " -o " + csv) == 0);
    std::istringstream lines(slurp(csv));
    std::string header;
    std::getline(lines, header);
    // kappa is column 7 (0-based index 7)
    auto kappa_of = [&](const std::string& line) {
        std::istringstream cells(line);
        std::string cell;
        for (int i = 0; i <= 7; ++i)
            std::getline(cells, cell, ',');
        return std::stod(cell);
    };
    std::string row1, row2;
    std::getline(lines, row1);
    std::getline(lines, row2);
    CHECK(kappa_of(row2) < kappa_of(row1));
}
