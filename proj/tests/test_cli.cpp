#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "rydberg/cli.hpp"

using namespace rydberg;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/rydsim_test_" + name) {}
    ~TempFile() {
        std::remove(path.c_str());
        std::remove((path + ".manifest.json").c_str());
    }
};

RunConfig base(const std::string& cmd) {
    RunConfig c;
    c.command = cmd;
    c.n = 10;
    c.eccentricity = 0.4;
    c.Z = 92;
    return c;
}

}  // namespace

TEST_CASE("cli: byte-identical reruns") {
    TempFile f1("rep1.csv"), f2("rep2.csv");
    RunConfig c = base("autocorr");
    c.samples = 64;
    c.t_max = 2.0;
    c.output_path = f1.path;
    REQUIRE(run(c) == 0);
    c.output_path = f2.path;
    REQUIRE(run(c) == 0);
    const std::string a = slurp(f1.path), b = slurp(f2.path);
    CHECK(!a.empty());
    CHECK(a == b);
    CHECK(a.find("t_over_Tp,reA,imA,absA\n") == 0);
}

TEST_CASE("cli: manifest accompanies the output") {
    TempFile f("man.csv");
    RunConfig c = base("weights");
    c.output_path = f.path;
    REQUIRE(run(c) == 0);
    auto j = nlohmann::json::parse(slurp(f.path + ".manifest.json"));
    CHECK(j["command"] == "weights");
    CHECK(j["alpha"] == doctest::Approx(7.2973525693e-3));
    CHECK(j["au_time_seconds"] == doctest::Approx(2.4188843265857e-17));
    CHECK(j["energy_mode"] == "exact");
    CHECK(j["version"].is_string());
    CHECK(j["flags"]["n"] == 10);
}

TEST_CASE("cli: weights CSV has one row per entry") {
    TempFile f("w.csv");
    RunConfig c = base("weights");
    c.n = 12;
    c.output_path = f.path;
    REQUIRE(run(c) == 0);
    std::istringstream in(slurp(f.path));
    std::string line;
    int rows = -1;  // header
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 12 * 13 / 2);
}

TEST_CASE("cli: validation failures exit with code 2") {
    RunConfig c = base("autocorr");
    c.n = 0;
    CHECK(run(c) == 2);
    c = base("autocorr");
    c.eccentricity = 1.5;
    CHECK(run(c) == 2);
    c = base("density");
    c.resolution = 4096;
    CHECK(run(c) == 2);
    c = base("autocorr");
    c.samples = 0;
    CHECK(run(c) == 2);
    c = base("autocorr");
    c.t_max = -1.0;
    CHECK(run(c) == 2);
    c = base("spin");
    c.a = 0.0;
    c.b = 0.0;
    CHECK(run(c) == 2);
    c = base("nonsense");
    CHECK(run(c) == 2);
}

TEST_CASE("cli: unwritable output path exits with code 1") {
    RunConfig c = base("weights");
    c.output_path = "/nonexistent_dir/out.csv";
    CHECK(run(c) == 1);
}

TEST_CASE("cli: spinor flags are renormalized") {
    TempFile f1("sp1.csv"), f2("sp2.csv");
    RunConfig c = base("spin");
    c.samples = 8;
    c.a = 0.7071;  // not exactly unit-norm as typed
    c.b = 0.7071;
    c.output_path = f1.path;
    REQUIRE(run(c) == 0);
    c.a = 1.0 / std::sqrt(2.0);
    c.b = 1.0 / std::sqrt(2.0);
    c.output_path = f2.path;
    REQUIRE(run(c) == 0);
    CHECK(slurp(f1.path) == slurp(f2.path));
}

TEST_CASE("cli: binary density grid header") {
    TempFile f("den.bin");
    RunConfig c = base("density");
    c.resolution = 16;
    c.format = "bin";
    c.output_path = f.path;
    REQUIRE(run(c) == 0);
    const std::string blob = slurp(f.path);
    REQUIRE(blob.size() == 32 + 16 * 16 * sizeof(double));
    CHECK(blob.compare(0, 4, "RYDG") == 0);
    std::uint32_t nx = 0, ny = 0;
    double half = 0.0;
    std::memcpy(&nx, blob.data() + 4, 4);
    std::memcpy(&ny, blob.data() + 8, 4);
    std::memcpy(&half, blob.data() + 12, 8);
    CHECK(nx == 16);
    CHECK(ny == 16);
    CHECK(half == doctest::Approx(1.6 * 100.0 / 92.0));
}

TEST_CASE("cli: timescales JSON payload") {
    TempFile f("ts.json");
    RunConfig c = base("timescales");
    c.n = 50;
    c.Z = 1;
    c.output_path = f.path;
    REQUIRE(run(c) == 0);
    auto j = nlohmann::json::parse(slurp(f.path));
    CHECK(j["Tp_seconds"].get<double>() == doctest::Approx(1.4e-3).epsilon(0.05));
    CHECK(j["ratio_Tp_Trad"].get<double>() == doctest::Approx(0.0611).epsilon(1e-3));
}
