#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "siclab/cli.hpp"
#include "siclab/fiducials.hpp"
#include "siclab/json_io.hpp"

using namespace siclab;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "siclab");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("siclab_test_" + name);
}

}  // namespace

TEST(JsonIo, ComplexAndVectorRoundTrip) {
    const CVector z = exact_fiducial_d4().vector;
    const CVector back = vector_from_json(Json::parse(vector_to_json(z).dump()));
    EXPECT_EQ(back, z);
    EXPECT_EQ(complex_from_json(Json::parse("[1.5, -2]")), Complex(1.5, -2));
    EXPECT_EQ(vector_from_json(Json::parse("[1, 0]")), (CVector(2) << 1.0, 0.0).finished());
    EXPECT_EQ(vector_from_json(Json::parse(R"({"vector": [[0, 1]]})"))(0), Complex(0, 1));
}

TEST(JsonIo, RecordRoundTrip) {
    const auto rec = exact_fiducial_d3(0.25);
    const auto back = fiducial_from_json(Json::parse(to_json(rec).dump()));
    EXPECT_EQ(back.d, 3);
    EXPECT_EQ(back.source, "exact-family");
    EXPECT_EQ(back.t, rec.t);
    EXPECT_EQ(back.vector, rec.vector);
}

TEST(JsonIo, OverlapTableRoundTrip) {
    const auto t = overlap_map(Dimension(4), exact_fiducial_d4().vector);
    const auto back = overlap_table_from_json(Json::parse(to_json(t).dump()));
    EXPECT_EQ(back.values(), t.values());
}

TEST(JsonIo, CatalogAppend) {
    const auto path = temp_path("catalog.json");
    std::filesystem::remove(path);
    EXPECT_TRUE(read_catalog(path.string()).empty());
    append_to_catalog(path.string(), exact_fiducial_d2());
    append_to_catalog(path.string(), exact_fiducial_d3(0.1));
    const auto cat = read_catalog(path.string());
    ASSERT_EQ(cat.size(), 2u);
    EXPECT_EQ(cat[1].d, 3);
    std::filesystem::remove(path);
}

TEST(JsonIo, CatalogPathResolution) {
    EXPECT_EQ(resolve_catalog_path("x.json"), "x.json");
}

TEST(JsonIo, FieldInfo) {
    const Json j = fieldinfo_json(4);
    EXPECT_EQ(j["D"], 5);
    EXPECT_EQ(j["type"], "z");
    EXPECT_EQ(j["r"], 1);
    EXPECT_EQ(fieldinfo_json(30)["type"], "a6");
    EXPECT_EQ(fieldinfo_json(19)["D"], 5);
}

TEST(Cli, VerifyExactFiducials) {
    EXPECT_EQ(run({"verify", "--d", "3", "--family-t", "0.1"}).code, 0);
    EXPECT_EQ(run({"verify", "--d", "4", "--catalog", "bengtsson"}).code, 0);
    const auto r = run({"verify", "--d", "2", "--catalog", "d2", "--json"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(Json::parse(r.out)["pass"].get<bool>());
}

TEST(Cli, VerifyNonFiducialFails) {
    const auto path = temp_path("e0.json");
    std::ofstream(path) << "[[1,0],[0,0],[0,0]]";
    EXPECT_EQ(run({"verify", "--d", "3", "--vector", path.string()}).code, 1);
    std::filesystem::remove(path);
}

TEST(Cli, MalformedInput) {
    EXPECT_EQ(run({"verify", "--d", "3"}).code, 2);
    EXPECT_EQ(run({"verify", "--d", "1", "--catalog", "d2"}).code, 2);
    EXPECT_EQ(run({"verify", "--d", "4", "--catalog", "d2"}).code, 2);
    EXPECT_EQ(run({"orbits"}).code, 2);
    EXPECT_EQ(run({"nonsense"}).code, 2);
    const auto path = temp_path("bad.json");
    std::ofstream(path) << "[[1,0],";
    EXPECT_EQ(run({"verify", "--d", "2", "--vector", path.string()}).code, 2);
    std::filesystem::remove(path);
}

TEST(Cli, Orbits) {
    for (const auto& [d, count] : std::vector<std::pair<std::string, int>>{{"5", 2}, {"7", 4}, {"4", 4}}) {
        const auto r = run({"orbits", "--d", d, "--json"});
        ASSERT_EQ(r.code, 0);
        const Json j = Json::parse(r.out);
        EXPECT_EQ(j["orbit_count"], count);
        EXPECT_EQ(j["divisor_count"], count);
        EXPECT_TRUE(j["match"].get<bool>());
    }
}

TEST(Cli, FieldInfo) {
    const auto r = run({"fieldinfo", "--d", "4", "--json"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(Json::parse(r.out)["D"], 5);
}

TEST(Cli, OverlapTable) {
    const auto r = run({"overlap", "--d", "3", "--family-t", "0", "--json"});
    ASSERT_EQ(r.code, 0);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["values"].size(), 9u);
}

TEST(Cli, SearchAppendsToCatalog) {
    const auto path = temp_path("search.json");
    std::filesystem::remove(path);
    const auto r = run({"search", "--d", "3", "--restarts", "4", "--seed", "7", "--catalog-file", path.string(), "--json"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(read_catalog(path.string()).size(), 1u);
    EXPECT_EQ(run({"verify", "--d", "3", "--catalog", "0", "--catalog-file", path.string()}).code, 0);
    std::filesystem::remove(path);
}

TEST(Cli, MomentSamples) {
    const auto r3 = run({"moment", "--d", "3", "--samples", "360"});
    ASSERT_EQ(r3.code, 0);
    std::istringstream is(r3.out);
    std::string line;
    int rows = 0, inside = 0;
    std::getline(is, line);
    while (std::getline(is, line)) {
        ++rows;
        if (line.back() == '1') ++inside;
    }
    EXPECT_EQ(rows, 360);
    EXPECT_EQ(inside, 360);

    const auto r4 = run({"moment", "--d", "4", "--samples", "360"});
    ASSERT_EQ(r4.code, 0);
    std::istringstream is4(r4.out);
    rows = inside = 0;
    std::getline(is4, line);
    while (std::getline(is4, line)) {
        ++rows;
        if (line.back() == '1') ++inside;
    }
    EXPECT_EQ(rows, 720);
    EXPECT_LT(inside, rows);
}

TEST(Cli, Selftest) {
    const auto r = run({"selftest", "--dmin", "2", "--dmax", "6"});
    EXPECT_EQ(r.code, 0) << r.out;
}
