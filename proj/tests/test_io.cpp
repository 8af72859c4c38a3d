#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "hsle/error.hpp"
#include "hsle/io.hpp"

using namespace hsle;
namespace fs = std::filesystem;

namespace {
std::string tmp(const std::string& name) { return (fs::temp_directory_path() / ("hsle_io_" + name)).string(); }
}  // namespace

TEST_SUITE("io") {
    TEST_CASE("CSV round trip keeps every bit") {
        const std::string p = tmp("rt.csv");
        const double v[] = {0.1, 1.0 / 3, -2.5e-300, 6.02214076e23, 0.0};
        {
            CsvWriter w(p, "driving", "manifest.json", {"t", "W"});
            for (double x : v) w.row(std::vector<double>{x, -x});
        }
        const CsvTable t = read_csv(p, "driving");
        CHECK(t.version == kSchemaVersion);
        CHECK(t.manifest == "manifest.json");
        CHECK(t.column("W") == 1);
        CHECK(t.column("nope") == -1);
        REQUIRE(t.rows.size() == 5);
        for (size_t i = 0; i < 5; ++i) CHECK(std::stod(t.rows[i][0]) == v[i]);
    }

    TEST_CASE("schema and shape errors") {
        const std::string p = tmp("bad.csv");
        {
            CsvWriter w(p, "trace", "m.json", {"t", "re", "im"});
            w.row(std::vector<double>{0, 0, 0});
            CHECK_THROWS_AS(w.row(std::vector<double>{1, 2}), Error);
        }
        CHECK_THROWS_AS(read_csv(p, "driving"), Error);
        {
            std::ofstream f(p);
            f << "# schema=trace version=1 manifest=m.json\nt,re,im\n0,0\n";
        }
        CHECK_THROWS_AS(read_csv(p, "trace"), Error);
        {
            std::ofstream f(p);
            f << "# schema=trace version=99 manifest=m.json\nt,re,im\n";
        }
        CHECK_THROWS_AS(read_csv(p), Error);
        {
            std::ofstream f(p);
            f << "t,re,im\n";
        }
        CHECK_THROWS_AS(read_csv(p), Error);
    }

    TEST_CASE("manifest round trip") {
        RunManifest m;
        m.command = "simulate";
        m.params = {{"kappa", 3.0}, {"driver", "bm"}};
        m.seed = 18446744073709551615ULL;
        m.outputs = {"driving_0000.csv"};
        const std::string p = tmp("manifest.json");
        write_manifest(m, p);
        const RunManifest r = read_manifest(p);
        CHECK(r.command == "simulate");
        CHECK(r.seed == m.seed);
        CHECK(r.params == m.params);
        CHECK(r.outputs == m.outputs);
        CHECK(r.schema_version == kSchemaVersion);
        {
            std::ofstream f(p);
            f << "{\"command\": 1}";
        }
        CHECK_THROWS_AS(read_manifest(p), Error);
    }

    TEST_CASE("shortest double text") {
        CHECK(fmt_double(0.5) == "0.5");
        CHECK(fmt_double(1e-5) == "1e-05");
        CHECK(std::stod(fmt_double(M_PI)) == M_PI);
    }
}
