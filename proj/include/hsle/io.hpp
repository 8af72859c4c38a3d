#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace hsle {

inline constexpr const char* kToolVersion = "hsle 1.0.0";
// bump when any CSV column set changes
inline constexpr int kSchemaVersion = 1;

struct RunManifest {
    std::string command;
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t seed = 0;
    int workers = 1;
    std::string version = kToolVersion;
    int schema_version = kSchemaVersion;
    std::vector<std::string> outputs;
    double wall_clock_s = 0.0;

    nlohmann::json to_json() const;
    static RunManifest from_json(const nlohmann::json& j);
};

void write_manifest(const RunManifest& m, const std::string& path);
RunManifest read_manifest(const std::string& path);

// First line "# schema=<name> version=<v> manifest=<file>", then the column row, then data.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::string& schema, const std::string& manifest,
              const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    void row(const std::vector<std::string>& values);
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ofstream out_;
    size_t ncols_;
};

// shortest text that reads back to the same double
std::string fmt_double(double x);

struct CsvTable {
    std::string schema;
    int version = 0;
    std::string manifest;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;  // -1 if absent
};

// Throws on a missing or malformed schema line or ragged rows. An empty expected_schema accepts any.
CsvTable read_csv(const std::string& path, const std::string& expected_schema = "");

}  // namespace hsle
