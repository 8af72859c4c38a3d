#include "hsle/io.hpp"

#include <charconv>
#include <sstream>

#include "hsle/error.hpp"

namespace hsle {

nlohmann::json RunManifest::to_json() const {
    return {{"command", command},
            {"params", params},
            {"seed", seed},
            {"workers", workers},
            {"version", version},
            {"schema_version", schema_version},
            {"outputs", outputs},
            {"wall_clock_s", wall_clock_s}};
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
    RunManifest m;
    try {
        m.command = j.at("command").get<std::string>();
        m.params = j.at("params");
        m.seed = j.at("seed").get<std::uint64_t>();
        m.workers = j.value("workers", 1);
        m.version = j.at("version").get<std::string>();
        m.schema_version = j.at("schema_version").get<int>();
        m.outputs = j.at("outputs").get<std::vector<std::string>>();
        m.wall_clock_s = j.value("wall_clock_s", 0.0);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::Parameter, std::string("manifest: ") + e.what());
    }
    return m;
}

void write_manifest(const RunManifest& m, const std::string& path) {
    std::ofstream f(path);
    if (!f) fail(ErrorKind::Usage, "cannot write " + path);
    f << m.to_json().dump(2) << '\n';
}

RunManifest read_manifest(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail(ErrorKind::Usage, "cannot open " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::Parameter, path + ": " + e.what());
    }
    return RunManifest::from_json(j);
}

std::string fmt_double(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

CsvWriter::CsvWriter(const std::string& path, const std::string& schema, const std::string& manifest,
                     const std::vector<std::string>& columns)
    : path_(path), out_(path), ncols_(columns.size()) {
    if (!out_) fail(ErrorKind::Usage, "cannot write " + path);
    out_ << "# schema=" << schema << " version=" << kSchemaVersion << " manifest=" << manifest << '\n';
    for (size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    if (values.size() != ncols_) fail(ErrorKind::Invariant, "CsvWriter: row width mismatch in " + path_);
    for (size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << fmt_double(values[i]);
    out_ << '\n';
}

void CsvWriter::row(const std::vector<std::string>& values) {
    if (values.size() != ncols_) fail(ErrorKind::Invariant, "CsvWriter: row width mismatch in " + path_);
    for (size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << values[i];
    out_ << '\n';
}

int CsvTable::column(const std::string& name) const {
    for (size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    return -1;
}

namespace {

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ',')) out.push_back(cur);
    if (!s.empty() && s.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

CsvTable read_csv(const std::string& path, const std::string& expected_schema) {
    std::ifstream f(path);
    if (!f) fail(ErrorKind::Usage, "cannot open " + path);
    CsvTable t;
    std::string line;
    if (!std::getline(f, line) || line.rfind("# ", 0) != 0) fail(ErrorKind::Parameter, path + ": missing schema line");
    std::istringstream head(line.substr(2));
    std::string kv;
    bool have_schema = false, have_version = false;
    while (head >> kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) continue;
        const std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
        if (k == "schema") {
            t.schema = v;
            have_schema = true;
        } else if (k == "version") {
            t.version = std::atoi(v.c_str());
            have_version = true;
        } else if (k == "manifest") {
            t.manifest = v;
        }
    }
    if (!have_schema || !have_version) fail(ErrorKind::Parameter, path + ": malformed schema line");
    if (!expected_schema.empty() && t.schema != expected_schema)
        fail(ErrorKind::Parameter, path + ": schema '" + t.schema + "', expected '" + expected_schema + "'");
    if (t.version != kSchemaVersion)
        fail(ErrorKind::Parameter, path + ": schema version " + std::to_string(t.version) + " not supported");
    if (!std::getline(f, line)) fail(ErrorKind::Parameter, path + ": missing column row");
    t.columns = split_commas(line);
    long n = 2;
    while (std::getline(f, line)) {
        ++n;
        if (line.empty()) continue;
        auto cells = split_commas(line);
        if (cells.size() != t.columns.size())
            fail(ErrorKind::Parameter, path + ": line " + std::to_string(n) + " has " + std::to_string(cells.size()) +
                                           " fields, expected " + std::to_string(t.columns.size()));
        t.rows.push_back(std::move(cells));
    }
    return t;
}

}  // namespace hsle
