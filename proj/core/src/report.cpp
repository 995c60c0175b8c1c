#include "diffcoh/report.hpp"

#include <sstream>

#include "diffcoh/errors.hpp"
#include "located_json.hpp"

#ifndef DIFFCOH_VERSION
#define DIFFCOH_VERSION "unknown"
#endif

namespace diffcoh::report {

using ojson = nlohmann::ordered_json;
using detail::json;

std::string toolkit_version() { return DIFFCOH_VERSION; }

bool RunReport::ok() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

std::string to_json(const RunReport& r) {
    ojson j;
    j["schema"] = r.schema;
    j["version"] = r.version;
    j["command"] = r.command;
    j["parameters"] = ojson::object();
    for (const auto& [k, v] : r.parameters) j["parameters"][k] = v;
    j["ok"] = r.ok();
    j["tables"] = ojson::array();
    for (const auto& t : r.tables) j["tables"].push_back({{"name", t.name}, {"columns", t.columns}, {"rows", t.rows}});
    j["checks"] = ojson::array();
    for (const auto& c : r.checks)
        j["checks"].push_back(
            {{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}, {"provenance", c.provenance}});
    if (r.wall_time_s) j["wall_time_s"] = *r.wall_time_s;
    return j.dump(2) + "\n";
}

RunReport from_json(const std::string& text, const std::string& source) {
    detail::LocatedJson doc(text, source);
    const json& root = doc.root();
    if (!root.is_object()) doc.fail("", "a report is a JSON object");
    RunReport r;
    r.schema = doc.string_at("/schema", doc.field("", root, "schema"));
    if (r.schema != kSchema) doc.fail("/schema", "unsupported schema '" + r.schema + "'");
    r.version = doc.string_at("/version", doc.field("", root, "version"));
    r.command = doc.string_at("/command", doc.field("", root, "command"));
    // parameter order is kept by reading the raw object in document order
    const json& params = doc.field("", root, "parameters");
    if (!params.is_object()) doc.fail("/parameters", "expected an object");
    auto ordered = ojson::parse(text);
    for (const auto& [k, v] : ordered["parameters"].items()) {
        if (!v.is_string()) doc.fail("/parameters/" + k, "parameter values are strings");
        r.parameters.emplace_back(k, v.get<std::string>());
    }
    const json& tables = doc.field("", root, "tables");
    for (std::size_t i = 0; i < tables.size(); ++i) {
        std::string p = "/tables/" + std::to_string(i);
        Table t;
        t.name = doc.string_at(p + "/name", doc.field(p, tables[i], "name"));
        const json& cols = doc.field(p, tables[i], "columns");
        for (std::size_t c = 0; c < cols.size(); ++c) t.columns.push_back(doc.string_at(p + "/columns/" + std::to_string(c), cols[c]));
        const json& rows = doc.field(p, tables[i], "rows");
        for (std::size_t ri = 0; ri < rows.size(); ++ri) {
            std::string rp = p + "/rows/" + std::to_string(ri);
            if (!rows[ri].is_array() || rows[ri].size() != t.columns.size())
                doc.fail(rp, "row width differs from the column count");
            std::vector<std::string> row;
            for (std::size_t c = 0; c < rows[ri].size(); ++c) row.push_back(doc.string_at(rp + "/" + std::to_string(c), rows[ri][c]));
            t.rows.push_back(std::move(row));
        }
        r.tables.push_back(std::move(t));
    }
    const json& checks = doc.field("", root, "checks");
    for (std::size_t i = 0; i < checks.size(); ++i) {
        std::string p = "/checks/" + std::to_string(i);
        Check c;
        c.name = doc.string_at(p + "/name", doc.field(p, checks[i], "name"));
        const json& passed = doc.field(p, checks[i], "passed");
        if (!passed.is_boolean()) doc.fail(p + "/passed", "expected true or false");
        c.passed = passed.get<bool>();
        c.detail = doc.string_at(p + "/detail", doc.field(p, checks[i], "detail"));
        c.provenance = doc.string_at(p + "/provenance", doc.field(p, checks[i], "provenance"));
        r.checks.push_back(std::move(c));
    }
    if (root.contains("wall_time_s")) {
        if (!root["wall_time_s"].is_number()) doc.fail("/wall_time_s", "expected a number");
        r.wall_time_s = root["wall_time_s"].get<double>();
    }
    return r;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void csv_row(std::ostringstream& os, const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << "\n";
}

}  // namespace

std::string to_csv(const RunReport& r) {
    std::ostringstream os;
    for (std::size_t i = 0; i < r.tables.size(); ++i) {
        if (i) os << "\n";
        csv_row(os, r.tables[i].columns);
        for (const auto& row : r.tables[i].rows) csv_row(os, row);
    }
    if (r.tables.empty() && !r.checks.empty()) {
        csv_row(os, {"check", "passed", "detail", "provenance"});
        for (const auto& c : r.checks) csv_row(os, {c.name, c.passed ? "true" : "false", c.detail, c.provenance});
    }
    return os.str();
}

}  // namespace diffcoh::report
