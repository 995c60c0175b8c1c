#pragma once

// Versioned run reports: JSON for archiving and diffing, CSV for the tables.

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace diffcoh::report {

inline constexpr const char* kSchema = "diffcoh.report/1";

std::string toolkit_version();

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    friend bool operator==(const Table&, const Table&) = default;
};

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
    std::string provenance;  // where the expected value comes from
    friend bool operator==(const Check&, const Check&) = default;
};

struct RunReport {
    std::string schema = kSchema;
    std::string version = toolkit_version();
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::vector<Table> tables;
    std::vector<Check> checks;
    std::optional<double> wall_time_s;  // only when timing was asked for

    bool ok() const;
    friend bool operator==(const RunReport&, const RunReport&) = default;
};

std::string to_json(const RunReport& r);
// throws ParseError on malformed input or an unknown schema
RunReport from_json(const std::string& text, const std::string& source = "<report>");
// every table, a blank line between tables, RFC 4180 quoting
std::string to_csv(const RunReport& r);

}  // namespace diffcoh::report
