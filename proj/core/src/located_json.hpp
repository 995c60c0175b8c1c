#pragma once

// JSON parsing that remembers the line of every value, for located error messages.

#include <cstddef>
#include <iterator>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "diffcoh/errors.hpp"
#include "diffcoh/rational.hpp"

namespace diffcoh::detail {

using nlohmann::json;

class LocatedJson {
public:
    LocatedJson(const std::string& text, std::string source);

    const json& root() const { return root_; }
    const std::string& source() const { return source_; }
    std::size_t line(const std::string& pointer) const;

    [[noreturn]] void fail(const std::string& pointer, const std::string& msg) const;

    // typed access with located errors
    const json& field(const std::string& pointer, const json& obj, const std::string& key) const;
    std::string string_at(const std::string& pointer, const json& v) const;
    long long int_at(const std::string& pointer, const json& v) const;
    Rational rational_at(const std::string& pointer, const json& v) const;

private:
    json root_;
    std::string source_;
    std::map<std::string, std::size_t> lines_;
};

}  // namespace diffcoh::detail
