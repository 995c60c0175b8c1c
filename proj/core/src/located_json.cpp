#include "located_json.hpp"

#include <algorithm>

namespace diffcoh::detail {

namespace {

// forward iterator over the text that records how far the lexer has read
struct CountingIterator {
    using iterator_category = std::forward_iterator_tag;
    using value_type = char;
    using difference_type = std::ptrdiff_t;
    using pointer = const char*;
    using reference = const char&;

    const char* p = nullptr;
    const char* base = nullptr;
    std::size_t* read = nullptr;

    reference operator*() const { return *p; }
    CountingIterator& operator++() {
        ++p;
        if (read) *read = std::max(*read, std::size_t(p - base));
        return *this;
    }
    CountingIterator operator++(int) {
        auto t = *this;
        ++*this;
        return t;
    }
    bool operator==(const CountingIterator& o) const { return p == o.p; }
    bool operator!=(const CountingIterator& o) const { return p != o.p; }
};

class LineSax {
public:
    using number_integer_t = json::number_integer_t;
    using number_unsigned_t = json::number_unsigned_t;
    using number_float_t = json::number_float_t;
    using string_t = json::string_t;
    using binary_t = json::binary_t;

    LineSax(json& root, const std::string& text, const std::size_t* read, std::map<std::string, std::size_t>& lines)
        : dom_(root), text_(text), read_(read), lines_(lines) {}

    bool null() { return value(), dom_.null(); }
    bool boolean(bool v) { return value(), dom_.boolean(v); }
    bool number_integer(number_integer_t v) { return value(), dom_.number_integer(v); }
    bool number_unsigned(number_unsigned_t v) { return value(), dom_.number_unsigned(v); }
    bool number_float(number_float_t v, const string_t& s) { return value(), dom_.number_float(v, s); }
    bool string(string_t& v) { return value(), dom_.string(v); }
    bool binary(binary_t& v) { return value(), dom_.binary(v); }
    bool start_object(std::size_t n) {
        value();
        stack_.push_back({false, 0, {}, here()});
        return dom_.start_object(n);
    }
    bool key(string_t& k) {
        stack_.back().key = k;
        return dom_.key(k);
    }
    bool end_object() {
        stack_.pop_back();
        return dom_.end_object();
    }
    bool start_array(std::size_t n) {
        value();
        stack_.push_back({true, 0, {}, here()});
        return dom_.start_array(n);
    }
    bool end_array() {
        stack_.pop_back();
        return dom_.end_array();
    }
    bool parse_error(std::size_t pos, const std::string& tok, const nlohmann::detail::exception& ex) {
        return dom_.parse_error(pos, tok, ex);
    }

private:
    struct Frame {
        bool array;
        std::size_t index;
        std::string key;
        std::string path;
    };

    std::size_t line_of(std::size_t pos) const {
        pos = std::min(pos, text_.size());
        return std::size_t(std::count(text_.begin(), text_.begin() + long(pos), '\n')) + 1;
    }

    static std::string escape(const std::string& k) {
        std::string out;
        for (char c : k) {
            if (c == '~') out += "~0";
            else if (c == '/') out += "~1";
            else out += c;
        }
        return out;
    }

    // record the pointer of the value about to be added
    void value() {
        std::string path;
        if (!stack_.empty()) {
            auto& f = stack_.back();
            path = f.path + "/" + (f.array ? std::to_string(f.index++) : escape(f.key));
        }
        current_ = path;
        // the lexer has read one character past the token start at most
        lines_[path] = line_of(*read_ > 0 ? *read_ - 1 : 0);
    }
    std::string here() const { return current_; }

    nlohmann::detail::json_sax_dom_parser<json> dom_;
    const std::string& text_;
    const std::size_t* read_;
    std::map<std::string, std::size_t>& lines_;
    std::vector<Frame> stack_;
    std::string current_;
};

}  // namespace

LocatedJson::LocatedJson(const std::string& text, std::string source) : source_(std::move(source)) {
    std::size_t read = 0;
    CountingIterator first{text.data(), text.data(), &read}, last{text.data() + text.size(), text.data(), nullptr};
    LineSax sax(root_, text, &read, lines_);
    try {
        json::sax_parse(first, last, &sax);
    } catch (const json::exception& e) {
        // the dom parser rethrows through a base reference, so the byte offset comes from the reader
        std::size_t pos = std::min<std::size_t>(read, text.size());
        std::size_t line = std::size_t(std::count(text.begin(), text.begin() + long(pos > 0 ? pos - 1 : 0), '\n')) + 1;
        std::string what = e.what();
        auto colon = what.find("syntax error");
        throw ParseError(source_ + ":" + std::to_string(line) + ": " +
                         (colon == std::string::npos ? what : what.substr(colon)));
    }
}

std::size_t LocatedJson::line(const std::string& pointer) const {
    // fall back to the nearest located ancestor
    std::string p = pointer;
    while (true) {
        auto it = lines_.find(p);
        if (it != lines_.end()) return it->second;
        if (p.empty()) return 1;
        p = p.substr(0, p.rfind('/'));
    }
}

void LocatedJson::fail(const std::string& pointer, const std::string& msg) const {
    throw ParseError(source_ + ":" + std::to_string(line(pointer)) + ": " + msg +
                     (pointer.empty() ? "" : " (at " + pointer + ")"));
}

const json& LocatedJson::field(const std::string& pointer, const json& obj, const std::string& key) const {
    if (!obj.is_object()) fail(pointer, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(pointer, "missing field '" + key + "'");
    return *it;
}

std::string LocatedJson::string_at(const std::string& pointer, const json& v) const {
    if (!v.is_string()) fail(pointer, "expected a string");
    return v.get<std::string>();
}

long long LocatedJson::int_at(const std::string& pointer, const json& v) const {
    if (!v.is_number_integer()) fail(pointer, "expected an integer");
    return v.get<long long>();
}

Rational LocatedJson::rational_at(const std::string& pointer, const json& v) const {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_string()) {
        try {
            return Rational::parse(v.get<std::string>());
        } catch (const Error&) {
            fail(pointer, "bad rational '" + v.get<std::string>() + "'");
        }
    }
    fail(pointer, "expected an integer or a \"p/q\" string");
}

}  // namespace diffcoh::detail
