#ifndef MSW_SRC_TEXTIO_HPP
#define MSW_SRC_TEXTIO_HPP

// Internal helpers shared by the instance and report readers/writers.
// Both formats are line-based: '#' comments, [section] headers, and either
// "key = value" pairs or whitespace-separated records.

#include <charconv>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msw/instance.hpp"

namespace msw::textio {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split_fields(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
        if (j > i) out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

/// Shortest round-trip decimal form of a double.
inline std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

struct Line {
    std::string text;  // trimmed, comments stripped
    int number = 0;
};

/// Reads lines, strips comments/blank lines, tracks line numbers.
class Reader {
public:
    Reader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}

    std::optional<Line> next() {
        std::string raw;
        while (std::getline(in_, raw)) {
            ++line_no_;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            auto t = trim(raw);
            if (t.empty()) continue;
            return Line{std::string(t), line_no_};
        }
        return std::nullopt;
    }

    [[noreturn]] void fail(int line, const std::string& what) const {
        throw ParseError(name_ + ":" + std::to_string(line) + ": " + what);
    }

    const std::string& name() const { return name_; }

private:
    std::istream& in_;
    std::string name_;
    int line_no_ = 0;
};

inline double parse_double(const Reader& r, int line, std::string_view tok, std::string_view field) {
    double v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        r.fail(line, std::string(field) + ": malformed number '" + std::string(tok) + "'");
    return v;
}

inline long parse_int(const Reader& r, int line, std::string_view tok, std::string_view field) {
    long v = 0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        r.fail(line, std::string(field) + ": malformed integer '" + std::string(tok) + "'");
    return v;
}

inline Fixed parse_fixed(const Reader& r, int line, std::string_view tok, std::string_view field) {
    try {
        return Fixed::parse(tok);
    } catch (const std::invalid_argument& e) {
        r.fail(line, std::string(field) + ": " + e.what());
    }
}

}  // namespace msw::textio

#endif
