#include "msw/fixed.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace msw {

Fixed Fixed::from_double(double v) {
    return from_raw(static_cast<std::int64_t>(std::llround(v * static_cast<double>(scale))));
}

Fixed Fixed::parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty decimal literal");
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    std::int64_t whole = 0;
    std::size_t digits = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        whole = whole * 10 + (text[pos] - '0');
        ++pos;
        ++digits;
    }
    std::int64_t frac = 0;
    std::size_t frac_digits = 0;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            if (frac_digits == 4)
                throw std::invalid_argument("decimal literal '" + std::string(text) +
                                            "' has more than 4 fractional digits");
            frac = frac * 10 + (text[pos] - '0');
            ++pos;
            ++frac_digits;
        }
        if (frac_digits == 0)
            throw std::invalid_argument("decimal literal '" + std::string(text) +
                                        "' ends with a bare '.'");
    }
    if (pos != text.size() || (digits == 0 && frac_digits == 0))
        throw std::invalid_argument("malformed decimal literal '" + std::string(text) + "'");
    for (std::size_t i = frac_digits; i < 4; ++i) frac *= 10;
    std::int64_t raw = whole * scale + frac;
    return from_raw(negative ? -raw : raw);
}

std::string Fixed::str() const {
    std::int64_t v = raw_;
    std::string sign;
    if (v < 0) {
        sign = "-";
        v = -v;
    }
    std::int64_t whole = v / scale;
    std::int64_t frac = v % scale;
    std::string out = sign + std::to_string(whole);
    if (frac != 0) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "%04lld", static_cast<long long>(frac));
        std::string digits(buf);
        while (!digits.empty() && digits.back() == '0') digits.pop_back();
        out += '.';
        out += digits;
    }
    return out;
}

}  // namespace msw
