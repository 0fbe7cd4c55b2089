#ifndef MSW_FIXED_HPP
#define MSW_FIXED_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace msw {

/// Exact decimal with four fractional digits, stored as a scaled integer.
/// Used for currencies, waste volumes and surface areas so that cost and
/// capacity comparisons are deterministic (no float ties).
class Fixed {
public:
    static constexpr std::int64_t scale = 10'000;

    constexpr Fixed() = default;
    static constexpr Fixed from_raw(std::int64_t raw) {
        Fixed f;
        f.raw_ = raw;
        return f;
    }
    static constexpr Fixed from_int(std::int64_t whole) { return from_raw(whole * scale); }
    /// Nearest representable value; only for quantizing generated data,
    /// never for round-tripping file input (use parse for that).
    static Fixed from_double(double v);

    /// Parses a plain decimal literal ("1.1", "-0.1113", "55").
    /// Throws std::invalid_argument on malformed input or more than four
    /// fractional digits.
    static Fixed parse(std::string_view text);

    constexpr std::int64_t raw() const { return raw_; }
    double to_double() const { return static_cast<double>(raw_) / static_cast<double>(scale); }

    /// Shortest decimal representation ("1.1", not "1.1000").
    std::string str() const;

    constexpr Fixed operator+(Fixed o) const { return from_raw(raw_ + o.raw_); }
    constexpr Fixed operator-(Fixed o) const { return from_raw(raw_ - o.raw_); }
    constexpr Fixed operator-() const { return from_raw(-raw_); }
    constexpr Fixed& operator+=(Fixed o) {
        raw_ += o.raw_;
        return *this;
    }
    constexpr Fixed& operator-=(Fixed o) {
        raw_ -= o.raw_;
        return *this;
    }
    constexpr Fixed operator*(std::int64_t k) const { return from_raw(raw_ * k); }

    constexpr auto operator<=>(const Fixed&) const = default;

private:
    std::int64_t raw_ = 0;
};

constexpr Fixed operator*(std::int64_t k, Fixed f) { return f * k; }

}  // namespace msw

#endif
