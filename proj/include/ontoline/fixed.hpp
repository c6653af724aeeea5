#pragma once

#include <cctype>
#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ontoline {

// Fixed-point decimal with three fractional digits. Durations, masses,
// coordinates and thresholds are stored in thousandths so that schedule
// arithmetic and comparisons stay exact; floating point only appears where
// a square root or a ratio is unavoidable.
class Fixed3 {
public:
    constexpr Fixed3() = default;

    static constexpr Fixed3 from_thousandths(std::int64_t t) {
        Fixed3 v;
        v.thousandths_ = t;
        return v;
    }

    static constexpr Fixed3 from_int(std::int64_t whole) {
        return from_thousandths(whole * 1000);
    }

    // Accepts [-]digits[.digits], at most three fractional digits.
    static std::optional<Fixed3> parse(std::string_view text) {
        if (text.empty()) return std::nullopt;
        std::size_t i = 0;
        bool negative = false;
        if (text[i] == '-' || text[i] == '+') {
            negative = text[i] == '-';
            ++i;
        }
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
            return std::nullopt;
        std::int64_t whole = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            whole = whole * 10 + (text[i] - '0');
            if (whole > 1'000'000'000'000LL) return std::nullopt;
            ++i;
        }
        std::int64_t frac = 0;
        if (i < text.size() && text[i] == '.') {
            ++i;
            int digits = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                if (++digits > 3) return std::nullopt;
                frac = frac * 10 + (text[i] - '0');
                ++i;
            }
            if (digits == 0) return std::nullopt;
            while (digits < 3) {
                frac *= 10;
                ++digits;
            }
        }
        if (i != text.size()) return std::nullopt;
        std::int64_t t = whole * 1000 + frac;
        return from_thousandths(negative ? -t : t);
    }

    // Nearest representable value; used where inputs arrive as JSON numbers.
    static Fixed3 from_double(double value) {
        return from_thousandths(static_cast<std::int64_t>(std::llround(value * 1000.0)));
    }

    std::int64_t thousandths() const { return thousandths_; }
    double to_double() const { return static_cast<double>(thousandths_) / 1000.0; }
    bool is_integral() const { return thousandths_ % 1000 == 0; }

    // Minimal decimal rendering: no trailing zeros, no trailing dot.
    std::string str() const {
        std::int64_t t = thousandths_;
        std::string sign;
        if (t < 0) {
            sign = "-";
            t = -t;
        }
        std::string out = sign + std::to_string(t / 1000);
        std::int64_t frac = t % 1000;
        if (frac != 0) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "%03lld", static_cast<long long>(frac));
            std::string digits(buf);
            while (!digits.empty() && digits.back() == '0') digits.pop_back();
            out += "." + digits;
        }
        return out;
    }

    friend constexpr Fixed3 operator+(Fixed3 a, Fixed3 b) {
        return from_thousandths(a.thousandths_ + b.thousandths_);
    }
    friend constexpr Fixed3 operator-(Fixed3 a, Fixed3 b) {
        return from_thousandths(a.thousandths_ - b.thousandths_);
    }
    friend constexpr Fixed3 operator-(Fixed3 a) { return from_thousandths(-a.thousandths_); }
    Fixed3& operator+=(Fixed3 other) {
        thousandths_ += other.thousandths_;
        return *this;
    }
    friend constexpr auto operator<=>(Fixed3, Fixed3) = default;

private:
    std::int64_t thousandths_ = 0;
};

// Minutes are the time unit of the whole pipeline.
using Minutes = Fixed3;

}  // namespace ontoline
