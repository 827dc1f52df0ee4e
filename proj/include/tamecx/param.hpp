#pragma once

// Exact parameters in [0, ∞]: non-negative rationals plus infinity.

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "tamecx/error.hpp"

namespace tamecx {

class Param {
public:
    constexpr Param() = default;
    Param(std::int64_t value) : num_(value), den_(1) { require(value >= 0, "parameters are non-negative"); }
    Param(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
        require(den != 0, "parameter with zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        require(num_ >= 0, "parameters are non-negative");
        const auto g = std::gcd(num_, den_);
        num_ /= g;
        den_ /= g;
    }

    static Param infinity() {
        Param p;
        p.inf_ = true;
        p.num_ = 1;
        p.den_ = 0;
        return p;
    }

    bool is_infinite() const noexcept { return inf_; }
    bool is_finite() const noexcept { return !inf_; }
    std::int64_t numerator() const noexcept { return num_; }
    std::int64_t denominator() const noexcept { return den_; }

    /// Accepts "inf", integers and "num/den".
    static Param parse(std::string_view text) {
        if (text == "inf" || text == "∞") return infinity();
        const auto slash = text.find('/');
        auto to_int = [&](std::string_view s) {
            std::int64_t v = 0;
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
                throw PreconditionError("not a parameter: '" + std::string(text) + "'");
            return v;
        };
        if (slash == std::string_view::npos) return Param(to_int(text));
        return Param(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
    }

    std::string to_string() const {
        if (inf_) return "inf";
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend bool operator==(const Param& a, const Param& b) {
        return a.inf_ == b.inf_ && (a.inf_ || (a.num_ == b.num_ && a.den_ == b.den_));
    }

    friend std::strong_ordering operator<=>(const Param& a, const Param& b) {
        if (a.inf_ || b.inf_) return static_cast<int>(a.inf_) <=> static_cast<int>(b.inf_);
        const __int128 l = static_cast<__int128>(a.num_) * b.den_;
        const __int128 r = static_cast<__int128>(b.num_) * a.den_;
        return l < r ? std::strong_ordering::less : l > r ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    friend Param operator+(const Param& a, const Param& b) {
        if (a.inf_ || b.inf_) return infinity();
        return Param(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }

    friend Param midpoint(const Param& a, const Param& b) {
        require(a.is_finite() && b.is_finite(), "midpoint of an infinite parameter");
        const Param s = a + b;
        return Param(s.num_, s.den_ * 2);
    }

    friend std::ostream& operator<<(std::ostream& os, const Param& p) { return os << p.to_string(); }

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    bool inf_ = false;
};

} // namespace tamecx
