// Exact rational arithmetic for breakpoints, distances and affine coefficients.
//
// Everything feeding an equality-sensitive check (plateau clauses, zero
// distances, hypothesis margins) stays in this exact form.  Arithmetic uses
// 128-bit intermediates and throws std::overflow_error if a normalized
// result no longer fits in 64 bits.

#ifndef PICARD_RATIONAL_HPP
#define PICARD_RATIONAL_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace picard {

namespace detail {

inline unsigned __int128 uabs128(__int128 v) {
    return v < 0 ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
}

inline unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
    while (b != 0) {
        unsigned __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline std::int64_t narrow_checked(__int128 v) {
    if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
        throw std::overflow_error("rational overflow: supply smaller p/q values");
    return static_cast<std::int64_t>(v);
}

} // namespace detail

class Rat {
public:
    Rat() = default;
    Rat(std::int64_t n) : num_(n) {}
    Rat(std::int64_t n, std::int64_t d) { assign(n, d); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// "p/q" for non-integers, plain integer text otherwise.
    std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) {
            s += '/';
            s += std::to_string(den_);
        }
        return s;
    }

    /// Accepts "p/q", optionally signed integers and finite decimals ("-1.25").
    static std::optional<Rat> parse(std::string_view text);

    /// Converts through the shortest decimal representation that round-trips,
    /// so from_double(0.1) == 1/10 rather than the 2^-55-denominator binary value.
    static Rat from_double(double v);

    friend Rat operator+(const Rat& a, const Rat& b) {
        __int128 n = static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return make128(n, d);
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        __int128 n = static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_;
        __int128 d = static_cast<__int128>(a.den_) * b.den_;
        return make128(n, d);
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return make128(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return make128(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
    }
    Rat operator-() const {
        Rat r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator<(const Rat& a, const Rat& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

private:
    std::int64_t num_{0};
    std::int64_t den_{1};

    void assign(std::int64_t n, std::int64_t d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        *this = make128(n, d);
    }

    static Rat make128(__int128 n, __int128 d) {
        if (d == 0) throw std::domain_error("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        if (n == 0) return Rat();
        unsigned __int128 g = detail::gcd128(detail::uabs128(n), detail::uabs128(d));
        Rat r;
        r.num_ = detail::narrow_checked(n / static_cast<__int128>(g));
        r.den_ = detail::narrow_checked(d / static_cast<__int128>(g));
        return r;
    }
};

inline Rat abs(const Rat& a) { return a < Rat(0) ? -a : a; }
inline const Rat& min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }

inline std::optional<Rat> Rat::parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        auto lhs = parse(text.substr(0, slash));
        auto rhs = parse(text.substr(slash + 1));
        if (!lhs || !rhs || rhs->is_zero()) return std::nullopt;
        return *lhs / *rhs;
    }
    bool neg = false;
    std::size_t i = 0;
    if (text[i] == '+' || text[i] == '-') {
        neg = text[i] == '-';
        ++i;
    }
    if (i == text.size()) return std::nullopt;
    __int128 num = 0;
    __int128 den = 1;
    bool seen_digit = false, seen_dot = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (seen_dot) return std::nullopt;
            seen_dot = true;
            continue;
        }
        if (c < '0' || c > '9') return std::nullopt;
        seen_digit = true;
        num = num * 10 + (c - '0');
        if (seen_dot) den *= 10;
        if (num > static_cast<__int128>(INT64_MAX) * 1000000 || den > static_cast<__int128>(INT64_MAX))
            return std::nullopt;
    }
    if (!seen_digit) return std::nullopt;
    if (neg) num = -num;
    return make128(num, den);
}

inline Rat Rat::from_double(double v) {
    if (!std::isfinite(v)) throw std::domain_error("cannot represent non-finite value as rational");
    if (v == static_cast<double>(static_cast<std::int64_t>(v)))
        return Rat(static_cast<std::int64_t>(v));
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed);
    if (res.ec != std::errc{})
        throw std::overflow_error("double not representable as a rational; pass \"p/q\" instead");
    auto parsed = parse(std::string_view(buf, res.ptr - buf));
    if (!parsed) throw std::overflow_error("double not representable as a rational; pass \"p/q\" instead");
    return *parsed;
}

} // namespace picard

#endif
