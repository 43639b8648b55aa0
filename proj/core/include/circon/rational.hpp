#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace circon {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InstanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses "p/q" or a plain integer. Denominator must be positive after
/// canonicalization; cpp_rational keeps gcd(p,q)=1 automatically.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form (plain integer when q == 1).
std::string to_fraction_string(const Rational& r);

/// Decimal approximation with six digits, for human-facing output only.
std::string to_decimal_string(const Rational& r);

inline Rational parse_rational(std::string_view text) {
    auto bad = [&] { throw ParseError("invalid rational: '" + std::string(text) + "'"); };
    auto integer = [&](std::string_view part) {
        std::size_t i = part.size() > 0 && (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size()) bad();
        for (; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9') bad();
        return BigInt(std::string(part));
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(integer(text));
    BigInt num = integer(text.substr(0, slash));
    BigInt den = integer(text.substr(slash + 1));
    if (den == 0) bad();
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

inline std::string to_fraction_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

inline std::string to_decimal_string(const Rational& r) {
    const BigInt num = numerator(r);
    const BigInt den = denominator(r);
    const bool neg = num < 0;
    BigInt a = neg ? BigInt(-num) : num;
    BigInt whole = a / den;
    BigInt rem = a % den;
    BigInt frac = (rem * 1000000 + den / 2) / den;
    if (frac >= 1000000) {
        whole += 1;
        frac -= 1000000;
    }
    std::string fs = frac.str();
    fs.insert(fs.begin(), 6 - fs.size(), '0');
    return (neg && (whole != 0 || frac != 0) ? "-" : "") + whole.str() + "." + fs;
}

}  // namespace circon
