#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <stdexcept>
#include <string>

namespace emalg {

/// Exact arbitrary-precision integers and rationals. All algebraic carriers
/// in this library are built on Rat so identity checks are zero-tolerance.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline Rat frac(long long num, long long den = 1) {
    if (den == 0) throw std::invalid_argument("frac: zero denominator");
    return Rat(Int(num), Int(den));
}

/// base^k for integer k of either sign; base must be nonzero when k < 0.
inline Rat rat_pow(const Rat& base, long k) {
    if (k == 0) return Rat(1);
    if (base == 0 && k < 0) throw std::domain_error("rat_pow: zero base, negative exponent");
    const unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
    Int np = boost::multiprecision::pow(boost::multiprecision::numerator(base), e);
    Int dp = boost::multiprecision::pow(boost::multiprecision::denominator(base), e);
    return k > 0 ? Rat(np, dp) : Rat(dp, np);
}

/// Canonical "p/q" (or "p" for integers), matching operator<<.
inline std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

/// Parses "p" or "p/q". Throws std::invalid_argument on malformed input.
inline Rat parse_rat(const std::string& s) {
    const auto bad = [&]() -> Rat {
        throw std::invalid_argument("parse_rat: malformed rational '" + s + "'");
    };
    if (s.empty()) return bad();
    const auto slash = s.find('/');
    const auto parse_int = [&](const std::string& part) {
        if (part.empty()) bad();
        std::istringstream is(part);
        Int v;
        is >> v;
        if (is.fail() || !is.eof()) bad();
        return v;
    };
    if (slash == std::string::npos) return Rat(parse_int(s));
    Int num = parse_int(s.substr(0, slash));
    Int den = parse_int(s.substr(slash + 1));
    if (den == 0) bad();
    return Rat(num, den);
}

}  // namespace emalg
