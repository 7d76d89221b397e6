// Exact integer and rational scalars. All decision paths in the library use
// these; floating point appears only in diagnostics.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "monomap/errors.hpp"

namespace monomap {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int abs(const Int& a) { return boost::multiprecision::abs(a); }
inline Rat abs(const Rat& a) { return a < 0 ? Rat(-a) : a; }

inline int sign(const Int& a) { return a.sign(); }
inline int sign(const Rat& a) { return a.sign(); }

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return den(r) == 1; }

// Serialized form used in all JSON output: "7", "-3/4".
inline std::string rat_to_string(const Rat& r) {
    std::string s = num(r).str();
    if (den(r) != 1) s += "/" + den(r).str();
    return s;
}

inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int n(s.substr(0, slash));
        Int d(s.substr(slash + 1));
        if (d == 0) throw ParseError("zero denominator in '" + s + "'");
        return Rat(n, d);
    } catch (const std::runtime_error&) {
        throw ParseError("bad rational '" + s + "'");
    }
}

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

}  // namespace monomap
