#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace chabauty {

using Int = boost::multiprecision::cpp_int;

/// Exact rational number, always in lowest terms with positive denominator
/// (both guaranteed by the backend's canonical form).
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(Int num, Int den) {
    if (den.is_zero()) throw std::invalid_argument("make_rat: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    return Rat(std::move(num), std::move(den));
}

inline Rat rat(long long num, long long den = 1) { return make_rat(Int(num), Int(den)); }

inline double to_double(const Rat& q) { return q.template convert_to<double>(); }

/// Serialized as "p/q", or just "p" when the denominator is 1.
inline std::string rat_to_string(const Rat& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

} // namespace chabauty
