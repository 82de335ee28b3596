#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mpg {

/// Exact arbitrary-precision rational. Always stored in lowest terms with a
/// positive denominator; all arithmetic is exact. No floating point is used
/// anywhere in the core library.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

inline Int rat_num(const Rat& r) { return numerator(r); }
inline Int rat_den(const Rat& r) { return denominator(r); }

/// Floor division for arbitrary-precision integers, b > 0.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

inline Int ceil_div(const Int& a, const Int& b) {
    Int q = a / b;
    if (a % b != 0 && a > 0) ++q;
    return q;
}

inline Int floor_rat(const Rat& r) { return floor_div(rat_num(r), rat_den(r)); }
inline Int ceil_rat(const Rat& r) { return ceil_div(rat_num(r), rat_den(r)); }

inline Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline Int lcm_int(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd(a, b) * b;
}

/// Least common denominator of a set of rationals (1 for an empty set).
template <typename Range>
Int common_denominator(const Range& rats) {
    Int d = 1;
    for (const Rat& r : rats) d = lcm_int(d, rat_den(r));
    return d;
}

/// Canonical text form: "p" when the denominator is 1, otherwise "p/q".
inline std::string format_rat(const Rat& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) {
        s += '/';
        s += rat_den(r).str();
    }
    return s;
}

/// Strict parse of "p" or "p/q" (q > 0 after sign normalization; "1/0" is
/// rejected). Returns nullopt on any malformed input.
std::optional<Rat> parse_rat(std::string_view text);

/// Best rational approximations of x with denominator at most max_den:
/// .first is the largest such rational <= x, .second the smallest >= x.
/// Computed by the continued-fraction / Stern-Brocot method, exactly.
std::pair<Rat, Rat> bounded_den_neighbors(const Rat& x, const Int& max_den);

}  // namespace mpg
