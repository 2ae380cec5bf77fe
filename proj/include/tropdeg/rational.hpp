#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace boost {

// Boost 1.74 defines integer == rational by calling rational == integer,
// which C++20 rewrites back into the same call. Exact overloads win.
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == rational<std::int64_t>(b); }
inline bool operator==(int b, const rational<std::int64_t>& a) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t>& a, long b) { return a == rational<std::int64_t>(b); }
inline bool operator==(long b, const rational<std::int64_t>& a) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t>& a, long long b) { return a == rational<std::int64_t>(b); }
inline bool operator==(long long b, const rational<std::int64_t>& a) { return a == rational<std::int64_t>(b); }

}  // namespace boost

namespace tropdeg {

using Rational = boost::rational<std::int64_t>;

/// Parses "p/q" or an integer "p". Decimal notation is rejected with
/// IrrationalInput: the schema only admits exact rationals.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& value);

std::int64_t floor_div(std::int64_t a, std::int64_t b);
std::int64_t floor(const Rational& value);
bool is_integer(const Rational& value);

/// x mod m in [0, m) for m > 0.
Rational mod(const Rational& x, const Rational& m);

std::int64_t lcm(std::int64_t a, std::int64_t b);

}  // namespace tropdeg
