#include "tropdeg/rational.hpp"

#include <charconv>
#include <numeric>

#include "tropdeg/error.hpp"

namespace tropdeg {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw Error(ErrorKind::IrrationalInput,
                "expected an exact rational \"p/q\", got \"" + std::string(whole) + "\"");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text));
  std::int64_t num = parse_int(text.substr(0, slash), text);
  std::int64_t den = parse_int(text.substr(slash + 1), text);
  if (den == 0) throw Error(ErrorKind::IrrationalInput, "zero denominator in \"" + std::string(text) + "\"");
  return Rational(num, den);
}

std::string format_rational(const Rational& value) {
  if (value.denominator() == 1) return std::to_string(value.numerator());
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t floor(const Rational& value) { return floor_div(value.numerator(), value.denominator()); }

bool is_integer(const Rational& value) { return value.denominator() == 1; }

Rational mod(const Rational& x, const Rational& m) { return x - m * Rational(floor(x / m)); }

std::int64_t lcm(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

}  // namespace tropdeg
