#include "couplings/rational.hpp"

#include <cctype>

#include "couplings/errors.hpp"

namespace couplings {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view rest = text;
  bool negative = false;
  if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }

  auto fail = [&] {
    throw ToolkitError(ErrorCode::ParseError,
                       "not a rational: \"" + std::string(text) + "\"");
  };

  Rational value;
  if (auto slash = rest.find('/'); slash != std::string_view::npos) {
    std::string_view num = rest.substr(0, slash);
    std::string_view den = rest.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) fail();
    Integer d{std::string(den)};
    if (d == 0) fail();
    value = Rational(Integer{std::string(num)}, d);
  } else if (auto dot = rest.find('.'); dot != std::string_view::npos) {
    std::string_view whole = rest.substr(0, dot);
    std::string_view frac = rest.substr(dot + 1);
    if (!all_digits(frac) || (!whole.empty() && !all_digits(whole))) fail();
    Integer scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Integer w = whole.empty() ? Integer(0) : Integer{std::string(whole)};
    value = Rational(w * scale + Integer{std::string(frac)}, scale);
  } else {
    if (!all_digits(rest)) fail();
    value = Rational(Integer{std::string(rest)});
  }
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& value) {
  std::string num = numerator(value).str();
  if (denominator(value) == 1) return num;
  return num + "/" + denominator(value).str();
}

}  // namespace couplings
