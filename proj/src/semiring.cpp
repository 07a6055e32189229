#include "tropmon/semiring.hpp"

#include <charconv>
#include <limits>

namespace tropmon {

namespace detail {

void throw_mixed(const SemValue& a, const SemValue& b) {
  throw std::domain_error("mixed-semiring operands: " + format_value(a) + " (" +
                          std::string(semiring_name(a.kind())) + ") and " + format_value(b) +
                          " (" + std::string(semiring_name(b.kind())) + ")");
}

void throw_overflow(std::int64_t a, std::int64_t b) {
  throw std::range_error("tropical product overflows: " + std::to_string(a) + " + " +
                         std::to_string(b));
}

}  // namespace detail

std::string_view semiring_name(SemiringKind kind) {
  return kind == SemiringKind::Boolean ? "bool" : "zmax";
}

SemiringKind parse_semiring_name(std::string_view name) {
  if (name == "zmax") return SemiringKind::Tropical;
  if (name == "bool") return SemiringKind::Boolean;
  throw std::invalid_argument("unknown semiring '" + std::string(name) + "' (expected zmax or bool)");
}

SemValue inverse(const SemValue& a) {
  if (!is_unit(a)) throw std::domain_error("not a unit: " + format_value(a));
  if (a.tag() == SemValue::Tag::Bool) return a;
  if (a.value() == std::numeric_limits<std::int64_t>::min()) {
    throw std::range_error("tropical inverse overflows");
  }
  return SemValue::trop(-a.value());
}

LeqResult leq(const SemValue& x, const SemValue& y) {
  if (x.kind() != y.kind()) detail::throw_mixed(x, y);
  // t + y = x has a solution iff y does not exceed x numerically; t = x works.
  bool holds = false;
  if (y.is_bottom()) {
    holds = true;
  } else if (x.is_bottom()) {
    holds = false;
  } else {
    holds = y.value() <= x.value();
  }
  if (!holds) return {};
  return {true, x};
}

SemValue psi(const SemValue& a) {
  if (a.tag() == SemValue::Tag::Bool) {
    throw std::domain_error("psi expects a tropical value");
  }
  return SemValue::boolean(!a.is_bottom());
}

SemValue parse_value(std::string_view token, SemiringKind kind) {
  auto bad = [&]() {
    return std::invalid_argument("malformed " + std::string(semiring_name(kind)) + " token '" +
                                 std::string(token) + "'");
  };
  if (kind == SemiringKind::Boolean) {
    if (token == "0") return SemValue::boolean(false);
    if (token == "1") return SemValue::boolean(true);
    throw bad();
  }
  if (token == "-inf") return SemValue::bottom();
  std::string_view digits = token;
  if (!digits.empty() && digits.front() == '+') {
    digits.remove_prefix(1);
    if (!digits.empty() && digits.front() == '-') throw bad();
  }
  if (digits.empty()) throw bad();
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) throw bad();
  return SemValue::trop(v);
}

std::string format_value(const SemValue& a) {
  switch (a.tag()) {
    case SemValue::Tag::Bool:
      return a.bit() ? "1" : "0";
    case SemValue::Tag::TropBottom:
      return "-inf";
    case SemValue::Tag::TropInt:
      break;
  }
  return std::to_string(a.value());
}

}  // namespace tropmon
