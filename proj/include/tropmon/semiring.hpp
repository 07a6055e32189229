#pragma once

// Scalars of the two supported semirings: the tropical integers
// Z_max = Z u {-inf} (max, +) and the Boolean semifield B = {0, 1} (max, min).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tropmon {

enum class SemiringKind : std::uint8_t { Tropical, Boolean };

struct SemiringProperties {
  bool commutative;
  bool anti_negative;
  bool semifield;
  bool zero_divisor_free;
  bool totally_ordered;
};

struct SemiringDescriptor {
  SemiringKind kind;
  SemiringProperties properties;

  static constexpr SemiringDescriptor of(SemiringKind kind) {
    // Both compiled-in instances satisfy every property.
    return {kind, {true, true, true, true, true}};
  }
};

std::string_view semiring_name(SemiringKind kind);  // "zmax" / "bool"
SemiringKind parse_semiring_name(std::string_view name);

/// One element of the active semiring. The tropical zero (-inf) is its own
/// tag rather than a sentinel integer, so no arithmetic can reach it by
/// accident.
class SemValue {
 public:
  enum class Tag : std::uint8_t { TropInt, TropBottom, Bool };

  constexpr SemValue() = default;

  static constexpr SemValue trop(std::int64_t v) { return SemValue(Tag::TropInt, v); }
  static constexpr SemValue bottom() { return SemValue(Tag::TropBottom, 0); }
  static constexpr SemValue boolean(bool b) { return SemValue(Tag::Bool, b ? 1 : 0); }

  constexpr Tag tag() const { return tag_; }
  constexpr SemiringKind kind() const {
    return tag_ == Tag::Bool ? SemiringKind::Boolean : SemiringKind::Tropical;
  }
  constexpr bool is_bottom() const { return tag_ == Tag::TropBottom; }
  constexpr bool is_finite() const { return tag_ == Tag::TropInt; }

  /// Integer payload of a finite tropical value, or the bit of a Boolean.
  constexpr std::int64_t value() const { return value_; }
  constexpr bool bit() const { return value_ != 0; }

  /// The additive identity 0_S.
  constexpr bool is_zero() const {
    return tag_ == Tag::TropBottom || (tag_ == Tag::Bool && value_ == 0);
  }

  friend constexpr bool operator==(const SemValue&, const SemValue&) = default;

 private:
  constexpr SemValue(Tag tag, std::int64_t v) : value_(v), tag_(tag) {}

  std::int64_t value_ = 0;
  Tag tag_ = Tag::TropBottom;
};

constexpr SemValue zero(SemiringKind kind) {
  return kind == SemiringKind::Boolean ? SemValue::boolean(false) : SemValue::bottom();
}

constexpr SemValue one(SemiringKind kind) {
  return kind == SemiringKind::Boolean ? SemValue::boolean(true) : SemValue::trop(0);
}

namespace detail {
[[noreturn]] void throw_mixed(const SemValue& a, const SemValue& b);
[[noreturn]] void throw_overflow(std::int64_t a, std::int64_t b);
}  // namespace detail

/// Semiring addition: max in both instances, with -inf least.
inline SemValue add(const SemValue& a, const SemValue& b) {
  if (a.kind() != b.kind()) detail::throw_mixed(a, b);
  if (a.is_bottom()) return b;
  if (b.is_bottom()) return a;
  return a.value() >= b.value() ? a : b;
}

/// Semiring multiplication: integer addition with -inf absorbing, or min on B.
/// Throws std::range_error on signed overflow.
inline SemValue mul(const SemValue& a, const SemValue& b) {
  if (a.kind() != b.kind()) detail::throw_mixed(a, b);
  if (a.tag() == SemValue::Tag::Bool) return SemValue::boolean(a.bit() && b.bit());
  if (a.is_bottom() || b.is_bottom()) return SemValue::bottom();
  std::int64_t r = 0;
  if (__builtin_add_overflow(a.value(), b.value(), &r)) detail::throw_overflow(a.value(), b.value());
  return SemValue::trop(r);
}

/// Membership in U(S).
constexpr bool is_unit(const SemValue& a) {
  return a.tag() == SemValue::Tag::Bool ? a.bit() : a.is_finite();
}

/// Membership in V(S). Both instances are anti-negative, so V(S) = {0_S}.
constexpr bool is_additively_invertible(const SemValue& a) { return a.is_zero(); }

/// Multiplicative inverse of a unit; std::domain_error otherwise.
SemValue inverse(const SemValue& a);

struct LeqResult {
  bool holds = false;
  std::optional<SemValue> witness;
};

/// The additive J-order: x <= y iff some t has t + y = x. Over Z_max this
/// reverses the numeric order. When it holds the witness is t = x.
LeqResult leq(const SemValue& x, const SemValue& y);

/// The morphism Z_max -> B sending -inf to 0 and everything else to 1.
SemValue psi(const SemValue& a);

/// Token grammar: optional-sign decimal integer or `-inf` for Z_max; `0`/`1`
/// for B. Throws std::invalid_argument on a malformed token.
SemValue parse_value(std::string_view token, SemiringKind kind);
std::string format_value(const SemValue& a);

}  // namespace tropmon
