#pragma once

// Symbolic generators and the named generating sets of UT_n, U_n, GL_n,
// M_2 and M_3 over the tropical integers (and UT_n over B).
//
// Generator text syntax (used for word I/O):
//   A  B  C  D  I  NEG_I  Ai(k,v)  E(i,j,v)  P(cycles)  X(i)
// `A` and `B` denote the GL letters in GL_n and M_3, and the 2x2 letters of
// the M_2 set in M_2.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tropmon/matrix.hpp"

namespace tropmon {

enum class MonoidKind : std::uint8_t { UT, U, GL, M2, M3 };

struct Monoid {
  MonoidKind kind = MonoidKind::M3;
  int n = 3;
  SemiringKind semiring = SemiringKind::Tropical;

  static Monoid ut(int n, SemiringKind s = SemiringKind::Tropical) { return {MonoidKind::UT, n, s}; }
  static Monoid u(int n) { return {MonoidKind::U, n, SemiringKind::Tropical}; }
  static Monoid gl(int n) { return {MonoidKind::GL, n, SemiringKind::Tropical}; }
  static Monoid m2() { return {MonoidKind::M2, 2, SemiringKind::Tropical}; }
  static Monoid m3() { return {MonoidKind::M3, 3, SemiringKind::Tropical}; }

  /// Whether `m` lies in this monoid (dimension, semiring and shape).
  bool contains(const Matrix& m) const;

  friend bool operator==(const Monoid&, const Monoid&) = default;
};

std::string_view monoid_name(MonoidKind kind);  // "ut", "u", "gl", "m2", "m3"
MonoidKind parse_monoid_name(std::string_view name);

enum class Family : std::uint8_t {
  GL_A,
  GL_B,
  DiagA,   // Ai(k, v)
  ElemE,   // E(i, j, v)
  PermP,   // P(sigma)
  M2_A,
  M2_B,
  M2_C,
  M2_D,
  M3_X,    // X(i), i >= 0
  Identity,
  NegIdentity,  // -1 * I_n
};

struct Generator {
  Family family = Family::Identity;
  int i = 0;  // 1-based row / index
  int j = 0;  // 1-based column
  SemValue value;
  std::int64_t x_index = 0;
  Perm perm;

  static Generator gl_a() { return {Family::GL_A}; }
  static Generator gl_b() { return {Family::GL_B}; }
  static Generator diag_a(int k, SemValue v) { return {Family::DiagA, k, 0, v}; }
  static Generator elem_e(int i, int j, SemValue v) { return {Family::ElemE, i, j, v}; }
  static Generator perm_p(Perm p) { return {Family::PermP, 0, 0, {}, 0, std::move(p)}; }
  static Generator m2(Family f) { return {f}; }
  static Generator x(std::int64_t i);
  static Generator id() { return {Family::Identity}; }
  static Generator neg_id() { return {Family::NegIdentity}; }

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// The matrix a letter denotes in dimension n over `kind`.
Matrix realize(const Generator& g, int n, SemiringKind kind = SemiringKind::Tropical);

std::string format_generator(const Generator& g);
/// Parses one letter; `monoid` resolves `A`/`B` and the value semiring.
Generator parse_generator(std::string_view token, const Monoid& monoid);

/// A finite letter list plus at most one symbolic infinite family.
struct GeneratingSet {
  enum class InfiniteFamily : std::uint8_t { None, ElemZ, XIndex };

  Monoid monoid;
  std::vector<Generator> letters;
  InfiniteFamily family = InfiniteFamily::None;
  /// For XIndex: realized instances X(0..realized_bound) are appended to
  /// `letters`; larger indices remain members.
  std::int64_t realized_bound = -1;

  bool contains(const Generator& g) const;
  /// Letter count excluding the symbolic family's unrealized part.
  std::size_t finite_size() const;
  std::vector<Matrix> realize_all() const;
  /// On-demand realization of the symbolic family: E_ij(z) for U_n, X_z for M_3.
  std::vector<Generator> family_instances(std::int64_t z) const;
};

/// A(1) u {-1 I_n} u E(0) u A(-inf): 2n + 1 + n(n-1)/2 letters.
GeneratingSet gens_ut_zmax(int n);
/// {I_n} plus the family E_ij(z), z in Z, i < j.
GeneratingSet gens_u_zmax(int n);
/// A = A_1(1) P_(1..n-1), B = A_1(-1) P_(1..n); n >= 2.
GeneratingSet gens_gl_zmax(int n);
/// The four 2x2 letters A, B, C, D.
GeneratingSet gens_m2_zmax();
/// A, B, E_12, A_1(-inf) plus X_i for i in N_0 (realized up to max_x).
GeneratingSet gens_m3_zmax(std::int64_t max_x);
/// I_n, E_ij(1) for i < j, A_i(0).
GeneratingSet gens_ut_boolean(int n);

/// The generating set a factorizer targets for `monoid`.
GeneratingSet generating_set_for(const Monoid& monoid, std::int64_t max_x = 0);

}  // namespace tropmon
