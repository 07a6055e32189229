#pragma once

// Dense square matrices over Z_max or B.
//
// Indexing: operator() is 0-based. The named constructors (construct_A,
// construct_E, Perm::from_cycles) and all error messages use 1-based indices.

#include <array>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tropmon/semiring.hpp"

namespace tropmon {

inline constexpr int kMaxDim = 8;

/// A permutation of {0..n-1}; sigma(i) = images[i].
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<int> images);

  static Perm identity(int n);
  /// Product of disjoint or overlapping cycles in 1-based notation, applied
  /// right to left: from_cycles(3, {{1, 2, 3}}) maps 1->2, 2->3, 3->1.
  static Perm from_cycles(int n, const std::vector<std::vector<int>>& cycles);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& images() const { return images_; }

  Perm inverse() const;
  /// (a.then(b))(i) = b(a(i)).
  Perm then(const Perm& b) const;
  bool is_identity() const;

  /// 1-based cycle notation without fixed points, e.g. "(1,3,2)"; "()" for id.
  std::string cycle_string() const;

  friend bool operator==(const Perm&, const Perm&) = default;

 private:
  std::vector<int> images_;
};

/// All permutations of {0..n-1} in lexicographic order of their image lists.
std::vector<Perm> all_perms(int n);

class Matrix {
 public:
  Matrix() = default;
  /// n x n matrix filled with 0_S.
  Matrix(int n, SemiringKind kind);
  /// Row-major construction; every entry must belong to the same semiring.
  static Matrix from_rows(const std::vector<std::vector<SemValue>>& rows);
  /// Tropical convenience: `std::nullopt` stands for -inf.
  static Matrix tropical(std::initializer_list<std::initializer_list<std::optional<std::int64_t>>> rows);
  static Matrix boolean(std::initializer_list<std::initializer_list<int>> rows);

  int n() const { return n_; }
  SemiringKind kind() const { return kind_; }

  const SemValue& operator()(int r, int c) const { return entries_[index(r, c)]; }
  /// Throws std::domain_error when `v` belongs to another semiring.
  void set(int r, int c, const SemValue& v);

  int count_zero() const;
  bool is_upper_triangular() const;
  bool is_diagonal() const;

  friend bool operator==(const Matrix& a, const Matrix& b);
  friend Matrix mat_mul(const Matrix& a, const Matrix& b);

 private:
  static constexpr std::size_t index(int r, int c) {
    return static_cast<std::size_t>(r * kMaxDim + c);
  }

  int n_ = 0;
  SemiringKind kind_ = SemiringKind::Tropical;
  std::array<SemValue, kMaxDim * kMaxDim> entries_{};
};

Matrix identity(int n, SemiringKind kind);
Matrix transpose(const Matrix& m);
Matrix mat_mul(const Matrix& a, const Matrix& b);
/// Product of a list of matrices; the empty product is rejected.
Matrix product(const std::vector<Matrix>& factors);
/// P_rowPerm * m * P_colPerm.
Matrix permute(const Matrix& m, const Perm& row_perm, const Perm& col_perm);

/// A_i(lambda): identity with lambda at (i, i).
Matrix construct_A(int i, const SemValue& lambda, int n);
/// E_ij(lambda): identity with lambda at (i, j), i != j.
Matrix construct_E(int i, int j, const SemValue& lambda, int n);
Matrix construct_E(int i, int j, int n, SemiringKind kind);
/// Permutation matrix: entry (i, sigma(i)) is 1_S.
Matrix construct_P(const Perm& sigma, SemiringKind kind);
Matrix diagonal(const std::vector<SemValue>& diag);

/// Entrywise psi.
Matrix phi(const Matrix& m);

struct Monomial {
  Perm sigma;
  std::vector<SemValue> diag;  // diag[i] = m(i, sigma(i))
};

std::optional<Monomial> is_monomial(const Matrix& m);
bool is_invertible(const Matrix& m);
/// Inverse of an invertible matrix; std::domain_error otherwise.
Matrix inverse(const Matrix& m);

struct RegularWitness {
  Matrix y;
  /// True when the greatest residuated solution had +inf entries that were
  /// replaced by -inf. Such entries only ever meet -inf in m * y * m.
  bool clamped = false;
};

/// Searches y with m * y * m = m over Z_max. The candidate is the greatest
/// y with m * y * m <= m entrywise; any solution lies below it, so m is
/// regular iff the candidate itself works.
std::optional<RegularWitness> is_regular(const Matrix& m);

/// Bit-exact text form: entries joined by ' ', rows joined by "; ".
std::string format_matrix(const Matrix& m);
/// Accepts the text form with arbitrary whitespace around tokens.
Matrix parse_matrix(std::string_view text, SemiringKind kind);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

}  // namespace tropmon
