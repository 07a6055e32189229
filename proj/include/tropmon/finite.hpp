#pragma once

// Exhaustive machinery for finite matrix monoids: BFS closure, J-classes,
// generation and rank search, prime certificates.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "tropmon/matrix.hpp"

namespace tropmon {

inline constexpr std::size_t kDefaultClosureCap = 1'000'000;
inline constexpr std::size_t kNoEdge = static_cast<std::size_t>(-1);

/// Boolean matrices pack into n*n bits (row-major, bit r*n+c).
std::uint64_t pack_boolean(const Matrix& m);
Matrix unpack_boolean(std::uint64_t bits, int n);

class FiniteMonoid {
 public:
  FiniteMonoid(int n, SemiringKind kind) : n_(n), kind_(kind) {}

  int n() const { return n_; }
  SemiringKind kind() const { return kind_; }
  std::size_t size() const { return elements_.size(); }
  bool closed() const { return closed_; }

  const std::vector<Matrix>& elements() const { return elements_; }
  const Matrix& element(std::size_t i) const { return elements_[i]; }
  /// Element indices of the generators, in the order given to closure().
  const std::vector<std::size_t>& gens() const { return gens_; }
  /// element(e) * gen(g), or kNoEdge where BFS stopped early.
  std::size_t right(std::size_t e, std::size_t g) const { return cayley_[e * gens_.size() + g]; }
  const std::vector<std::size_t>& cayley() const { return cayley_; }

  std::optional<std::size_t> index_of(const Matrix& m) const;

 private:
  friend FiniteMonoid closure(const std::vector<Matrix>&, std::size_t, std::optional<int>,
                              std::optional<SemiringKind>);

  std::size_t insert(const Matrix& m);  // index of m, adding it if absent

  int n_;
  SemiringKind kind_;
  std::vector<Matrix> elements_;
  std::vector<std::size_t> gens_;
  std::vector<std::size_t> cayley_;
  bool closed_ = false;
  std::unordered_map<std::uint64_t, std::size_t> packed_index_;
  std::unordered_map<std::string, std::size_t> text_index_;
};

/// BFS from {I} u gens under right multiplication by the generators. Stops
/// with closed() == false once more than `cap` elements would be needed.
/// For an empty generator list, n and kind must be given.
FiniteMonoid closure(const std::vector<Matrix>& gens, std::size_t cap = kDefaultClosureCap,
                     std::optional<int> n = std::nullopt, std::optional<SemiringKind> kind = std::nullopt);

/// Every n x n Boolean matrix (n <= 3), each one also listed as a generator.
FiniteMonoid full_boolean_monoid(int n);

struct JClassPartition {
  std::vector<int> class_of;
  std::vector<std::vector<std::size_t>> members;
  /// below[a][b]: the ideal of class a is contained in that of class b.
  std::vector<std::vector<bool>> below;

  int count() const { return static_cast<int>(members.size()); }
};

/// Partition by two-sided principal ideals, each found by BFS over left and
/// right generator edges. Throws std::invalid_argument on an open closure.
JClassPartition jclasses(const FiniteMonoid& m);

/// Whether {I} u subset generates all of m.
bool is_generating(const FiniteMonoid& m, const std::vector<std::size_t>& subset);
/// result[k] is true when subset minus subset[k] no longer generates m.
std::vector<bool> irredundant(const FiniteMonoid& m, const std::vector<std::size_t>& subset);

inline constexpr std::size_t kRankSearchMaxElements = 64;
inline constexpr int kRankSearchMaxK = 4;

/// First generating subset of exactly k elements in lexicographic order, or
/// none. Subsets missing a prime J-class are skipped without a closure.
std::optional<std::vector<std::size_t>> rank_search(const FiniteMonoid& m, int k);

/// Every factorization x = u v in m has exactly one unit factor.
bool prime_certificate(const Matrix& x, const FiniteMonoid& m);

/// Some y in m with x y x = x.
std::optional<std::size_t> regular_witness(const Matrix& x, const FiniteMonoid& m);

/// X_s J X_t in M_3(Z_max) exactly when s = t or s + t = 0.
constexpr bool x_family_j_related(std::int64_t s, std::int64_t t) {
  return s == t || (t != INT64_MIN && s == -t);
}

nlohmann::json finite_monoid_to_json(const FiniteMonoid& m);

}  // namespace tropmon
