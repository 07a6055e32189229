#pragma once

// Hand-rolled generators and independent oracles shared by the suites.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "tropmon/matrix.hpp"

namespace support {

using tropmon::Matrix;
using tropmon::SemiringKind;
using tropmon::SemValue;

inline std::mt19937_64 make_rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eed'2026ULL ^ salt); }

inline std::int64_t uniform(std::mt19937_64& g, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(g);
}

/// -inf with probability p_bottom, else uniform in [lo, hi].
inline SemValue random_trop(std::mt19937_64& g, std::int64_t lo, std::int64_t hi, double p_bottom) {
  if (std::bernoulli_distribution(p_bottom)(g)) return SemValue::bottom();
  return SemValue::trop(uniform(g, lo, hi));
}

inline Matrix random_matrix(std::mt19937_64& g, int n, std::int64_t lo, std::int64_t hi, double p_bottom) {
  Matrix m(n, SemiringKind::Tropical);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m.set(r, c, random_trop(g, lo, hi, p_bottom));
  }
  return m;
}

inline Matrix random_upper(std::mt19937_64& g, int n, std::int64_t lo, std::int64_t hi, double p_bottom) {
  Matrix m(n, SemiringKind::Tropical);
  for (int r = 0; r < n; ++r) {
    for (int c = r; c < n; ++c) m.set(r, c, random_trop(g, lo, hi, p_bottom));
  }
  return m;
}

inline Matrix random_unitriangular(std::mt19937_64& g, int n, std::int64_t lo, std::int64_t hi, double p_bottom) {
  Matrix m = random_upper(g, n, lo, hi, p_bottom);
  for (int i = 0; i < n; ++i) m.set(i, i, SemValue::trop(0));
  return m;
}

inline Matrix random_boolean(std::mt19937_64& g, int n) {
  Matrix m(n, SemiringKind::Boolean);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m.set(r, c, SemValue::boolean(uniform(g, 0, 1) == 1));
  }
  return m;
}

/// Random invertible matrix D P_sigma via a Fisher-Yates shuffle.
inline Matrix random_monomial(std::mt19937_64& g, int n, std::int64_t lo, std::int64_t hi) {
  std::vector<int> images(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) images[static_cast<std::size_t>(i)] = i;
  std::shuffle(images.begin(), images.end(), g);
  Matrix m(n, SemiringKind::Tropical);
  for (int i = 0; i < n; ++i) m.set(i, images[static_cast<std::size_t>(i)], SemValue::trop(uniform(g, lo, hi)));
  return m;
}

// Independent max-plus product over optional<int64>, not sharing code with
// the library's semiring operations.
using Grid = std::vector<std::vector<std::optional<std::int64_t>>>;

inline Grid to_grid(const Matrix& m) {
  Grid out(static_cast<std::size_t>(m.n()), std::vector<std::optional<std::int64_t>>(static_cast<std::size_t>(m.n())));
  for (int r = 0; r < m.n(); ++r) {
    for (int c = 0; c < m.n(); ++c) {
      if (!m(r, c).is_zero()) out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m(r, c).value();
    }
  }
  return out;
}

inline Grid grid_mul(const Grid& a, const Grid& b) {
  const std::size_t n = a.size();
  Grid out(n, std::vector<std::optional<std::int64_t>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!a[i][k] || !b[k][j]) continue;
        const std::int64_t v = *a[i][k] + *b[k][j];
        if (!out[i][j] || v > *out[i][j]) out[i][j] = v;
      }
    }
  }
  return out;
}

}  // namespace support
