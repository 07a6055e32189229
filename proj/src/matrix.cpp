#include "tropmon/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tropmon {

namespace {

void check_dim(int n) {
  if (n < 1 || n > kMaxDim) {
    throw std::out_of_range("matrix dimension " + std::to_string(n) + " outside 1.." +
                            std::to_string(kMaxDim));
  }
}

void check_index(int i, int n, const char* what) {
  if (i < 1 || i > n) {
    throw std::out_of_range(std::string(what) + " index " + std::to_string(i) + " outside 1.." +
                            std::to_string(n));
  }
}

void check_compatible(const Matrix& a, const Matrix& b) {
  if (a.n() != b.n()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.n()) + " vs " +
                                std::to_string(b.n()));
  }
  if (a.kind() != b.kind()) {
    throw std::domain_error("semiring mismatch: " + std::string(semiring_name(a.kind())) + " vs " +
                            std::string(semiring_name(b.kind())));
  }
}

}  // namespace

// ---------------------------------------------------------------- Perm

Perm::Perm(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("not a permutation");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Perm Perm::identity(int n) {
  std::vector<int> images(static_cast<std::size_t>(n));
  std::iota(images.begin(), images.end(), 0);
  return Perm(std::move(images));
}

Perm Perm::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  Perm result = identity(n);
  // Rightmost cycle acts first.
  for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
    const auto& cycle = *it;
    std::vector<int> images = identity(n).images();
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      check_index(cycle[k], n, "cycle");
      if (used[static_cast<std::size_t>(cycle[k] - 1)]) {
        throw std::invalid_argument("repeated point in cycle");
      }
      used[static_cast<std::size_t>(cycle[k] - 1)] = true;
      images[static_cast<std::size_t>(cycle[k] - 1)] = cycle[(k + 1) % cycle.size()] - 1;
    }
    result = result.then(Perm(std::move(images)));
  }
  return result;
}

Perm Perm::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < size(); ++i) inv[static_cast<std::size_t>(images_[static_cast<std::size_t>(i)])] = i;
  return Perm(std::move(inv));
}

Perm Perm::then(const Perm& b) const {
  if (b.size() != size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<int> out(images_.size());
  for (int i = 0; i < size(); ++i) out[static_cast<std::size_t>(i)] = b((*this)(i));
  return Perm(std::move(out));
}

bool Perm::is_identity() const {
  for (int i = 0; i < size(); ++i) {
    if ((*this)(i) != i) return false;
  }
  return true;
}

std::string Perm::cycle_string() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (int start = 0; start < size(); ++start) {
    if (seen[static_cast<std::size_t>(start)] || (*this)(start) == start) continue;
    out += '(';
    int i = start;
    bool first = true;
    while (!seen[static_cast<std::size_t>(i)]) {
      seen[static_cast<std::size_t>(i)] = true;
      if (!first) out += ',';
      out += std::to_string(i + 1);
      first = false;
      i = (*this)(i);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::vector<Perm> all_perms(int n) {
  std::vector<int> images = Perm::identity(n).images();
  std::vector<Perm> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(int n, SemiringKind kind) : n_(n), kind_(kind) {
  check_dim(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) entries_[index(r, c)] = zero(kind);
  }
}

Matrix Matrix::from_rows(const std::vector<std::vector<SemValue>>& rows) {
  const int n = static_cast<int>(rows.size());
  check_dim(n);
  Matrix m(n, rows[0].empty() ? SemiringKind::Tropical : rows[0][0].kind());
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(rows[static_cast<std::size_t>(r)].size()) != n) {
      throw std::invalid_argument("row " + std::to_string(r + 1) + " has " +
                                  std::to_string(rows[static_cast<std::size_t>(r)].size()) +
                                  " entries, expected " + std::to_string(n));
    }
    for (int c = 0; c < n; ++c) m.set(r, c, rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
  }
  return m;
}

Matrix Matrix::tropical(
    std::initializer_list<std::initializer_list<std::optional<std::int64_t>>> rows) {
  std::vector<std::vector<SemValue>> vals;
  for (const auto& row : rows) {
    auto& out = vals.emplace_back();
    for (const auto& v : row) out.push_back(v ? SemValue::trop(*v) : SemValue::bottom());
  }
  return from_rows(vals);
}

Matrix Matrix::boolean(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<std::vector<SemValue>> vals;
  for (const auto& row : rows) {
    auto& out = vals.emplace_back();
    for (int v : row) out.push_back(SemValue::boolean(v != 0));
  }
  return from_rows(vals);
}

void Matrix::set(int r, int c, const SemValue& v) {
  if (v.kind() != kind_) {
    throw std::domain_error("entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                            ") is " + std::string(semiring_name(v.kind())) + ", matrix is " +
                            std::string(semiring_name(kind_)));
  }
  entries_[index(r, c)] = v;
}

int Matrix::count_zero() const {
  int k = 0;
  for (int r = 0; r < n_; ++r) {
    for (int c = 0; c < n_; ++c) k += (*this)(r, c).is_zero() ? 1 : 0;
  }
  return k;
}

bool Matrix::is_upper_triangular() const {
  for (int r = 1; r < n_; ++r) {
    for (int c = 0; c < r; ++c) {
      if (!(*this)(r, c).is_zero()) return false;
    }
  }
  return true;
}

bool Matrix::is_diagonal() const {
  for (int r = 0; r < n_; ++r) {
    for (int c = 0; c < n_; ++c) {
      if (r != c && !(*this)(r, c).is_zero()) return false;
    }
  }
  return true;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.n_ != b.n_ || a.kind_ != b.kind_) return false;
  for (int r = 0; r < a.n_; ++r) {
    for (int c = 0; c < a.n_; ++c) {
      if (a(r, c) != b(r, c)) return false;
    }
  }
  return true;
}

Matrix identity(int n, SemiringKind kind) {
  Matrix m(n, kind);
  for (int i = 0; i < n; ++i) m.set(i, i, one(kind));
  return m;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.n(), m.kind());
  for (int r = 0; r < m.n(); ++r) {
    for (int c = 0; c < m.n(); ++c) t.set(c, r, m(r, c));
  }
  return t;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  check_compatible(a, b);
  const int n = a.n();
  Matrix out(n, a.kind());
  // i-k-j order, skipping 0_S factors: generator matrices are mostly 0_S.
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const SemValue& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        const SemValue& bkj = b(k, j);
        if (bkj.is_zero()) continue;
        SemValue& cell = out.entries_[Matrix::index(i, j)];
        cell = add(cell, mul(aik, bkj));
      }
    }
  }
  return out;
}

Matrix product(const std::vector<Matrix>& factors) {
  if (factors.empty()) throw std::invalid_argument("empty product has no dimension");
  Matrix acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = mat_mul(acc, factors[i]);
  return acc;
}

Matrix permute(const Matrix& m, const Perm& row_perm, const Perm& col_perm) {
  if (row_perm.size() != m.n() || col_perm.size() != m.n()) {
    throw std::invalid_argument("permutation size does not match matrix dimension");
  }
  // (P_r m)(i, j) = m(r(i), j);  (m P_c)(i, j) = m(i, c^{-1}(j)).
  const Perm col_inv = col_perm.inverse();
  Matrix out(m.n(), m.kind());
  for (int i = 0; i < m.n(); ++i) {
    for (int j = 0; j < m.n(); ++j) out.set(i, j, m(row_perm(i), col_inv(j)));
  }
  return out;
}

Matrix construct_A(int i, const SemValue& lambda, int n) {
  check_dim(n);
  check_index(i, n, "row");
  Matrix m = identity(n, lambda.kind());
  m.set(i - 1, i - 1, lambda);
  return m;
}

Matrix construct_E(int i, int j, const SemValue& lambda, int n) {
  check_dim(n);
  check_index(i, n, "row");
  check_index(j, n, "column");
  if (i == j) throw std::invalid_argument("E_ij requires i != j");
  Matrix m = identity(n, lambda.kind());
  m.set(i - 1, j - 1, lambda);
  return m;
}

Matrix construct_E(int i, int j, int n, SemiringKind kind) {
  return construct_E(i, j, one(kind), n);
}

Matrix construct_P(const Perm& sigma, SemiringKind kind) {
  Matrix m(sigma.size(), kind);
  for (int i = 0; i < sigma.size(); ++i) m.set(i, sigma(i), one(kind));
  return m;
}

Matrix diagonal(const std::vector<SemValue>& diag) {
  const int n = static_cast<int>(diag.size());
  check_dim(n);
  Matrix m(n, diag[0].kind());
  for (int i = 0; i < n; ++i) m.set(i, i, diag[static_cast<std::size_t>(i)]);
  return m;
}

Matrix phi(const Matrix& m) {
  Matrix out(m.n(), SemiringKind::Boolean);
  for (int r = 0; r < m.n(); ++r) {
    for (int c = 0; c < m.n(); ++c) out.set(r, c, psi(m(r, c)));
  }
  return out;
}

std::optional<Monomial> is_monomial(const Matrix& m) {
  const int n = m.n();
  std::vector<int> images(static_cast<std::size_t>(n), -1);
  std::vector<bool> col_used(static_cast<std::size_t>(n), false);
  Monomial out;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (m(r, c).is_zero()) continue;
      if (images[static_cast<std::size_t>(r)] != -1 || col_used[static_cast<std::size_t>(c)]) {
        return std::nullopt;
      }
      images[static_cast<std::size_t>(r)] = c;
      col_used[static_cast<std::size_t>(c)] = true;
    }
    if (images[static_cast<std::size_t>(r)] == -1) return std::nullopt;
  }
  out.sigma = Perm(std::move(images));
  for (int r = 0; r < n; ++r) out.diag.push_back(m(r, out.sigma(r)));
  return out;
}

bool is_invertible(const Matrix& m) {
  auto mono = is_monomial(m);
  if (!mono) return false;
  return std::all_of(mono->diag.begin(), mono->diag.end(),
                     [](const SemValue& v) { return is_unit(v); });
}

Matrix inverse(const Matrix& m) {
  auto mono = is_monomial(m);
  if (!mono || !is_invertible(m)) throw std::domain_error("matrix is not invertible");
  // m = D P_sigma, so m^{-1} = P_sigma^{-1} D^{-1}: entry (sigma(i), i) = d_i^{-1}.
  Matrix out(m.n(), m.kind());
  for (int i = 0; i < m.n(); ++i) {
    out.set(mono->sigma(i), i, inverse(mono->diag[static_cast<std::size_t>(i)]));
  }
  return out;
}

// ---------------------------------------------------------------- regularity

namespace {

// Element of the completed semiring Z_max u {+inf}, used only while
// residuating. For B the same lattice operations apply with values 0/1.
struct Completed {
  enum class Kind { Bottom, Finite, Top } kind = Kind::Top;
  std::int64_t value = 0;
};

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_sub_overflow(a, b, &r)) throw std::range_error("residuation overflows");
  return r;
}

}  // namespace

std::optional<RegularWitness> is_regular(const Matrix& m) {
  const int n = m.n();
  const SemiringKind kind = m.kind();
  RegularWitness w{Matrix(n, kind), false};
  // Y*(j, k) = min over (i, l) with m(i, j), m(k, l) nonzero of m(i, l) / (m(i, j) m(k, l)).
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      Completed best;  // +inf: no constraint yet
      for (int i = 0; i < n; ++i) {
        if (m(i, j).is_zero()) continue;
        for (int l = 0; l < n; ++l) {
          if (m(k, l).is_zero()) continue;
          Completed bound;
          if (m(i, l).is_zero()) {
            bound.kind = Completed::Kind::Bottom;
          } else if (kind == SemiringKind::Boolean) {
            bound = {Completed::Kind::Finite, 1};
          } else {
            bound = {Completed::Kind::Finite,
                     checked_sub(checked_sub(m(i, l).value(), m(i, j).value()), m(k, l).value())};
          }
          if (bound.kind == Completed::Kind::Bottom) {
            best = bound;
          } else if (best.kind == Completed::Kind::Top ||
                     (best.kind == Completed::Kind::Finite && bound.value < best.value)) {
            best = bound;
          }
        }
      }
      switch (best.kind) {
        case Completed::Kind::Top:
          w.clamped = true;
          w.y.set(j, k, zero(kind));
          break;
        case Completed::Kind::Bottom:
          w.y.set(j, k, zero(kind));
          break;
        case Completed::Kind::Finite:
          w.y.set(j, k, kind == SemiringKind::Boolean ? SemValue::boolean(true)
                                                      : SemValue::trop(best.value));
          break;
      }
    }
  }
  if (mat_mul(mat_mul(m, w.y), m) != m) return std::nullopt;
  return w;
}

// ---------------------------------------------------------------- text / json

std::string format_matrix(const Matrix& m) {
  std::string out;
  for (int r = 0; r < m.n(); ++r) {
    if (r > 0) out += "; ";
    for (int c = 0; c < m.n(); ++c) {
      if (c > 0) out += ' ';
      out += format_value(m(r, c));
    }
  }
  return out;
}

Matrix parse_matrix(std::string_view text, SemiringKind kind) {
  std::vector<std::vector<SemValue>> rows;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find(';', start);
    const std::string_view row_text =
        text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    std::istringstream in{std::string(row_text)};
    std::vector<SemValue> row;
    std::string token;
    while (in >> token) row.push_back(parse_value(token, kind));
    if (row.empty()) throw std::invalid_argument("empty matrix row " + std::to_string(rows.size() + 1));
    rows.push_back(std::move(row));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  if (static_cast<int>(rows.size()) > kMaxDim) {
    throw std::invalid_argument("matrix has " + std::to_string(rows.size()) + " rows, at most " +
                                std::to_string(kMaxDim) + " supported");
  }
  return Matrix::from_rows(rows);
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < m.n(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < m.n(); ++c) {
      const SemValue& v = m(r, c);
      if (v.is_bottom()) {
        row.push_back("-inf");
      } else {
        row.push_back(v.value());
      }
    }
    rows.push_back(std::move(row));
  }
  return {{"n", m.n()}, {"semiring", std::string(semiring_name(m.kind()))}, {"rows", rows}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  const SemiringKind kind = parse_semiring_name(j.at("semiring").get<std::string>());
  const int n = j.at("n").get<int>();
  const auto& rows = j.at("rows");
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
    throw std::invalid_argument("json matrix: rows must be an array of length n");
  }
  std::vector<std::vector<SemValue>> vals;
  for (const auto& row : rows) {
    auto& out = vals.emplace_back();
    for (const auto& v : row) {
      if (v.is_string()) {
        out.push_back(parse_value(v.get<std::string>(), kind));
      } else if (v.is_number_integer()) {
        out.push_back(kind == SemiringKind::Boolean ? parse_value(std::to_string(v.get<std::int64_t>()), kind)
                                                    : SemValue::trop(v.get<std::int64_t>()));
      } else {
        throw std::invalid_argument("json matrix: entries must be integers or \"-inf\"");
      }
    }
  }
  return Matrix::from_rows(vals);
}

}  // namespace tropmon
