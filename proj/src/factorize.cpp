#include "tropmon/factorize.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace tropmon {

namespace {

constexpr SemiringKind kTrop = SemiringKind::Tropical;
constexpr std::optional<std::int64_t> kBot = std::nullopt;

SemValue t(std::int64_t v) { return SemValue::trop(v); }

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw std::range_error("entry arithmetic overflows");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_sub_overflow(a, b, &r)) throw std::range_error("entry arithmetic overflows");
  return r;
}

std::int64_t fin(const SemValue& v) {
  if (!v.is_finite()) throw std::logic_error("expected a finite entry");
  return v.value();
}

Matrix perm_matrix(const Perm& p) { return construct_P(p, kTrop); }

Matrix diag3(std::int64_t a, std::int64_t b, std::int64_t c) { return diagonal({t(a), t(b), t(c)}); }

using Letters = std::vector<Generator>;

void append(Letters& out, const Letters& w, std::int64_t times = 1) {
  for (std::int64_t k = 0; k < times; ++k) out.insert(out.end(), w.begin(), w.end());
}

Letters repeat(const Letters& w, std::int64_t times) {
  Letters out;
  append(out, w, times);
  return out;
}

// ---------------------------------------------------------------- GL_n over {A, B}

struct GlTables {
  Letters cycle;       // P_(1..n)
  Letters cycle_inv;   // P_(1..n)^{-1} = B^{n-2} A^{n-1} B
  Letters p12;         // P_(1,2)
  std::vector<Letters> adjacent;    // adjacent[k] = P_(k+1,k+2)
  std::vector<Letters> swap_first;  // swap_first[i] = P_(1,i+1); empty for i = 0
  Letters a1_plus;     // A_1(1)
  Letters a1_minus;    // A_1(-1)
};

// P_sigma as a product of adjacent transpositions: bubble sort the image
// list, recording each swap; P_sigma = P_tau1 ... P_taum.
Letters perm_word_from(const std::vector<Letters>& adjacent, const Perm& sigma) {
  std::vector<int> images = sigma.images();
  Letters out;
  bool swapped = true;
  while (swapped) {
    swapped = false;
    for (std::size_t k = 0; k + 1 < images.size(); ++k) {
      if (images[k] > images[k + 1]) {
        std::swap(images[k], images[k + 1]);
        append(out, adjacent[k]);
        swapped = true;
      }
    }
  }
  return out;
}

GlTables build_gl_tables(int n) {
  const Generator a = Generator::gl_a();
  const Generator b = Generator::gl_b();
  GlTables tb;
  // B^{n-2} A^{n-1} B = P_(1..n)^{n-1}
  tb.cycle_inv = repeat({b}, n - 2);
  append(tb.cycle_inv, {a}, n - 1);
  tb.cycle_inv.push_back(b);
  tb.cycle = repeat(tb.cycle_inv, n - 1);
  // B (B^{n-2} A^{n-1} B) A = P_(1..n-1)
  Letters short_cycle{b};
  append(short_cycle, tb.cycle_inv);
  short_cycle.push_back(a);
  // P_(1..n)^{-2} P_(1..n-1) P_(1..n) = P_(1,2)
  tb.p12 = repeat(tb.cycle_inv, 2);
  append(tb.p12, short_cycle);
  append(tb.p12, tb.cycle);
  // P_(k+1,k+2) = P_(1..n)^{-k} P_(1,2) P_(1..n)^k
  for (int k = 0; k + 1 < n; ++k) {
    Letters w = repeat(tb.cycle_inv, k);
    append(w, tb.p12);
    append(w, tb.cycle, k);
    tb.adjacent.push_back(std::move(w));
  }
  tb.swap_first.emplace_back();
  for (int i = 1; i < n; ++i) {
    tb.swap_first.push_back(perm_word_from(tb.adjacent, Perm::from_cycles(n, {{1, i + 1}})));
  }
  // A_1(1) = A P_(1..n-1)^{n-2};  A_1(-1) = B P_(1..n)^{n-1}
  tb.a1_plus = {a};
  append(tb.a1_plus, short_cycle, n - 2);
  tb.a1_minus = {b};
  append(tb.a1_minus, tb.cycle_inv);
  return tb;
}

const GlTables& gl_tables(int n) {
  static const std::array<GlTables, kMaxDim + 1> tables = [] {
    std::array<GlTables, kMaxDim + 1> out;
    for (int k = 2; k <= kMaxDim; ++k) out[static_cast<std::size_t>(k)] = build_gl_tables(k);
    return out;
  }();
  if (n < 2 || n > kMaxDim) throw std::invalid_argument("GL words need 2 <= n <= 8");
  return tables[static_cast<std::size_t>(n)];
}

// Any invertible matrix u = D P_sigma.
Letters gl_letters(const Matrix& u) {
  auto mono = is_monomial(u);
  if (!mono || !is_invertible(u) || u.kind() != kTrop) {
    throw std::logic_error("gl_letters: not an invertible tropical matrix: " + format_matrix(u));
  }
  const GlTables& tb = gl_tables(u.n());
  Letters out;
  for (int i = 0; i < u.n(); ++i) {
    const std::int64_t d = mono->diag[static_cast<std::size_t>(i)].value();
    if (d == 0) continue;
    // A_i(x) = P_(1,i) A_1(x) P_(1,i)
    const Letters& conj = tb.swap_first[static_cast<std::size_t>(i)];
    append(out, conj);
    if (d > 0) {
      append(out, tb.a1_plus, d);
    } else {
      append(out, tb.a1_minus, -d);
    }
    append(out, conj);
  }
  append(out, perm_word_from(tb.adjacent, mono->sigma));
  return out;
}

// ---------------------------------------------------------------- M_2 units

// B(z) for the 2x2 set: B^z, or (A B A)^{-z} since A B A = B(-1).
Letters m2_b_power(std::int64_t z) {
  const Generator a = Generator::m2(Family::M2_A);
  const Generator b = Generator::m2(Family::M2_B);
  return z >= 0 ? repeat({b}, z) : repeat({a, b, a}, -z);
}

Letters m2_unit_letters(const Matrix& u) {
  auto mono = is_monomial(u);
  if (!mono || !is_invertible(u) || u.n() != 2) {
    throw std::logic_error("m2_unit_letters: not a 2x2 unit: " + format_matrix(u));
  }
  // F = B A swaps rows or columns.
  const Letters f{Generator::m2(Family::M2_B), Generator::m2(Family::M2_A)};
  const std::int64_t p = mono->diag[0].value();
  const std::int64_t q = mono->diag[1].value();
  Letters out = m2_b_power(p);
  if (mono->sigma.is_identity()) {
    // diag(p, q) = B(p) F B(q) F
    if (q != 0) {
      append(out, f);
      append(out, m2_b_power(q));
      append(out, f);
    }
  } else {
    // diag(p, q) F = B(p) F B(q)
    append(out, f);
    append(out, m2_b_power(q));
  }
  return out;
}

// ---------------------------------------------------------------- UT units

Letters ut_diag_letters(const Matrix& u) {
  if (!u.is_diagonal() || !is_invertible(u)) {
    throw std::logic_error("ut_diag_letters: not a finite diagonal matrix: " + format_matrix(u));
  }
  std::int64_t lowest = 0;
  for (int i = 0; i < u.n(); ++i) lowest = std::min(lowest, u(i, i).value());
  const std::int64_t shift = -lowest;
  Letters out = repeat({Generator::neg_id()}, shift);
  for (int i = 0; i < u.n(); ++i) {
    append(out, {Generator::diag_a(i + 1, t(1))}, checked_add(u(i, i).value(), shift));
  }
  return out;
}

// ---------------------------------------------------------------- builder

// Accumulates a word. Consecutive unit factors are multiplied together and
// only turned into letters when a non-unit letter (or the end) arrives.
class Builder {
 public:
  explicit Builder(Monoid target) : target_(target) {}

  const Monoid& target() const { return target_; }

  void unit(const Matrix& u) {
    pending_ = pending_ ? mat_mul(*pending_, u) : u;
  }

  void letter(const Generator& g) {
    flush();
    letters_.push_back(g);
  }

  Word finish() {
    flush();
    return Word{target_, std::move(letters_)};
  }

 private:
  void flush() {
    if (!pending_) return;
    const Matrix u = *std::exchange(pending_, std::nullopt);
    if (u == identity(u.n(), u.kind())) return;
    Letters w;
    switch (target_.kind) {
      case MonoidKind::GL:
      case MonoidKind::M3:
        w = gl_letters(u);
        break;
      case MonoidKind::M2:
        w = m2_unit_letters(u);
        break;
      case MonoidKind::UT:
        w = ut_diag_letters(u);
        break;
      case MonoidKind::U:
        throw std::logic_error("U_n has no non-identity units");
    }
    letters_.insert(letters_.end(), w.begin(), w.end());
  }

  Monoid target_;
  std::optional<Matrix> pending_;
  Letters letters_;
};

// ---------------------------------------------------------------- UT_n

// A_i(-inf): a letter of UT_n, or P_(i,1) A_1(-inf) P_(1,i) in M_3.
void emit_diag_bottom(Builder& b, int i) {
  if (b.target().kind == MonoidKind::UT) {
    b.letter(Generator::diag_a(i, SemValue::bottom()));
    return;
  }
  const int n = b.target().n;
  const Matrix swap = perm_matrix(i == 1 ? Perm::identity(n) : Perm::from_cycles(n, {{i, 1}}));
  b.unit(swap);
  b.letter(Generator::diag_a(1, SemValue::bottom()));
  b.unit(swap);
}

// E_ij: a letter of UT_n, or a permutation conjugate of E_12 in M_3.
void emit_elementary(Builder& b, int i, int j) {
  if (b.target().kind == MonoidKind::UT) {
    b.letter(Generator::elem_e(i, j, t(0)));
    return;
  }
  const int n = b.target().n;
  Perm rho;
  if (i == 1) {
    rho = j == 2 ? Perm::identity(n) : Perm::from_cycles(n, {{j, 2}});
  } else if (i == 2) {
    rho = j == 1 ? Perm::from_cycles(n, {{2, 1}}) : Perm::from_cycles(n, {{2, 1, j}});
  } else {
    rho = Perm::from_cycles(n, {{i, 1, j, 2}});
  }
  b.unit(perm_matrix(rho));
  b.letter(Generator::elem_e(1, 2, t(0)));
  b.unit(perm_matrix(rho.inverse()));
}

// Product over l, k of E_{n-l-k, n-l}(a_{n-l-k, n-l}), with E_ii(a) = A_i(a)
// and E_ij(a) = A_i(a) E_ij A_i(-a).
void emit_ut(Builder& b, const Matrix& m) {
  const int n = m.n();
  for (int l = 0; l < n; ++l) {
    for (int k = 0; k <= n - 1 - l; ++k) {
      const int i = n - l - k;
      const int j = n - l;
      const SemValue& a = m(i - 1, j - 1);
      if (i == j) {
        if (a.is_finite()) {
          b.unit(construct_A(i, a, n));
        } else {
          emit_diag_bottom(b, i);
        }
      } else if (a.is_finite()) {
        b.unit(construct_A(i, a, n));
        emit_elementary(b, i, j);
        b.unit(construct_A(i, t(-a.value()), n));
      }
    }
  }
}

// ---------------------------------------------------------------- M_2

// Emits 2x2 factors either as M_2 letters or, embedded, as the block
// 1 (+) x in rows/columns 2-3 of M_3.
struct M2Sink {
  Builder& b;
  bool embedded;

  void unit(const Matrix& u) const {
    if (!embedded) {
      b.unit(u);
      return;
    }
    Matrix big = identity(3, kTrop);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) big.set(r + 1, c + 1, u(r, c));
    }
    b.unit(big);
  }

  // C' = P_(1,2) A_1(-inf) P_(1,2)
  void c() const {
    if (!embedded) {
      b.letter(Generator::m2(Family::M2_C));
      return;
    }
    const Matrix p12 = perm_matrix(Perm::from_cycles(3, {{1, 2}}));
    b.unit(p12);
    b.letter(Generator::diag_a(1, SemValue::bottom()));
    b.unit(p12);
  }

  // D' = P_(1,3,2) E_12 P_(1,3)
  void d() const {
    if (!embedded) {
      b.letter(Generator::m2(Family::M2_D));
      return;
    }
    b.unit(perm_matrix(Perm::from_cycles(3, {{1, 3, 2}})));
    b.letter(Generator::elem_e(1, 2, t(0)));
    b.unit(perm_matrix(Perm::from_cycles(3, {{1, 3}})));
  }
};

const Matrix& m2_f() {
  static const Matrix f = Matrix::tropical({{kBot, 0}, {0, kBot}});
  return f;
}

Matrix m2_b(std::int64_t z) { return Matrix::tropical({{z, kBot}, {kBot, 0}}); }

void emit_m2(const M2Sink& sink, const Matrix& m);

// [[0, 0], [x, y]] with x, y finite.
void emit_m2_top_zero(const M2Sink& sink, const Matrix& m) {
  const SemValue x = m(1, 0);
  const SemValue y = m(1, 1);
  const LeqResult order = leq(x, y);
  if (!order.holds) {
    // y <= x in the additive order; swap the columns with F.
    emit_m2_top_zero(sink, Matrix::tropical({{0, 0}, {y.value(), x.value()}}));
    sink.unit(m2_f());
    return;
  }
  // t + y = x:  [[0, 0], [x, y]] = [[-inf, 0], [y, y]] [[t - y, -inf], [0, 0]]
  const std::int64_t tv = fin(*order.witness);
  emit_m2(sink, Matrix::tropical({{kBot, 0}, {y.value(), y.value()}}));
  emit_m2(sink, Matrix::tropical({{checked_sub(tv, y.value()), kBot}, {0, 0}}));
}

// Patterns with at least one -inf, each in one fixed position; the other
// placements are reached through row/column swaps by F.
bool emit_m2_pattern(const M2Sink& sink, const Matrix& m) {
  const bool z00 = m(0, 0).is_zero();
  const bool z01 = m(0, 1).is_zero();
  const bool z10 = m(1, 0).is_zero();
  const bool z11 = m(1, 1).is_zero();
  const int k = m.count_zero();
  const Matrix& f = m2_f();
  if (k == 4) {
    // C F C
    sink.c();
    sink.unit(f);
    sink.c();
    return true;
  }
  if (k == 3 && !z10) {
    // [[-inf, -inf], [x, -inf]] = C F B(x)
    sink.c();
    sink.unit(mat_mul(f, m2_b(m(1, 0).value())));
    return true;
  }
  if (k == 2 && z00 && z01) {
    // [[-inf, -inf], [x, y]] = C F B(y) D B(x - y)
    const std::int64_t x = m(1, 0).value();
    const std::int64_t y = m(1, 1).value();
    sink.c();
    sink.unit(mat_mul(f, m2_b(y)));
    sink.d();
    sink.unit(m2_b(checked_sub(x, y)));
    return true;
  }
  if (k == 2 && z00 && z10) {
    // [[-inf, x], [-inf, y]] = B(x) F B(y) D F C
    sink.unit(product({m2_b(m(0, 1).value()), f, m2_b(m(1, 1).value())}));
    sink.d();
    sink.unit(f);
    sink.c();
    return true;
  }
  if (k == 2 && z00 && z11) {
    // [[-inf, x], [y, -inf]] = B(x) F B(y), a unit
    sink.unit(m);
    return true;
  }
  if (k == 1 && z00) {
    // [[-inf, x], [y, z]] = B(x) F B(z) D F B(y - z)
    const std::int64_t x = m(0, 1).value();
    const std::int64_t y = m(1, 0).value();
    const std::int64_t z = m(1, 1).value();
    sink.unit(product({m2_b(x), f, m2_b(z)}));
    sink.d();
    sink.unit(mat_mul(f, m2_b(checked_sub(y, z))));
    return true;
  }
  return false;
}

void emit_m2(const M2Sink& sink, const Matrix& m) {
  const Matrix& f = m2_f();
  if (m.count_zero() == 0) {
    // [[a, b], [c, d]] = [[0, 0], [d - b, c - a]] B(b) F B(a)
    const std::int64_t a = m(0, 0).value();
    const std::int64_t b = m(0, 1).value();
    const std::int64_t c = m(1, 0).value();
    const std::int64_t d = m(1, 1).value();
    emit_m2_top_zero(sink, Matrix::tropical({{0, 0}, {checked_sub(d, b), checked_sub(c, a)}}));
    sink.unit(product({m2_b(b), f, m2_b(a)}));
    return;
  }
  for (int sr = 0; sr < 2; ++sr) {
    for (int sc = 0; sc < 2; ++sc) {
      Matrix img = m;
      if (sr) img = mat_mul(f, img);
      if (sc) img = mat_mul(img, f);
      // Check before emitting anything so a miss leaves the sink untouched.
      Builder probe(Monoid::m2());
      if (!emit_m2_pattern(M2Sink{probe, false}, img)) continue;
      if (sr) sink.unit(f);
      emit_m2_pattern(sink, img);
      if (sc) sink.unit(f);
      return;
    }
  }
  throw std::logic_error("M_2 dispatcher found no case for " + format_matrix(m));
}

// ---------------------------------------------------------------- M_3

thread_local int g_m3_depth = 0;

const std::vector<Perm>& perms3() {
  static const std::vector<Perm> all = all_perms(3);
  return all;
}

struct Placement {
  Perm row;
  Perm col;
  Matrix image;  // P_row m P_col
};

// First (row, col) pair in row-major order over S_3 x S_3 whose image
// satisfies `pred`.
template <class Pred>
std::optional<Placement> find_placement(const Matrix& m, Pred pred, bool rows_only = false) {
  for (const Perm& r : perms3()) {
    for (const Perm& c : perms3()) {
      if (rows_only && !c.is_identity()) continue;
      Matrix img = permute(m, r, c);
      if (pred(img)) return Placement{r, c, std::move(img)};
    }
  }
  return std::nullopt;
}

void emit_m3(Builder& b, const Matrix& m, int depth);
Word factor_m3_at(const Matrix& m, int depth);

void emit_m3_sparse(Builder& b, const Matrix& m, int depth) {
  if (auto p = find_placement(m, [](const Matrix& x) { return x.is_upper_triangular(); })) {
    b.unit(perm_matrix(p->row.inverse()));
    emit_ut(b, p->image);
    b.unit(perm_matrix(p->col.inverse()));
    return;
  }
  auto block = [](const Matrix& x) {
    return x(0, 1).is_zero() && x(0, 2).is_zero() && x(1, 0).is_zero() && x(2, 0).is_zero();
  };
  if (auto p = find_placement(m, block)) {
    b.unit(perm_matrix(p->row.inverse()));
    // Left diagonal A_1(x), then the block word.
    const SemValue corner = p->image(0, 0);
    if (corner.is_finite()) {
      b.unit(construct_A(1, corner, 3));
    } else {
      emit_diag_bottom(b, 1);
    }
    Matrix inner(2, kTrop);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) inner.set(r, c, p->image(r + 1, c + 1));
    }
    emit_m2(M2Sink{b, true}, inner);
    b.unit(perm_matrix(p->col.inverse()));
    return;
  }
  (void)depth;
  throw std::logic_error("matrix with >= 4 -inf entries is neither a permuted upper triangular nor a "
                         "permuted block diagonal matrix: " + format_matrix(m));
}

// [[a, b, c], [d, e, x], [-inf, -inf, y]]
//   = [[0, -inf, c], [-inf, 0, x], [-inf, -inf, y]] [[a, b, -inf], [d, e, -inf], [-inf, -inf, 0]]
void split_last_row(Builder& b, const Matrix& img, int depth) {
  Matrix left = identity(3, kTrop);
  left.set(0, 2, img(0, 2));
  left.set(1, 2, img(1, 2));
  left.set(2, 2, img(2, 2));
  Matrix right = identity(3, kTrop);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) right.set(r, c, img(r, c));
  }
  emit_m3(b, left, depth + 1);
  emit_m3(b, right, depth + 1);
}

// img(1, 2) = -inf and a, b, d, e finite. Clears (1, 2) when a + e >= b + d,
// otherwise (1, 1), by a left factor with one off-diagonal entry.
void split_first_row(Builder& b, const Matrix& img, int depth) {
  const std::int64_t a = fin(img(0, 0));
  const std::int64_t bb = fin(img(0, 1));
  const std::int64_t d = fin(img(1, 0));
  const std::int64_t e = fin(img(1, 1));
  Matrix left = identity(3, kTrop);
  Matrix right = img;
  if (checked_add(a, e) >= checked_add(bb, d)) {
    left.set(0, 1, t(checked_sub(bb, e)));
    right.set(0, 1, SemValue::bottom());
  } else {
    left.set(0, 1, t(checked_sub(a, d)));
    right.set(0, 0, SemValue::bottom());
  }
  emit_m3(b, left, depth + 1);
  emit_m3(b, right, depth + 1);
}

// Factors m^T and emits the transposed word: (w1 ... wk)^T = wk^T ... w1^T.
void emit_transposed(Builder& b, const Matrix& m, int depth) {
  const Word wt = factor_m3_at(transpose(m), depth + 1);
  const Matrix p12 = perm_matrix(Perm::from_cycles(3, {{1, 2}}));
  const Matrix p13 = perm_matrix(Perm::from_cycles(3, {{1, 3}}));
  for (auto it = wt.letters.rbegin(); it != wt.letters.rend(); ++it) {
    const Generator& g = *it;
    switch (g.family) {
      case Family::GL_A:
      case Family::GL_B:
        b.unit(transpose(realize(g, 3)));
        break;
      case Family::ElemE:
        // E_12^T = E_21 = P_(1,2) E_12 P_(1,2)
        b.unit(p12);
        b.letter(g);
        b.unit(p12);
        break;
      case Family::DiagA:
        b.letter(g);
        break;
      case Family::M3_X:
        // X_i^T = P_(1,3) X_i P_(1,3)
        b.unit(p13);
        b.letter(g);
        b.unit(p13);
        break;
      default:
        throw std::logic_error("unexpected letter in an M_3 word: " + format_generator(g));
    }
  }
}

// -inf entries exactly on a permutation pattern.
void emit_three_scattered(Builder& b, const Matrix& m) {
  auto p = find_placement(
      m, [](const Matrix& x) { return x(0, 0).is_zero() && x(1, 1).is_zero() && x(2, 2).is_zero(); },
      /*rows_only=*/true);
  if (!p) throw std::logic_error("no row permutation moves the -inf entries to the diagonal");
  const Matrix& img = p->image;
  const std::int64_t a = fin(img(0, 1));
  const std::int64_t bb = fin(img(0, 2));
  const std::int64_t c = fin(img(1, 0));
  const std::int64_t d = fin(img(1, 2));
  const std::int64_t e = fin(img(2, 0));
  const std::int64_t f = fin(img(2, 1));
  b.unit(perm_matrix(p->row.inverse()));
  // img = diag(a, d, e) [[-inf, 0, x], [y, -inf, 0], [0, z, -inf]]
  b.unit(diag3(a, d, e));
  const std::int64_t x = checked_sub(bb, a);
  const std::int64_t y = checked_sub(c, d);
  const std::int64_t z = checked_sub(f, e);
  const std::int64_t i = checked_add(checked_add(x, y), z);
  if (i >= 0) {
    b.unit(diag3(0, checked_sub(i, x), z));
    b.letter(Generator::x(i));
    b.unit(diag3(-z, 0, checked_sub(x, i)));
  } else {
    const std::int64_t k = -i;
    b.unit(Matrix::tropical({{kBot, kBot, 0}, {kBot, -x, kBot}, {z, kBot, kBot}}));
    b.letter(Generator::x(k));
    b.unit(Matrix::tropical({{kBot, kBot, x}, {kBot, 0, kBot}, {checked_sub(-z, k), kBot, kBot}}));
  }
}

void emit_m3_dense(Builder& b, const Matrix& m, int depth) {
  // m = m' diag(top row), where m' has a top row of zeros.
  std::array<std::int64_t, 3> top{};
  for (int c = 0; c < 3; ++c) top[static_cast<std::size_t>(c)] = m(0, c).value();
  Matrix scaled = mat_mul(m, diag3(-top[0], -top[1], -top[2]));
  // Stable sort of the columns by the second row: a <= b <= c.
  std::vector<int> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int l, int r) {
    return scaled(1, l).value() < scaled(1, r).value();
  });
  Matrix sorted(3, kTrop);
  for (int r = 0; r < 3; ++r) {
    for (int k = 0; k < 3; ++k) sorted.set(r, k, scaled(r, order[static_cast<std::size_t>(k)]));
  }
  const std::int64_t a = sorted(1, 0).value();
  const std::int64_t bb = sorted(1, 1).value();
  const std::int64_t c = sorted(1, 2).value();
  const std::int64_t d = sorted(2, 0).value();
  const std::int64_t e = sorted(2, 1).value();
  const std::int64_t f = sorted(2, 2).value();
  if (d <= e && d <= f) {
    emit_m3(b, Matrix::tropical({{0, kBot, kBot}, {a, bb, c}, {d, e, f}}), depth + 1);
    emit_m3(b, Matrix::tropical({{0, 0, 0}, {kBot, 0, kBot}, {kBot, kBot, 0}}), depth + 1);
  } else if (d >= e) {
    emit_m3(b, Matrix::tropical({{0, -bb, -d}, {c, 0, kBot}, {f, kBot, 0}}), depth + 1);
    emit_m3(b, Matrix::tropical({{kBot, kBot, 0}, {a, bb, kBot}, {d, e, kBot}}), depth + 1);
  } else if (d >= f) {
    emit_m3(b, Matrix::tropical({{0, -c, -d}, {bb, 0, kBot}, {e, kBot, 0}}), depth + 1);
    emit_m3(b, Matrix::tropical({{kBot, 0, kBot}, {a, kBot, c}, {d, kBot, f}}), depth + 1);
  } else {
    throw std::logic_error("no column case applies to " + format_matrix(sorted));
  }
  // sorted = scaled P^{-1} with P(k, order[k]) = 0, so scaled = sorted P.
  b.unit(perm_matrix(Perm(order)));
  b.unit(diag3(top[0], top[1], top[2]));
}

bool has_zero_pair_in_row(const Matrix& m) {
  for (int r = 0; r < 3; ++r) {
    int k = 0;
    for (int c = 0; c < 3; ++c) k += m(r, c).is_zero() ? 1 : 0;
    if (k >= 2) return true;
  }
  return false;
}

bool has_zero_pair_in_col(const Matrix& m) { return has_zero_pair_in_row(transpose(m)); }

bool last_row_bottom(const Matrix& x) { return x(2, 0).is_zero() && x(2, 1).is_zero(); }

void emit_m3(Builder& b, const Matrix& m, int depth) {
  g_m3_depth = std::max(g_m3_depth, depth);
  if (depth > kMaxM3Depth) {
    throw std::logic_error("M_3 dispatcher exceeded depth " + std::to_string(kMaxM3Depth) + " at " +
                           format_matrix(m));
  }
  if (is_invertible(m)) {
    b.unit(m);
    return;
  }
  const int zeros = m.count_zero();
  if (zeros >= 4) {
    emit_m3_sparse(b, m, depth);
    return;
  }
  if (zeros == 0) {
    emit_m3_dense(b, m, depth);
    return;
  }
  if ((zeros == 3 || zeros == 2) && has_zero_pair_in_row(m)) {
    auto p = find_placement(m, last_row_bottom);
    b.unit(perm_matrix(p->row.inverse()));
    split_last_row(b, p->image, depth);
    b.unit(perm_matrix(p->col.inverse()));
    return;
  }
  if ((zeros == 3 || zeros == 2) && has_zero_pair_in_col(m)) {
    emit_transposed(b, m, depth);
    return;
  }
  if (zeros == 3) {
    emit_three_scattered(b, m);
    return;
  }
  // One -inf, or two in different rows and columns: move one to (2, 3) and
  // the other, if any, into the third row.
  auto p = find_placement(m, [zeros](const Matrix& x) {
    return x(1, 2).is_zero() && (zeros == 1 || x(2, 0).is_zero() || x(2, 1).is_zero());
  });
  b.unit(perm_matrix(p->row.inverse()));
  split_first_row(b, p->image, depth);
  b.unit(perm_matrix(p->col.inverse()));
}

Word factor_m3_at(const Matrix& m, int depth) {
  Builder b(Monoid::m3());
  emit_m3(b, m, depth);
  return b.finish();
}

void require(bool ok, const std::string& what, const Matrix& m) {
  if (!ok) throw MembershipError(what + ": " + format_matrix(m));
}

bool is_unit_letter(const Generator& g, const Monoid& monoid) {
  switch (monoid.kind) {
    case MonoidKind::GL:
    case MonoidKind::M3:
      return g.family == Family::GL_A || g.family == Family::GL_B;
    case MonoidKind::M2:
      return g.family == Family::M2_A || g.family == Family::M2_B;
    case MonoidKind::UT:
      return g.family == Family::NegIdentity || g.family == Family::Identity ||
             (g.family == Family::DiagA && is_unit(g.value));
    case MonoidKind::U:
      return g.family == Family::Identity;
  }
  return false;
}

class RealizeCache {
 public:
  explicit RealizeCache(const Monoid& monoid) : monoid_(monoid) {}

  const Matrix& get(const Generator& g) {
    for (const auto& [key, value] : cache_) {
      if (key == g) return value;
    }
    cache_.emplace_back(g, realize(g, monoid_.n, monoid_.semiring));
    return cache_.back().second;
  }

 private:
  Monoid monoid_;
  std::vector<std::pair<Generator, Matrix>> cache_;
};

}  // namespace

// ---------------------------------------------------------------- public

void check_letters(const Word& w) {
  const GeneratingSet set = generating_set_for(w.monoid, 0);
  for (std::size_t k = 0; k < w.letters.size(); ++k) {
    if (!set.contains(w.letters[k])) {
      throw std::invalid_argument("letter " + std::to_string(k + 1) + " (" + format_generator(w.letters[k]) +
                                  ") is not a generator of " + std::string(monoid_name(w.monoid.kind)) +
                                  "(n=" + std::to_string(w.monoid.n) + ")");
    }
  }
}

Matrix eval(const Word& w) {
  check_letters(w);
  RealizeCache cache(w.monoid);
  Matrix acc = identity(w.monoid.n, w.monoid.semiring);
  for (const auto& g : w.letters) acc = mat_mul(acc, cache.get(g));
  return acc;
}

std::string format_word(const Word& w) {
  if (w.letters.empty()) return "ε";
  std::string out;
  for (std::size_t k = 0; k < w.letters.size(); ++k) {
    if (k > 0) out += ' ';
    out += format_generator(w.letters[k]);
  }
  return out;
}

Word parse_word(std::string_view text, const Monoid& monoid) {
  Word w{monoid, {}};
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (token == "ε") continue;
    w.letters.push_back(parse_generator(token, monoid));
  }
  return w;
}

Word factor_ut(const Matrix& m) {
  require(m.kind() == kTrop, "factor_ut needs a zmax matrix", m);
  require(m.is_upper_triangular(), "not upper triangular", m);
  Builder b(Monoid::ut(m.n()));
  emit_ut(b, m);
  return b.finish();
}

Word factor_unitriangular(const Matrix& m) {
  require(m.kind() == kTrop, "factor_unitriangular needs a zmax matrix", m);
  require(Monoid::u(m.n()).contains(m), "not unitriangular", m);
  Word w{Monoid::u(m.n()), {}};
  const int n = m.n();
  // prod_{l=1}^{n-1} prod_{i=1}^{n-l} E_{i, n+1-l}(a_{i, n+1-l})
  for (int l = 1; l <= n - 1; ++l) {
    for (int i = 1; i <= n - l; ++i) {
      const int j = n + 1 - l;
      const SemValue& a = m(i - 1, j - 1);
      if (a.is_finite()) w.letters.push_back(Generator::elem_e(i, j, a));
    }
  }
  return w;
}

Word factor_gl(const Matrix& m) {
  require(m.kind() == kTrop, "factor_gl needs a zmax matrix", m);
  require(m.n() >= 2, "factor_gl needs n >= 2", m);
  require(is_invertible(m), "not invertible", m);
  Builder b(Monoid::gl(m.n()));
  b.unit(m);
  return b.finish();
}

Word factor_m2(const Matrix& m) {
  require(m.kind() == kTrop && m.n() == 2, "factor_m2 needs a 2x2 zmax matrix", m);
  Builder b(Monoid::m2());
  emit_m2(M2Sink{b, false}, m);
  return b.finish();
}

Word factor_m3(const Matrix& m) {
  require(m.kind() == kTrop && m.n() == 3, "factor_m3 needs a 3x3 zmax matrix", m);
  g_m3_depth = 0;
  return factor_m3_at(m, 1);
}

int last_m3_depth() { return g_m3_depth; }

Word factor(const Matrix& m, const Monoid& monoid) {
  if (m.n() != monoid.n) {
    throw MembershipError("matrix is " + std::to_string(m.n()) + "x" + std::to_string(m.n()) + ", monoid has n = " +
                          std::to_string(monoid.n));
  }
  switch (monoid.kind) {
    case MonoidKind::UT: return factor_ut(m);
    case MonoidKind::U: return factor_unitriangular(m);
    case MonoidKind::GL: return factor_gl(m);
    case MonoidKind::M2: return factor_m2(m);
    case MonoidKind::M3: return factor_m3(m);
  }
  throw std::logic_error("unhandled monoid");
}

Word simplify(const Word& w) {
  RealizeCache cache(w.monoid);
  Word out{w.monoid, {}};
  std::size_t k = 0;
  while (k < w.letters.size()) {
    if (!is_unit_letter(w.letters[k], w.monoid)) {
      out.letters.push_back(w.letters[k]);
      ++k;
      continue;
    }
    std::size_t end = k;
    Matrix run = identity(w.monoid.n, w.monoid.semiring);
    while (end < w.letters.size() && is_unit_letter(w.letters[end], w.monoid)) {
      run = mat_mul(run, cache.get(w.letters[end]));
      ++end;
    }
    Letters replacement;
    if (w.monoid.kind != MonoidKind::U && w.monoid.semiring == kTrop) {
      Builder b(w.monoid);
      b.unit(run);
      replacement = b.finish().letters;
    }
    std::vector<Generator> original(w.letters.begin() + static_cast<std::ptrdiff_t>(k),
                                    w.letters.begin() + static_cast<std::ptrdiff_t>(end));
    std::erase_if(original, [](const Generator& g) { return g.family == Family::Identity; });
    const Letters& chosen = (w.monoid.kind != MonoidKind::U && w.monoid.semiring == kTrop &&
                             replacement.size() < original.size())
                                ? replacement
                                : original;
    out.letters.insert(out.letters.end(), chosen.begin(), chosen.end());
    k = end;
  }
  return out;
}

}  // namespace tropmon
