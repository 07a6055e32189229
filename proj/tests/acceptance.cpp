// Acceptance suite: one line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "support.hpp"
#include "tropmon/factorize.hpp"
#include "tropmon/finite.hpp"

using namespace tropmon;

namespace {

constexpr auto kTrop = SemiringKind::Tropical;
constexpr auto kBool = SemiringKind::Boolean;
constexpr std::optional<std::int64_t> kBot = std::nullopt;

struct Outcome {
  bool ok;
  std::string detail;
};

struct Criterion {
  const char* id;
  const char* title;
  double limit_s;  // wall-clock budget; 0 = none pinned
  std::function<Outcome()> run;
};

bool same(const Matrix& a, const Matrix& b) { return a == b; }

Outcome ac1() {
  long checked = 0;
  long bad = 0;
  const std::array<SemValue, 3> grid{SemValue::bottom(), SemValue::trop(0), SemValue::trop(1)};
  for (int code = 0; code < 19683; ++code) {
    Matrix m(3, kTrop);
    int rest = code;
    for (int k = 0; k < 9; ++k) {
      m.set(k / 3, k % 3, grid[static_cast<std::size_t>(rest % 3)]);
      rest /= 3;
    }
    ++checked;
    try {
      const Word w = factor_m3(m);
      if (!same(eval(w), m)) ++bad;
    } catch (const std::exception&) {
      ++bad;
    }
  }
  auto g = support::make_rng(101);
  for (int k = 0; k < 10000; ++k) {
    // Uniform over {-inf} u [-20, 20]: 42 outcomes.
    const Matrix m = support::random_matrix(g, 3, -20, 20, 1.0 / 42.0);
    ++checked;
    try {
      if (!same(eval(factor_m3(m)), m)) ++bad;
    } catch (const std::exception&) {
      ++bad;
    }
  }
  return {bad == 0, std::to_string(checked) + " matrices, " + std::to_string(bad) + " mismatches"};
}

Outcome ac2() {
  auto g = support::make_rng(102);
  long bad = 0;
  long checked = 0;
  auto verify = [&](const Matrix& m, const Monoid& monoid) {
    ++checked;
    try {
      if (!same(eval(factor(m, monoid)), m)) ++bad;
    } catch (const std::exception&) {
      ++bad;
    }
  };
  for (int n = 2; n <= 5; ++n) {
    for (int k = 0; k < 1000; ++k) {
      verify(support::random_upper(g, n, -20, 20, 0.25), Monoid::ut(n));
      verify(support::random_unitriangular(g, n, -20, 20, 0.25), Monoid::u(n));
      verify(support::random_monomial(g, n, -20, 20), Monoid::gl(n));
    }
  }
  for (int k = 0; k < 1000; ++k) verify(support::random_matrix(g, 2, -20, 20, 0.25), Monoid::m2());
  return {bad == 0, std::to_string(checked) + " instances (UT/U/GL n=2..5, M2), " + std::to_string(bad) + " mismatches"};
}

Outcome ac3() {
  std::vector<Matrix> m2_images;
  for (const auto& m : gens_m2_zmax().realize_all()) m2_images.push_back(phi(m));
  const FiniteMonoid m2 = closure(m2_images);
  const FiniteMonoid ut2 = closure(gens_ut_boolean(2).realize_all());
  const FiniteMonoid ut3 = closure(gens_ut_boolean(3).realize_all());
  const bool ok = m2.closed() && m2.size() == 16 && ut2.closed() && ut2.size() == 8 && ut3.closed() && ut3.size() == 64;
  return {ok, "|M2(B)| = " + std::to_string(m2.size()) + ", |UT2(B)| = " + std::to_string(ut2.size()) +
                  ", |UT3(B)| = " + std::to_string(ut3.size())};
}

Outcome ac4() {
  std::vector<Matrix> m2_images;
  for (const auto& m : gens_m2_zmax().realize_all()) m2_images.push_back(phi(m));
  const FiniteMonoid m = closure(m2_images);
  int pairs = 0;
  int generating_pairs = 0;
  for (std::size_t a = 0; a < m.size(); ++a) {
    for (std::size_t b = a + 1; b < m.size(); ++b) {
      ++pairs;
      generating_pairs += is_generating(m, {a, b}) ? 1 : 0;
    }
  }
  const auto pair = rank_search(m, 2);
  const auto triple = rank_search(m, 3);
  const bool ok = pairs == 120 && generating_pairs == 0 && !pair && triple && is_generating(m, *triple);
  return {ok, std::to_string(pairs) + " pairs scanned, " + std::to_string(generating_pairs) +
                  " generate; generating triple " + (triple ? "found" : "missing")};
}

Outcome ac5() {
  const FiniteMonoid all = full_boolean_monoid(3);
  const Matrix x = phi(realize(Generator::x(1), 3));
  const bool expected_shape = x == Matrix::boolean({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  const bool prime = prime_certificate(x, all);
  return {all.size() == 512 && expected_shape && prime,
          "|M3(B)| = " + std::to_string(all.size()) + ", " + std::to_string(all.size() * all.size()) +
              " pairs scanned, prime = " + (prime ? "true" : "false")};
}

// Independent check for AC6: is there a monomial sandwich U X_s V = X_t?
bool sandwich_related(std::int64_t s, std::int64_t t) {
  const Matrix xs = realize(Generator::x(s), 3);
  const Matrix xt = realize(Generator::x(t), 3);
  for (const auto& r : all_perms(3)) {
    for (const auto& c : all_perms(3)) {
      const Matrix y = permute(xs, r, c);
      bool ok = true;
      for (int i = 0; i < 3 && ok; ++i)
        for (int j = 0; j < 3 && ok; ++j) ok = y(i, j).is_zero() == xt(i, j).is_zero();
      if (!ok) continue;
      std::array<std::optional<std::int64_t>, 3> u{}, v{};
      u[0] = 0;
      for (int pass = 0; pass < 6; ++pass) {
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            if (y(i, j).is_zero()) continue;
            const std::int64_t gap = xt(i, j).value() - y(i, j).value();
            if (u[i] && !v[j]) v[j] = gap - *u[i];
            if (v[j] && !u[i]) u[i] = gap - *v[j];
          }
        }
      }
      for (int i = 0; i < 3 && ok; ++i) {
        for (int j = 0; j < 3 && ok; ++j) {
          if (!y(i, j).is_zero()) ok = u[i] && v[j] && *u[i] + y(i, j).value() + *v[j] == xt(i, j).value();
        }
      }
      if (ok) return true;
    }
  }
  return false;
}

Outcome ac6() {
  int mismatches = 0;
  for (std::int64_t s = -10; s <= 10; ++s) {
    for (std::int64_t t = -10; t <= 10; ++t) {
      if (x_family_j_related(s, t) != (s == t || s + t == 0)) ++mismatches;
    }
  }
  // Classes of the realized letters X_0..X_10 under the decision, each
  // pair also checked against the sandwich search.
  const auto set = gens_m3_zmax(10);
  std::vector<std::int64_t> reps;
  for (const auto& l : set.letters) {
    if (l.family != Family::M3_X) continue;
    bool fresh = true;
    for (std::int64_t r : reps) fresh = fresh && !x_family_j_related(r, l.x_index);
    if (fresh) reps.push_back(l.x_index);
  }
  for (std::int64_t s = 0; s <= 10; ++s) {
    for (std::int64_t t = 0; t <= 10; ++t) {
      if (sandwich_related(s, t) != x_family_j_related(s, t)) ++mismatches;
    }
  }
  return {mismatches == 0 && reps.size() == 11,
          "441 pairs decided, " + std::to_string(mismatches) + " mismatches; X_0..X_10 in " +
              std::to_string(reps.size()) + " J-classes"};
}

Outcome ac7() {
  int wrong = 0;
  for (std::int64_t i = 0; i <= 10; ++i) {
    if (is_regular(realize(Generator::x(i), 3))) ++wrong;
  }
  std::vector<Matrix> regular{identity(3, kTrop), construct_E(1, 2, SemValue::trop(0), 3),
                              Matrix::tropical({{0, 0}, {0, kBot}})};
  for (int i = 1; i <= 3; ++i) regular.push_back(construct_A(i, SemValue::bottom(), 3));
  for (const auto& m : regular) {
    const auto w = is_regular(m);
    if (!w || !(product({m, w->y, m}) == m)) ++wrong;
  }
  return {wrong == 0, "11 X_i rejected, 6 regular matrices with verified witnesses, " + std::to_string(wrong) +
                          " wrong"};
}

bool finite_in_every_line(const Matrix& m, bool at_least_one) {
  for (int k = 0; k < m.n(); ++k) {
    int row = 0;
    int col = 0;
    for (int j = 0; j < m.n(); ++j) {
      row += m(k, j).is_zero() ? 0 : 1;
      col += m(j, k).is_zero() ? 0 : 1;
    }
    if (at_least_one ? (row < 1 || col < 1) : (row > 1 || col > 1)) return false;
  }
  return true;
}

Outcome ac8() {
  auto g = support::make_rng(108);
  const Generator a = Generator::gl_a();
  const Generator b = Generator::gl_b();
  const Generator e12 = Generator::elem_e(1, 2, SemValue::trop(0));
  const Generator bot = Generator::diag_a(1, SemValue::bottom());
  // Without A_1(-inf): the remaining letters, X_0..X_10 included.
  std::vector<Generator> no_bottom{a, b, e12};
  for (std::int64_t i = 0; i <= 10; ++i) no_bottom.push_back(Generator::x(i));
  // Without E_12: the other non-X letters.
  const std::vector<Generator> no_e12{a, b, bot};
  int at_least = 0;
  int at_most = 0;
  auto random_word = [&](const std::vector<Generator>& alphabet) {
    Word w{Monoid::m3(), {}};
    const auto len = support::uniform(g, 1, 12);
    for (std::int64_t l = 0; l < len; ++l) {
      w.letters.push_back(alphabet[static_cast<std::size_t>(
          support::uniform(g, 0, static_cast<std::int64_t>(alphabet.size()) - 1))]);
    }
    return eval(w);
  };
  for (int k = 0; k < 10000; ++k) {
    if (!finite_in_every_line(random_word(no_bottom), true)) ++at_least;
    if (!finite_in_every_line(random_word(no_e12), false)) ++at_most;
  }
  // X_i alone has two finite entries per row, so the <= 1 side is stated
  // over the non-X letters only.
  return {at_least + at_most == 0, "10000 words over {A,B,E12,X_0..X_10}: " + std::to_string(at_least) +
                                       " rows/cols without a finite entry; 10000 words over {A,B,A1(-inf)}: " +
                                       std::to_string(at_most) + " with two or more"};
}

Outcome ac9() {
  // Supports of 3x3 matrices: bit k set means entry k is -inf.
  int dense_patterns = 0;
  int escapes = 0;
  const auto perms = all_perms(3);
  for (int mask = 0; mask < 512; ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) < 4) continue;
    ++dense_patterns;
    auto bottom = [&](int r, int c) { return ((mask >> (r * 3 + c)) & 1) != 0; };
    bool covered = false;
    for (const auto& rp : perms) {
      for (const auto& cp : perms) {
        // Image entry (i, j) is the source entry (rp(i), cp^{-1}(j)).
        const Perm ci = cp.inverse();
        auto img = [&](int i, int j) { return bottom(rp(i), ci(j)); };
        const bool upper = img(1, 0) && img(2, 0) && img(2, 1);
        const bool block = img(0, 1) && img(0, 2) && img(1, 0) && img(2, 0);
        covered = covered || upper || block;
      }
    }
    if (!covered) ++escapes;
  }
  return {escapes == 0, std::to_string(dense_patterns) + " patterns with >= 4 -inf, " + std::to_string(escapes) +
                            " escapes"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "factor_m3 soundness (3^9 grid + 10^4 random)", 30.0, ac1},
      {"AC2", "UT/U/GL/M2 soundness", 10.0, ac2},
      {"AC3", "Boolean closure counts", 1.0, ac3},
      {"AC4", "rank of M_2(B) is 3", 5.0, ac4},
      {"AC5", "phi_3(X_s) prime in M_3(B)", 10.0, ac5},
      {"AC6", "X-family J-relation", 0.0, ac6},
      {"AC7", "regularity decisions", 1.0, ac7},
      {"AC8", "irredundancy line invariants", 0.0, ac8},
      {"AC9", "coverage of >= 4 -inf patterns", 0.0, ac9},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_s <= 0.0 || secs < c.limit_s;
    const bool pass = o.ok && in_time;
    failed += pass ? 0 : 1;
    char timing[64];
    if (c.limit_s > 0.0) {
      std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", secs, c.limit_s);
    } else {
      std::snprintf(timing, sizeof timing, "%.2f s", secs);
    }
    std::printf("%s %s  %s: %s (%s)%s\n", c.id, pass ? "PASS" : "FAIL", c.title, o.detail.c_str(), timing,
                in_time ? "" : " over time budget");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
