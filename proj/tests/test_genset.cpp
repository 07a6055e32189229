#include <set>

#include "doctest.h"
#include "support.hpp"
#include "tropmon/finite.hpp"
#include "tropmon/genset.hpp"

using namespace tropmon;

namespace {

constexpr auto kTrop = SemiringKind::Tropical;
constexpr auto kBool = SemiringKind::Boolean;
constexpr std::optional<std::int64_t> kBot = std::nullopt;

std::set<std::string> texts(const std::vector<Matrix>& ms) {
  std::set<std::string> out;
  for (const auto& m : ms) out.insert(format_matrix(m));
  return out;
}

std::vector<Matrix> phi_all(const std::vector<Matrix>& ms) {
  std::vector<Matrix> out;
  for (const auto& m : ms) out.push_back(phi(m));
  return out;
}

}  // namespace

TEST_CASE("UT_n(Z_max) set") {
  CHECK(gens_ut_zmax(1).letters.size() == 3);
  CHECK(gens_ut_zmax(2).letters.size() == 6);
  CHECK(gens_ut_zmax(3).letters.size() == 10);
  for (int n = 1; n <= 8; ++n) {
    const auto set = gens_ut_zmax(n);
    CHECK(set.letters.size() == static_cast<std::size_t>(2 * n + 1 + n * (n - 1) / 2));
    for (const auto& m : set.realize_all()) CHECK(Monoid::ut(n).contains(m));
  }
  const auto one = gens_ut_zmax(1);
  CHECK(one.contains(Generator::diag_a(1, SemValue::trop(1))));
  CHECK(one.contains(Generator::neg_id()));
  CHECK(one.contains(Generator::diag_a(1, SemValue::bottom())));
  CHECK(realize(Generator::neg_id(), 2) == Matrix::tropical({{-1, kBot}, {kBot, -1}}));
}

TEST_CASE("U_n(Z_max) set") {
  const auto s2 = gens_u_zmax(2);
  CHECK(s2.letters.size() == 1);
  CHECK(s2.letters[0] == Generator::id());
  std::vector<Matrix> realized{identity(2, kTrop)};
  for (std::int64_t z = -1; z <= 1; ++z) {
    for (const auto& g : s2.family_instances(z)) {
      CHECK(s2.contains(g));
      realized.push_back(realize(g, 2));
    }
  }
  CHECK(realized.size() == 4);
  CHECK(realized[1] == Matrix::tropical({{0, -1}, {kBot, 0}}));
  CHECK(gens_u_zmax(1).letters.size() == 1);
  CHECK(gens_u_zmax(1).family_instances(3).empty());
  CHECK(gens_u_zmax(3).contains(Generator::elem_e(1, 3, SemValue::trop(7))));
  CHECK_FALSE(gens_u_zmax(3).contains(Generator::elem_e(3, 1, SemValue::trop(7))));
  CHECK_FALSE(gens_u_zmax(3).contains(Generator::elem_e(1, 3, SemValue::bottom())));
}

TEST_CASE("GL_n(Z_max) set") {
  const auto s3 = gens_gl_zmax(3);
  REQUIRE(s3.letters.size() == 2);
  const Matrix a = realize(s3.letters[0], 3);
  const Matrix b = realize(s3.letters[1], 3);
  CHECK(a == mat_mul(construct_A(1, SemValue::trop(1), 3), construct_P(Perm::from_cycles(3, {{1, 2}}), kTrop)));
  CHECK(b == mat_mul(construct_A(1, SemValue::trop(-1), 3), construct_P(Perm::from_cycles(3, {{1, 2, 3}}), kTrop)));
  CHECK(realize(Generator::gl_a(), 2) == construct_A(1, SemValue::trop(1), 2));
  for (int n = 2; n <= 8; ++n) {
    for (const auto& m : gens_gl_zmax(n).realize_all()) CHECK(is_invertible(m));
  }
  CHECK_THROWS_AS(gens_gl_zmax(1), std::invalid_argument);
}

TEST_CASE("M_2(Z_max) set") {
  const auto s = gens_m2_zmax();
  REQUIRE(s.letters.size() == 4);
  const auto ms = s.realize_all();
  CHECK(ms[0] == Matrix::tropical({{kBot, -1}, {0, kBot}}));
  CHECK(ms[1] == Matrix::tropical({{1, kBot}, {kBot, 0}}));
  CHECK(ms[2] == Matrix::tropical({{kBot, kBot}, {kBot, 0}}));
  CHECK(ms[3] == Matrix::tropical({{0, 0}, {0, kBot}}));
  CHECK(texts(phi_all(ms)) == texts({Matrix::boolean({{0, 1}, {1, 0}}), Matrix::boolean({{1, 0}, {0, 1}}),
                                     Matrix::boolean({{0, 0}, {0, 1}}), Matrix::boolean({{1, 1}, {1, 0}})}));
  CHECK(is_invertible(ms[0]));
  CHECK_FALSE(is_invertible(ms[2]));
  const FiniteMonoid c = closure(phi_all(ms));
  CHECK(c.closed());
  CHECK(c.size() == 16);
}

TEST_CASE("M_3(Z_max) set") {
  const auto s = gens_m3_zmax(5);
  CHECK(s.finite_size() == 4);
  CHECK(s.letters.size() == 10);
  CHECK(realize(Generator::x(0), 3) == Matrix::tropical({{kBot, 0, 0}, {0, kBot, 0}, {0, 0, kBot}}));
  CHECK(realize(Generator::x(5), 3)(0, 2) == SemValue::trop(5));
  CHECK(s.contains(Generator::x(1000)));
  CHECK_THROWS_AS(Generator::x(-1), std::invalid_argument);
  CHECK(s.family_instances(12).front() == Generator::x(12));
  CHECK(gens_m3_zmax(0).letters.size() == 5);
}

TEST_CASE("UT_n(B) set and Boolean closures") {
  const auto s2 = gens_ut_boolean(2);
  CHECK(texts(s2.realize_all()) == texts({identity(2, kBool), Matrix::boolean({{1, 1}, {0, 1}}),
                                          Matrix::boolean({{0, 0}, {0, 1}}), Matrix::boolean({{1, 0}, {0, 0}})}));
  CHECK(gens_ut_boolean(1).letters.size() == 2);
  // The closure of each Boolean set is its whole target monoid.
  for (int n = 1; n <= 3; ++n) {
    const FiniteMonoid c = closure(gens_ut_boolean(n).realize_all());
    CHECK(c.closed());
    CHECK(c.size() == (std::size_t{1} << (n * (n + 1) / 2)));
    for (const auto& e : c.elements()) CHECK(e.is_upper_triangular());
  }
}

TEST_CASE("generator text syntax round-trips") {
  const Monoid m3 = Monoid::m3();
  const Monoid m2 = Monoid::m2();
  const Monoid ut = Monoid::ut(3);
  CHECK(parse_generator("A", m2) == Generator::m2(Family::M2_A));
  CHECK(parse_generator("A", m3) == Generator::gl_a());
  CHECK(parse_generator("X(5)", m3) == Generator::x(5));
  CHECK(parse_generator("Ai(2,-inf)", ut) == Generator::diag_a(2, SemValue::bottom()));
  CHECK(parse_generator("E(1,2,0)", m3) == Generator::elem_e(1, 2, SemValue::trop(0)));
  CHECK(parse_generator("P(1,2,3)", m3) == Generator::perm_p(Perm::from_cycles(3, {{1, 2, 3}})));
  std::vector<std::pair<Generator, Monoid>> samples{
      {Generator::gl_a(), m3},        {Generator::gl_b(), m3},
      {Generator::m2(Family::M2_C), m2}, {Generator::m2(Family::M2_D), m2},
      {Generator::id(), ut},           {Generator::neg_id(), ut},
      {Generator::diag_a(3, SemValue::trop(-4)), ut}, {Generator::elem_e(2, 3, SemValue::trop(9)), ut},
      {Generator::x(0), m3},           {Generator::perm_p(Perm::from_cycles(4, {{1, 3}, {2, 4}})), Monoid::gl(4)}};
  for (const auto& [g, monoid] : samples) CHECK(parse_generator(format_generator(g), monoid) == g);
  for (const char* bad : {"Q", "X(-1)", "X(1", "E(1,2)", "Ai(1)", "E(1,x,0)", "P(1,1)", ""}) {
    CHECK_THROWS_AS(parse_generator(bad, m3), std::invalid_argument);
  }
}

TEST_CASE("monoid membership") {
  CHECK(Monoid::ut(2).contains(Matrix::tropical({{1, 2}, {kBot, kBot}})));
  CHECK_FALSE(Monoid::ut(2).contains(Matrix::tropical({{1, 2}, {0, kBot}})));
  CHECK(Monoid::u(2).contains(Matrix::tropical({{0, 2}, {kBot, 0}})));
  CHECK_FALSE(Monoid::u(2).contains(Matrix::tropical({{1, 2}, {kBot, 0}})));
  CHECK(Monoid::gl(2).contains(Matrix::tropical({{kBot, 2}, {3, kBot}})));
  CHECK_FALSE(Monoid::m3().contains(identity(2, kTrop)));
  CHECK(parse_monoid_name("m3") == MonoidKind::M3);
  CHECK(monoid_name(MonoidKind::UT) == "ut");
  CHECK_THROWS_AS(parse_monoid_name("m4"), std::invalid_argument);
}
