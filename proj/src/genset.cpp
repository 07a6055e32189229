#include "tropmon/genset.hpp"

#include <charconv>
#include <stdexcept>

namespace tropmon {

namespace {

constexpr SemiringKind kTrop = SemiringKind::Tropical;

SemValue t(std::int64_t v) { return SemValue::trop(v); }

Perm long_cycle(int n, int length) {
  std::vector<int> cycle;
  for (int i = 1; i <= length; ++i) cycle.push_back(i);
  return length <= 1 ? Perm::identity(n) : Perm::from_cycles(n, {cycle});
}

void require_dim(const Generator& g, int n, int expected) {
  if (n != expected) {
    throw std::invalid_argument("letter " + format_generator(g) + " only exists for n = " +
                                std::to_string(expected));
  }
}

std::int64_t parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
  }
  return v;
}

// Splits "a,b,c" (the inside of a parenthesized argument list).
std::vector<std::string_view> split_args(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    out.push_back(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// "Name(args)" -> args, or nullopt when the token does not have that head.
std::optional<std::string_view> call_args(std::string_view token, std::string_view head) {
  if (token.size() < head.size() + 2 || token.substr(0, head.size()) != head ||
      token[head.size()] != '(' || token.back() != ')') {
    return std::nullopt;
  }
  return token.substr(head.size() + 1, token.size() - head.size() - 2);
}

}  // namespace

std::string_view monoid_name(MonoidKind kind) {
  switch (kind) {
    case MonoidKind::UT: return "ut";
    case MonoidKind::U: return "u";
    case MonoidKind::GL: return "gl";
    case MonoidKind::M2: return "m2";
    case MonoidKind::M3: return "m3";
  }
  return "?";
}

MonoidKind parse_monoid_name(std::string_view name) {
  for (MonoidKind k : {MonoidKind::UT, MonoidKind::U, MonoidKind::GL, MonoidKind::M2, MonoidKind::M3}) {
    if (monoid_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown monoid '" + std::string(name) + "' (expected ut, u, gl, m2, m3)");
}

bool Monoid::contains(const Matrix& m) const {
  if (m.n() != n || m.kind() != semiring) return false;
  switch (kind) {
    case MonoidKind::UT:
      return m.is_upper_triangular();
    case MonoidKind::U:
      if (!m.is_upper_triangular()) return false;
      for (int i = 0; i < n; ++i) {
        if (m(i, i) != one(semiring)) return false;
      }
      return true;
    case MonoidKind::GL:
      return is_invertible(m);
    case MonoidKind::M2:
    case MonoidKind::M3:
      return true;
  }
  return false;
}

Generator Generator::x(std::int64_t i) {
  if (i < 0) throw std::invalid_argument("X(i) requires i >= 0, got " + std::to_string(i));
  Generator g{Family::M3_X};
  g.x_index = i;
  return g;
}

Matrix realize(const Generator& g, int n, SemiringKind kind) {
  const bool tropical_only = g.family != Family::DiagA && g.family != Family::ElemE &&
                             g.family != Family::PermP && g.family != Family::Identity;
  if (tropical_only && kind != kTrop) {
    throw std::domain_error("letter " + format_generator(g) + " only exists over zmax");
  }
  switch (g.family) {
    case Family::GL_A:
      if (n < 2) throw std::invalid_argument("GL letters need n >= 2");
      return mat_mul(construct_A(1, t(1), n), construct_P(long_cycle(n, n - 1), kTrop));
    case Family::GL_B:
      if (n < 2) throw std::invalid_argument("GL letters need n >= 2");
      return mat_mul(construct_A(1, t(-1), n), construct_P(long_cycle(n, n), kTrop));
    case Family::DiagA:
      if (g.value.kind() != kind) throw std::domain_error("letter value in the wrong semiring");
      return construct_A(g.i, g.value, n);
    case Family::ElemE:
      if (g.value.kind() != kind) throw std::domain_error("letter value in the wrong semiring");
      return construct_E(g.i, g.j, g.value, n);
    case Family::PermP:
      if (g.perm.size() != n) throw std::invalid_argument("permutation letter has the wrong size");
      return construct_P(g.perm, kind);
    case Family::M2_A:
      require_dim(g, n, 2);
      return Matrix::tropical({{std::nullopt, -1}, {0, std::nullopt}});
    case Family::M2_B:
      require_dim(g, n, 2);
      return Matrix::tropical({{1, std::nullopt}, {std::nullopt, 0}});
    case Family::M2_C:
      require_dim(g, n, 2);
      return Matrix::tropical({{std::nullopt, std::nullopt}, {std::nullopt, 0}});
    case Family::M2_D:
      require_dim(g, n, 2);
      return Matrix::tropical({{0, 0}, {0, std::nullopt}});
    case Family::M3_X:
      require_dim(g, n, 3);
      return Matrix::tropical({{std::nullopt, 0, g.x_index}, {0, std::nullopt, 0}, {0, 0, std::nullopt}});
    case Family::Identity:
      return identity(n, kind);
    case Family::NegIdentity: {
      Matrix m(n, kTrop);
      for (int i = 0; i < n; ++i) m.set(i, i, t(-1));
      return m;
    }
  }
  throw std::logic_error("unhandled generator family");
}

std::string format_generator(const Generator& g) {
  switch (g.family) {
    case Family::GL_A:
    case Family::M2_A: return "A";
    case Family::GL_B:
    case Family::M2_B: return "B";
    case Family::M2_C: return "C";
    case Family::M2_D: return "D";
    case Family::Identity: return "I";
    case Family::NegIdentity: return "NEG_I";
    case Family::DiagA:
      return "Ai(" + std::to_string(g.i) + "," + format_value(g.value) + ")";
    case Family::ElemE:
      return "E(" + std::to_string(g.i) + "," + std::to_string(g.j) + "," + format_value(g.value) + ")";
    case Family::PermP: {
      const std::string cycles = g.perm.cycle_string();
      return "P" + cycles;
    }
    case Family::M3_X:
      return "X(" + std::to_string(g.x_index) + ")";
  }
  return "?";
}

Generator parse_generator(std::string_view token, const Monoid& monoid) {
  const bool m2 = monoid.kind == MonoidKind::M2;
  if (token == "A") return m2 ? Generator::m2(Family::M2_A) : Generator::gl_a();
  if (token == "B") return m2 ? Generator::m2(Family::M2_B) : Generator::gl_b();
  if (token == "C") return Generator::m2(Family::M2_C);
  if (token == "D") return Generator::m2(Family::M2_D);
  if (token == "I") return Generator::id();
  if (token == "NEG_I") return Generator::neg_id();
  if (auto args = call_args(token, "Ai")) {
    auto parts = split_args(*args);
    if (parts.size() != 2) throw std::invalid_argument("Ai(k,v) takes two arguments: " + std::string(token));
    return Generator::diag_a(static_cast<int>(parse_int(parts[0])), parse_value(parts[1], monoid.semiring));
  }
  if (auto args = call_args(token, "E")) {
    auto parts = split_args(*args);
    if (parts.size() != 3) throw std::invalid_argument("E(i,j,v) takes three arguments: " + std::string(token));
    return Generator::elem_e(static_cast<int>(parse_int(parts[0])), static_cast<int>(parse_int(parts[1])),
                             parse_value(parts[2], monoid.semiring));
  }
  if (auto args = call_args(token, "X")) return Generator::x(parse_int(*args));
  if (token.size() >= 3 && token[0] == 'P' && token[1] == '(' && token.back() == ')') {
    std::vector<std::vector<int>> cycles;
    std::string_view rest = token.substr(1);
    while (!rest.empty()) {
      const std::size_t close = rest.find(')');
      if (rest.front() != '(' || close == std::string_view::npos) {
        throw std::invalid_argument("malformed permutation letter " + std::string(token));
      }
      const std::string_view inner = rest.substr(1, close - 1);
      if (!inner.empty()) {
        auto& cycle = cycles.emplace_back();
        for (auto p : split_args(inner)) cycle.push_back(static_cast<int>(parse_int(p)));
      }
      rest.remove_prefix(close + 1);
    }
    return Generator::perm_p(Perm::from_cycles(monoid.n, cycles));
  }
  throw std::invalid_argument("unknown letter '" + std::string(token) + "'");
}

// ---------------------------------------------------------------- sets

bool GeneratingSet::contains(const Generator& g) const {
  for (const auto& l : letters) {
    if (l == g) return true;
  }
  switch (family) {
    case InfiniteFamily::None:
      return false;
    case InfiniteFamily::ElemZ:
      return g.family == Family::ElemE && g.i >= 1 && g.i < g.j && g.j <= monoid.n &&
             g.value.is_finite();
    case InfiniteFamily::XIndex:
      return g.family == Family::M3_X && g.x_index >= 0;
  }
  return false;
}

std::size_t GeneratingSet::finite_size() const {
  if (family != InfiniteFamily::XIndex) return letters.size();
  std::size_t k = 0;
  for (const auto& l : letters) k += l.family == Family::M3_X ? 0 : 1;
  return k;
}

std::vector<Matrix> GeneratingSet::realize_all() const {
  std::vector<Matrix> out;
  out.reserve(letters.size());
  for (const auto& l : letters) out.push_back(realize(l, monoid.n, monoid.semiring));
  return out;
}

std::vector<Generator> GeneratingSet::family_instances(std::int64_t z) const {
  std::vector<Generator> out;
  if (family == InfiniteFamily::ElemZ) {
    for (int i = 1; i <= monoid.n; ++i) {
      for (int j = i + 1; j <= monoid.n; ++j) out.push_back(Generator::elem_e(i, j, t(z)));
    }
  } else if (family == InfiniteFamily::XIndex) {
    out.push_back(Generator::x(z));
  }
  return out;
}

GeneratingSet gens_ut_zmax(int n) {
  GeneratingSet s{Monoid::ut(n)};
  for (int i = 1; i <= n; ++i) s.letters.push_back(Generator::diag_a(i, t(1)));
  s.letters.push_back(Generator::neg_id());
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) s.letters.push_back(Generator::elem_e(i, j, t(0)));
  }
  for (int i = 1; i <= n; ++i) s.letters.push_back(Generator::diag_a(i, SemValue::bottom()));
  return s;
}

GeneratingSet gens_u_zmax(int n) {
  GeneratingSet s{Monoid::u(n)};
  s.letters.push_back(Generator::id());
  s.family = GeneratingSet::InfiniteFamily::ElemZ;
  return s;
}

GeneratingSet gens_gl_zmax(int n) {
  if (n < 2) {
    throw std::invalid_argument("GL_1(Z_max) is isomorphic to Z and needs a different set; n >= 2 required");
  }
  GeneratingSet s{Monoid::gl(n)};
  s.letters = {Generator::gl_a(), Generator::gl_b()};
  return s;
}

GeneratingSet gens_m2_zmax() {
  GeneratingSet s{Monoid::m2()};
  s.letters = {Generator::m2(Family::M2_A), Generator::m2(Family::M2_B), Generator::m2(Family::M2_C),
               Generator::m2(Family::M2_D)};
  return s;
}

GeneratingSet gens_m3_zmax(std::int64_t max_x) {
  if (max_x < 0) throw std::invalid_argument("max_x must be >= 0");
  GeneratingSet s{Monoid::m3()};
  s.letters = {Generator::gl_a(), Generator::gl_b(), Generator::elem_e(1, 2, t(0)),
               Generator::diag_a(1, SemValue::bottom())};
  for (std::int64_t i = 0; i <= max_x; ++i) s.letters.push_back(Generator::x(i));
  s.family = GeneratingSet::InfiniteFamily::XIndex;
  s.realized_bound = max_x;
  return s;
}

GeneratingSet gens_ut_boolean(int n) {
  const SemiringKind b = SemiringKind::Boolean;
  GeneratingSet s{Monoid::ut(n, b)};
  s.letters.push_back(Generator::id());
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) s.letters.push_back(Generator::elem_e(i, j, one(b)));
  }
  for (int i = 1; i <= n; ++i) s.letters.push_back(Generator::diag_a(i, zero(b)));
  return s;
}

GeneratingSet generating_set_for(const Monoid& monoid, std::int64_t max_x) {
  switch (monoid.kind) {
    case MonoidKind::UT:
      return monoid.semiring == SemiringKind::Boolean ? gens_ut_boolean(monoid.n) : gens_ut_zmax(monoid.n);
    case MonoidKind::U:
      return gens_u_zmax(monoid.n);
    case MonoidKind::GL:
      return gens_gl_zmax(monoid.n);
    case MonoidKind::M2:
      return gens_m2_zmax();
    case MonoidKind::M3:
      return gens_m3_zmax(max_x);
  }
  throw std::logic_error("unhandled monoid");
}

}  // namespace tropmon
