#include "tropmon/finite.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

namespace tropmon {

std::uint64_t pack_boolean(const Matrix& m) {
  if (m.kind() != SemiringKind::Boolean) throw std::invalid_argument("pack_boolean needs a Boolean matrix");
  std::uint64_t bits = 0;
  for (int r = 0; r < m.n(); ++r) {
    for (int c = 0; c < m.n(); ++c) {
      if (m(r, c).bit()) bits |= std::uint64_t{1} << (r * m.n() + c);
    }
  }
  return bits;
}

Matrix unpack_boolean(std::uint64_t bits, int n) {
  Matrix m(n, SemiringKind::Boolean);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m.set(r, c, SemValue::boolean((bits >> (r * n + c)) & 1U));
  }
  return m;
}

std::optional<std::size_t> FiniteMonoid::index_of(const Matrix& m) const {
  if (m.n() != n_ || m.kind() != kind_) return std::nullopt;
  if (kind_ == SemiringKind::Boolean) {
    auto it = packed_index_.find(pack_boolean(m));
    if (it == packed_index_.end()) return std::nullopt;
    return it->second;
  }
  auto it = text_index_.find(format_matrix(m));
  if (it == text_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FiniteMonoid::insert(const Matrix& m) {
  const std::size_t next = elements_.size();
  bool added = false;
  std::size_t idx = 0;
  if (kind_ == SemiringKind::Boolean) {
    auto [it, fresh] = packed_index_.try_emplace(pack_boolean(m), next);
    idx = it->second;
    added = fresh;
  } else {
    auto [it, fresh] = text_index_.try_emplace(format_matrix(m), next);
    idx = it->second;
    added = fresh;
  }
  if (added) elements_.push_back(m);
  return idx;
}

FiniteMonoid closure(const std::vector<Matrix>& gens, std::size_t cap, std::optional<int> n,
                     std::optional<SemiringKind> kind) {
  if (gens.empty() && (!n || !kind)) {
    throw std::invalid_argument("closure of no generators needs an explicit dimension and semiring");
  }
  const int dim = n.value_or(gens.empty() ? 0 : gens.front().n());
  const SemiringKind sk = kind.value_or(gens.empty() ? SemiringKind::Boolean : gens.front().kind());
  for (const auto& g : gens) {
    if (g.n() != dim || g.kind() != sk) {
      throw std::invalid_argument("closure generators must share one dimension and semiring");
    }
  }
  if (cap == 0) throw std::invalid_argument("closure cap must be positive");

  FiniteMonoid m(dim, sk);
  bool overflow = false;
  auto add = [&](const Matrix& x) -> std::size_t {
    if (auto idx = m.index_of(x)) return *idx;
    if (m.size() >= cap) {
      overflow = true;
      return kNoEdge;
    }
    return m.insert(x);
  };

  add(identity(dim, sk));
  for (const auto& g : gens) m.gens_.push_back(add(g));

  const std::size_t width = gens.size();
  for (std::size_t e = 0; e < m.size() && !overflow; ++e) {
    for (std::size_t g = 0; g < width; ++g) {
      const std::size_t idx = add(mat_mul(m.elements_[e], gens[g]));
      m.cayley_.push_back(idx);
      if (overflow) break;
    }
  }
  m.cayley_.resize(m.size() * width, kNoEdge);
  m.closed_ = !overflow;
  return m;
}

FiniteMonoid full_boolean_monoid(int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("full_boolean_monoid supports 1 <= n <= 3");
  std::vector<Matrix> all;
  const std::uint64_t count = std::uint64_t{1} << (n * n);
  for (std::uint64_t bits = 0; bits < count; ++bits) all.push_back(unpack_boolean(bits, n));
  return closure(all);
}

namespace {

void require_closed(const FiniteMonoid& m, const char* what) {
  if (!m.closed()) throw std::invalid_argument(std::string(what) + " needs a closed monoid");
}

std::size_t lookup(const FiniteMonoid& m, const Matrix& x) {
  auto idx = m.index_of(x);
  if (!idx) throw std::logic_error("product escaped a closed monoid: " + format_matrix(x));
  return *idx;
}

}  // namespace

JClassPartition jclasses(const FiniteMonoid& m) {
  require_closed(m, "jclasses");
  const std::size_t size = m.size();
  const std::size_t width = m.gens().size();
  // left[e * width + g] = gen(g) * element(e)
  std::vector<std::size_t> left(size * width);
  for (std::size_t e = 0; e < size; ++e) {
    for (std::size_t g = 0; g < width; ++g) {
      left[e * width + g] = lookup(m, mat_mul(m.element(m.gens()[g]), m.element(e)));
    }
  }

  const std::size_t words = (size + 63) / 64;
  std::vector<std::vector<std::uint64_t>> ideal(size, std::vector<std::uint64_t>(words, 0));
  std::vector<std::size_t> stack;
  for (std::size_t x = 0; x < size; ++x) {
    auto& bits = ideal[x];
    auto visit = [&](std::size_t e) {
      std::uint64_t& w = bits[e / 64];
      const std::uint64_t bit = std::uint64_t{1} << (e % 64);
      if (w & bit) return;
      w |= bit;
      stack.push_back(e);
    };
    visit(x);
    while (!stack.empty()) {
      const std::size_t e = stack.back();
      stack.pop_back();
      for (std::size_t g = 0; g < width; ++g) {
        visit(m.right(e, g));
        visit(left[e * width + g]);
      }
    }
  }

  JClassPartition part;
  part.class_of.assign(size, -1);
  std::map<std::vector<std::uint64_t>, int> ids;
  for (std::size_t x = 0; x < size; ++x) {
    auto [it, fresh] = ids.try_emplace(ideal[x], part.count());
    if (fresh) part.members.emplace_back();
    part.class_of[x] = it->second;
    part.members[static_cast<std::size_t>(it->second)].push_back(x);
  }
  const std::size_t classes = part.members.size();
  part.below.assign(classes, std::vector<bool>(classes, false));
  for (std::size_t a = 0; a < classes; ++a) {
    const auto& ia = ideal[part.members[a].front()];
    for (std::size_t b = 0; b < classes; ++b) {
      const auto& ib = ideal[part.members[b].front()];
      bool subset = true;
      for (std::size_t w = 0; w < words && subset; ++w) subset = (ia[w] & ~ib[w]) == 0;
      part.below[a][b] = subset;
    }
  }
  return part;
}

bool is_generating(const FiniteMonoid& m, const std::vector<std::size_t>& subset) {
  require_closed(m, "is_generating");
  for (std::size_t s : subset) {
    if (s >= m.size()) throw std::out_of_range("subset index " + std::to_string(s) + " is not an element");
  }
  std::vector<bool> seen(m.size(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!queue.empty()) {
    const std::size_t e = queue.front();
    queue.pop_front();
    for (std::size_t s : subset) {
      const std::size_t p = lookup(m, mat_mul(m.element(e), m.element(s)));
      if (!seen[p]) {
        seen[p] = true;
        ++reached;
        queue.push_back(p);
      }
    }
  }
  return reached == m.size();
}

std::vector<bool> irredundant(const FiniteMonoid& m, const std::vector<std::size_t>& subset) {
  std::vector<bool> needed;
  for (std::size_t k = 0; k < subset.size(); ++k) {
    std::vector<std::size_t> rest;
    for (std::size_t j = 0; j < subset.size(); ++j) {
      if (j != k) rest.push_back(subset[j]);
    }
    needed.push_back(!is_generating(m, rest));
  }
  return needed;
}

namespace {

// Full multiplication table of a small closed monoid.
std::vector<std::size_t> product_table(const FiniteMonoid& m) {
  const std::size_t size = m.size();
  std::vector<std::size_t> table(size * size);
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = 0; b < size; ++b) table[a * size + b] = lookup(m, mat_mul(m.element(a), m.element(b)));
  }
  return table;
}

bool prime_by_table(std::size_t x, const std::vector<std::size_t>& table, const std::vector<bool>& unit) {
  const std::size_t size = unit.size();
  for (std::size_t u = 0; u < size; ++u) {
    for (std::size_t v = 0; v < size; ++v) {
      if (table[u * size + v] == x && unit[u] == unit[v]) return false;
    }
  }
  return true;
}

}  // namespace

std::optional<std::vector<std::size_t>> rank_search(const FiniteMonoid& m, int k) {
  require_closed(m, "rank_search");
  if (m.size() > kRankSearchMaxElements || k < 0 || k > kRankSearchMaxK) {
    throw std::invalid_argument("rank_search is limited to monoids of at most " +
                                std::to_string(kRankSearchMaxElements) + " elements and k <= " +
                                std::to_string(kRankSearchMaxK));
  }
  const std::size_t size = m.size();
  const auto kk = static_cast<std::size_t>(k);
  if (kk > size) return std::nullopt;
  const std::vector<std::size_t> table = product_table(m);
  std::vector<bool> unit(size);
  for (std::size_t e = 0; e < size; ++e) unit[e] = is_invertible(m.element(e));

  // Each prime J-class needs a representative in any generating set.
  std::vector<std::uint64_t> prime_masks;
  const JClassPartition part = jclasses(m);
  for (const auto& cls : part.members) {
    bool prime = true;
    for (std::size_t x : cls) prime = prime && !unit[x] && prime_by_table(x, table, unit);
    if (!prime) continue;
    std::uint64_t mask = 0;
    for (std::size_t x : cls) mask |= std::uint64_t{1} << x;
    prime_masks.push_back(mask);
  }

  const std::uint64_t full = size == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size) - 1;
  auto generates = [&](const std::vector<std::size_t>& subset) {
    std::uint64_t reach = 1;  // the identity is element 0
    std::vector<std::size_t> stack{0};
    while (!stack.empty()) {
      const std::size_t e = stack.back();
      stack.pop_back();
      for (std::size_t s : subset) {
        const std::size_t p = table[e * size + s];
        const std::uint64_t bit = std::uint64_t{1} << p;
        if (reach & bit) continue;
        reach |= bit;
        stack.push_back(p);
      }
    }
    return reach == full;
  };

  std::vector<std::size_t> pick(kk);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  while (true) {
    std::uint64_t chosen = 0;
    for (std::size_t s : pick) chosen |= std::uint64_t{1} << s;
    const bool meets_primes = std::all_of(prime_masks.begin(), prime_masks.end(),
                                          [&](std::uint64_t mask) { return (mask & chosen) != 0; });
    if (meets_primes && generates(pick)) return pick;
    // Next k-subset in lexicographic order.
    std::size_t pos = kk;
    while (pos > 0 && pick[pos - 1] == size - kk + pos - 1) --pos;
    if (pos == 0) return std::nullopt;
    ++pick[pos - 1];
    for (std::size_t j = pos; j < kk; ++j) pick[j] = pick[j - 1] + 1;
  }
}

bool prime_certificate(const Matrix& x, const FiniteMonoid& m) {
  require_closed(m, "prime_certificate");
  if (!m.index_of(x)) throw std::invalid_argument("element is not in the monoid: " + format_matrix(x));
  if (is_invertible(x)) throw std::domain_error("a unit is never prime: " + format_matrix(x));
  std::vector<bool> unit(m.size());
  for (std::size_t e = 0; e < m.size(); ++e) unit[e] = is_invertible(m.element(e));
  for (std::size_t u = 0; u < m.size(); ++u) {
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (unit[u] == unit[v] && mat_mul(m.element(u), m.element(v)) == x) return false;
    }
  }
  return true;
}

std::optional<std::size_t> regular_witness(const Matrix& x, const FiniteMonoid& m) {
  for (std::size_t y = 0; y < m.size(); ++y) {
    if (mat_mul(mat_mul(x, m.element(y)), x) == x) return y;
  }
  return std::nullopt;
}

nlohmann::json finite_monoid_to_json(const FiniteMonoid& m) {
  nlohmann::json elements = nlohmann::json::array();
  for (const auto& e : m.elements()) elements.push_back(format_matrix(e));
  nlohmann::json cayley = nlohmann::json::array();
  for (std::size_t idx : m.cayley()) {
    cayley.push_back(idx == kNoEdge ? nlohmann::json(nullptr) : nlohmann::json(idx));
  }
  return {{"n", m.n()},
          {"semiring", std::string(semiring_name(m.kind()))},
          {"closed", m.closed()},
          {"size", m.size()},
          {"elements", std::move(elements)},
          {"gens", m.gens()},
          {"cayley", std::move(cayley)}};
}

}  // namespace tropmon
