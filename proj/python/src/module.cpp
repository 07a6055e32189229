#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tropmon/factorize.hpp"
#include "tropmon/finite.hpp"

namespace py = pybind11;
using namespace tropmon;

namespace {

// Matrices cross the boundary as row lists: ints with None for -inf over
// zmax, 0/1 (or bools) over bool. Strings in the text form are accepted too.
Matrix to_matrix(const py::handle& obj, SemiringKind kind) {
  if (py::isinstance<py::str>(obj)) return parse_matrix(obj.cast<std::string>(), kind);
  std::vector<std::vector<SemValue>> rows;
  for (const auto& row : obj) {
    std::vector<SemValue> out;
    for (const auto& v : row) {
      if (kind == SemiringKind::Boolean) {
        out.push_back(SemValue::boolean(v.cast<bool>()));
      } else if (v.is_none()) {
        out.push_back(SemValue::bottom());
      } else {
        out.push_back(SemValue::trop(v.cast<std::int64_t>()));
      }
    }
    rows.push_back(std::move(out));
  }
  return Matrix::from_rows(rows);
}

py::list to_rows(const Matrix& m) {
  py::list rows;
  for (int r = 0; r < m.n(); ++r) {
    py::list row;
    for (int c = 0; c < m.n(); ++c) {
      const SemValue& v = m(r, c);
      if (v.is_bottom()) {
        row.append(py::none());
      } else {
        row.append(py::int_(v.value()));
      }
    }
    rows.append(row);
  }
  return rows;
}

Monoid make_monoid(const std::string& name, int n, SemiringKind kind) {
  switch (parse_monoid_name(name)) {
    case MonoidKind::UT: return Monoid::ut(n, kind);
    case MonoidKind::U: return Monoid::u(n);
    case MonoidKind::GL: return Monoid::gl(n);
    case MonoidKind::M2: return Monoid::m2();
    case MonoidKind::M3: return Monoid::m3();
  }
  throw std::invalid_argument("unknown monoid " + name);
}

std::vector<Matrix> to_matrices(const py::iterable& objs, SemiringKind kind) {
  std::vector<Matrix> out;
  for (const auto& o : objs) out.push_back(to_matrix(o, kind));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Generating sets and factorization for max-plus and Boolean matrix monoids.";

  py::register_exception<MembershipError>(m, "MembershipError", PyExc_ValueError);

  m.def(
      "factor",
      [](const py::object& matrix, const std::string& monoid, bool simplify_word) {
        const Matrix x = to_matrix(matrix, SemiringKind::Tropical);
        Word w = factor(x, make_monoid(monoid, x.n(), SemiringKind::Tropical));
        if (simplify_word) w = simplify(w);
        if (!(eval(w) == x)) throw std::logic_error("factorization failed to multiply back");
        return format_word(w);
      },
      py::arg("matrix"), py::arg("monoid") = "m3", py::arg("simplify") = false,
      "Word over the monoid's generators, checked by multiplying back.");

  m.def(
      "eval_word",
      [](const std::string& word, const std::string& monoid, int n, const std::string& semiring) {
        const SemiringKind kind = parse_semiring_name(semiring);
        return to_rows(eval(parse_word(word, make_monoid(monoid, n, kind))));
      },
      py::arg("word"), py::arg("monoid") = "m3", py::arg("n") = 3, py::arg("semiring") = "zmax");

  m.def(
      "is_regular",
      [](const py::object& matrix, const std::string& semiring) -> py::object {
        const auto w = is_regular(to_matrix(matrix, parse_semiring_name(semiring)));
        if (!w) return py::none();
        return to_rows(w->y);
      },
      py::arg("matrix"), py::arg("semiring") = "zmax", "A witness y with m y m = m, or None.");

  m.def(
      "phi", [](const py::object& matrix) { return to_rows(phi(to_matrix(matrix, SemiringKind::Tropical))); },
      py::arg("matrix"), "Boolean image: 1 where the entry is finite.");

  m.def(
      "generators",
      [](const std::string& monoid, int n, std::int64_t x_max, const std::string& semiring) {
        const Monoid mo = make_monoid(monoid, n, parse_semiring_name(semiring));
        std::vector<std::pair<std::string, py::list>> out;
        for (const auto& g : generating_set_for(mo, x_max).letters) {
          out.emplace_back(format_generator(g), to_rows(realize(g, mo.n, mo.semiring)));
        }
        return out;
      },
      py::arg("monoid") = "m3", py::arg("n") = 3, py::arg("x_max") = 0, py::arg("semiring") = "zmax");

  m.def(
      "closure",
      [](const py::iterable& gens, const std::string& semiring, std::size_t cap) {
        const FiniteMonoid fm = closure(to_matrices(gens, parse_semiring_name(semiring)), cap);
        py::dict out;
        out["size"] = fm.size();
        out["closed"] = fm.closed();
        py::list elements;
        for (const auto& e : fm.elements()) elements.append(to_rows(e));
        out["elements"] = elements;
        out["j_classes"] = fm.closed() ? py::object(py::int_(jclasses(fm).count())) : py::object(py::none());
        return out;
      },
      py::arg("gens"), py::arg("semiring") = "bool", py::arg("cap") = kDefaultClosureCap);

  m.def(
      "rank_search",
      [](const py::iterable& gens, int k) -> py::object {
        const FiniteMonoid fm = closure(to_matrices(gens, SemiringKind::Boolean));
        const auto found = rank_search(fm, k);
        if (!found) return py::none();
        py::list out;
        for (std::size_t e : *found) out.append(to_rows(fm.element(e)));
        return out;
      },
      py::arg("gens"), py::arg("k"), "A generating k-subset of the Boolean monoid the gens generate, or None.");

  m.def(
      "prime_certificate",
      [](const py::object& x, const py::object& gens) {
        const Matrix bx = to_matrix(x, SemiringKind::Boolean);
        const FiniteMonoid fm = gens.is_none() ? full_boolean_monoid(bx.n())
                                               : closure(to_matrices(gens, SemiringKind::Boolean));
        return prime_certificate(bx, fm);
      },
      py::arg("x"), py::arg("gens") = py::none(),
      "Exhaustive primality check; the monoid defaults to all n x n Boolean matrices.");

  m.def("x_family_j_related", &x_family_j_related, py::arg("s"), py::arg("t"));

  m.def(
      "format_matrix",
      [](const py::object& matrix, const std::string& semiring) {
        return format_matrix(to_matrix(matrix, parse_semiring_name(semiring)));
      },
      py::arg("matrix"), py::arg("semiring") = "zmax");
}
