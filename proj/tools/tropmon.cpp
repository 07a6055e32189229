// tropmon: factor, verify and inspect tropical and Boolean matrix monoids.
//
// Exit codes: 0 ok, 2 bad input, 3 matrix outside the monoid, 4 a word
// failed to multiply back, 5 closure cap reached.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tropmon/factorize.hpp"
#include "tropmon/finite.hpp"

using namespace tropmon;
using nlohmann::json;

namespace {

enum Exit : int { kOk = 0, kBadInput = 2, kNotMember = 3, kMismatch = 4, kCapReached = 5 };

struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string slurp(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Non-empty lines with '#' comments stripped.
std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line.substr(0, line.find('#')));
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

// Free text of a command: the leftover arguments joined by spaces, else the
// --file contents, else stdin. Multi-line matrix input joins rows with ';'.
std::string free_text(const CLI::App* cmd, const std::string& file) {
  std::vector<std::string> rest = cmd->remaining();
  for (const auto& r : rest) {
    if (r.rfind("--", 0) == 0) throw InputError("unknown option " + r);
  }
  if (!rest.empty()) {
    if (!file.empty()) throw InputError("give the input inline or with --file, not both");
    std::string joined;
    for (const auto& r : rest) joined += (joined.empty() ? "" : " ") + r;
    return joined;
  }
  const auto lines = content_lines(slurp(file.empty() ? "-" : file));
  if (lines.empty()) throw InputError("no input");
  std::string joined;
  for (const auto& l : lines) {
    if (!joined.empty() && joined.back() != ';' && l.front() != ';') joined += ';';
    joined += l;
  }
  return joined;
}

std::vector<Matrix> read_matrices(const std::string& path, SemiringKind kind, bool apply_phi) {
  std::vector<Matrix> out;
  for (const auto& line : content_lines(slurp(path))) {
    const Matrix m = parse_matrix(line, apply_phi ? SemiringKind::Tropical : kind);
    out.push_back(apply_phi ? phi(m) : m);
  }
  if (out.empty()) throw InputError("no matrices in " + path);
  return out;
}

Monoid make_monoid(const std::string& name, int n, SemiringKind kind) {
  switch (parse_monoid_name(name)) {
    case MonoidKind::UT: return Monoid::ut(n, kind);
    case MonoidKind::U: return Monoid::u(n);
    case MonoidKind::GL: return Monoid::gl(n);
    case MonoidKind::M2: return Monoid::m2();
    case MonoidKind::M3: return Monoid::m3();
  }
  throw InputError("unknown monoid " + name);
}

int default_dim(const std::string& monoid, int n) {
  if (n > 0) return n;
  if (monoid == "m2") return 2;
  if (monoid == "m3") return 3;
  throw InputError("--n is required for monoid " + monoid);
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

// ------------------------------------------------------------------ options

struct Common {
  bool as_json = false;
  std::string file;
  std::string semiring = "zmax";
  SemiringKind kind() const { return parse_semiring_name(semiring); }
};

struct FactorOpts : Common {
  std::string monoid = "m3";
  std::string batch;
  bool simplify_word = false;
};

struct WordOpts : Common {
  std::string monoid = "m3";
  int n = 0;
  std::string word;
};

struct GensOpts : Common {
  std::string monoid = "m3";
  int n = 0;
  std::int64_t x_max = 0;
  bool apply_phi = false;
  bool matrices_only = false;
};

struct FiniteOpts : Common {
  std::size_t cap = kDefaultClosureCap;
  int k = 0;
  std::string gens;
  bool apply_phi = false;
};

// ----------------------------------------------------------------- commands

int factor_one(const std::string& text, const FactorOpts& o, json* report) {
  const Matrix m = parse_matrix(text, SemiringKind::Tropical);
  const Monoid monoid = make_monoid(o.monoid, m.n(), SemiringKind::Tropical);
  Word w = factor(m, monoid);
  if (o.simplify_word) w = simplify(w);
  const bool verified = eval(w) == m;
  if (o.as_json) {
    *report = {{"monoid", o.monoid}, {"matrix", format_matrix(m)}, {"word", format_word(w)},
               {"length", w.size()}, {"verified", verified}};
  } else {
    std::cout << format_word(w) << '\n' << "verified: " << (verified ? "true" : "false") << '\n';
  }
  return verified ? kOk : kMismatch;
}

int cmd_factor(const CLI::App* cmd, const FactorOpts& o) {
  if (o.batch.empty()) {
    json report;
    const int code = factor_one(free_text(cmd, o.file), o, &report);
    if (o.as_json) print(report);
    return code;
  }
  // Batch: one matrix per line; errors are reported per line and the worst
  // exit code wins.
  int worst = kOk;
  json reports = json::array();
  for (const auto& line : content_lines(slurp(o.batch))) {
    json report;
    int code = kOk;
    if (!o.as_json) std::cout << "matrix: " << line << '\n';
    try {
      code = factor_one(line, o, &report);
    } catch (const MembershipError& e) {
      code = kNotMember;
      report = {{"matrix", line}, {"error", e.what()}};
    } catch (const std::exception& e) {
      code = kBadInput;
      report = {{"matrix", line}, {"error", e.what()}};
    }
    if (code == kNotMember || code == kBadInput) {
      if (!o.as_json) std::cout << "error: " << report["error"].get<std::string>() << '\n';
    }
    if (o.as_json) reports.push_back(report);
    worst = std::max(worst, code);
  }
  if (o.as_json) print(reports);
  return worst;
}

int cmd_eval(const CLI::App* cmd, const WordOpts& o) {
  const Monoid monoid = make_monoid(o.monoid, default_dim(o.monoid, o.n), o.kind());
  const Word w = parse_word(free_text(cmd, o.file), monoid);
  const Matrix m = eval(w);
  if (o.as_json) {
    print({{"monoid", o.monoid}, {"word", format_word(w)}, {"matrix", matrix_to_json(m)}});
  } else {
    std::cout << format_matrix(m) << '\n';
  }
  return kOk;
}

int cmd_verify(const CLI::App* cmd, const WordOpts& o) {
  const Matrix m = parse_matrix(free_text(cmd, o.file), o.kind());
  const Monoid monoid = make_monoid(o.monoid, m.n(), o.kind());
  const Word w = parse_word(o.word, monoid);
  const Matrix got = eval(w);
  const bool ok = got == m;
  if (o.as_json) {
    print({{"verified", ok}, {"word", format_word(w)}, {"expected", format_matrix(m)}, {"got", format_matrix(got)}});
  } else {
    std::cout << "verified: " << (ok ? "true" : "false") << '\n';
    if (!ok) std::cout << "got: " << format_matrix(got) << '\n';
  }
  return ok ? kOk : kMismatch;
}

int cmd_gens(const GensOpts& o) {
  const Monoid monoid = make_monoid(o.monoid, default_dim(o.monoid, o.n), o.kind());
  const GeneratingSet set = generating_set_for(monoid, o.x_max);
  json letters = json::array();
  for (const auto& g : set.letters) {
    Matrix m = realize(g, monoid.n, monoid.semiring);
    if (o.apply_phi && m.kind() == SemiringKind::Tropical) m = phi(m);
    if (o.as_json) {
      letters.push_back({{"letter", format_generator(g)}, {"matrix", format_matrix(m)}});
    } else if (o.matrices_only) {
      std::cout << format_matrix(m) << '\n';
    } else {
      std::cout << format_generator(g) << "  " << format_matrix(m) << '\n';
    }
  }
  std::string family;
  switch (set.family) {
    case GeneratingSet::InfiniteFamily::None: break;
    case GeneratingSet::InfiniteFamily::ElemZ: family = "E(i,j,z) for i < j, z in Z"; break;
    case GeneratingSet::InfiniteFamily::XIndex: family = "X(i) for i > " + std::to_string(o.x_max); break;
  }
  if (o.as_json) {
    print({{"monoid", o.monoid}, {"n", monoid.n}, {"letters", letters},
           {"infinite_family", family.empty() ? json(nullptr) : json(family)}});
  } else if (!family.empty() && !o.matrices_only) {
    std::cout << "# plus " << family << '\n';
  }
  return kOk;
}

FiniteMonoid closure_from(const std::string& path, const FiniteOpts& o, bool boolean_only) {
  const SemiringKind kind = o.kind();
  if (boolean_only && kind != SemiringKind::Boolean && !o.apply_phi) {
    throw InputError("this command needs Boolean matrices (--semiring bool or --phi)");
  }
  return closure(read_matrices(path, kind, o.apply_phi), o.cap);
}

int report_open(const FiniteMonoid& m, const FiniteOpts& o) {
  if (o.as_json) {
    print({{"elements", m.size()}, {"closed", false}, {"cap", o.cap}});
  } else {
    std::cout << "elements: " << m.size() << ", closed: false (cap " << o.cap << " reached)\n";
  }
  return kCapReached;
}

int cmd_closure(const FiniteOpts& o) {
  const FiniteMonoid m = closure_from(o.file.empty() ? "-" : o.file, o, false);
  if (!m.closed()) return report_open(m, o);
  const JClassPartition parts = jclasses(m);
  if (o.as_json) {
    json j = finite_monoid_to_json(m);
    j["j_classes"] = parts.count();
    print(j);
  } else {
    std::cout << "elements: " << m.size() << ", closed: true\n" << "j-classes: " << parts.count() << '\n';
  }
  return kOk;
}

json subset_json(const FiniteMonoid& m, const std::vector<std::size_t>& subset) {
  json out = json::array();
  for (std::size_t e : subset) out.push_back(format_matrix(m.element(e)));
  return out;
}

int cmd_rank(const FiniteOpts& o) {
  const FiniteMonoid m = closure_from(o.file.empty() ? "-" : o.file, o, true);
  if (!m.closed()) return report_open(m, o);
  std::optional<std::vector<std::size_t>> found;
  int k = o.k;
  if (k > 0) {
    found = rank_search(m, k);
  } else {
    for (k = 1; k <= kRankSearchMaxK && !found; ++k) found = rank_search(m, k);
    --k;
  }
  if (o.as_json) {
    json j{{"elements", m.size()}, {"k", k}, {"found", found.has_value()}};
    if (found) j["subset"] = subset_json(m, *found);
    if (o.k == 0) j["rank"] = found ? json(k) : json(nullptr);
    print(j);
    return kOk;
  }
  std::cout << "elements: " << m.size() << '\n';
  if (o.k > 0) {
    std::cout << "generating subset of size " << k << ": " << (found ? "found" : "none") << '\n';
  } else if (found) {
    std::cout << "rank: " << k << '\n';
  } else {
    std::cout << "rank: > " << kRankSearchMaxK << '\n';
  }
  if (found) {
    for (std::size_t e : *found) std::cout << "  " << format_matrix(m.element(e)) << '\n';
  }
  return kOk;
}

int cmd_irredundant(const FiniteOpts& o) {
  const FiniteMonoid m = closure_from(o.file.empty() ? "-" : o.file, o, false);
  if (!m.closed()) return report_open(m, o);
  const std::vector<bool> needed = irredundant(m, m.gens());
  const bool all = std::all_of(needed.begin(), needed.end(), [](bool b) { return b; });
  json rows = json::array();
  for (std::size_t k = 0; k < needed.size(); ++k) {
    const std::string text = format_matrix(m.element(m.gens()[k]));
    if (o.as_json) {
      rows.push_back({{"matrix", text}, {"irredundant", static_cast<bool>(needed[k])}});
    } else {
      std::cout << text << ": " << (needed[k] ? "irredundant" : "redundant") << '\n';
    }
  }
  if (o.as_json) {
    print({{"elements", m.size()}, {"generators", rows}, {"irredundant", all}});
  } else {
    std::cout << "irredundant: " << (all ? "true" : "false") << '\n';
  }
  return kOk;
}

int cmd_certify_prime(const CLI::App* cmd, const FiniteOpts& o) {
  Matrix x = parse_matrix(free_text(cmd, o.file), o.apply_phi ? SemiringKind::Tropical : o.kind());
  if (o.apply_phi) x = phi(x);
  if (x.kind() != SemiringKind::Boolean) throw InputError("certify-prime needs a Boolean matrix (--semiring bool or --phi)");
  FiniteMonoid m = o.gens.empty() ? full_boolean_monoid(x.n()) : closure_from(o.gens, o, true);
  if (!m.closed()) return report_open(m, o);
  bool prime = false;
  std::string note;
  try {
    prime = prime_certificate(x, m);
  } catch (const std::domain_error&) {
    note = "units are never prime";
  }
  if (o.as_json) {
    json j{{"matrix", format_matrix(x)}, {"elements", m.size()}, {"prime", prime}, {"pairs_scanned", m.size() * m.size()}};
    if (!note.empty()) j["note"] = note;
    print(j);
  } else {
    std::cout << "prime: " << (prime ? "true" : "false") << (note.empty() ? "" : " (" + note + ")") << '\n'
              << "elements: " << m.size() << '\n';
  }
  return kOk;
}

int cmd_jrel_x(std::int64_t s, std::int64_t t, const Common& o) {
  const bool related = x_family_j_related(s, t);
  if (o.as_json) {
    print({{"s", s}, {"t", t}, {"related", related}});
  } else {
    std::cout << "related: " << (related ? "true" : "false") << '\n';
  }
  return kOk;
}

int cmd_regular(const CLI::App* cmd, const Common& o) {
  const Matrix m = parse_matrix(free_text(cmd, o.file), o.kind());
  const auto w = is_regular(m);
  const bool verified = w && product({m, w->y, m}) == m;
  if (o.as_json) {
    json j{{"matrix", format_matrix(m)}, {"regular", w.has_value()}};
    if (w) {
      j["witness"] = format_matrix(w->y);
      j["clamped"] = w->clamped;
      j["verified"] = verified;
    }
    print(j);
  } else {
    std::cout << "regular: " << (w ? "true" : "false") << '\n';
    if (w) std::cout << "witness: " << format_matrix(w->y) << '\n' << "verified: " << (verified ? "true" : "false") << '\n';
  }
  if (w && !verified) return kMismatch;
  return kOk;
}

void add_common(CLI::App* cmd, Common& o, bool with_file = true) {
  cmd->add_flag("--json", o.as_json, "Print a JSON report");
  cmd->add_option("--semiring", o.semiring, "zmax or bool")->check(CLI::IsMember({"zmax", "bool"}));
  if (with_file) cmd->add_option("-f,--file", o.file, "Read input from a file ('-' for stdin)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factor and inspect matrix monoids over the tropical integers and the Boolean semiring"};
  app.require_subcommand(1);
  std::function<int()> run;

  FactorOpts factor_o;
  auto* factor_cmd = app.add_subcommand("factor", "Factor a matrix over a monoid's generators and verify it");
  add_common(factor_cmd, factor_o);
  factor_cmd->add_option("--monoid", factor_o.monoid, "ut, u, gl, m2 or m3");
  factor_cmd->add_option("--batch", factor_o.batch, "File with one matrix per line");
  factor_cmd->add_flag("--simplify", factor_o.simplify_word, "Shorten runs of unit letters");
  factor_cmd->allow_extras();
  factor_cmd->callback([&] { run = [&] { return cmd_factor(factor_cmd, factor_o); }; });

  WordOpts eval_o;
  auto* eval_cmd = app.add_subcommand("eval", "Multiply out a word");
  add_common(eval_cmd, eval_o);
  eval_cmd->add_option("--monoid", eval_o.monoid, "ut, u, gl, m2 or m3");
  eval_cmd->add_option("--n", eval_o.n, "Dimension (ut, u, gl)");
  eval_cmd->allow_extras();
  eval_cmd->callback([&] { run = [&] { return cmd_eval(eval_cmd, eval_o); }; });

  WordOpts verify_o;
  auto* verify_cmd = app.add_subcommand("verify", "Check that a word multiplies out to a matrix");
  add_common(verify_cmd, verify_o);
  verify_cmd->add_option("--monoid", verify_o.monoid, "ut, u, gl, m2 or m3");
  verify_cmd->add_option("--word", verify_o.word, "The word")->required();
  verify_cmd->allow_extras();
  verify_cmd->callback([&] { run = [&] { return cmd_verify(verify_cmd, verify_o); }; });

  GensOpts gens_o;
  auto* gens_cmd = app.add_subcommand("gens", "List a monoid's generating set");
  add_common(gens_cmd, gens_o, false);
  gens_cmd->add_option("--monoid", gens_o.monoid, "ut, u, gl, m2 or m3");
  gens_cmd->add_option("--n", gens_o.n, "Dimension (ut, u, gl)");
  gens_cmd->add_option("--x-max", gens_o.x_max, "Realize X(0..x-max) for m3");
  gens_cmd->add_flag("--phi", gens_o.apply_phi, "Print Boolean images");
  gens_cmd->add_flag("--matrices", gens_o.matrices_only, "Matrices only, one per line");
  gens_cmd->callback([&] { run = [&] { return cmd_gens(gens_o); }; });

  FiniteOpts finite_o;
  finite_o.semiring = "bool";
  auto add_finite = [&](CLI::App* cmd) {
    add_common(cmd, finite_o);
    cmd->add_option("--cap", finite_o.cap, "Closure size limit");
    cmd->add_flag("--phi", finite_o.apply_phi, "Read zmax matrices and use their Boolean images");
  };
  auto* closure_cmd = app.add_subcommand("closure", "Enumerate the monoid generated by a file of matrices");
  add_finite(closure_cmd);
  closure_cmd->callback([&] { run = [&] { return cmd_closure(finite_o); }; });

  auto* rank_cmd = app.add_subcommand("rank", "Search for small generating subsets of a generated monoid");
  add_finite(rank_cmd);
  rank_cmd->add_option("--k", finite_o.k, "Subset size; default searches 1..4");
  rank_cmd->callback([&] { run = [&] { return cmd_rank(finite_o); }; });

  auto* irr_cmd = app.add_subcommand("irredundant", "Mark which input generators are needed");
  add_finite(irr_cmd);
  irr_cmd->callback([&] { run = [&] { return cmd_irredundant(finite_o); }; });

  auto* prime_cmd = app.add_subcommand("certify-prime", "Exhaustive primality check in a finite Boolean monoid");
  add_finite(prime_cmd);
  prime_cmd->add_option("--gens", finite_o.gens, "Generators of the monoid; default is all n x n Boolean matrices");
  prime_cmd->allow_extras();
  prime_cmd->callback([&] { run = [&] { return cmd_certify_prime(prime_cmd, finite_o); }; });

  Common jrel_o;
  std::int64_t s = 0;
  std::int64_t t = 0;
  auto* jrel_cmd = app.add_subcommand("jrel-x", "Decide whether X(s) and X(t) are J-related");
  jrel_cmd->add_flag("--json", jrel_o.as_json, "Print a JSON report");
  jrel_cmd->add_option("s", s)->required();
  jrel_cmd->add_option("t", t)->required();
  jrel_cmd->callback([&] { run = [&] { return cmd_jrel_x(s, t, jrel_o); }; });

  Common regular_o;
  auto* regular_cmd = app.add_subcommand("regular", "Decide regularity and print a witness");
  add_common(regular_cmd, regular_o);
  regular_cmd->allow_extras();
  regular_cmd->callback([&] { run = [&] { return cmd_regular(regular_cmd, regular_o); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    return run();
  } catch (const MembershipError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNotMember;
  } catch (const std::exception& e) {
    // Malformed input, dimension and semiring mismatches, overflow.
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
}
