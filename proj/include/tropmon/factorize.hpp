#pragma once

// Constructive factorization: every matrix of a supported monoid is written
// as a word over that monoid's generating set, and the word evaluates back
// to the input exactly.

#include <string>
#include <string_view>
#include <vector>

#include "tropmon/genset.hpp"

namespace tropmon {

struct Word {
  Monoid monoid;
  std::vector<Generator> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  friend bool operator==(const Word&, const Word&) = default;
};

/// Left-to-right product of the realized letters; the empty word is I_n.
/// Throws std::invalid_argument for a letter outside the monoid's set.
Matrix eval(const Word& w);

/// Throws std::invalid_argument naming the first illegal letter.
void check_letters(const Word& w);

/// Letters separated by single spaces; the empty word prints as "ε".
std::string format_word(const Word& w);
/// Inverse of format_word. "ε" or an all-blank string is the empty word.
Word parse_word(std::string_view text, const Monoid& monoid);

/// Thrown when the input is outside the factorizer's monoid.
class MembershipError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// UT_n(Z_max): A_i(1), -1 I_n, E_ij, A_i(-inf).
Word factor_ut(const Matrix& m);
/// U_n(Z_max): letters E(i,j,z), one per finite off-diagonal entry.
Word factor_unitriangular(const Matrix& m);
/// GL_n(Z_max), n >= 2: words over {A, B}.
Word factor_gl(const Matrix& m);
/// M_2(Z_max): words over {A, B, C, D}.
Word factor_m2(const Matrix& m);
/// M_3(Z_max): words over {A, B, E_12, A_1(-inf), X_i}.
Word factor_m3(const Matrix& m);

/// Dispatches on monoid.kind.
Word factor(const Matrix& m, const Monoid& monoid);

/// Maximum nesting depth the M_3 dispatcher may reach before it reports a
/// transcription bug.
inline constexpr int kMaxM3Depth = 6;

/// Deepest dispatcher level reached by the most recent factor_m3 call on
/// this thread (1 = the input matrix itself).
int last_m3_depth();

/// Re-factors every maximal run of unit letters as a single unit and keeps
/// the result when shorter; drops identity letters. eval is unchanged.
Word simplify(const Word& w);

}  // namespace tropmon
