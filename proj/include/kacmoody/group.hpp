#pragma once

#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "kacmoody/lie.hpp"
#include "kacmoody/rational.hpp"
#include "kacmoody/weyl.hpp"

namespace kacmoody {

/// Q when p == 0, otherwise F_p. Elements of F_p are carried as residues in
/// [0, p) inside a Rational.
struct FieldSpec {
  long p = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(long p);

  bool is_prime_field() const { return p != 0; }
  /// Image of a rational. Throws DeniedDenominator.
  Rational from(const Rational& q) const;
  Rational inverse(const Rational& r) const;
  Rational power(const Rational& r, int k) const;
  std::string name() const;
};

/// Accepts "Q" or "Fp:<p>". Throws ParseError.
FieldSpec parse_field(std::string_view text);

struct GroupLetter {
  enum class Kind { Unip, Torus, S };
  Kind kind = Kind::Unip;
  RootVec root;  // Unip only
  int index = 0;  // Torus and S
  Rational scalar = 1;

  static GroupLetter x(RootVec root, Rational r);
  static GroupLetter t(int i, Rational r);
  static GroupLetter s(int i, Rational r = 1);
};

using GroupWord = std::vector<GroupLetter>;

/// Whitespace separated `x[<root>](<scalar>)`, `t[<i>](<scalar>)`, `s[<i>]`
/// (optionally `s[<i>](<scalar>)`). Scalars are mapped into the field.
/// Throws ParseError.
GroupWord parse_word(std::string_view text, int rank, const FieldSpec& f);
std::string format_word(const GroupWord& w);

/// Replaces every s~_i(r) by x_{alpha_i}(r) x_{-alpha_i}(1/r) x_{alpha_i}(r).
GroupWord expand_s(const GroupWord& w, const FieldSpec& f);
GroupWord inverse_word(const GroupWord& w, const FieldSpec& f);
GroupWord concat(const GroupWord& a, const GroupWord& b);

/// r^h for a coroot h = sum c_i alpha_i^vee, as torus letters.
GroupWord torus_word(const RootVec& coroot, const Rational& r,
                     const FieldSpec& f);

/// Maps every coefficient into the field. Throws IntegralityError when a
/// denominator is divisible by p.
LieElt reduce(const LieElt& v, const FieldSpec& f);

/// Scales the degree-beta part by prod r_i^<beta, alpha_i^vee>.
LieElt torus_adjoint(LieAlgebra& lie, const GroupWord& torus, const LieElt& v,
                     const FieldSpec& f);

/// Conversions between basis coordinates and bracket lattice coordinates,
/// degree by degree.
LieElt lattice_to_basis(LieAlgebra& lie, const LieElt& v);
LieElt basis_to_lattice(LieAlgebra& lie, const LieElt& x);

/// Adjoint action of the word, rightmost letter first. Over F_p the
/// coefficients of v and of the result are taken against the bracket lattice
/// (see LieAlgebra::lattice_coordinates); each letter is applied over Q and
/// reduced, and IntegralityError is thrown when p divides a denominator.
LieElt ad_apply(LieAlgebra& lie, const GroupWord& w, const LieElt& v,
                const FieldSpec& f);

/// A word of `len` letters: unipotent letters on real roots of height
/// <= root_height (either sign), torus letters and s~ letters with unit
/// scalars, chosen uniformly. Scalars are small integers (and halves and
/// thirds over Q).
GroupWord random_word(LieAlgebra& lie, std::mt19937_64& rng, int len, const FieldSpec& f,
                      int root_height = 3);

/// Basis of g restricted to |height| <= h: Cartan part, then positive and
/// negative root spaces by height.
std::vector<BasisKey> basis_up_to(LieAlgebra& lie, int h);

/// eps with Ad(s~_i) e_gamma = eps e_{s_i gamma}. Throws NotProportional.
int weyl_sign(LieAlgebra& lie, int i, const RootVec& gamma);

struct RelationReport {
  std::string relation;
  std::string params;
  bool holds = true;
  int checked = 0;
  std::optional<int> epsilon;
  /// Name of a basis vector on which the two sides differ.
  std::optional<std::string> witness;
};

/// Compares the two words as operators on every basis vector of height <= h.
RelationReport compare_words(LieAlgebra& lie, const GroupWord& lhs,
                             const GroupWord& rhs, const FieldSpec& f, int h);

RelationReport check_r0(LieAlgebra& lie, const RootVec& alpha,
                        const RootVec& beta, const Rational& t,
                        const Rational& u, const FieldSpec& f, int h);
RelationReport check_r1(LieAlgebra& lie, int i, int j, const Rational& r,
                        const Rational& t, const FieldSpec& f, int h);
RelationReport check_r2(LieAlgebra& lie, int i, int j, const Rational& r,
                        const FieldSpec& f, int h);
RelationReport check_r3(LieAlgebra& lie, int i, const Rational& r,
                        const FieldSpec& f, int h);
/// Checked with the sign from weyl_sign, for each t given; the sign must not
/// depend on t.
RelationReport check_r4(LieAlgebra& lie, int i, const RootVec& gamma,
                        const std::vector<Rational>& ts, const FieldSpec& f,
                        int h);

/// Operator form of R3 for one (i, r).
RelationReport tilde_s_matrixcheck(LieAlgebra& lie, int i, const Rational& r,
                                   const FieldSpec& f, int h);

/// Every relation instance of the named kinds ("R0".."R4") with small
/// parameters: all index pairs, real roots and prenilpotent pairs of height
/// <= root_height.
std::vector<RelationReport> relation_sweep(LieAlgebra& lie,
                                           const std::vector<std::string>& kinds,
                                           const FieldSpec& f, int h,
                                           int root_height = 2);

}  // namespace kacmoody
