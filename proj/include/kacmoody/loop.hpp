#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kacmoody/group.hpp"
#include "kacmoody/lie.hpp"
#include "kacmoody/rational.hpp"

namespace kacmoody {

/// Laurent polynomial: exponent -> nonzero coefficient. Arithmetic goes
/// through a FieldSpec so the same type serves Q and F_p.
struct Laurent {
  std::map<int, Rational> terms;

  static Laurent constant(const Rational& c);
  static Laurent monomial(const Rational& c, int e);

  bool is_zero() const { return terms.empty(); }
  bool is_monomial() const { return terms.size() == 1; }
  /// Lowest and highest exponent; the polynomial must be nonzero.
  int valuation() const { return terms.begin()->first; }
  int degree() const { return terms.rbegin()->first; }
  Rational coeff(int e) const;

  bool operator==(const Laurent& other) const { return terms == other.terms; }
};

Laurent add(const Laurent& a, const Laurent& b, const FieldSpec& f, const Rational& c = 1);
Laurent mul(const Laurent& a, const Laurent& b, const FieldSpec& f);
Laurent reduce(const Laurent& a, const FieldSpec& f);
std::string to_string(const Laurent& a);
/// Terms like `1+2t^-1-t^2`, `3/2t`, `-t^-3`. Throws ParseError.
Laurent parse_laurent(std::string_view text, const FieldSpec& f);

using LaurentMat = std::array<std::array<Laurent, 2>, 2>;

LaurentMat laurent_identity();
LaurentMat mat_mul(const LaurentMat& a, const LaurentMat& b, const FieldSpec& f);
LaurentMat mat_add(const LaurentMat& a, const LaurentMat& b, const FieldSpec& f,
                   const Rational& c = 1);
Laurent det(const LaurentMat& m, const FieldSpec& f);
/// Adjugate inverse. Throws NotInGroup unless det m = 1.
LaurentMat sl2_inverse(const LaurentMat& m, const FieldSpec& f);
LaurentMat reduce(const LaurentMat& m, const FieldSpec& f);
/// Row-major, entries separated by ';'.
std::string to_string(const LaurentMat& m);
LaurentMat parse_laurent_mat(std::string_view text, const FieldSpec& f);

/// Element of the centrally extended loop algebra.
struct LoopElt {
  LaurentMat m;
  Rational central = 0;

  bool operator==(const LoopElt& other) const {
    return m == other.m && central == other.central;
  }
};

LoopElt loop_add(const LoopElt& a, const LoopElt& b, const FieldSpec& f, const Rational& c = 1);
/// Matrix commutator plus c(a t^m, b t^n) = m delta_{m+n,0} tr(ab) K.
LoopElt loop_bracket(const LoopElt& x, const LoopElt& y, const FieldSpec& f);
std::string to_string(const LoopElt& x);

/// The loop realization of the affine algebra [[2,-2],[-2,2]] (index 0 is
/// the affine node). Construction checks the Chevalley relations on the
/// generator images and throws OutOfFixture for any other matrix.
class LoopOracle {
 public:
  explicit LoopOracle(LieAlgebra& lie);

  LieAlgebra& lie() { return lie_; }

  /// Images of e_i, f_i and alpha_i^vee.
  LoopElt e(int i) const;
  LoopElt f(int i) const;
  LoopElt coroot(int i) const;

  /// Image of a vector given in basis coordinates over Q.
  LoopElt realize_lie(const LieElt& v);
  /// Inverse of realize_lie on its image; nullopt off the image.
  std::optional<LieElt> preimage(const LoopElt& x);

  /// Matrix of a group word; the K part of torus letters is dropped.
  LaurentMat realize_word(const GroupWord& w, const FieldSpec& f);

  /// Ad(w) v against M v M^{-1} for every basis vector of height <= h,
  /// modulo K. Over F_p, v runs over the lattice basis.
  RelationReport ad_compare(const GroupWord& w, int h, const FieldSpec& f);

 private:
  LoopElt realize_key(BasisKey k);

  LieAlgebra& lie_;
  std::map<BasisKey, LoopElt> cache_;
};

/// Reduced word of the unique w in the infinite dihedral group with
/// m in B w B, B the Iwahori subgroup (entries in k[t], upper triangular
/// at t = 0). Letter i stands for s_i; s_1 is realized by (0 1; -1 0) and
/// s_0 by (0 t^-1; -t 0). Throws NotInGroup unless det m = 1.
std::vector<int> iwahori_bruhat(const LaurentMat& m, const FieldSpec& f);

/// Min over entries of 2 val(m_ij) + (j - i) and the position where it is
/// attained (bottom-left first). This is an invariant of the double coset.
struct IwahoriInvariant {
  int weight;
  int row;
  int col;
};
IwahoriInvariant iwahori_invariant(const LaurentMat& m);

}  // namespace kacmoody
