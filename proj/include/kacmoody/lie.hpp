#pragma once

#include <compare>
#include <deque>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "kacmoody/gcm.hpp"
#include "kacmoody/linalg.hpp"
#include "kacmoody/rational.hpp"
#include "kacmoody/weyl.hpp"

namespace kacmoody {

/// Graded basis vector. deg 0 is the Cartan part with idx = i meaning
/// alpha_i^vee; deg d > 0 names a positive root space and -d its mirror
/// under omega.
struct BasisKey {
  int deg = 0;
  int idx = 0;
  auto operator<=>(const BasisKey&) const = default;
};

using LieElt = std::map<BasisKey, Rational>;

void add_to(LieElt& acc, const LieElt& x, const Rational& c = 1);
LieElt scaled(const LieElt& x, const Rational& c);
LieElt operator+(const LieElt& a, const LieElt& b);
LieElt operator-(const LieElt& a, const LieElt& b);

/// The derived Kac-Moody algebra of a GCM, built degree by degree on demand.
///
/// A degree alpha of height >= 2 is spanned by the brackets [e_i, b] with b a
/// basis vector of alpha - alpha_i. Two such brackets agree exactly when
/// every f_j sends them to the same element, so each candidate is recorded
/// through its images [f_j, x] and the independent ones form the basis. All
/// caches are guarded by one mutex; the object is safe to share.
class LieAlgebra {
 public:
  explicit LieAlgebra(Gcm g, int max_height = 40);

  const Gcm& gcm() const { return g_; }
  int rank() const { return g_.size(); }
  RootSystem& roots() { return roots_; }

  /// Builds every degree of height <= h.
  void extend_to_height(int h);

  /// Positive degree id of alpha (either sign accepted, result is for
  /// |alpha|), or 0 when alpha is not a root. Throws ResourceLimit past the
  /// height limit.
  int degree_id(const RootVec& alpha);
  /// Root of a signed degree id; zero vector for 0.
  RootVec degree_root(int deg) const;
  int dim(int deg) const;

  int multiplicity(const RootVec& alpha);

  struct PositiveRoot {
    RootVec root;
    int mult;
    bool real;
  };
  /// Ordered by height, then coefficients.
  std::vector<PositiveRoot> positive_roots(int h);

  LieElt e(int i) const;
  LieElt f(int i) const;
  LieElt coroot(int i) const;
  static LieElt basis_vector(BasisKey k) { return {{k, Rational(1)}}; }

  /// Basis of g_alpha (either sign) or of h' when alpha is zero.
  std::vector<BasisKey> basis(const RootVec& alpha);
  /// Letters w with the basis vector equal to [e_w0,[e_w1,...,e_wk]] (under
  /// omega for negative keys). Empty for the Cartan part.
  std::vector<int> basis_word(BasisKey k) const;
  /// Right-normed bracket word of a basis vector, e.g. "[e0,[e0,e1]]".
  std::string basis_name(BasisKey k) const;

  LieElt bracket(const LieElt& x, const LieElt& y);
  LieElt omega(const LieElt& x) const;

  /// exp(r ad x) v; throws NilpotencyCapExceeded past 64 terms.
  LieElt ad_exp(const LieElt& x, const Rational& r, const LieElt& v);
  /// Ad of s~_i = exp(ad e_i) exp(ad f_i) exp(ad e_i).
  LieElt tilde_s(int i, const LieElt& v);

  /// e_alpha for a real root of either sign: e_i transported along the
  /// shortest witness, scaled so its coordinate is positive. The negative
  /// side is (-1)^ht(alpha) omega(e_{-alpha}): then e_{-alpha_i} = f_i and
  /// [e_alpha, e_{-alpha}] = -alpha^vee for every real alpha.
  LieElt canonical_e(const RootVec& alpha);

  /// Hermite basis of the Z-span of the iterated brackets of the e_i in
  /// degree alpha (positive).
  std::vector<LieElt> lattice_basis(const RootVec& alpha);

  /// Coordinates of the degree-`deg` part of x against the bracket lattice:
  /// lattice_basis on the positive side, its omega image on the negative
  /// side, the coroots on the Cartan part.
  QVector lattice_coordinates(const LieElt& x, int deg);
  LieElt from_lattice(int deg, const QVector& c);

  /// Coordinates of the degree-`deg` part of x.
  QVector coordinates(const LieElt& x, int deg) const;
  LieElt from_coordinates(int deg, const QVector& c) const;

 private:
  struct Degree {
    RootVec root;
    int height = 0;
    int dim = 0;
    // Per basis vector: defining letter, index of the inner basis vector in
    // root - alpha_letter, and the full letter sequence.
    std::vector<int> def_letter;
    std::vector<int> def_index;
    std::vector<std::vector<int>> word;
    // lower[b][j]: coordinates of [f_j, b] in degree root - alpha_j.
    std::vector<std::vector<QVector>> lower;
    // ade[i][c]: coordinates of [e_i, c] in this degree for c a basis vector
    // of root - alpha_i.
    std::vector<std::vector<QVector>> ade;
  };

  int build(const RootVec& alpha);
  LieElt lower_of(int deg, int idx, int j);
  LieElt bracket_keys(BasisKey a, BasisKey b);
  LieElt bracket_pos_neg(BasisKey a, BasisKey y);
  LieElt raise(int i, BasisKey b);

  Gcm g_;
  int max_height_;
  RootSystem roots_;
  mutable std::recursive_mutex mutex_;
  std::deque<Degree> degrees_;  // index 0 unused; references stay valid
  std::map<RootVec, int> ids_;
  std::map<std::pair<BasisKey, BasisKey>, LieElt> bracket_cache_;
  std::map<RootVec, LieElt> canonical_cache_;
  std::map<RootVec, std::vector<LieElt>> lattice_cache_;
  // Per positive degree id: lattice rows in basis coordinates and inverse.
  std::map<int, std::pair<QMatrix, QMatrix>> lattice_matrix_;

  const std::pair<QMatrix, QMatrix>& lattice_matrix(int deg);
};

}  // namespace kacmoody
