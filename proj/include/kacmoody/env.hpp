#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kacmoody/lie.hpp"
#include "kacmoody/rational.hpp"

namespace kacmoody {

/// Polynomial in two commuting indeterminates t, u; key (i, j) is t^i u^j.
using BiPoly = std::map<std::pair<int, int>, Rational>;

BiPoly bipoly_monomial(const Rational& c, int i, int j);
std::string to_string(const BiPoly& p);

// Coefficient rings. Each exposes T, zero/one, from(Rational), add, mul and
// is_zero.
struct RationalRing {
  using T = Rational;
  T zero() const { return 0; }
  T one() const { return 1; }
  T from(const Rational& q) const { return q; }
  T add(const T& a, const T& b) const { return a + b; }
  T mul(const T& a, const T& b) const { return a * b; }
  bool is_zero(const T& a) const { return a == 0; }
};

struct PolyRing {
  using T = BiPoly;
  T zero() const { return {}; }
  T one() const { return bipoly_monomial(1, 0, 0); }
  T from(const Rational& q) const { return bipoly_monomial(q, 0, 0); }
  T add(const T& a, const T& b) const;
  T mul(const T& a, const T& b) const;
  bool is_zero(const T& a) const { return a.empty(); }
};

struct PrimeField {
  long p;
  using T = long;
  T zero() const { return 0; }
  T one() const { return 1 % p; }
  /// Throws DeniedDenominator when p divides the denominator.
  T from(const Rational& q) const { return reduce_mod(q, p); }
  T add(const T& a, const T& b) const { return (a + b) % p; }
  T mul(const T& a, const T& b) const { return static_cast<T>((static_cast<__int128>(a) * b) % p); }
  bool is_zero(const T& a) const { return a == 0; }
};

/// Ordered product of divided powers: (letter, exponent) with strictly
/// increasing letters.
using Monomial = std::vector<std::pair<int, int>>;

template <class Ring>
struct UElt {
  std::map<Monomial, typename Ring::T> terms;
  bool operator==(const UElt&) const = default;
};

/// The quotient of the completed divided-power algebra of n+ by everything of
/// height > N, in a PBW basis. Letters are the canonical root vectors at real
/// degrees and the bracket-lattice basis at imaginary degrees, ordered by
/// (height, root, index).
class Envelope {
 public:
  struct Letter {
    RootVec root;
    int height;
    bool real;
    LieElt vec;
  };

  Envelope(LieAlgebra& lie, int truncation);

  LieAlgebra& lie() { return lie_; }
  int truncation() const { return n_; }
  const std::vector<Letter>& letters() const { return letters_; }
  /// Letter of a real root (the canonical vector). Throws NotARoot.
  int real_letter(const RootVec& root) const;
  int height(const Monomial& m) const;

  /// Coefficients of [x_a, x_b] in letters (empty above the truncation).
  const std::map<int, Rational>& letter_bracket(int a, int b);
  /// Product of two PBW monomials, as rational combination of monomials.
  const std::map<Monomial, Rational>& product(const Monomial& a,
                                               const Monomial& b);

  template <class Ring>
  UElt<Ring> one(const Ring& r) const;
  template <class Ring>
  UElt<Ring> multiply(const Ring& r, const UElt<Ring>& x, const UElt<Ring>& y);
  template <class Ring>
  UElt<Ring> add(const Ring& r, const UElt<Ring>& x, const UElt<Ring>& y) const;
  /// exp(c x_letter) = sum c^n x^(n).
  template <class Ring>
  UElt<Ring> exp_letter(const Ring& r, int letter, const typename Ring::T& c) const;
  /// Throws NotAUnit unless the constant term is one.
  template <class Ring>
  UElt<Ring> inverse(const Ring& r, const UElt<Ring>& x);
  /// Coefficients c with x = prod_k exp(c_k x_{order[k]}), solved height by
  /// height; nullopt if no such expression exists.
  template <class Ring>
  std::optional<std::vector<typename Ring::T>> factor(
      const Ring& r, const UElt<Ring>& x, const std::vector<int>& order);
  template <class Ring>
  UElt<Ring> expand(const Ring& r, const std::vector<int>& order,
                    const std::vector<typename Ring::T>& coeffs);

 private:
  const std::map<std::vector<int>, Rational>& straighten(const std::vector<int>& w);

  LieAlgebra& lie_;
  int n_;
  std::vector<Letter> letters_;
  std::map<RootVec, std::vector<int>> by_root_;
  // Inverse of the letter matrix per positive degree id.
  std::map<int, QMatrix> to_letters_;
  std::recursive_mutex mutex_;
  std::map<std::pair<int, int>, std::map<int, Rational>> bracket_cache_;
  std::map<std::vector<int>, std::map<std::vector<int>, Rational>> straight_cache_;
  std::map<std::pair<Monomial, Monomial>, std::map<Monomial, Rational>>
      product_cache_;
};

struct CommutatorEntry {
  RootVec gamma;
  int i;
  int j;
  Integer c;
};

struct CommutatorTable {
  RootVec alpha;
  RootVec beta;
  /// Entries in the fixed interval order.
  std::vector<CommutatorEntry> entries;
  /// Weyl word v with v(alpha), v(beta) positive, and the signs of
  /// Ad(v~) e_alpha, Ad(v~) e_beta against the canonical vectors.
  std::vector<int> transport;
  int eps_alpha = 1;
  int eps_beta = 1;
};

/// Sign eps with Ad(s~_{w[0]} ... s~_{w[k-1]}) e_gamma = eps e_{w gamma}.
/// Throws NotProportional.
int transport_sign(LieAlgebra& lie, const std::vector<int>& word,
                   const RootVec& gamma);

/// Constants of [x_a(t), x_b(u)] = prod x_c(C t^i u^j) in interval order.
/// Throws NotPrenilpotent, NonIntegralConstant.
CommutatorTable commutator_constants(LieAlgebra& lie, const RootVec& alpha,
                                     const RootVec& beta);

/// Smallest truncation that sees every interval member and the pair itself.
int commutator_truncation(const RootVec& alpha, const RootVec& beta,
                          const std::vector<IntervalMember>& members);

/// Both sides of the commutator relation for a positive pair in the
/// truncated algebra over Q[t, u].
std::pair<UElt<PolyRing>, UElt<PolyRing>> commutator_sides(
    Envelope& env, const CommutatorTable& table);

struct NormalFormTerm {
  int letter;
  Rational lambda;
};

/// The unique lambda with x = prod over all letters (PBW order) of
/// exp(lambda_b x_b). Throws NotAUnit.
std::vector<NormalFormTerm> uma_normal_form(Envelope& env,
                                            const UElt<RationalRing>& x);

}  // namespace kacmoody
