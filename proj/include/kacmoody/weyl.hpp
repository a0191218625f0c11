#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kacmoody/gcm.hpp"

namespace kacmoody {

/// Element of the root lattice in simple-root coordinates.
using RootVec = std::vector<int>;

int height(const RootVec& v);
bool is_positive(const RootVec& v);
bool is_negative(const RootVec& v);
bool is_zero(const RootVec& v);
RootVec negated(RootVec v);
RootVec add(const RootVec& a, const RootVec& b);
RootVec combine(int i, const RootVec& a, int j, const RootVec& b);
RootVec simple_root(int n, int i);

/// "1,2" style literal.
std::string root_to_string(const RootVec& v);
RootVec parse_root(std::string_view text, int rank);

/// Orders by height, then lexicographically on coefficients.
bool height_lex_less(const RootVec& a, const RootVec& b);

/// <alpha, alpha_i^vee> = sum_j n_j a_ij.
int pairing(const Gcm& g, const RootVec& alpha, int i);
/// <alpha, h> for h given in coroot coordinates.
int pairing(const Gcm& g, const RootVec& alpha, const RootVec& coroot);

RootVec reflect(const Gcm& g, int i, const RootVec& v);
RootVec reflect_coroot(const Gcm& g, int i, const RootVec& h);

/// Applies s_{w[0]} s_{w[1]} ... s_{w[k-1]}, rightmost letter first.
RootVec apply_word(const Gcm& g, const std::vector<int>& word, RootVec v);
RootVec apply_word_coroot(const Gcm& g, const std::vector<int>& word,
                          RootVec h);

using IntMatrix = std::vector<std::vector<int>>;

/// A Weyl group element; the action matrix is the identity of the element and
/// the word is a certificate.
struct WeylElt {
  std::vector<int> word;
  IntMatrix matrix;

  static WeylElt identity(const Gcm& g);
  static WeylElt from_word(const Gcm& g, const std::vector<int>& word);

  RootVec apply(const RootVec& v) const;
  WeylElt inverse(const Gcm& g) const;
  bool operator==(const WeylElt& other) const { return matrix == other.matrix; }
};

struct LengthResult {
  int length;
  std::vector<int> reduced;
};

/// Coxeter length and a reduced expression, by repeated use of the exchange
/// condition.
LengthResult length(const Gcm& g, const std::vector<int>& word);

struct RealRootDatum {
  RootVec root;
  RootVec coroot;
  /// alpha = w alpha_index with w the product of `word`.
  std::vector<int> word;
  int index = 0;
};

enum class RootKind { NotRoot, Real, Imaginary };

/// Decides root membership by descending through the Weyl group: a positive
/// vector reaching a simple root is real, one that leaves Q+ is not a root,
/// and one that gets stuck in the fundamental chamber is imaginary exactly
/// when its support is connected.
RootKind root_kind(const Gcm& g, const RootVec& v);

/// Real root datum obtained from the descent; the witness is valid but not
/// necessarily shortest. Throws NotARoot.
RealRootDatum descend_real_root(const Gcm& g, const RootVec& v);

struct IntervalMember {
  RootVec gamma;
  int i;
  int j;
  bool real;
};

/// Roots i*alpha + j*beta with i, j >= 1 and |height| <= cap, ordered by
/// height, then (i, j).
std::vector<IntervalMember> interval(const Gcm& g, const RootVec& alpha,
                                     const RootVec& beta, int cap);

/// Root data with shortest, lexicographically least witnesses, cached per
/// matrix. Safe for concurrent use.
class RootSystem {
 public:
  explicit RootSystem(Gcm g) : g_(std::move(g)) {}

  const Gcm& gcm() const { return g_; }

  /// Positive real roots of height <= h ordered by (height, coefficients).
  std::vector<RealRootDatum> real_roots(int h);

  /// Datum for a real root of either sign. Throws NotARoot.
  RealRootDatum datum(const RootVec& v);

  bool is_real_root(const RootVec& v);

  /// v with v(alpha), v(beta) both positive, or nullopt if none exists.
  std::optional<WeylElt> make_both_positive(const RootVec& alpha,
                                            const RootVec& beta);

  bool is_prenilpotent(const RootVec& alpha, const RootVec& beta);

 private:
  void extend(int h);

  Gcm g_;
  std::recursive_mutex mutex_;
  int explored_ = 0;
  std::map<RootVec, RealRootDatum> positive_;
};

}  // namespace kacmoody
