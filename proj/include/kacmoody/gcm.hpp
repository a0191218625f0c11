#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kacmoody/linalg.hpp"

namespace kacmoody {

enum class ClassKind { Finite, Affine, Indefinite };

std::string to_string(ClassKind kind);

/// A generalised Cartan matrix. Construction goes through validate(), so every
/// instance satisfies the three axioms.
class Gcm {
 public:
  static Gcm validate(std::vector<std::vector<int>> entries);

  int size() const { return static_cast<int>(a_.size()); }
  int operator()(int i, int j) const { return a_[i][j]; }
  const std::vector<std::vector<int>>& entries() const { return a_; }

  /// max over i != j of |a_ij|.
  int m_a() const { return m_a_; }

  /// Principal submatrix on the given indices (in the given order).
  Gcm principal(const std::vector<int>& indices) const;

  bool operator==(const Gcm& other) const { return a_ == other.a_; }

 private:
  explicit Gcm(std::vector<std::vector<int>> a);

  std::vector<std::vector<int>> a_;
  int m_a_ = 0;
};

/// Rows of whitespace separated integers; lines starting with '#' are skipped.
Gcm parse_gcm(std::string_view text);
Gcm load_gcm(const std::string& path);
std::string format_gcm(const Gcm& g);

/// Connected components of the Dynkin graph, each sorted, ordered by least
/// element.
std::vector<std::vector<int>> components(const Gcm& g);

struct Symmetrization {
  std::vector<Rational> d;
  QMatrix b;
};

/// A = diag(d) B with B symmetric and min d = 1 on each component, or nullopt
/// when A is not symmetrizable.
std::optional<Symmetrization> symmetrize(const Gcm& g);

/// Finite/affine/indefinite type of an indecomposable block, decided on the
/// symmetrized form and cross-checked against vinberg_classify().
ClassKind classify(const Gcm& g, const std::vector<int>& block);

/// Type of an indecomposable matrix from A alone: finite iff A^{-1}(1,..,1) is
/// positive, affine iff the kernel is one-dimensional and spanned by a
/// positive vector.
ClassKind vinberg_classify(const Gcm& g);

}  // namespace kacmoody
