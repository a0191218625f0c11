#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "kacmoody/rational.hpp"

namespace kacmoody {

using QVector = std::vector<Rational>;
using QMatrix = std::vector<QVector>;
using ZVector = std::vector<Integer>;

bool is_zero(const QVector& v);

Rational determinant(QMatrix m);
std::size_t rank(QMatrix m);

/// Basis of {x : m x = 0}; `cols` is needed when m has no rows.
std::vector<QVector> nullspace(const QMatrix& m, std::size_t cols);

/// Some solution of m x = b, or nullopt if the system is inconsistent.
std::optional<QVector> solve(const QMatrix& m, const QVector& b);

std::optional<QMatrix> inverse(const QMatrix& m);

/// Row-style Hermite normal form of the lattice spanned by `rows`. Zero rows
/// are dropped; pivots are positive and entries above each pivot are reduced
/// into [0, pivot).
std::vector<ZVector> hermite_normal_form(std::vector<ZVector> rows);

/// Incrementally built echelon form that remembers how each of its rows was
/// formed from the inserted vectors, so membership queries also return the
/// coordinates of a vector with respect to the inserted ones.
class Echelon {
 public:
  explicit Echelon(std::size_t width) : width_(width) {}

  std::size_t width() const { return width_; }
  std::size_t size() const { return inserted_; }

  /// Inserts v if it is independent of the current span. Returns true when v
  /// was added.
  bool insert(const QVector& v);

  /// Coordinates of v in terms of the inserted vectors (in insertion order),
  /// or nullopt if v is outside their span.
  std::optional<QVector> coordinates(const QVector& v) const;

 private:
  struct Row {
    std::size_t pivot;
    QVector values;
    QVector combination;
  };

  // Returns the residue of v after elimination and fills `combination` with
  // the multiples of inserted vectors that were subtracted.
  QVector reduce(const QVector& v, QVector& combination) const;

  std::size_t width_;
  std::size_t inserted_ = 0;
  std::vector<Row> rows_;
};

}  // namespace kacmoody
