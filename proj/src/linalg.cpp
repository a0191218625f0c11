#include "kacmoody/linalg.hpp"

#include <algorithm>
#include <utility>

namespace kacmoody {

bool is_zero(const QVector& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Rational& q) { return q == 0; });
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    Rational inv = 1 / m[row][col];
    for (std::size_t c = col; c < m[row].size(); ++c) m[row][c] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rational f = m[r][col];
      for (std::size_t c = col; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

Rational determinant(QMatrix m) {
  std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && m[sel][col] == 0) ++sel;
    if (sel == n) return 0;
    if (sel != col) {
      std::swap(m[sel], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

std::size_t rank(QMatrix m) {
  if (m.empty()) return 0;
  return rref(m, m[0].size()).size();
}

std::vector<QVector> nullspace(const QMatrix& m, std::size_t cols) {
  QMatrix r = m;
  auto pivots = rref(r, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    QVector x(cols, Rational(0));
    x[free] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = -r[k][free];
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<QVector> solve(const QMatrix& m, const QVector& b) {
  std::size_t cols = m.empty() ? 0 : m[0].size();
  QMatrix aug = m;
  for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
  auto pivots = rref(aug, cols + 1);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  QVector x(cols, Rational(0));
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug[k][cols];
  return x;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  std::size_t n = m.size();
  QMatrix aug = m;
  for (std::size_t r = 0; r < n; ++r) {
    aug[r].resize(2 * n, Rational(0));
    aug[r][n + r] = 1;
  }
  auto pivots = rref(aug, n);
  if (pivots.size() != n) return std::nullopt;
  QMatrix inv(n);
  for (std::size_t r = 0; r < n; ++r) {
    inv[r].assign(aug[r].begin() + static_cast<std::ptrdiff_t>(n), aug[r].end());
  }
  return inv;
}

std::vector<ZVector> hermite_normal_form(std::vector<ZVector> rows) {
  if (rows.empty()) return {};
  std::size_t cols = rows[0].size();
  std::vector<ZVector> out;
  std::size_t top = 0;
  for (std::size_t col = 0; col < cols && top < rows.size(); ++col) {
    // Euclid on column `col` among rows[top..].
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = top; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        if (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col])) {
          best = r;
        }
      }
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool done = true;
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(),
                   rows[top][col].get_mpz_t());
        for (std::size_t c = col; c < cols; ++c) rows[r][c] -= q * rows[top][c];
        if (rows[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[top][col] == 0) continue;
    if (rows[top][col] < 0) {
      for (auto& x : rows[top]) x = -x;
    }
    for (std::size_t r = 0; r < top; ++r) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(),
                 rows[top][col].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t c = col; c < cols; ++c) rows[r][c] -= q * rows[top][c];
    }
    ++top;
  }
  for (std::size_t r = 0; r < top; ++r) out.push_back(std::move(rows[r]));
  return out;
}

QVector Echelon::reduce(const QVector& v, QVector& combination) const {
  QVector residue = v;
  combination.assign(inserted_, Rational(0));
  for (const auto& row : rows_) {
    const Rational& lead = residue[row.pivot];
    if (lead == 0) continue;
    Rational f = lead;
    for (std::size_t c = row.pivot; c < width_; ++c) {
      if (row.values[c] != 0) residue[c] -= f * row.values[c];
    }
    for (std::size_t k = 0; k < row.combination.size(); ++k) {
      if (row.combination[k] != 0) combination[k] += f * row.combination[k];
    }
  }
  return residue;
}

bool Echelon::insert(const QVector& v) {
  QVector combination;
  QVector residue = reduce(v, combination);
  std::size_t pivot = 0;
  while (pivot < width_ && residue[pivot] == 0) ++pivot;
  if (pivot == width_) return false;
  // residue = v - sum(combination_k * inserted_k); normalize pivot to 1.
  Rational inv = 1 / residue[pivot];
  for (auto& x : residue) x *= inv;
  QVector row_comb(inserted_ + 1, Rational(0));
  for (std::size_t k = 0; k < inserted_; ++k) row_comb[k] = -combination[k] * inv;
  row_comb[inserted_] = inv;
  ++inserted_;
  for (auto& row : rows_) row.combination.resize(inserted_, Rational(0));
  // Keep earlier rows reduced against the new pivot so reduce() can run in a
  // single pass regardless of pivot order.
  for (auto& row : rows_) {
    if (row.values[pivot] == 0) continue;
    Rational f = row.values[pivot];
    for (std::size_t c = 0; c < width_; ++c) {
      if (residue[c] != 0) row.values[c] -= f * residue[c];
    }
    for (std::size_t k = 0; k < inserted_; ++k) {
      if (row_comb[k] != 0) row.combination[k] -= f * row_comb[k];
    }
  }
  rows_.push_back(Row{pivot, std::move(residue), std::move(row_comb)});
  return true;
}

std::optional<QVector> Echelon::coordinates(const QVector& v) const {
  QVector combination;
  QVector residue = reduce(v, combination);
  if (!is_zero(residue)) return std::nullopt;
  return combination;
}

}  // namespace kacmoody
