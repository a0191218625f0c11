#include "kacmoody/gcm.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <queue>
#include <sstream>

#include "kacmoody/errors.hpp"

namespace kacmoody {

std::string to_string(ClassKind kind) {
  switch (kind) {
    case ClassKind::Finite:
      return "Finite";
    case ClassKind::Affine:
      return "Affine";
    case ClassKind::Indefinite:
      return "Indefinite";
  }
  return "?";
}

Gcm::Gcm(std::vector<std::vector<int>> a) : a_(std::move(a)) {
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) {
      if (i != j) m_a_ = std::max(m_a_, std::abs(a_[i][j]));
    }
  }
}

Gcm Gcm::validate(std::vector<std::vector<int>> entries) {
  using R = InvalidGcm::Reason;
  const int n = static_cast<int>(entries.size());
  if (n == 0) throw InvalidGcm(R::Shape, -1, -1, "empty matrix");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(entries[i].size()) != n) {
      throw InvalidGcm(R::Shape, i, -1,
                       "row " + std::to_string(i) + " has " +
                           std::to_string(entries[i].size()) +
                           " entries, expected " + std::to_string(n));
    }
  }
  for (int i = 0; i < n; ++i) {
    if (entries[i][i] != 2) {
      throw InvalidGcm(R::Diagonal, i, i,
                       "diagonal entry a_" + std::to_string(i) +
                           std::to_string(i) + " is not 2");
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && entries[i][j] > 0) {
        throw InvalidGcm(R::Positivity, i, j,
                         "off-diagonal entry (" + std::to_string(i) + "," +
                             std::to_string(j) + ") is positive");
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && (entries[i][j] == 0) != (entries[j][i] == 0)) {
        throw InvalidGcm(R::ZeroSymmetry, i, j,
                         "entry (" + std::to_string(i) + "," +
                             std::to_string(j) +
                             ") vanishes asymmetrically");
      }
    }
  }
  return Gcm(std::move(entries));
}

Gcm Gcm::principal(const std::vector<int>& indices) const {
  std::vector<std::vector<int>> sub;
  for (int i : indices) {
    std::vector<int> row;
    for (int j : indices) row.push_back(a_[i][j]);
    sub.push_back(std::move(row));
  }
  return Gcm(std::move(sub));
}

Gcm parse_gcm(std::string_view text) {
  std::vector<std::vector<int>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string tok;
    std::vector<int> row;
    while (fields >> tok) {
      char* end = nullptr;
      long v = std::strtol(tok.c_str(), &end, 10);
      if (end == tok.c_str() || *end != '\0') {
        throw ParseError("bad matrix entry '" + tok + "'");
      }
      row.push_back(static_cast<int>(v));
    }
    rows.push_back(std::move(row));
  }
  return Gcm::validate(std::move(rows));
}

Gcm load_gcm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_gcm(buf.str());
}

std::string format_gcm(const Gcm& g) {
  std::string out;
  for (const auto& row : g.entries()) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ' ';
      out += std::to_string(row[j]);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::vector<int>> components(const Gcm& g) {
  const int n = g.size();
  std::vector<int> label(n, -1);
  std::vector<std::vector<int>> blocks;
  for (int s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    std::vector<int> block;
    std::queue<int> todo;
    todo.push(s);
    label[s] = static_cast<int>(blocks.size());
    while (!todo.empty()) {
      int i = todo.front();
      todo.pop();
      block.push_back(i);
      for (int j = 0; j < n; ++j) {
        if (j != i && g(i, j) != 0 && label[j] < 0) {
          label[j] = label[s];
          todo.push(j);
        }
      }
    }
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
  }
  return blocks;
}

std::optional<Symmetrization> symmetrize(const Gcm& g) {
  const int n = g.size();
  std::vector<Rational> d(n, Rational(0));
  for (const auto& block : components(g)) {
    std::queue<int> todo;
    d[block[0]] = 1;
    todo.push(block[0]);
    while (!todo.empty()) {
      int i = todo.front();
      todo.pop();
      for (int j : block) {
        if (j == i || g(i, j) == 0) continue;
        // a_ij / d_i = a_ji / d_j
        Rational dj = d[i] * frac(g(j, i), g(i, j));
        if (d[j] == 0) {
          d[j] = dj;
          todo.push(j);
        } else if (d[j] != dj) {
          return std::nullopt;
        }
      }
    }
    Rational least = d[block[0]];
    for (int i : block) least = std::min(least, d[i]);
    for (int i : block) d[i] /= least;
  }
  QMatrix b(n, QVector(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b[i][j] = Rational(g(i, j)) / d[i];
  }
  return Symmetrization{std::move(d), std::move(b)};
}

namespace {

bool is_indecomposable(const Gcm& g) { return components(g).size() == 1; }

// Returns the number of positive pivots if b is positive semidefinite.
std::optional<int> semidefinite_rank(QMatrix b) {
  const int n = static_cast<int>(b.size());
  std::vector<bool> used(n, false);
  int positive = 0;
  for (int step = 0; step < n; ++step) {
    int pivot = -1;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      if (b[i][i] < 0) return std::nullopt;
      if (b[i][i] > 0 && pivot < 0) pivot = i;
    }
    if (pivot < 0) {
      // Remaining diagonal is zero: PSD forces the remaining block to vanish.
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (!used[i] && !used[j] && b[i][j] != 0) return std::nullopt;
        }
      }
      return positive;
    }
    used[pivot] = true;
    ++positive;
    for (int i = 0; i < n; ++i) {
      if (used[i] || b[i][pivot] == 0) continue;
      Rational f = b[i][pivot] / b[pivot][pivot];
      for (int j = 0; j < n; ++j) {
        if (!used[j]) b[i][j] -= f * b[pivot][j];
      }
    }
  }
  return positive;
}

QMatrix to_rational(const Gcm& g) {
  QMatrix m(g.size(), QVector(g.size()));
  for (int i = 0; i < g.size(); ++i) {
    for (int j = 0; j < g.size(); ++j) m[i][j] = g(i, j);
  }
  return m;
}

ClassKind classify_symmetrized(const Gcm& g) {
  auto sym = symmetrize(g);
  if (!sym) return ClassKind::Indefinite;
  const auto& b = sym->b;
  const int n = g.size();
  bool definite = true;
  for (int k = 1; k <= n && definite; ++k) {
    QMatrix minor(k, QVector(k));
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) minor[i][j] = b[i][j];
    }
    if (determinant(minor) <= 0) definite = false;
  }
  if (definite) return ClassKind::Finite;
  auto r = semidefinite_rank(b);
  if (r && *r == n - 1) return ClassKind::Affine;
  return ClassKind::Indefinite;
}

}  // namespace

ClassKind vinberg_classify(const Gcm& g) {
  const int n = g.size();
  QMatrix a = to_rational(g);
  std::size_t r = rank(a);
  if (static_cast<int>(r) == n) {
    auto u = solve(a, QVector(n, Rational(1)));
    bool positive = std::all_of(u->begin(), u->end(),
                                [](const Rational& x) { return x > 0; });
    return positive ? ClassKind::Finite : ClassKind::Indefinite;
  }
  if (static_cast<int>(r) == n - 1) {
    auto kernel = nullspace(a, n);
    const auto& k = kernel.at(0);
    bool pos = std::all_of(k.begin(), k.end(),
                           [](const Rational& x) { return x > 0; });
    bool neg = std::all_of(k.begin(), k.end(),
                           [](const Rational& x) { return x < 0; });
    return (pos || neg) ? ClassKind::Affine : ClassKind::Indefinite;
  }
  return ClassKind::Indefinite;
}

ClassKind classify(const Gcm& g, const std::vector<int>& block) {
  Gcm sub = g.principal(block);
  if (!is_indecomposable(sub)) {
    throw InvalidGcm(InvalidGcm::Reason::Decomposable, -1, -1,
                     "classify needs an indecomposable block");
  }
  ClassKind kind = classify_symmetrized(sub);
  ClassKind check = vinberg_classify(sub);
  if (kind != check) {
    throw InternalInconsistency("definiteness says " + to_string(kind) +
                                " but the Vinberg test says " +
                                to_string(check));
  }
  return kind;
}

}  // namespace kacmoody
