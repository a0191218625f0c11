#pragma once

#include <cctype>
#include <cstdlib>
#include <string>
#include <vector>

#include "kacmoody/group.hpp"
#include "kacmoody/linalg.hpp"

// A faithful matrix representation of a finite-type algebra, given the images
// of e_i and of omega(e_i) = -f_i. Used as an independent oracle for the
// adjoint action: Ad(g) X = M(g) X M(g)^{-1}.
namespace model {

using kacmoody::QMatrix;
using kacmoody::QVector;
using kacmoody::Rational;

inline QMatrix zero(int n) { return QMatrix(n, kacmoody::QVector(n, Rational(0))); }

inline QMatrix identity(int n) {
  QMatrix m = zero(n);
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline QMatrix unit(int n, int i, int j, long c = 1) {
  QMatrix m = zero(n);
  m[i][j] = c;
  return m;
}

inline QMatrix mul(const QMatrix& a, const QMatrix& b) {
  int n = static_cast<int>(a.size());
  QMatrix out = zero(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (int j = 0; j < n; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

inline QMatrix add(const QMatrix& a, const QMatrix& b, const Rational& c = 1) {
  QMatrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out[i][j] += c * b[i][j];
  return out;
}

inline QMatrix bracket(const QMatrix& a, const QMatrix& b) { return add(mul(a, b), mul(b, a), -1); }

// exp(r X) for nilpotent X.
inline QMatrix exp(const QMatrix& x, const Rational& r) {
  int n = static_cast<int>(x.size());
  QMatrix sum = identity(n), term = identity(n);
  for (int k = 1; k <= n; ++k) {
    term = mul(term, x);
    for (auto& row : term)
      for (auto& c : row) c *= r / k;
    sum = add(sum, term);
  }
  return sum;
}

inline QMatrix reduce(const QMatrix& m, const kacmoody::FieldSpec& f) {
  QMatrix out = m;
  for (auto& row : out)
    for (auto& c : row) c = f.from(c);
  return out;
}

struct Model {
  int n;
  std::vector<QMatrix> e, fk;

  QMatrix coroot(int i) const { return bracket(e[i], fk[i]); }

  // Reads the letters back out of a basis name like "[e0,[e1,e0]]".
  QMatrix word(const std::string& name, const std::vector<QMatrix>& gens) const {
    std::vector<int> letters;
    for (std::size_t p = 0; p + 1 < name.size(); ++p)
      if (name[p] == 'e' && std::isdigit(static_cast<unsigned char>(name[p + 1])))
        letters.push_back(name[p + 1] - '0');
    QMatrix m = gens[letters.back()];
    for (int q = static_cast<int>(letters.size()) - 2; q >= 0; --q) m = bracket(gens[letters[q]], m);
    return m;
  }

  QMatrix realize(kacmoody::LieAlgebra& lie, const kacmoody::LieElt& x) const {
    QMatrix out = zero(n);
    for (const auto& [k, c] : x) {
      QMatrix m;
      if (k.deg == 0) {
        m = coroot(k.idx);
      } else {
        std::string name = lie.basis_name(k);
        m = word(name, name.rfind("omega", 0) == 0 ? fk : e);
      }
      out = add(out, m, c);
    }
    return out;
  }

  // Matrix of a word; torus letters act through exp of the diagonal coroot.
  QMatrix of(kacmoody::LieAlgebra& lie, const kacmoody::GroupWord& w,
             const kacmoody::FieldSpec& f) const {
    QMatrix m = identity(n);
    for (const auto& l : kacmoody::expand_s(w, f)) {
      if (l.kind == kacmoody::GroupLetter::Kind::Torus) {
        QMatrix h = coroot(l.index), d = zero(n);
        for (int k = 0; k < n; ++k) {
          int e = static_cast<int>(h[k][k].get_num().get_si());
          Rational p = 1;
          for (int q = 0; q < std::abs(e); ++q) p *= e > 0 ? l.scalar : 1 / l.scalar;
          d[k][k] = p;
        }
        m = mul(m, d);
      } else {
        auto root = l.root;
        root.resize(lie.rank(), 0);
        m = mul(m, exp(realize(lie, lie.canonical_e(root)), l.scalar));
      }
    }
    return m;
  }
};

// sl_3 with e_i = E_{i,i+1}, f_i = -E_{i+1,i}.
inline Model sl3() {
  return {3, {unit(3, 0, 1), unit(3, 1, 2)}, {unit(3, 1, 0), unit(3, 2, 1)}};
}

// The B2-type algebra [[2,-2],[-1,2]] on 4-space.
inline Model b2() {
  return {4,
          {add(unit(4, 0, 1), unit(4, 2, 3), -1), unit(4, 1, 2)},
          {add(unit(4, 1, 0), unit(4, 3, 2), -1), unit(4, 2, 1)}};
}

}  // namespace model
