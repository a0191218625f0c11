#include "kacmoody/lie.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "kacmoody/errors.hpp"

namespace kacmoody {

void add_to(LieElt& acc, const LieElt& x, const Rational& c) {
  if (c == 0) return;
  for (const auto& [k, v] : x) {
    auto it = acc.find(k);
    if (it == acc.end()) {
      acc.emplace(k, v * c);
    } else {
      it->second += v * c;
      if (it->second == 0) acc.erase(it);
    }
  }
}

LieElt scaled(const LieElt& x, const Rational& c) {
  LieElt out;
  add_to(out, x, c);
  return out;
}

LieElt operator+(const LieElt& a, const LieElt& b) {
  LieElt out = a;
  add_to(out, b);
  return out;
}

LieElt operator-(const LieElt& a, const LieElt& b) {
  LieElt out = a;
  add_to(out, b, -1);
  return out;
}

LieAlgebra::LieAlgebra(Gcm g, int max_height)
    : g_(g), max_height_(max_height), roots_(std::move(g)) {
  const int n = g_.size();
  degrees_.emplace_back();
  for (int i = 0; i < n; ++i) {
    Degree d;
    d.root = simple_root(n, i);
    d.height = 1;
    d.dim = 1;
    d.def_letter = {i};
    d.def_index = {0};
    d.word = {{i}};
    degrees_.push_back(std::move(d));
    ids_[simple_root(n, i)] = i + 1;
  }
}

int LieAlgebra::degree_id(const RootVec& alpha) {
  if (is_negative(alpha)) return degree_id(negated(alpha));
  if (!is_positive(alpha)) return 0;
  std::lock_guard lock(mutex_);
  auto it = ids_.find(alpha);
  if (it != ids_.end()) return it->second;
  return build(alpha);
}

RootVec LieAlgebra::degree_root(int deg) const {
  std::lock_guard lock(mutex_);
  if (deg == 0) return RootVec(g_.size(), 0);
  const RootVec& r = degrees_.at(std::abs(deg)).root;
  return deg > 0 ? r : negated(r);
}

int LieAlgebra::dim(int deg) const {
  std::lock_guard lock(mutex_);
  if (deg == 0) return g_.size();
  return degrees_.at(std::abs(deg)).dim;
}

int LieAlgebra::build(const RootVec& alpha) {
  const int n = g_.size();
  const int h = height(alpha);
  if (h > max_height_) {
    throw ResourceLimit("degree " + root_to_string(alpha) +
                        " exceeds the height limit " +
                        std::to_string(max_height_));
  }

  // Sub-degrees alpha - alpha_j, and where their blocks sit in the image
  // vector ([f_0 x], ..., [f_{n-1} x]).
  std::vector<int> sub(n, 0), offset(n, 0);
  std::size_t width = 0;
  for (int j = 0; j < n; ++j) {
    RootVec s = alpha;
    --s[j];
    if (is_positive(s)) sub[j] = degree_id(s);
    offset[j] = static_cast<int>(width);
    if (sub[j]) width += degrees_[sub[j]].dim;
  }
  if (width == 0) {
    ids_[alpha] = 0;
    return 0;
  }

  struct Candidate {
    std::vector<int> word;
    int letter;
    int index;
    QVector image;
  };
  std::vector<Candidate> cands;
  for (int i = 0; i < n; ++i) {
    if (!sub[i]) continue;
    const Degree& inner = degrees_[sub[i]];
    for (int c = 0; c < inner.dim; ++c) {
      Candidate cand;
      cand.word.push_back(i);
      cand.word.insert(cand.word.end(), inner.word[c].begin(),
                       inner.word[c].end());
      cand.letter = i;
      cand.index = c;
      cand.image.assign(width, Rational(0));
      // [f_j, [e_i, b]] = delta_ij [alpha_i^vee, b] + [e_i, [f_j, b]].
      for (int j = 0; j < n; ++j) {
        if (!sub[j]) continue;
        if (i == j) {
          RootVec inner_root = alpha;
          --inner_root[i];
          cand.image[offset[j] + c] += pairing(g_, inner_root, i);
        }
        if (inner.height == 1) {
          // b = e_k, [f_j, e_k] = delta_jk alpha_k^vee, and
          // [e_i, alpha_k^vee] = -a_ki e_i.
          int k = inner.def_letter[0];
          if (j == k) cand.image[offset[j]] += -g_(k, i);
          continue;
        }
        const QVector& low = inner.lower[c][j];
        if (low.empty()) continue;
        const Degree& target = degrees_[sub[j]];
        for (std::size_t c2 = 0; c2 < low.size(); ++c2) {
          if (low[c2] == 0) continue;
          const QVector& col = target.ade[i][c2];
          for (std::size_t t = 0; t < col.size(); ++t) {
            cand.image[offset[j] + t] += low[c2] * col[t];
          }
        }
      }
      cands.push_back(std::move(cand));
    }
  }
  std::sort(cands.begin(), cands.end(),
            [](const Candidate& a, const Candidate& b) { return a.word < b.word; });

  Degree d;
  d.root = alpha;
  d.height = h;
  Echelon ech(width);
  for (const auto& cand : cands) {
    if (!ech.insert(cand.image)) continue;
    d.def_letter.push_back(cand.letter);
    d.def_index.push_back(cand.index);
    d.word.push_back(cand.word);
    std::vector<QVector> low(n);
    for (int j = 0; j < n; ++j) {
      if (!sub[j]) continue;
      low[j].assign(cand.image.begin() + offset[j],
                    cand.image.begin() + offset[j] + degrees_[sub[j]].dim);
    }
    d.lower.push_back(std::move(low));
  }
  d.dim = static_cast<int>(ech.size());
  if (d.dim == 0) {
    ids_[alpha] = 0;
    return 0;
  }
  d.ade.assign(n, {});
  for (int i = 0; i < n; ++i) {
    if (sub[i]) d.ade[i].resize(degrees_[sub[i]].dim);
  }
  for (const auto& cand : cands) {
    auto coords = ech.coordinates(cand.image);
    if (!coords) throw InternalInconsistency("candidate outside its own span");
    d.ade[cand.letter][cand.index] = std::move(*coords);
  }
  degrees_.push_back(std::move(d));
  int id = static_cast<int>(degrees_.size()) - 1;
  ids_[alpha] = id;
  return id;
}

void LieAlgebra::extend_to_height(int h) {
  std::lock_guard lock(mutex_);
  const int n = g_.size();
  std::vector<RootVec> layer;
  for (int i = 0; i < n; ++i) layer.push_back(simple_root(n, i));
  for (int k = 2; k <= h; ++k) {
    std::set<RootVec> next;
    for (const auto& a : layer) {
      for (int i = 0; i < n; ++i) {
        RootVec b = a;
        ++b[i];
        if (degree_id(b)) next.insert(b);
      }
    }
    layer.assign(next.begin(), next.end());
  }
}

int LieAlgebra::multiplicity(const RootVec& alpha) {
  std::lock_guard lock(mutex_);
  int id = degree_id(alpha);
  return id ? degrees_[id].dim : 0;
}

std::vector<LieAlgebra::PositiveRoot> LieAlgebra::positive_roots(int h) {
  std::lock_guard lock(mutex_);
  extend_to_height(h);
  std::vector<PositiveRoot> out;
  for (const auto& [root, id] : ids_) {
    if (!id || height(root) > h) continue;
    out.push_back({root, degrees_[id].dim, roots_.is_real_root(root)});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return height_lex_less(a.root, b.root);
  });
  return out;
}

LieElt LieAlgebra::e(int i) const { return {{BasisKey{i + 1, 0}, Rational(1)}}; }
LieElt LieAlgebra::f(int i) const { return {{BasisKey{-(i + 1), 0}, Rational(-1)}}; }
LieElt LieAlgebra::coroot(int i) const { return {{BasisKey{0, i}, Rational(1)}}; }

std::vector<BasisKey> LieAlgebra::basis(const RootVec& alpha) {
  std::vector<BasisKey> out;
  if (is_zero(alpha)) {
    for (int i = 0; i < g_.size(); ++i) out.push_back({0, i});
    return out;
  }
  std::lock_guard lock(mutex_);
  int id = degree_id(alpha);
  if (!id) return out;
  int sign = is_negative(alpha) ? -1 : 1;
  for (int k = 0; k < degrees_[id].dim; ++k) out.push_back({sign * id, k});
  return out;
}

std::vector<int> LieAlgebra::basis_word(BasisKey k) const {
  std::lock_guard lock(mutex_);
  if (k.deg == 0) return {};
  return degrees_.at(std::abs(k.deg)).word.at(k.idx);
}

std::string LieAlgebra::basis_name(BasisKey k) const {
  std::lock_guard lock(mutex_);
  if (k.deg == 0) return "h" + std::to_string(k.idx);
  const auto& w = degrees_.at(std::abs(k.deg)).word.at(k.idx);
  std::string s = "e" + std::to_string(w.back());
  for (int p = static_cast<int>(w.size()) - 2; p >= 0; --p) {
    s = "[e" + std::to_string(w[p]) + "," + s + "]";
  }
  return k.deg > 0 ? s : "omega(" + s + ")";
}

LieElt LieAlgebra::omega(const LieElt& x) const {
  LieElt out;
  for (const auto& [k, v] : x) {
    if (k.deg == 0) {
      out.emplace(k, -v);
    } else {
      out.emplace(BasisKey{-k.deg, k.idx}, v);
    }
  }
  return out;
}

QVector LieAlgebra::coordinates(const LieElt& x, int deg) const {
  QVector out(dim(deg), Rational(0));
  for (const auto& [k, v] : x) {
    if (k.deg == deg) out.at(k.idx) = v;
  }
  return out;
}

LieElt LieAlgebra::from_coordinates(int deg, const QVector& c) const {
  LieElt out;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] != 0) out.emplace(BasisKey{deg, static_cast<int>(k)}, c[k]);
  }
  return out;
}

const std::pair<QMatrix, QMatrix>& LieAlgebra::lattice_matrix(int deg) {
  auto it = lattice_matrix_.find(deg);
  if (it != lattice_matrix_.end()) return it->second;
  QMatrix rows;
  for (const auto& v : lattice_basis(degrees_[deg].root)) rows.push_back(coordinates(v, deg));
  auto inv = inverse(rows);
  if (!inv) throw InternalInconsistency("bracket lattice of " + root_to_string(degrees_[deg].root) + " is not full rank");
  return lattice_matrix_.emplace(deg, std::make_pair(rows, *inv)).first->second;
}

QVector LieAlgebra::lattice_coordinates(const LieElt& x, int deg) {
  std::lock_guard lock(mutex_);
  QVector c = coordinates(x, deg);
  if (deg == 0) return c;
  const QMatrix& inv = lattice_matrix(std::abs(deg)).second;
  QVector out(c.size(), Rational(0));
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    for (std::size_t j = 0; j < c.size(); ++j) out[j] += c[k] * inv[k][j];
  }
  return out;
}

LieElt LieAlgebra::from_lattice(int deg, const QVector& c) {
  std::lock_guard lock(mutex_);
  if (deg == 0) return from_coordinates(0, c);
  const QMatrix& rows = lattice_matrix(std::abs(deg)).first;
  QVector out(c.size(), Rational(0));
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    for (std::size_t j = 0; j < c.size(); ++j) out[j] += c[k] * rows[k][j];
  }
  return from_coordinates(deg, out);
}

LieElt LieAlgebra::lower_of(int deg, int idx, int j) {
  const Degree& d = degrees_[deg];
  if (d.height == 1) {
    return d.def_letter[0] == j ? coroot(j) : LieElt{};
  }
  const QVector& low = d.lower[idx][j];
  if (low.empty()) return {};
  RootVec s = d.root;
  --s[j];
  return from_coordinates(degree_id(s), low);
}

LieElt LieAlgebra::raise(int i, BasisKey b) {
  RootVec target = degrees_[b.deg].root;
  ++target[i];
  int id = degree_id(target);
  if (!id) return {};
  return from_coordinates(id, degrees_[id].ade[i][b.idx]);
}

LieElt LieAlgebra::bracket(const LieElt& x, const LieElt& y) {
  std::lock_guard lock(mutex_);
  LieElt out;
  for (const auto& [a, ca] : x) {
    for (const auto& [b, cb] : y) {
      add_to(out, bracket_keys(a, b), ca * cb);
    }
  }
  return out;
}

LieElt LieAlgebra::bracket_keys(BasisKey a, BasisKey b) {
  if (a == b) return {};
  if (a.deg == 0 && b.deg == 0) return {};
  auto key = std::make_pair(a, b);
  auto it = bracket_cache_.find(key);
  if (it != bracket_cache_.end()) return it->second;

  LieElt out;
  if (a.deg == 0) {
    out = scaled(basis_vector(b), pairing(g_, degree_root(b.deg), a.idx));
  } else if (b.deg == 0) {
    out = scaled(bracket_keys(b, a), -1);
  } else if (a.deg > 0 && b.deg > 0) {
    const Degree& da = degrees_[a.deg];
    const Degree& db = degrees_[b.deg];
    if (da.height > db.height) {
      out = scaled(bracket_keys(b, a), -1);
    } else if (da.height == 1) {
      out = raise(da.def_letter[0], b);
    } else {
      // a = [e_i, a'], so [a, b] = [e_i, [a', b]] - [a', [e_i, b]].
      int i = da.def_letter[a.idx];
      RootVec inner = da.root;
      --inner[i];
      LieElt ap = basis_vector({degree_id(inner), da.def_index[a.idx]});
      LieElt ei = e(i), bb = basis_vector(b);
      out = bracket(ei, bracket(ap, bb)) - bracket(ap, bracket(ei, bb));
    }
  } else if (a.deg < 0 && b.deg < 0) {
    out = omega(bracket_keys({-a.deg, a.idx}, {-b.deg, b.idx}));
  } else if (a.deg > 0) {
    out = bracket_pos_neg(a, b);
  } else {
    out = scaled(bracket_pos_neg(b, a), -1);
  }
  bracket_cache_.emplace(key, out);
  return out;
}

LieElt LieAlgebra::bracket_pos_neg(BasisKey a, BasisKey y) {
  const Degree& da = degrees_[a.deg];
  const Degree& db = degrees_[-y.deg];
  if (da.height > db.height) {
    // [a, omega b] = -omega([b, omega a]).
    return scaled(omega(bracket_pos_neg({-y.deg, y.idx}, {-a.deg, a.idx})),
                  -1);
  }
  if (da.height == 1) {
    // [e_i, omega b] = omega([-f_i, b]) = -omega([f_i, b]).
    return scaled(omega(lower_of(-y.deg, y.idx, da.def_letter[0])), -1);
  }
  int i = da.def_letter[a.idx];
  RootVec inner = da.root;
  --inner[i];
  LieElt ap = basis_vector({degree_id(inner), da.def_index[a.idx]});
  LieElt ei = e(i), yy = basis_vector(y);
  return bracket(ei, bracket(ap, yy)) - bracket(ap, bracket(ei, yy));
}

LieElt LieAlgebra::ad_exp(const LieElt& x, const Rational& r, const LieElt& v) {
  if (r == 0) return v;
  LieElt sum = v, term = v;
  for (int n = 1; !term.empty(); ++n) {
    if (n > 64) throw NilpotencyCapExceeded("ad x not nilpotent within 64 steps");
    term = scaled(bracket(x, term), r / n);
    add_to(sum, term);
  }
  return sum;
}

LieElt LieAlgebra::tilde_s(int i, const LieElt& v) {
  LieElt ei = e(i), fi = f(i);
  return ad_exp(ei, 1, ad_exp(fi, 1, ad_exp(ei, 1, v)));
}

LieElt LieAlgebra::canonical_e(const RootVec& alpha) {
  std::lock_guard lock(mutex_);
  if (is_negative(alpha)) {
    int sign = height(alpha) % 2 == 0 ? 1 : -1;
    return scaled(omega(canonical_e(negated(alpha))), sign);
  }
  auto it = canonical_cache_.find(alpha);
  if (it != canonical_cache_.end()) return it->second;
  RealRootDatum d = roots_.datum(alpha);
  LieElt v = e(d.index);
  for (auto l = d.word.rbegin(); l != d.word.rend(); ++l) v = tilde_s(*l, v);
  int id = degree_id(alpha);
  if (v.size() != 1 || v.begin()->first.deg != id) {
    throw InternalInconsistency("transport of e_" + std::to_string(d.index) +
                                " left the root space " + root_to_string(alpha));
  }
  if (v.begin()->second < 0) v = scaled(v, -1);
  canonical_cache_.emplace(alpha, v);
  return v;
}

std::vector<LieElt> LieAlgebra::lattice_basis(const RootVec& alpha) {
  std::lock_guard lock(mutex_);
  auto it = lattice_cache_.find(alpha);
  if (it != lattice_cache_.end()) return it->second;
  int id = is_positive(alpha) ? degree_id(alpha) : 0;
  if (!id) throw NotARoot(root_to_string(alpha) + " is not a positive root");
  const int n = g_.size();
  std::vector<LieElt> out;
  if (degrees_[id].height == 1) {
    out.push_back(basis_vector({id, 0}));
  } else {
    std::vector<QVector> gens;
    for (int i = 0; i < n; ++i) {
      RootVec s = alpha;
      --s[i];
      if (!is_positive(s) || !degree_id(s)) continue;
      for (const auto& v : lattice_basis(s)) {
        gens.push_back(coordinates(bracket(e(i), v), id));
      }
    }
    Integer den = 1;
    for (const auto& v : gens) {
      for (const auto& c : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(),
                                      c.get_den_mpz_t());
    }
    std::vector<ZVector> rows;
    for (const auto& v : gens) {
      ZVector z;
      for (const auto& c : v) z.push_back(Integer(c * den));
      rows.push_back(std::move(z));
    }
    for (const auto& z : hermite_normal_form(std::move(rows))) {
      QVector q;
      for (const auto& c : z) {
        Rational r(c, den);
        r.canonicalize();
        q.push_back(r);
      }
      out.push_back(from_coordinates(id, q));
    }
  }
  lattice_cache_.emplace(alpha, out);
  return out;
}

}  // namespace kacmoody
