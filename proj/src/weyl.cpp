#include "kacmoody/weyl.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "kacmoody/errors.hpp"

namespace kacmoody {

int height(const RootVec& v) { return std::accumulate(v.begin(), v.end(), 0); }

bool is_positive(const RootVec& v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; }) &&
         std::any_of(v.begin(), v.end(), [](int x) { return x > 0; });
}

bool is_negative(const RootVec& v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x <= 0; }) &&
         std::any_of(v.begin(), v.end(), [](int x) { return x < 0; });
}

bool is_zero(const RootVec& v) {
  return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
}

RootVec negated(RootVec v) {
  for (auto& x : v) x = -x;
  return v;
}

RootVec add(const RootVec& a, const RootVec& b) {
  RootVec r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k] + b[k];
  return r;
}

RootVec combine(int i, const RootVec& a, int j, const RootVec& b) {
  RootVec r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = i * a[k] + j * b[k];
  return r;
}

RootVec simple_root(int n, int i) {
  RootVec r(n, 0);
  r[i] = 1;
  return r;
}

std::string root_to_string(const RootVec& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(v[k]);
  }
  return s;
}

RootVec parse_root(std::string_view text, int rank) {
  RootVec v;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    char* end = nullptr;
    long x = std::strtol(item.c_str(), &end, 10);
    if (item.empty() || *end != '\0') {
      throw ParseError("bad root literal '" + std::string(text) + "'");
    }
    v.push_back(static_cast<int>(x));
  }
  if (static_cast<int>(v.size()) != rank) {
    throw ParseError("root literal '" + std::string(text) + "' needs " +
                     std::to_string(rank) + " coordinates");
  }
  return v;
}

bool height_lex_less(const RootVec& a, const RootVec& b) {
  int ha = height(a), hb = height(b);
  if (ha != hb) return ha < hb;
  return a < b;
}

int pairing(const Gcm& g, const RootVec& alpha, int i) {
  int s = 0;
  for (int j = 0; j < g.size(); ++j) s += alpha[j] * g(i, j);
  return s;
}

int pairing(const Gcm& g, const RootVec& alpha, const RootVec& coroot) {
  int s = 0;
  for (int i = 0; i < g.size(); ++i) {
    if (coroot[i] != 0) s += coroot[i] * pairing(g, alpha, i);
  }
  return s;
}

RootVec reflect(const Gcm& g, int i, const RootVec& v) {
  RootVec r = v;
  r[i] -= pairing(g, v, i);
  return r;
}

RootVec reflect_coroot(const Gcm& g, int i, const RootVec& h) {
  // s_i(alpha_j^vee) = alpha_j^vee - a_ji alpha_i^vee
  RootVec r = h;
  int s = 0;
  for (int j = 0; j < g.size(); ++j) s += h[j] * g(j, i);
  r[i] -= s;
  return r;
}

RootVec apply_word(const Gcm& g, const std::vector<int>& word, RootVec v) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) v = reflect(g, *it, v);
  return v;
}

RootVec apply_word_coroot(const Gcm& g, const std::vector<int>& word,
                          RootVec h) {
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    h = reflect_coroot(g, *it, h);
  }
  return h;
}

WeylElt WeylElt::identity(const Gcm& g) { return from_word(g, {}); }

WeylElt WeylElt::from_word(const Gcm& g, const std::vector<int>& word) {
  const int n = g.size();
  WeylElt w;
  w.word = word;
  w.matrix.assign(n, std::vector<int>(n, 0));
  for (int j = 0; j < n; ++j) {
    RootVec col = apply_word(g, word, simple_root(n, j));
    for (int k = 0; k < n; ++k) w.matrix[k][j] = col[k];
  }
  return w;
}

RootVec WeylElt::apply(const RootVec& v) const {
  RootVec r(v.size(), 0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    for (std::size_t j = 0; j < v.size(); ++j) r[k] += matrix[k][j] * v[j];
  }
  return r;
}

WeylElt WeylElt::inverse(const Gcm& g) const {
  return from_word(g, std::vector<int>(word.rbegin(), word.rend()));
}

LengthResult length(const Gcm& g, const std::vector<int>& word) {
  const int n = g.size();
  std::vector<int> reduced;
  for (int letter : word) {
    if (letter < 0 || letter >= n) {
      throw ParseError("reflection index " + std::to_string(letter) +
                       " out of range");
    }
    RootVec image = apply_word(g, reduced, simple_root(n, letter));
    if (!is_negative(image)) {
      reduced.push_back(letter);
      continue;
    }
    // Exchange condition: drop the letter at which alpha_letter is carried
    // back onto a simple root.
    RootVec v = simple_root(n, letter);
    bool erased = false;
    for (int q = static_cast<int>(reduced.size()) - 1; q >= 0; --q) {
      if (v == simple_root(n, reduced[q])) {
        reduced.erase(reduced.begin() + q);
        erased = true;
        break;
      }
      v = reflect(g, reduced[q], v);
    }
    if (!erased) throw InternalInconsistency("exchange condition failed");
  }
  return {static_cast<int>(reduced.size()), reduced};
}

namespace {

bool support_connected(const Gcm& g, const RootVec& v) {
  std::vector<int> support;
  for (int i = 0; i < g.size(); ++i) {
    if (v[i] != 0) support.push_back(i);
  }
  if (support.empty()) return false;
  return components(g.principal(support)).size() == 1;
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int simple_index(const RootVec& v) {
  int idx = -1;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0) continue;
    if (v[k] != 1 || idx >= 0) return -1;
    idx = static_cast<int>(k);
  }
  return idx;
}

// Descends a positive vector; fills `letters` with the reflections applied.
// Returns the simple index reached, -1 if the vector left Q+, or -2 if it
// got stuck in the fundamental chamber (left in `v`).
int descend(const Gcm& g, RootVec& v, std::vector<int>& letters) {
  while (true) {
    int s = simple_index(v);
    if (s >= 0) return s;
    int chosen = -1;
    for (int i = 0; i < g.size(); ++i) {
      if (pairing(g, v, i) > 0) {
        chosen = i;
        break;
      }
    }
    if (chosen < 0) return -2;
    v = reflect(g, chosen, v);
    letters.push_back(chosen);
    if (!is_positive(v)) return -1;
  }
}

}  // namespace

RootKind root_kind(const Gcm& g, const RootVec& v) {
  if (is_negative(v)) return root_kind(g, negated(v));
  if (!is_positive(v)) return RootKind::NotRoot;
  RootVec w = v;
  std::vector<int> letters;
  int r = descend(g, w, letters);
  if (r >= 0) return RootKind::Real;
  if (r == -1) return RootKind::NotRoot;
  return support_connected(g, w) ? RootKind::Imaginary : RootKind::NotRoot;
}

RealRootDatum descend_real_root(const Gcm& g, const RootVec& v) {
  if (is_negative(v)) {
    RealRootDatum d = descend_real_root(g, negated(v));
    d.root = v;
    d.coroot = negated(d.coroot);
    d.word.push_back(d.index);
    return d;
  }
  if (!is_positive(v)) throw NotARoot(root_to_string(v) + " is not a root");
  RootVec w = v;
  std::vector<int> letters;
  int r = descend(g, w, letters);
  if (r < 0) throw NotARoot(root_to_string(v) + " is not a real root");
  RealRootDatum d;
  d.root = v;
  d.word = letters;
  d.index = r;
  d.coroot = apply_word_coroot(g, letters, simple_root(g.size(), r));
  return d;
}

std::vector<IntervalMember> interval(const Gcm& g, const RootVec& alpha,
                                     const RootVec& beta, int cap) {
  const int n = g.size();
  int k = -1, l = -1;
  long det = 0;
  for (int a = 0; a < n && det == 0; ++a) {
    for (int b = a + 1; b < n; ++b) {
      det = static_cast<long>(alpha[a]) * beta[b] -
            static_cast<long>(alpha[b]) * beta[a];
      if (det != 0) {
        k = a;
        l = b;
        break;
      }
    }
  }
  if (det == 0) return {};
  long imax = cap * (std::labs(beta[k]) + std::labs(beta[l])) / std::labs(det);
  long jmax =
      cap * (std::labs(alpha[k]) + std::labs(alpha[l])) / std::labs(det);
  std::vector<IntervalMember> out;
  for (long i = 1; i <= imax; ++i) {
    for (int sign : {1, -1}) {
      // Every coordinate of sign * (i alpha + j beta) must be >= 0.
      long lo = 1, hi = jmax;
      for (int c = 0; c < n && lo <= hi; ++c) {
        long a = sign * i * alpha[c], b = sign * beta[c];
        if (b > 0) {
          lo = std::max(lo, floor_div(-a + b - 1, b));
        } else if (b < 0) {
          hi = std::min(hi, floor_div(a, -b));
        } else if (a < 0) {
          hi = 0;
        }
      }
      // Within the cone |ht| = sign * ht, so the cap bounds j as well.
      long ha = sign * i * static_cast<long>(height(alpha));
      long hb = sign * static_cast<long>(height(beta));
      if (hb > 0) {
        hi = std::min(hi, floor_div(cap - ha, hb));
      } else if (hb < 0) {
        lo = std::max(lo, floor_div(ha - cap - hb - 1, -hb));
      } else if (ha > cap) {
        hi = 0;
      }
      for (long j = lo; j <= hi; ++j) {
        RootVec gamma =
            combine(static_cast<int>(i), alpha, static_cast<int>(j), beta);
        if (std::abs(height(gamma)) > cap) continue;
        if (sign < 0 ? !is_negative(gamma) : !is_positive(gamma)) continue;
        RootKind kind = root_kind(g, gamma);
        if (kind == RootKind::NotRoot) continue;
        out.push_back({gamma, static_cast<int>(i), static_cast<int>(j),
                       kind == RootKind::Real});
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const IntervalMember& a, const IntervalMember& b) {
              int ha = height(a.gamma), hb = height(b.gamma);
              if (ha != hb) return ha < hb;
              return std::make_pair(a.i, a.j) < std::make_pair(b.i, b.j);
            });
  return out;
}

void RootSystem::extend(int h) {
  if (h <= explored_) return;
  const int n = g_.size();
  std::map<RootVec, RealRootDatum> found;
  std::vector<RootVec> layer;
  for (int i = 0; i < n; ++i) {
    RealRootDatum d;
    d.root = simple_root(n, i);
    d.coroot = simple_root(n, i);
    d.index = i;
    found[d.root] = d;
    layer.push_back(d.root);
  }
  while (!layer.empty()) {
    std::map<RootVec, RealRootDatum> next;
    for (const auto& gamma : layer) {
      const RealRootDatum& dg = found.at(gamma);
      for (int j = 0; j < n; ++j) {
        if (pairing(g_, gamma, j) >= 0) continue;
        RootVec beta = reflect(g_, j, gamma);
        if (height(beta) > h || found.count(beta)) continue;
        RealRootDatum cand;
        cand.root = beta;
        cand.word.push_back(j);
        cand.word.insert(cand.word.end(), dg.word.begin(), dg.word.end());
        cand.index = dg.index;
        cand.coroot = reflect_coroot(g_, j, dg.coroot);
        auto it = next.find(beta);
        if (it == next.end()) {
          next.emplace(beta, std::move(cand));
        } else if (std::tie(cand.word, cand.index) <
                   std::tie(it->second.word, it->second.index)) {
          it->second = std::move(cand);
        }
      }
    }
    layer.clear();
    for (auto& [root, d] : next) {
      layer.push_back(root);
      found.emplace(root, std::move(d));
    }
  }
  positive_ = std::move(found);
  explored_ = h;
}

std::vector<RealRootDatum> RootSystem::real_roots(int h) {
  std::lock_guard lock(mutex_);
  extend(h);
  std::vector<RealRootDatum> out;
  for (const auto& [root, d] : positive_) {
    if (height(root) <= h) out.push_back(d);
  }
  std::sort(out.begin(), out.end(),
            [](const RealRootDatum& a, const RealRootDatum& b) {
              return height_lex_less(a.root, b.root);
            });
  return out;
}

RealRootDatum RootSystem::datum(const RootVec& v) {
  std::lock_guard lock(mutex_);
  if (is_negative(v)) {
    RealRootDatum d = datum(negated(v));
    d.root = v;
    d.coroot = negated(d.coroot);
    d.word.push_back(d.index);
    return d;
  }
  if (!is_positive(v)) throw NotARoot(root_to_string(v) + " is not a root");
  extend(height(v));
  auto it = positive_.find(v);
  if (it == positive_.end()) {
    throw NotARoot(root_to_string(v) + " is not a real root");
  }
  return it->second;
}

bool RootSystem::is_real_root(const RootVec& v) {
  return root_kind(g_, v) == RootKind::Real;
}

namespace {

RootVec positive_part(const RootVec& v) {
  return is_negative(v) ? negated(v) : v;
}

// Word in simple reflections for the reflection r_gamma = w s_i w^{-1}.
std::vector<int> reflection_word(const Gcm& g, const RootVec& gamma) {
  RealRootDatum d = descend_real_root(g, positive_part(gamma));
  std::vector<int> word = d.word;
  word.push_back(d.index);
  word.insert(word.end(), d.word.rbegin(), d.word.rend());
  return word;
}

RootVec reflect_by(const Gcm& g, const RootVec& x, const RootVec& gamma,
                   const RootVec& gamma_coroot) {
  int p = pairing(g, x, gamma_coroot);
  return combine(1, x, -p, gamma);
}

std::vector<int> concat_words(const Gcm& g,
                              const std::vector<std::vector<int>>& parts) {
  std::vector<int> all;
  for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return length(g, all).reduced;
}

struct Rank2Position {
  bool left;  // L family (first descent letter r1) or R family
  int k;      // number of descent steps
};

}  // namespace

std::optional<WeylElt> RootSystem::make_both_positive(const RootVec& alpha,
                                                      const RootVec& beta) {
  std::lock_guard lock(mutex_);
  const Gcm& g = g_;
  if (is_positive(alpha) && is_positive(beta)) return WeylElt::identity(g);
  if (negated(alpha) == beta) return std::nullopt;
  RealRootDatum da = descend_real_root(g, alpha);
  RealRootDatum db = descend_real_root(g, beta);
  if (alpha == beta) {
    // Only alpha matters; it is negative here, and r_alpha fixes that.
    return WeylElt::from_word(g, concat_words(g, {reflection_word(g, alpha)}));
  }
  int p = pairing(g, beta, da.coroot) * pairing(g, alpha, db.coroot);
  if (p < 0) {
    throw InternalInconsistency("real roots " + root_to_string(alpha) +
                                " and " + root_to_string(beta) +
                                " pair with opposite signs");
  }
  std::vector<int> ra = reflection_word(g, alpha);
  std::vector<int> rb = reflection_word(g, beta);

  if (p <= 3) {
    // Finite dihedral reflection subgroup: enumerate it.
    std::vector<std::vector<int>> elements;
    std::vector<IntMatrix> seen;
    std::vector<std::vector<int>> frontier{{}};
    while (!frontier.empty()) {
      std::vector<std::vector<int>> next;
      for (const auto& w : frontier) {
        WeylElt e = WeylElt::from_word(g, w);
        if (std::find(seen.begin(), seen.end(), e.matrix) != seen.end()) {
          continue;
        }
        seen.push_back(e.matrix);
        elements.push_back(w);
        if (seen.size() > 12) {
          throw SearchBudgetExceeded("dihedral subgroup larger than expected");
        }
        next.push_back(concat_words(g, {w, ra}));
        next.push_back(concat_words(g, {w, rb}));
      }
      frontier = std::move(next);
    }
    std::optional<std::vector<int>> best;
    for (const auto& w : elements) {
      if (!is_positive(apply_word(g, w, alpha)) ||
          !is_positive(apply_word(g, w, beta))) {
        continue;
      }
      if (!best || std::make_pair(w.size(), w) <
                       std::make_pair(best->size(), *best)) {
        best = w;
      }
    }
    if (!best) return std::nullopt;
    return WeylElt::from_word(g, *best);
  }

  // Infinite dihedral case: find the canonical simple roots of <r_a, r_b>.
  RootVec s1 = positive_part(alpha), s2 = positive_part(beta);
  RootVec c1 = descend_real_root(g, s1).coroot;
  RootVec c2 = descend_real_root(g, s2).coroot;
  for (int iter = 0;; ++iter) {
    if (iter > 100000) {
      throw SearchBudgetExceeded("canonical generator descent did not stop");
    }
    int k12 = pairing(g, s1, c2), k21 = pairing(g, s2, c1);
    if (k12 <= 0 && k21 <= 0) break;
    if ((k12 > 0) != (k21 > 0)) {
      throw InternalInconsistency("asymmetric pairing signs");
    }
    bool first_higher = height(s1) >= height(s2);
    RootVec& hi = first_higher ? s1 : s2;
    RootVec& hc = first_higher ? c1 : c2;
    const RootVec& lo = first_higher ? s2 : s1;
    const RootVec& lc = first_higher ? c2 : c1;
    RootVec moved = positive_part(reflect_by(g, hi, lo, lc));
    if (height(moved) >= height(hi)) {
      throw SearchBudgetExceeded("height did not drop in generator descent");
    }
    hi = moved;
    hc = descend_real_root(g, moved).coroot;
  }
  const int a12 = -pairing(g, s2, c1);  // a = -<s2, s1^vee>
  const int a21 = -pairing(g, s1, c2);  // b = -<s1, s2^vee>
  const int n = g.size();
  int k = -1, l = -1;
  long det = 0;
  for (int x = 0; x < n && det == 0; ++x) {
    for (int y = x + 1; y < n; ++y) {
      det = static_cast<long>(s1[x]) * s2[y] - static_cast<long>(s1[y]) * s2[x];
      if (det != 0) {
        k = x;
        l = y;
        break;
      }
    }
  }
  if (det == 0) throw InternalInconsistency("canonical roots are proportional");

  auto locate = [&](const RootVec& v) -> std::pair<Rank2Position, bool> {
    long x = (static_cast<long>(v[k]) * s2[l] - static_cast<long>(v[l]) * s2[k]);
    long y = (static_cast<long>(s1[k]) * v[l] - static_cast<long>(s1[l]) * v[k]);
    if (x % det != 0 || y % det != 0) {
      throw InternalInconsistency("root outside the rank-2 subsystem");
    }
    x /= det;
    y /= det;
    if (combine(static_cast<int>(x), s1, static_cast<int>(y), s2) != v) {
      throw InternalInconsistency("root outside the rank-2 subsystem");
    }
    bool positive = x >= 0 && y >= 0;
    if (!positive) {
      x = -x;
      y = -y;
    }
    int steps = 0;
    int first = 0;
    while (!((x == 1 && y == 0) || (x == 0 && y == 1))) {
      if (steps > 100000) throw SearchBudgetExceeded("rank-2 descent");
      if (2 * x - a12 * y > 0) {
        x = a12 * y - x;
        if (!first) first = 1;
      } else if (-a21 * x + 2 * y > 0) {
        y = a21 * x - y;
        if (!first) first = 2;
      } else {
        throw InternalInconsistency("imaginary vector in rank-2 descent");
      }
      if (x < 0 || y < 0) throw InternalInconsistency("rank-2 descent left Q+");
      ++steps;
    }
    if (!first) first = (x == 1) ? 1 : 2;
    return {{first == 1, steps}, positive};
  };

  // Admissible chamber positions n for which u_n^{-1} sends v positive.
  auto range_of = [&](const RootVec& v) {
    auto [pos, positive] = locate(v);
    long lo = LONG_MIN, hi = LONG_MAX;
    if (pos.left) {
      if (positive) hi = pos.k;
      else lo = pos.k + 1;
    } else {
      if (positive) lo = -pos.k;
      else hi = -pos.k - 1;
    }
    return std::make_pair(lo, hi);
  };
  auto [lo_a, hi_a] = range_of(alpha);
  auto [lo_b, hi_b] = range_of(beta);
  long lo = std::max(lo_a, lo_b), hi = std::min(hi_a, hi_b);
  if (lo > hi) return std::nullopt;
  long pos = 0;
  if (lo > 0) pos = lo;
  if (hi < 0) pos = hi;
  std::vector<int> r1 = reflection_word(g, s1), r2 = reflection_word(g, s2);
  std::vector<std::vector<int>> parts;
  // v = u_n^{-1}: u_n = r1 r2 r1 ... (n > 0) or r2 r1 r2 ... (n < 0)
  for (long m = std::labs(pos) - 1; m >= 0; --m) {
    bool use_r1 = (pos > 0) == (m % 2 == 0);
    parts.push_back(use_r1 ? r1 : r2);
  }
  WeylElt v = WeylElt::from_word(g, concat_words(g, parts));
  if (!is_positive(v.apply(alpha)) || !is_positive(v.apply(beta))) {
    throw InternalInconsistency("chamber computation produced a bad element");
  }
  return v;
}

bool RootSystem::is_prenilpotent(const RootVec& alpha, const RootVec& beta) {
  std::lock_guard lock(mutex_);
  if (negated(alpha) == beta) return false;
  bool exact = make_both_positive(alpha, beta).has_value() &&
               make_both_positive(negated(alpha), negated(beta)).has_value();
  if (alpha == beta) return exact;
  int cap = 8 * (std::abs(height(alpha)) + std::abs(height(beta)));
  auto members = interval(g_, alpha, beta, cap);
  bool finite_real = true;
  for (const auto& m : members) {
    if (!m.real || 2 * std::abs(height(m.gamma)) > cap) finite_real = false;
  }
  if (finite_real != exact) {
    throw Undecided("prenilpotency of " + root_to_string(alpha) + ", " +
                    root_to_string(beta) + ": chamber test says " +
                    (exact ? "yes" : "no") + ", interval test says " +
                    (finite_real ? "yes" : "no"));
  }
  return exact;
}

}  // namespace kacmoody
