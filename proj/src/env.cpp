#include "kacmoody/env.hpp"

#include <algorithm>

#include "kacmoody/errors.hpp"

namespace kacmoody {

namespace {

Integer factorial(int n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

template <class Ring>
void accumulate(const Ring& r, std::map<Monomial, typename Ring::T>& acc,
                const Monomial& m, const typename Ring::T& c) {
  if (r.is_zero(c)) return;
  auto it = acc.find(m);
  if (it == acc.end()) {
    acc.emplace(m, c);
    return;
  }
  it->second = r.add(it->second, c);
  if (r.is_zero(it->second)) acc.erase(it);
}

}  // namespace

BiPoly bipoly_monomial(const Rational& c, int i, int j) {
  if (c == 0) return {};
  return {{{i, j}, c}};
}

std::string to_string(const BiPoly& p) {
  if (p.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : p) {
    if (!out.empty()) out += " + ";
    out += to_string(c);
    if (e.first) out += "*t^" + std::to_string(e.first);
    if (e.second) out += "*u^" + std::to_string(e.second);
  }
  return out;
}

BiPoly PolyRing::add(const BiPoly& a, const BiPoly& b) const {
  BiPoly out = a;
  for (const auto& [e, c] : b) {
    auto& slot = out[e];
    slot += c;
    if (slot == 0) out.erase(e);
  }
  return out;
}

BiPoly PolyRing::mul(const BiPoly& a, const BiPoly& b) const {
  BiPoly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::pair<int, int> e{ea.first + eb.first, ea.second + eb.second};
      auto& slot = out[e];
      slot += ca * cb;
      if (slot == 0) out.erase(e);
    }
  }
  return out;
}

Envelope::Envelope(LieAlgebra& lie, int truncation) : lie_(lie), n_(truncation) {
  for (const auto& r : lie_.positive_roots(n_)) {
    int id = lie_.degree_id(r.root);
    std::vector<LieElt> vecs;
    if (r.real) {
      vecs.push_back(lie_.canonical_e(r.root));
    } else {
      vecs = lie_.lattice_basis(r.root);
    }
    QMatrix m(lie_.dim(id), QVector(vecs.size()));
    for (std::size_t k = 0; k < vecs.size(); ++k) {
      QVector c = lie_.coordinates(vecs[k], id);
      for (std::size_t q = 0; q < c.size(); ++q) m[q][k] = c[q];
      by_root_[r.root].push_back(static_cast<int>(letters_.size()));
      letters_.push_back({r.root, kacmoody::height(r.root), r.real, vecs[k]});
    }
    auto inv = kacmoody::inverse(m);
    if (!inv) {
      throw InternalInconsistency("letters do not span degree " +
                                  root_to_string(r.root));
    }
    to_letters_[id] = std::move(*inv);
  }
}

int Envelope::real_letter(const RootVec& root) const {
  auto it = by_root_.find(root);
  if (it == by_root_.end() || !letters_[it->second[0]].real) {
    throw NotARoot(root_to_string(root) +
                   " is not a positive real root within the truncation");
  }
  return it->second[0];
}

int Envelope::height(const Monomial& m) const {
  int h = 0;
  for (const auto& [l, e] : m) h += letters_[l].height * e;
  return h;
}

const std::map<int, Rational>& Envelope::letter_bracket(int a, int b) {
  std::lock_guard lock(mutex_);
  auto key = std::make_pair(a, b);
  auto it = bracket_cache_.find(key);
  if (it != bracket_cache_.end()) return it->second;
  std::map<int, Rational> out;
  RootVec sum = kacmoody::add(letters_[a].root, letters_[b].root);
  int id = kacmoody::height(sum) <= n_ ? lie_.degree_id(sum) : 0;
  if (id) {
    QVector c = lie_.coordinates(lie_.bracket(letters_[a].vec, letters_[b].vec), id);
    const QMatrix& inv = to_letters_.at(id);
    const auto& ls = by_root_.at(sum);
    for (std::size_t k = 0; k < ls.size(); ++k) {
      Rational v = 0;
      for (std::size_t q = 0; q < c.size(); ++q) v += inv[k][q] * c[q];
      if (v != 0) out[ls[k]] = v;
    }
  }
  return bracket_cache_.emplace(key, std::move(out)).first->second;
}

const std::map<std::vector<int>, Rational>& Envelope::straighten(
    const std::vector<int>& w) {
  auto it = straight_cache_.find(w);
  if (it != straight_cache_.end()) return it->second;
  std::map<std::vector<int>, Rational> out;
  std::size_t k = 0;
  while (k + 1 < w.size() && w[k] <= w[k + 1]) ++k;
  if (k + 1 >= w.size()) {
    out[w] = 1;
  } else {
    // b a = a b + [b, a].
    std::vector<int> swapped = w;
    std::swap(swapped[k], swapped[k + 1]);
    out = straighten(swapped);
    const auto br = letter_bracket(w[k], w[k + 1]);
    for (const auto& [l, c] : br) {
      std::vector<int> shorter(w.begin(), w.begin() + k);
      shorter.push_back(l);
      shorter.insert(shorter.end(), w.begin() + k + 2, w.end());
      for (const auto& [sw, sc] : straighten(shorter)) {
        auto& slot = out[sw];
        slot += c * sc;
        if (slot == 0) out.erase(sw);
      }
    }
  }
  return straight_cache_.emplace(w, std::move(out)).first->second;
}

const std::map<Monomial, Rational>& Envelope::product(const Monomial& a,
                                                      const Monomial& b) {
  std::lock_guard lock(mutex_);
  auto key = std::make_pair(a, b);
  auto it = product_cache_.find(key);
  if (it != product_cache_.end()) return it->second;
  std::map<Monomial, Rational> out;
  if (height(a) + height(b) <= n_) {
    std::vector<int> w;
    Integer den = 1;
    for (const Monomial* m : {&a, &b}) {
      for (const auto& [l, e] : *m) {
        w.insert(w.end(), e, l);
        den *= factorial(e);
      }
    }
    for (const auto& [sw, c] : straighten(w)) {
      Monomial m;
      Integer num = 1;
      for (std::size_t s = 0; s < sw.size();) {
        std::size_t t = s;
        while (t < sw.size() && sw[t] == sw[s]) ++t;
        m.emplace_back(sw[s], static_cast<int>(t - s));
        num *= factorial(static_cast<int>(t - s));
        s = t;
      }
      Rational v = c * Rational(num, den);
      v.canonicalize();
      out[m] += v;
      if (out[m] == 0) out.erase(m);
    }
  }
  return product_cache_.emplace(key, std::move(out)).first->second;
}

template <class Ring>
UElt<Ring> Envelope::one(const Ring& r) const {
  UElt<Ring> x;
  x.terms[{}] = r.one();
  return x;
}

template <class Ring>
UElt<Ring> Envelope::multiply(const Ring& r, const UElt<Ring>& x,
                              const UElt<Ring>& y) {
  UElt<Ring> out;
  for (const auto& [ma, ca] : x.terms) {
    int ha = height(ma);
    for (const auto& [mb, cb] : y.terms) {
      if (ha + height(mb) > n_) continue;
      auto cab = r.mul(ca, cb);
      for (const auto& [m, k] : product(ma, mb)) {
        accumulate(r, out.terms, m, r.mul(cab, r.from(k)));
      }
    }
  }
  return out;
}

template <class Ring>
UElt<Ring> Envelope::add(const Ring& r, const UElt<Ring>& x,
                         const UElt<Ring>& y) const {
  UElt<Ring> out = x;
  for (const auto& [m, c] : y.terms) accumulate(r, out.terms, m, c);
  return out;
}

template <class Ring>
UElt<Ring> Envelope::exp_letter(const Ring& r, int letter,
                                const typename Ring::T& c) const {
  UElt<Ring> out = one(r);
  auto power = r.one();
  for (int k = 1; k * letters_[letter].height <= n_; ++k) {
    power = r.mul(power, c);
    accumulate(r, out.terms, Monomial{{letter, k}}, power);
  }
  return out;
}

template <class Ring>
UElt<Ring> Envelope::inverse(const Ring& r, const UElt<Ring>& x) {
  auto it = x.terms.find(Monomial{});
  if (it == x.terms.end() || it->second != r.one()) {
    throw NotAUnit("constant term is not 1");
  }
  UElt<Ring> neg;
  for (const auto& [m, c] : x.terms) {
    if (!m.empty()) accumulate(r, neg.terms, m, r.mul(r.from(-1), c));
  }
  UElt<Ring> sum = one(r), term = one(r);
  for (int k = 1; k <= n_; ++k) {
    term = multiply(r, term, neg);
    if (term.terms.empty()) break;
    sum = add(r, sum, term);
  }
  return sum;
}

template <class Ring>
UElt<Ring> Envelope::expand(const Ring& r, const std::vector<int>& order,
                            const std::vector<typename Ring::T>& coeffs) {
  UElt<Ring> out = one(r);
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (r.is_zero(coeffs[k])) continue;
    out = multiply(r, out, exp_letter(r, order[k], coeffs[k]));
  }
  return out;
}

template <class Ring>
std::optional<std::vector<typename Ring::T>> Envelope::factor(
    const Ring& r, const UElt<Ring>& x, const std::vector<int>& order) {
  std::vector<typename Ring::T> c(order.size(), r.zero());
  int top = 0;
  for (int l : order) top = std::max(top, letters_[l].height);
  for (int h = 1; h <= std::min(top, n_); ++h) {
    UElt<Ring> p = expand(r, order, c);
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (letters_[order[k]].height != h) continue;
      Monomial m{{order[k], 1}};
      auto xv = x.terms.count(m) ? x.terms.at(m) : r.zero();
      auto pv = p.terms.count(m) ? p.terms.at(m) : r.zero();
      c[k] = r.add(xv, r.mul(r.from(-1), pv));
    }
  }
  if (!(expand(r, order, c) == x)) return std::nullopt;
  return c;
}

#define KACMOODY_INSTANTIATE(R)                                                \
  template UElt<R> Envelope::one(const R&) const;                              \
  template UElt<R> Envelope::multiply(const R&, const UElt<R>&,                \
                                      const UElt<R>&);                         \
  template UElt<R> Envelope::add(const R&, const UElt<R>&, const UElt<R>&)     \
      const;                                                                   \
  template UElt<R> Envelope::exp_letter(const R&, int, const R::T&) const;     \
  template UElt<R> Envelope::inverse(const R&, const UElt<R>&);                \
  template UElt<R> Envelope::expand(const R&, const std::vector<int>&,         \
                                    const std::vector<R::T>&);                 \
  template std::optional<std::vector<R::T>> Envelope::factor(                  \
      const R&, const UElt<R>&, const std::vector<int>&);

KACMOODY_INSTANTIATE(RationalRing)
KACMOODY_INSTANTIATE(PolyRing)
KACMOODY_INSTANTIATE(PrimeField)
#undef KACMOODY_INSTANTIATE

int transport_sign(LieAlgebra& lie, const std::vector<int>& word,
                   const RootVec& gamma) {
  LieElt v = lie.canonical_e(gamma);
  for (auto l = word.rbegin(); l != word.rend(); ++l) v = lie.tilde_s(*l, v);
  LieElt target = lie.canonical_e(apply_word(lie.gcm(), word, gamma));
  if (v == target) return 1;
  if (v == scaled(target, -1)) return -1;
  throw NotProportional("Ad of the Weyl lift does not map e_" +
                        root_to_string(gamma) + " to +-e_" +
                        root_to_string(apply_word(lie.gcm(), word, gamma)));
}

int commutator_truncation(const RootVec& alpha, const RootVec& beta,
                          const std::vector<IntervalMember>& members) {
  int n = height(alpha) + height(beta);
  for (const auto& m : members) n = std::max(n, height(m.gamma));
  return n;
}

CommutatorTable commutator_constants(LieAlgebra& lie, const RootVec& alpha,
                                     const RootVec& beta) {
  RootSystem& rs = lie.roots();
  const Gcm& g = lie.gcm();
  if (!rs.is_real_root(alpha) || !rs.is_real_root(beta)) {
    throw NotARoot("commutator constants need two real roots");
  }
  if (alpha == beta || alpha == negated(beta) || !rs.is_prenilpotent(alpha, beta)) {
    throw NotPrenilpotent(root_to_string(alpha) + ", " + root_to_string(beta) +
                          " is not a prenilpotent pair");
  }
  CommutatorTable table;
  table.alpha = alpha;
  table.beta = beta;
  if (!is_positive(alpha) || !is_positive(beta)) {
    auto v = rs.make_both_positive(alpha, beta);
    if (!v) throw InternalInconsistency("prenilpotent pair without a positive chamber");
    table.transport = v->word;
    table.eps_alpha = transport_sign(lie, table.transport, alpha);
    table.eps_beta = transport_sign(lie, table.transport, beta);
  }
  RootVec ap = apply_word(g, table.transport, alpha);
  RootVec bp = apply_word(g, table.transport, beta);

  int cap = 8 * (std::abs(height(alpha)) + std::abs(height(beta)));
  auto members = interval(g, alpha, beta, cap);
  std::vector<IntervalMember> primed;
  for (const auto& m : members) {
    primed.push_back({apply_word(g, table.transport, m.gamma), m.i, m.j, m.real});
  }
  Envelope env(lie, commutator_truncation(ap, bp, primed));
  std::vector<int> order;
  for (const auto& m : primed) order.push_back(env.real_letter(m.gamma));

  PolyRing r;
  int la = env.real_letter(ap), lb = env.real_letter(bp);
  auto x = env.exp_letter(r, la, bipoly_monomial(1, 1, 0));
  auto y = env.exp_letter(r, lb, bipoly_monomial(1, 0, 1));
  auto comm = env.multiply(
      r, env.multiply(r, env.inverse(r, x), env.inverse(r, y)),
      env.multiply(r, x, y));
  auto coeffs = env.factor(r, comm, order);
  if (!coeffs) {
    throw InternalInconsistency("commutator of " + root_to_string(alpha) + ", " +
                                root_to_string(beta) +
                                " is not a product over the interval");
  }
  for (std::size_t k = 0; k < members.size(); ++k) {
    const auto& m = members[k];
    const BiPoly& p = (*coeffs)[k];
    Rational c = 0;
    if (!p.empty()) {
      if (p.size() != 1 || p.begin()->first != std::make_pair(m.i, m.j)) {
        throw InternalInconsistency("coefficient at " + root_to_string(m.gamma) +
                                    " is " + to_string(p));
      }
      c = p.begin()->second;
    }
    if (!is_integer(c)) {
      throw NonIntegralConstant("C at " + root_to_string(m.gamma) + " is " +
                                to_string(c));
    }
    int sign = 1;
    if (!table.transport.empty()) {
      sign = transport_sign(lie, table.transport, m.gamma);
      if (m.i % 2 && table.eps_alpha < 0) sign = -sign;
      if (m.j % 2 && table.eps_beta < 0) sign = -sign;
    }
    table.entries.push_back({m.gamma, m.i, m.j, Integer(c.get_num()) * sign});
  }
  return table;
}

std::pair<UElt<PolyRing>, UElt<PolyRing>> commutator_sides(
    Envelope& env, const CommutatorTable& table) {
  if (!is_positive(table.alpha) || !is_positive(table.beta)) {
    throw NotPrenilpotent("commutator_sides needs a positive pair");
  }
  PolyRing r;
  auto x = env.exp_letter(r, env.real_letter(table.alpha), bipoly_monomial(1, 1, 0));
  auto y = env.exp_letter(r, env.real_letter(table.beta), bipoly_monomial(1, 0, 1));
  auto left = env.multiply(
      r, env.multiply(r, env.inverse(r, x), env.inverse(r, y)),
      env.multiply(r, x, y));
  std::vector<int> order;
  std::vector<BiPoly> coeffs;
  for (const auto& e : table.entries) {
    if (height(e.gamma) > env.truncation()) continue;
    order.push_back(env.real_letter(e.gamma));
    coeffs.push_back(bipoly_monomial(Rational(e.c), e.i, e.j));
  }
  return {left, env.expand(r, order, coeffs)};
}

std::vector<NormalFormTerm> uma_normal_form(Envelope& env,
                                            const UElt<RationalRing>& x) {
  RationalRing r;
  auto it = x.terms.find(Monomial{});
  if (it == x.terms.end() || it->second != 1) {
    throw NotAUnit("constant term is not 1");
  }
  std::vector<int> order(env.letters().size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
  auto c = env.factor(r, x, order);
  if (!c) throw NotAUnit("unit is not a product of root exponentials");
  std::vector<NormalFormTerm> out;
  for (std::size_t k = 0; k < order.size(); ++k) out.push_back({order[k], (*c)[k]});
  return out;
}

}  // namespace kacmoody
