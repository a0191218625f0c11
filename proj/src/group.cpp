#include "kacmoody/group.hpp"

#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "kacmoody/env.hpp"
#include "kacmoody/errors.hpp"

namespace kacmoody {

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::string index_string(const std::vector<int>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s;
}

}  // namespace

FieldSpec FieldSpec::prime(long p) {
  if (!is_prime(p)) throw ParseError("field characteristic " + std::to_string(p) + " is not prime");
  return FieldSpec{p};
}

Rational FieldSpec::from(const Rational& q) const {
  if (p == 0) return q;
  return Rational(reduce_mod(q, p));
}

Rational FieldSpec::inverse(const Rational& r) const {
  if (from(r) == 0) throw NotAUnit("scalar " + to_string(r) + " is not invertible in " + name());
  if (p == 0) return 1 / r;
  return Rational(inverse_mod(reduce_mod(r, p), p));
}

Rational FieldSpec::power(const Rational& r, int k) const {
  Rational base = k < 0 ? inverse(r) : from(r);
  Rational out = from(1);
  for (int n = 0; n < std::abs(k); ++n) out = from(out * base);
  return out;
}

std::string FieldSpec::name() const { return p == 0 ? "Q" : "Fp:" + std::to_string(p); }

FieldSpec parse_field(std::string_view text) {
  if (text == "Q") return FieldSpec::rationals();
  if (text.substr(0, 3) == "Fp:") {
    std::string digits(text.substr(3));
    char* end = nullptr;
    long p = std::strtol(digits.c_str(), &end, 10);
    if (digits.empty() || *end != '\0') throw ParseError("bad field '" + std::string(text) + "'");
    return FieldSpec::prime(p);
  }
  throw ParseError("field must be Q or Fp:<p>, got '" + std::string(text) + "'");
}

GroupLetter GroupLetter::x(RootVec root, Rational r) {
  GroupLetter l;
  l.kind = Kind::Unip;
  l.root = std::move(root);
  l.scalar = std::move(r);
  return l;
}

GroupLetter GroupLetter::t(int i, Rational r) {
  GroupLetter l;
  l.kind = Kind::Torus;
  l.index = i;
  l.scalar = std::move(r);
  return l;
}

GroupLetter GroupLetter::s(int i, Rational r) {
  GroupLetter l;
  l.kind = Kind::S;
  l.index = i;
  l.scalar = std::move(r);
  return l;
}

GroupWord parse_word(std::string_view text, int rank, const FieldSpec& f) {
  GroupWord w;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    auto fail = [&] { return ParseError("bad word letter '" + tok + "'"); };
    if (tok.size() < 4 || tok[1] != '[') throw fail();
    auto close = tok.find(']');
    if (close == std::string::npos) throw fail();
    std::string inside = tok.substr(2, close - 2);
    std::string rest = tok.substr(close + 1);
    std::optional<Rational> scalar;
    if (!rest.empty()) {
      if (rest.front() != '(' || rest.back() != ')') throw fail();
      scalar = f.from(parse_rational(rest.substr(1, rest.size() - 2)));
    }
    auto index = [&] {
      char* end = nullptr;
      long i = std::strtol(inside.c_str(), &end, 10);
      if (inside.empty() || *end != '\0' || i < 0 || i >= rank) throw fail();
      return static_cast<int>(i);
    };
    switch (tok[0]) {
      case 'x':
        if (!scalar) throw fail();
        w.push_back(GroupLetter::x(parse_root(inside, rank), *scalar));
        break;
      case 't':
        if (!scalar) throw fail();
        if (*scalar == 0) throw ParseError("torus scalar must be invertible in '" + tok + "'");
        w.push_back(GroupLetter::t(index(), *scalar));
        break;
      case 's':
        if (scalar && *scalar == 0) throw ParseError("s scalar must be invertible in '" + tok + "'");
        w.push_back(GroupLetter::s(index(), scalar.value_or(f.from(1))));
        break;
      default:
        throw fail();
    }
  }
  return w;
}

std::string format_word(const GroupWord& w) {
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    switch (l.kind) {
      case GroupLetter::Kind::Unip:
        out += "x[" + index_string(l.root) + "](" + to_string(l.scalar) + ")";
        break;
      case GroupLetter::Kind::Torus:
        out += "t[" + std::to_string(l.index) + "](" + to_string(l.scalar) + ")";
        break;
      case GroupLetter::Kind::S:
        out += "s[" + std::to_string(l.index) + "]";
        if (l.scalar != 1) out += "(" + to_string(l.scalar) + ")";
        break;
    }
  }
  return out;
}

GroupWord expand_s(const GroupWord& w, const FieldSpec& f) {
  GroupWord out;
  for (const auto& l : w) {
    if (l.kind != GroupLetter::Kind::S) {
      out.push_back(l);
      continue;
    }
    // padded to the rank in ad_apply
    RootVec a(static_cast<std::size_t>(l.index) + 1, 0);
    a[l.index] = 1;
    out.push_back(GroupLetter::x(a, f.from(l.scalar)));
    out.push_back(GroupLetter::x(negated(a), f.inverse(l.scalar)));
    out.push_back(GroupLetter::x(a, f.from(l.scalar)));
  }
  return out;
}

GroupWord inverse_word(const GroupWord& w, const FieldSpec& f) {
  GroupWord out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    switch (it->kind) {
      case GroupLetter::Kind::Unip:
        out.push_back(GroupLetter::x(it->root, f.from(-it->scalar)));
        break;
      case GroupLetter::Kind::Torus:
        out.push_back(GroupLetter::t(it->index, f.inverse(it->scalar)));
        break;
      case GroupLetter::Kind::S: {
        // s~_i(r)^{-1} = x_i(-r) x_{-i}(-1/r) x_i(-r)
        GroupWord three = expand_s({*it}, f);
        GroupWord inv = inverse_word(three, f);
        out.insert(out.end(), inv.begin(), inv.end());
        break;
      }
    }
  }
  return out;
}

GroupWord concat(const GroupWord& a, const GroupWord& b) {
  GroupWord out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

GroupWord torus_word(const RootVec& coroot, const Rational& r, const FieldSpec& f) {
  GroupWord out;
  for (std::size_t i = 0; i < coroot.size(); ++i)
    if (coroot[i] != 0) out.push_back(GroupLetter::t(static_cast<int>(i), f.power(r, coroot[i])));
  return out;
}

LieElt reduce(const LieElt& v, const FieldSpec& f) {
  if (!f.is_prime_field()) return v;
  LieElt out;
  for (const auto& [k, c] : v) {
    Rational r;
    try {
      r = f.from(c);
    } catch (const DeniedDenominator&) {
      throw IntegralityError("coefficient " + to_string(c) + " is not " +
                             std::to_string(f.p) + "-integral");
    }
    if (r != 0) out.emplace(k, r);
  }
  return out;
}

LieElt torus_adjoint(LieAlgebra& lie, const GroupWord& torus, const LieElt& v,
                     const FieldSpec& f) {
  LieElt out;
  for (const auto& [k, c] : v) {
    RootVec beta = lie.degree_root(k.deg);
    Rational scale = f.from(1);
    if (k.deg != 0) {
      for (const auto& l : torus) {
        if (l.kind != GroupLetter::Kind::Torus) throw InternalInconsistency("non-torus letter in torus_adjoint");
        scale = f.from(scale * f.power(l.scalar, pairing(lie.gcm(), beta, l.index)));
      }
    }
    Rational x = f.from(c * scale);
    if (x != 0) out.emplace(k, x);
  }
  return out;
}

LieElt lattice_to_basis(LieAlgebra& lie, const LieElt& v) {
  std::map<int, QVector> parts;
  for (const auto& [k, c] : v) {
    auto& part = parts[k.deg];
    if (part.empty()) part.assign(lie.dim(k.deg), Rational(0));
    part[k.idx] = c;
  }
  LieElt out;
  for (const auto& [deg, c] : parts) add_to(out, lie.from_lattice(deg, c));
  return out;
}

LieElt basis_to_lattice(LieAlgebra& lie, const LieElt& x) {
  std::set<int> degs;
  for (const auto& [k, c] : x) degs.insert(k.deg);
  LieElt out;
  for (int deg : degs) {
    QVector c = lie.lattice_coordinates(x, deg);
    for (std::size_t k = 0; k < c.size(); ++k)
      if (c[k] != 0) out.emplace(BasisKey{deg, static_cast<int>(k)}, c[k]);
  }
  return out;
}

LieElt ad_apply(LieAlgebra& lie, const GroupWord& w, const LieElt& v, const FieldSpec& f) {
  GroupWord word = expand_s(w, f);
  LieElt x = reduce(v, f);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (it->kind == GroupLetter::Kind::Torus) {
      x = torus_adjoint(lie, {*it}, x, f);
      continue;
    }
    RootVec root = it->root;
    if (static_cast<int>(root.size()) > lie.rank()) throw NotARoot(root_to_string(root) + " has the wrong rank");
    root.resize(lie.rank(), 0);
    LieElt e = lie.canonical_e(root);
    if (!f.is_prime_field()) {
      x = lie.ad_exp(e, it->scalar, x);
    } else {
      x = reduce(basis_to_lattice(lie, lie.ad_exp(e, it->scalar, lattice_to_basis(lie, x))), f);
    }
  }
  return x;
}

GroupWord random_word(LieAlgebra& lie, std::mt19937_64& rng, int len, const FieldSpec& f,
                      int root_height) {
  std::vector<RootVec> real;
  for (const auto& d : lie.roots().real_roots(root_height)) {
    real.push_back(d.root);
    real.push_back(negated(d.root));
  }
  auto scalar = [&](bool unit) {
    Rational r;
    do {
      r = f.from(frac(static_cast<long>(rng() % 9) - 4, f.is_prime_field() ? 1 : 1 + rng() % 3));
    } while (unit && r == 0);
    return r;
  };
  GroupWord w;
  for (int k = 0; k < len; ++k) {
    switch (rng() % 3) {
      case 0:
        w.push_back(GroupLetter::x(real[rng() % real.size()], scalar(false)));
        break;
      case 1:
        w.push_back(GroupLetter::t(static_cast<int>(rng() % lie.rank()), scalar(true)));
        break;
      default:
        w.push_back(GroupLetter::s(static_cast<int>(rng() % lie.rank()), scalar(true)));
    }
  }
  return w;
}

std::vector<BasisKey> basis_up_to(LieAlgebra& lie, int h) {
  std::vector<BasisKey> out = lie.basis(RootVec(lie.rank(), 0));
  auto roots = lie.positive_roots(h);
  for (const auto& r : roots)
    for (auto k : lie.basis(r.root)) out.push_back(k);
  for (const auto& r : roots)
    for (auto k : lie.basis(negated(r.root))) out.push_back(k);
  return out;
}

int weyl_sign(LieAlgebra& lie, int i, const RootVec& gamma) {
  LieElt image = lie.tilde_s(i, lie.canonical_e(gamma));
  LieElt target = lie.canonical_e(reflect(lie.gcm(), i, gamma));
  if (image == target) return 1;
  if (image == scaled(target, -1)) return -1;
  throw NotProportional("Ad(s~_" + std::to_string(i) + ") e_" + root_to_string(gamma) +
                        " is not a signed canonical vector");
}

RelationReport compare_words(LieAlgebra& lie, const GroupWord& lhs, const GroupWord& rhs,
                             const FieldSpec& f, int h) {
  RelationReport rep;
  for (auto k : basis_up_to(lie, h)) {
    LieElt v = LieAlgebra::basis_vector(k);
    ++rep.checked;
    if (ad_apply(lie, lhs, v, f) != ad_apply(lie, rhs, v, f)) {
      rep.holds = false;
      rep.witness = lie.basis_name(k);
      break;
    }
  }
  return rep;
}

namespace {

RelationReport labelled(RelationReport rep, std::string relation, std::string params) {
  rep.relation = std::move(relation);
  rep.params = std::move(params);
  return rep;
}

GroupWord s_inverse(int i, const FieldSpec& f) { return inverse_word({GroupLetter::s(i)}, f); }

}  // namespace

RelationReport check_r0(LieAlgebra& lie, const RootVec& alpha, const RootVec& beta,
                        const Rational& t, const Rational& u, const FieldSpec& f, int h) {
  CommutatorTable table = commutator_constants(lie, alpha, beta);
  GroupWord g{GroupLetter::x(alpha, f.from(t))}, k{GroupLetter::x(beta, f.from(u))};
  GroupWord lhs = concat(concat(inverse_word(g, f), inverse_word(k, f)), concat(g, k));
  GroupWord rhs;
  for (const auto& e : table.entries) {
    Rational c = f.from(Rational(e.c) * f.power(t, e.i) * f.power(u, e.j));
    rhs.push_back(GroupLetter::x(e.gamma, c));
  }
  return labelled(compare_words(lie, lhs, rhs, f, h), "R0",
                  "alpha=" + root_to_string(alpha) + " beta=" + root_to_string(beta) +
                      " t=" + to_string(t) + " u=" + to_string(u));
}

RelationReport check_r1(LieAlgebra& lie, int i, int j, const Rational& r, const Rational& t,
                        const FieldSpec& f, int h) {
  RootVec aj = simple_root(lie.rank(), j);
  GroupWord lhs{GroupLetter::t(i, f.from(r)), GroupLetter::x(aj, f.from(t)),
                GroupLetter::t(i, f.inverse(r))};
  GroupWord rhs{GroupLetter::x(aj, f.from(f.power(r, lie.gcm()(i, j)) * t))};
  return labelled(compare_words(lie, lhs, rhs, f, h), "R1",
                  "i=" + std::to_string(i) + " j=" + std::to_string(j) + " r=" + to_string(r) +
                      " t=" + to_string(t));
}

RelationReport check_r2(LieAlgebra& lie, int i, int j, const Rational& r, const FieldSpec& f,
                        int h) {
  GroupWord lhs = concat(concat({GroupLetter::s(i)}, {GroupLetter::t(j, f.from(r))}),
                         s_inverse(i, f));
  RootVec h_image = reflect_coroot(lie.gcm(), i, simple_root(lie.rank(), j));
  GroupWord rhs = torus_word(h_image, r, f);
  return labelled(compare_words(lie, lhs, rhs, f, h), "R2",
                  "i=" + std::to_string(i) + " j=" + std::to_string(j) + " r=" + to_string(r));
}

RelationReport check_r3(LieAlgebra& lie, int i, const Rational& r, const FieldSpec& f, int h) {
  GroupWord lhs{GroupLetter::t(i, f.from(r))};
  GroupWord rhs = concat(s_inverse(i, f), {GroupLetter::s(i, f.inverse(r))});
  return labelled(compare_words(lie, lhs, rhs, f, h), "R3",
                  "i=" + std::to_string(i) + " r=" + to_string(r));
}

RelationReport tilde_s_matrixcheck(LieAlgebra& lie, int i, const Rational& r, const FieldSpec& f,
                                   int h) {
  return check_r3(lie, i, r, f, h);
}

RelationReport check_r4(LieAlgebra& lie, int i, const RootVec& gamma,
                        const std::vector<Rational>& ts, const FieldSpec& f, int h) {
  int eps = weyl_sign(lie, i, gamma);
  RootVec image = reflect(lie.gcm(), i, gamma);
  RelationReport rep;
  rep.holds = true;
  for (const auto& t : ts) {
    GroupWord lhs = concat(concat({GroupLetter::s(i)}, {GroupLetter::x(gamma, f.from(t))}),
                           s_inverse(i, f));
    GroupWord rhs{GroupLetter::x(image, f.from(eps * t))};
    RelationReport one = compare_words(lie, lhs, rhs, f, h);
    rep.checked += one.checked;
    if (!one.holds) {
      rep.holds = false;
      rep.witness = one.witness.value_or("") + " at t=" + to_string(t);
      break;
    }
  }
  std::string tlist;
  for (const auto& t : ts) tlist += (tlist.empty() ? "" : ",") + to_string(t);
  rep = labelled(rep, "R4", "i=" + std::to_string(i) + " gamma=" + root_to_string(gamma) +
                                " t=" + tlist);
  rep.epsilon = eps;
  return rep;
}

std::vector<RelationReport> relation_sweep(LieAlgebra& lie, const std::vector<std::string>& kinds,
                                           const FieldSpec& f, int h, int root_height) {
  std::vector<RelationReport> out;
  int n = lie.rank();
  const std::vector<Rational> rs{2, 3, frac(1, 2)};
  auto wants = [&](const std::string& k) {
    for (const auto& x : kinds)
      if (x == k) return true;
    return false;
  };
  std::vector<RootVec> real;
  for (const auto& d : lie.roots().real_roots(root_height)) {
    real.push_back(d.root);
    real.push_back(negated(d.root));
  }
  for (const auto& kind : kinds) {
    if (kind != "R0" && kind != "R1" && kind != "R2" && kind != "R3" && kind != "R4")
      throw ParseError("unknown relation '" + kind + "'");
  }
  if (wants("R0")) {
    for (const auto& a : real)
      for (const auto& b : real) {
        if (a == b || a == negated(b) || !lie.roots().is_prenilpotent(a, b)) continue;
        out.push_back(check_r0(lie, a, b, 2, 3, f, h));
      }
  }
  if (wants("R1"))
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (const auto& r : rs) out.push_back(check_r1(lie, i, j, r, 3, f, h));
  if (wants("R2"))
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (const auto& r : rs) out.push_back(check_r2(lie, i, j, r, f, h));
  if (wants("R3"))
    for (int i = 0; i < n; ++i)
      for (const auto& r : rs) out.push_back(check_r3(lie, i, r, f, h));
  if (wants("R4"))
    for (int i = 0; i < n; ++i)
      for (const auto& g : real) out.push_back(check_r4(lie, i, g, {1, 2, 3}, f, h));
  return out;
}

}  // namespace kacmoody
