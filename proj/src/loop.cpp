#include "kacmoody/loop.hpp"

#include <cctype>
#include <sstream>

#include "kacmoody/errors.hpp"

namespace kacmoody {

Laurent Laurent::constant(const Rational& c) { return monomial(c, 0); }

Laurent Laurent::monomial(const Rational& c, int e) {
  Laurent out;
  if (c != 0) out.terms.emplace(e, c);
  return out;
}

Rational Laurent::coeff(int e) const {
  auto it = terms.find(e);
  return it == terms.end() ? Rational(0) : it->second;
}

Laurent add(const Laurent& a, const Laurent& b, const FieldSpec& f, const Rational& c) {
  Laurent out = a;
  for (const auto& [e, x] : b.terms) {
    Rational v = f.from(out.coeff(e) + c * x);
    if (v == 0)
      out.terms.erase(e);
    else
      out.terms[e] = v;
  }
  return out;
}

Laurent mul(const Laurent& a, const Laurent& b, const FieldSpec& f) {
  std::map<int, Rational> acc;
  for (const auto& [e1, x] : a.terms)
    for (const auto& [e2, y] : b.terms) acc[e1 + e2] += x * y;
  Laurent out;
  for (auto& [e, x] : acc) {
    Rational v = f.from(x);
    if (v != 0) out.terms.emplace(e, v);
  }
  return out;
}

Laurent reduce(const Laurent& a, const FieldSpec& f) { return add(Laurent{}, a, f); }

std::string to_string(const Laurent& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [e, c] : a.terms) {
    std::string coeff = to_string(c);
    bool neg = c < 0;
    if (neg) coeff.erase(0, 1);
    if (!out.empty() || neg) out += neg ? "-" : "+";
    if (e == 0) {
      out += coeff;
      continue;
    }
    if (coeff != "1") out += coeff;
    out += "t";
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

Laurent parse_laurent(std::string_view text, const FieldSpec& f) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ParseError("empty Laurent polynomial");
  Laurent out;
  std::size_t p = 0;
  auto fail = [&] { throw ParseError("bad Laurent polynomial '" + std::string(text) + "'"); };
  while (p < s.size()) {
    int sign = 1;
    if (s[p] == '+' || s[p] == '-') {
      sign = s[p] == '-' ? -1 : 1;
      ++p;
    } else if (p != 0) {
      fail();
    }
    std::size_t start = p;
    while (p < s.size() && (std::isdigit(static_cast<unsigned char>(s[p])) || s[p] == '/')) ++p;
    Rational c = 1;
    if (p > start) c = parse_rational(s.substr(start, p - start));
    if (p < s.size() && s[p] == '*') {
      if (p == start) fail();
      ++p;
      if (p >= s.size() || s[p] != 't') fail();
    }
    int e = 0;
    if (p < s.size() && s[p] == 't') {
      ++p;
      e = 1;
      if (p < s.size() && s[p] == '^') {
        ++p;
        std::size_t q = p;
        if (q < s.size() && (s[q] == '-' || s[q] == '+')) ++q;
        std::size_t digits = q;
        while (q < s.size() && std::isdigit(static_cast<unsigned char>(s[q]))) ++q;
        if (q == digits) fail();
        e = std::stoi(s.substr(p, q - p));
        p = q;
      }
    } else if (p == start) {
      fail();
    }
    out = add(out, Laurent::monomial(c, e), f, sign);
  }
  return out;
}

LaurentMat laurent_identity() {
  LaurentMat m;
  m[0][0] = m[1][1] = Laurent::constant(1);
  return m;
}

LaurentMat mat_mul(const LaurentMat& a, const LaurentMat& b, const FieldSpec& f) {
  LaurentMat out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) out[i][j] = add(out[i][j], mul(a[i][k], b[k][j], f), f);
  return out;
}

LaurentMat mat_add(const LaurentMat& a, const LaurentMat& b, const FieldSpec& f,
                   const Rational& c) {
  LaurentMat out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = add(a[i][j], b[i][j], f, c);
  return out;
}

Laurent det(const LaurentMat& m, const FieldSpec& f) {
  return add(mul(m[0][0], m[1][1], f), mul(m[0][1], m[1][0], f), f, -1);
}

LaurentMat sl2_inverse(const LaurentMat& m, const FieldSpec& f) {
  if (!(det(m, f) == Laurent::constant(1))) throw NotInGroup("determinant is not 1");
  LaurentMat out;
  out[0][0] = m[1][1];
  out[1][1] = m[0][0];
  out[0][1] = add(Laurent{}, m[0][1], f, -1);
  out[1][0] = add(Laurent{}, m[1][0], f, -1);
  return out;
}

LaurentMat reduce(const LaurentMat& m, const FieldSpec& f) {
  LaurentMat out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out[i][j] = reduce(m[i][j], f);
  return out;
}

std::string to_string(const LaurentMat& m) {
  return to_string(m[0][0]) + ";" + to_string(m[0][1]) + ";" + to_string(m[1][0]) + ";" +
         to_string(m[1][1]);
}

LaurentMat parse_laurent_mat(std::string_view text, const FieldSpec& f) {
  std::vector<std::string> parts;
  std::stringstream ss{std::string(text)};
  std::string item;
  while (std::getline(ss, item, ';')) parts.push_back(item);
  if (parts.size() != 4) throw ParseError("a Laurent matrix needs four ';'-separated entries");
  LaurentMat m;
  for (int k = 0; k < 4; ++k) m[k / 2][k % 2] = parse_laurent(parts[k], f);
  return m;
}

LoopElt loop_add(const LoopElt& a, const LoopElt& b, const FieldSpec& f, const Rational& c) {
  return {mat_add(a.m, b.m, f, c), f.from(a.central + c * b.central)};
}

LoopElt loop_bracket(const LoopElt& x, const LoopElt& y, const FieldSpec& f) {
  LoopElt out;
  out.m = mat_add(mat_mul(x.m, y.m, f), mat_mul(y.m, x.m, f), f, -1);
  // sum over m of m tr(a_m b_{-m})
  Rational c = 0;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (const auto& [e, a] : x.m[i][k].terms) c += e * a * y.m[k][i].coeff(-e);
  out.central = f.from(c);
  return out;
}

std::string to_string(const LoopElt& x) {
  std::string out = to_string(x.m);
  if (x.central != 0) out += " + " + to_string(x.central) + "K";
  return out;
}

namespace {

LoopElt entry(int i, int j, const Rational& c, int e) {
  LoopElt x;
  x.m[i][j] = Laurent::monomial(c, e);
  return x;
}

LoopElt diag(const Rational& a, const Rational& b, const Rational& central) {
  LoopElt x;
  x.m[0][0] = Laurent::constant(a);
  x.m[1][1] = Laurent::constant(b);
  x.central = central;
  return x;
}

const Gcm& affine_a1() {
  static const Gcm g = Gcm::validate({{2, -2}, {-2, 2}});
  return g;
}

}  // namespace

LoopOracle::LoopOracle(LieAlgebra& lie) : lie_(lie) {
  if (!(lie.gcm() == affine_a1()))
    throw OutOfFixture("the loop realization needs the matrix [[2,-2],[-2,2]]");
  const FieldSpec q;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      LoopElt fe = loop_bracket(f(i), e(j), q);
      if (!(fe == (i == j ? coroot(i) : LoopElt{})))
        throw InternalInconsistency("loop generators violate [f_i, e_j] = delta_ij alpha_i^vee");
      LoopElt he = loop_bracket(coroot(i), e(j), q);
      if (!(he == loop_add(LoopElt{}, e(j), q, lie.gcm()(i, j))))
        throw InternalInconsistency("loop generators violate [alpha_i^vee, e_j] = a_ij e_j");
    }
}

LoopElt LoopOracle::e(int i) const { return i == 1 ? entry(0, 1, 1, 0) : entry(1, 0, -1, 1); }

LoopElt LoopOracle::f(int i) const { return i == 1 ? entry(1, 0, -1, 0) : entry(0, 1, 1, -1); }

LoopElt LoopOracle::coroot(int i) const { return i == 1 ? diag(1, -1, 0) : diag(-1, 1, 1); }

LoopElt LoopOracle::realize_key(BasisKey k) {
  auto it = cache_.find(k);
  if (it != cache_.end()) return it->second;
  const FieldSpec q;
  LoopElt x;
  if (k.deg == 0) {
    x = coroot(k.idx);
  } else {
    // omega(e_i) = -f_i on the negative side
    auto gen = [&](int i) { return k.deg > 0 ? e(i) : loop_add(LoopElt{}, f(i), q, -1); };
    std::vector<int> w = lie_.basis_word(k);
    x = gen(w.back());
    for (int p = static_cast<int>(w.size()) - 2; p >= 0; --p) x = loop_bracket(gen(w[p]), x, q);
  }
  cache_.emplace(k, x);
  return x;
}

LoopElt LoopOracle::realize_lie(const LieElt& v) {
  const FieldSpec q;
  LoopElt out;
  for (const auto& [k, c] : v) out = loop_add(out, realize_key(k), q, c);
  return out;
}

std::optional<LieElt> LoopOracle::preimage(const LoopElt& x) {
  // split by root: E12 t^n in n delta + alpha_1, E21 t^n in n delta - alpha_1,
  // diagonal t^n in n delta
  std::map<RootVec, LoopElt> parts;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (const auto& [n, c] : x.m[i][j].terms) {
        int a1 = n + (i < j ? 1 : i > j ? -1 : 0);
        parts[RootVec{n, a1}].m[i][j].terms.emplace(n, c);
      }
  if (x.central != 0) parts[RootVec{0, 0}].central = x.central;

  LieElt out;
  for (const auto& [root, part] : parts) {
    if (!is_zero(root) && lie_.degree_id(root) == 0) return std::nullopt;
    std::vector<BasisKey> keys = lie_.basis(root);
    // coordinates: the 2x2 entries at each exponent, then K
    std::vector<LoopElt> images;
    std::map<std::tuple<int, int, int>, int> slot;
    auto collect = [&](const LoopElt& y) {
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (const auto& [n, c] : y.m[i][j].terms) slot.emplace(std::tuple{i, j, n}, 0);
    };
    collect(part);
    for (auto k : keys) {
      images.push_back(realize_key(k));
      collect(images.back());
    }
    int rows = 0;
    for (auto& [key, idx] : slot) idx = rows++;
    auto flatten = [&](const LoopElt& y) {
      QVector v(rows + 1, Rational(0));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (const auto& [n, c] : y.m[i][j].terms) v[slot.at({i, j, n})] = c;
      v[rows] = y.central;
      return v;
    };
    QMatrix a(rows + 1, QVector(keys.size(), Rational(0)));
    for (std::size_t c = 0; c < keys.size(); ++c) {
      QVector col = flatten(images[c]);
      for (int r = 0; r <= rows; ++r) a[r][c] = col[r];
    }
    auto sol = solve(a, flatten(part));
    if (!sol) return std::nullopt;
    for (std::size_t c = 0; c < keys.size(); ++c)
      if ((*sol)[c] != 0) out.emplace(keys[c], (*sol)[c]);
  }
  return out;
}

LaurentMat LoopOracle::realize_word(const GroupWord& w, const FieldSpec& f) {
  LaurentMat out = laurent_identity();
  for (const auto& l : expand_s(w, f)) {
    LaurentMat m;
    if (l.kind == GroupLetter::Kind::Torus) {
      Rational r = f.from(l.scalar), inv = f.inverse(l.scalar);
      m[0][0] = Laurent::constant(l.index == 1 ? r : inv);
      m[1][1] = Laurent::constant(l.index == 1 ? inv : r);
    } else {
      RootVec root = l.root;
      if (static_cast<int>(root.size()) > 2) throw NotARoot("root has more than two coordinates");
      root.resize(2, 0);
      LaurentMat x = reduce(realize_lie(lie_.canonical_e(root)).m, f);
      LaurentMat sq = mat_mul(x, x, f);
      for (const auto& row : sq)
        for (const auto& c : row)
          if (!c.is_zero()) throw InternalInconsistency("realized root vector is not square zero");
      m = mat_add(laurent_identity(), x, f, l.scalar);
    }
    out = mat_mul(out, m, f);
  }
  if (!(det(out, f) == Laurent::constant(1)))
    throw InternalInconsistency("realized word has determinant " + to_string(det(out, f)));
  return out;
}

RelationReport LoopOracle::ad_compare(const GroupWord& w, int h, const FieldSpec& f) {
  RelationReport rep;
  rep.relation = "ad_compare";
  rep.params = format_word(w) + " over " + f.name();
  LaurentMat m = realize_word(w, f);
  LaurentMat minv = sl2_inverse(m, f);
  auto to_basis = [&](const LieElt& v) {
    return f.is_prime_field() ? lattice_to_basis(lie_, v) : v;
  };
  for (auto k : basis_up_to(lie_, h)) {
    LieElt v = LieAlgebra::basis_vector(k);
    ++rep.checked;
    LaurentMat lhs = reduce(realize_lie(to_basis(ad_apply(lie_, w, v, f))).m, f);
    LaurentMat x = reduce(realize_lie(to_basis(v)).m, f);
    LaurentMat rhs = mat_mul(mat_mul(m, x, f), minv, f);
    if (!(lhs == rhs)) {
      rep.holds = false;
      rep.witness = lie_.basis_name(k);
      break;
    }
  }
  return rep;
}

namespace {

// 2 e + (j - i): every B-operation moves entries by a multiplier of weight >= 1
int weight(int i, int j, int e) { return 2 * e + (j - i); }

struct Shape {
  bool anti;
  int exponent;
  bool operator==(const Shape&) const = default;
};

Shape shape(const LaurentMat& m) {
  if (!m[0][1].is_zero()) return {true, m[0][1].valuation()};
  return {false, m[0][0].valuation()};
}

LaurentMat weyl_rep(int i) {
  LaurentMat m;
  if (i == 1) {
    m[0][1] = Laurent::constant(1);
    m[1][0] = Laurent::constant(-1);
  } else {
    m[0][1] = Laurent::monomial(1, -1);
    m[1][0] = Laurent::monomial(-1, 1);
  }
  return m;
}

bool is_monomial_matrix(const LaurentMat& m) {
  bool diag = m[0][1].is_zero() && m[1][0].is_zero();
  bool anti = m[0][0].is_zero() && m[1][1].is_zero();
  if (!diag && !anti) return false;
  for (const auto& row : m)
    for (const auto& c : row)
      if (!c.is_zero() && !c.is_monomial()) return false;
  return true;
}

// Word for a monomial matrix: the infinite dihedral group has exactly two
// alternating words of each positive length.
std::vector<int> word_of_monomial(const LaurentMat& m) {
  const FieldSpec q;
  Shape target = shape(m);
  int bound = 2 * std::abs(target.exponent) + 2;
  for (int len = 0; len <= bound; ++len)
    for (int first = 0; first < (len == 0 ? 1 : 2); ++first) {
      std::vector<int> w;
      LaurentMat p = laurent_identity();
      for (int k = 0; k < len; ++k) {
        w.push_back((first + k) % 2);
        p = mat_mul(p, weyl_rep(w.back()), q);
      }
      if (shape(p) == target) return w;
    }
  throw InternalInconsistency("no Weyl word for monomial matrix " + to_string(m));
}

bool legal_row_op(int target, int e) { return target == 0 ? e >= 0 : e >= 1; }
bool legal_col_op(int target, int e) { return target == 1 ? e >= 0 : e >= 1; }

}  // namespace

IwahoriInvariant iwahori_invariant(const LaurentMat& m) {
  std::optional<IwahoriInvariant> best;
  for (int i : {1, 0})
    for (int j : {0, 1}) {
      if (m[i][j].is_zero()) continue;
      int w = weight(i, j, m[i][j].valuation());
      if (!best || w < best->weight) best = IwahoriInvariant{w, i, j};
    }
  if (!best) throw NotInGroup("zero matrix");
  return *best;
}

std::vector<int> iwahori_bruhat(const LaurentMat& input, const FieldSpec& f) {
  LaurentMat m = reduce(input, f);
  if (!(det(m, f) == Laurent::constant(1))) throw NotInGroup("determinant is not 1");
  const IwahoriInvariant inv = iwahori_invariant(m);

  auto row_op = [&](int target, const Laurent& q) {
    for (int j = 0; j < 2; ++j) m[target][j] = add(m[target][j], mul(q, m[1 - target][j], f), f);
  };
  auto col_op = [&](int target, const Laurent& q) {
    for (int i = 0; i < 2; ++i) m[i][target] = add(m[i][target], mul(m[i][1 - target], q, f), f);
  };
  // -lead(x) / lead(y) t^(deg x - deg y)
  auto cancel_top = [&](const Laurent& x, const Laurent& y) {
    Rational c = f.from(-x.terms.rbegin()->second * f.inverse(y.terms.rbegin()->second));
    return Laurent::monomial(c, x.degree() - y.degree());
  };

  for (int step = 0; !is_monomial_matrix(m); ++step) {
    if (step > 100000) throw ResourceLimit("Iwahori reduction did not terminate");
    IwahoriInvariant piv = iwahori_invariant(m);
    int i = piv.row, j = piv.col, io = 1 - i, jo = 1 - j;
    const Laurent& p = m[i][j];
    if (p.is_monomial()) {
      // the pivot divides everything in its row and column within B
      Rational pinv = f.inverse(p.terms.begin()->second);
      Laurent qc, qr;
      for (const auto& [e, c] : m[io][j].terms)
        qc.terms.emplace(e - p.valuation(), f.from(-c * pinv));
      if (!qc.is_zero() && !legal_row_op(io, qc.valuation()))
        throw InternalInconsistency("illegal column clearing step");
      row_op(io, qc);
      for (const auto& [e, c] : m[i][jo].terms)
        qr.terms.emplace(e - p.valuation(), f.from(-c * pinv));
      if (!qr.is_zero() && !legal_col_op(jo, qr.valuation()))
        throw InternalInconsistency("illegal row clearing step");
      col_op(jo, qr);
      continue;
    }
    const Laurent& c = m[io][j];
    const Laurent& a = m[i][jo];
    if (!c.is_zero() && legal_row_op(i, p.degree() - c.degree())) {
      row_op(i, cancel_top(p, c));
    } else if (!a.is_zero() && legal_col_op(j, p.degree() - a.degree())) {
      col_op(j, cancel_top(p, a));
    } else if (!c.is_zero() && legal_row_op(io, c.degree() - p.degree())) {
      row_op(io, cancel_top(c, p));
    } else if (!a.is_zero() && legal_col_op(jo, a.degree() - p.degree())) {
      col_op(jo, cancel_top(a, p));
    } else {
      throw InternalInconsistency("Iwahori reduction is stuck at " + to_string(m));
    }
  }
  std::vector<int> w = word_of_monomial(m);
  IwahoriInvariant check = iwahori_invariant(m);
  if (check.weight != inv.weight || check.row != inv.row || check.col != inv.col)
    throw InternalInconsistency("Iwahori reduction changed the double coset invariant");
  return w;
}

}  // namespace kacmoody
