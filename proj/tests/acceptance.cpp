// One line per acceptance criterion: PASS/FAIL, what was checked, wall time.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "kacmoody/env.hpp"
#include "kacmoody/errors.hpp"
#include "kacmoody/gcm.hpp"
#include "kacmoody/group.hpp"
#include "kacmoody/lie.hpp"
#include "kacmoody/loop.hpp"
#include "kacmoody/weyl.hpp"

using namespace kacmoody;

namespace {

const Gcm kA2 = Gcm::validate({{2, -1}, {-1, 2}});
const Gcm kB2 = Gcm::validate({{2, -2}, {-1, 2}});
const Gcm kG2 = Gcm::validate({{2, -1}, {-3, 2}});
const Gcm kA1t = Gcm::validate({{2, -2}, {-2, 2}});
const Gcm kH3 = Gcm::validate({{2, -3}, {-3, 2}});

const FieldSpec kQ = FieldSpec::rationals();
const FieldSpec kF5 = FieldSpec::prime(5);
const FieldSpec kF7 = FieldSpec::prime(7);

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int n, const char* title, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!out.pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", n, title, out.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string count(const char* what, long n) { return std::to_string(n) + " " + what; }

// 1. the affine root table against the explicit list n delta +- alpha_1, n delta
Outcome affine_roots() {
  LieAlgebra lie(kA1t, 13);
  std::set<std::pair<RootVec, bool>> expect, got;
  for (int n = 0; 2 * n + 1 <= 13; ++n) expect.insert({{n, n + 1}, true});
  for (int n = 1; 2 * n - 1 <= 13; ++n) expect.insert({{n, n - 1}, true});
  for (int n = 1; 2 * n <= 13; ++n) expect.insert({{n, n}, false});
  bool mult_one = true;
  for (const auto& r : lie.positive_roots(13)) {
    got.insert({r.root, r.real});
    mult_one = mult_one && r.mult == 1;
  }
  return {got == expect && mult_one,
          count("roots", static_cast<long>(got.size())) + ", expected " +
              std::to_string(expect.size()) + (mult_one ? ", all mult 1" : ", multiplicity > 1 found")};
}

// 2. A2 is finite: three positive roots, nothing above height 2
Outcome a2_finite() {
  LieAlgebra lie(kA2, 10);
  int dim = 0, top = 0;
  for (const auto& r : lie.positive_roots(10)) {
    dim += r.mult;
    top = std::max(top, height(r.root));
  }
  return {dim == 3 && top == 2, "dim n+ = " + std::to_string(dim) + ", max height " + std::to_string(top)};
}

// 3. the one structure constant of A2
Outcome a2_constant() {
  LieAlgebra lie(kA2);
  auto t = commutator_constants(lie, {1, 0}, {0, 1});
  bool ok = t.entries.size() == 1 && t.entries[0].gamma == RootVec{1, 1} && t.entries[0].i == 1 &&
            t.entries[0].j == 1 && t.entries[0].c == 1;
  return {ok, ok ? "C11 = 1" : "unexpected table"};
}

// 4. R0 as an identity in the truncated algebra over Q[t, u]
Outcome r0_identity() {
  int pairs = 0, bad = 0;
  for (const Gcm* g : {&kA2, &kB2, &kG2, &kA1t}) {
    LieAlgebra lie(*g);
    auto roots = lie.roots().real_roots(3);
    for (const auto& a : roots)
      for (const auto& b : roots) {
        if (a.root == b.root || height(a.root) + height(b.root) > 4) continue;
        if (!lie.roots().is_prenilpotent(a.root, b.root)) continue;
        auto table = commutator_constants(lie, a.root, b.root);
        int top = height(a.root) + height(b.root);
        for (const auto& e : table.entries) top = std::max(top, height(e.gamma));
        if (top > 4) continue;
        Envelope env(lie, top);
        auto [lhs, rhs] = commutator_sides(env, table);
        ++pairs;
        if (!(lhs == rhs)) ++bad;
      }
  }
  return {bad == 0 && pairs > 0, count("prenilpotent pairs", pairs) + ", " + count("failures", bad)};
}

// 5. R1-R3 operator sweeps, R4 with its measured sign
Outcome relations() {
  int instances = 0, bad = 0;
  std::set<int> eps;
  std::string first;
  auto take = [&](const RelationReport& rep, const FieldSpec& f) {
    ++instances;
    if (rep.epsilon) eps.insert(*rep.epsilon);
    if (!rep.holds) {
      ++bad;
      if (first.empty()) first = rep.relation + " " + rep.params + " over " + f.name();
    }
  };
  for (const FieldSpec& f : {kQ, kF5, kF7}) {
    LieAlgebra a1t(kA1t);
    for (const auto& rep : relation_sweep(a1t, {"R1", "R2", "R3", "R4"}, f, 6)) take(rep, f);
    LieAlgebra h3(kH3);
    for (const auto& rep : relation_sweep(h3, {"R1", "R2", "R3"}, f, 6)) take(rep, f);
    // R4 on the indefinite matrix: simple gamma, full height for i == j,
    // Cartan part for i != j
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int sign : {1, -1}) {
          RootVec gamma = simple_root(2, j);
          if (sign < 0) gamma = negated(gamma);
          take(check_r4(h3, i, gamma, {1, 2, 3}, f, i == j ? 6 : 0), f);
        }
  }
  std::string signs;
  for (int e : eps) signs += (signs.empty() ? "" : ",") + std::to_string(e);
  return {bad == 0, count("instances", instances) + ", eps seen {" + signs + "}" +
                        (first.empty() ? "" : ", first failure " + first)};
}

// 6. intrinsic adjoint action against loop matrix conjugation
Outcome oracle() {
  LieAlgebra lie(kA1t);
  LoopOracle o(lie);
  std::mt19937_64 rng(20240607);
  int bad = 0, vectors = 0;
  std::string first;
  for (int k = 0; k < 100; ++k) {
    GroupWord w = random_word(lie, rng, 1 + static_cast<int>(rng() % 12), kF7);
    auto rep = o.ad_compare(w, 6, kF7);
    vectors += rep.checked;
    if (!rep.holds) {
      ++bad;
      if (first.empty()) first = format_word(w) + " at " + rep.witness.value_or("?");
    }
  }
  return {bad == 0, "100 words, " + count("vector checks", vectors) + ", " + count("failures", bad) +
                        (first.empty() ? "" : ", first " + first)};
}

UElt<RationalRing> random_product(Envelope& env, std::mt19937_64& rng, int factors) {
  RationalRing r;
  std::vector<int> reals;
  for (std::size_t k = 0; k < env.letters().size(); ++k)
    if (env.letters()[k].real) reals.push_back(static_cast<int>(k));
  auto x = env.one(r);
  for (int k = 0; k < factors; ++k) {
    int l = reals[rng() % reals.size()];
    x = env.multiply(r, x, env.exp_letter(r, l, frac(static_cast<long>(rng() % 9) - 4, 1 + rng() % 3)));
  }
  return x;
}

// 7. normal form round trip and uniqueness of the exponents
Outcome normal_form() {
  RationalRing r;
  std::mt19937_64 rng(77);
  int products = 0, bad = 0;
  for (const Gcm* g : {&kA2, &kA1t}) {
    LieAlgebra lie(*g);
    Envelope env(lie, 6);
    std::vector<int> order(env.letters().size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
    for (int trial = 0; trial < 100; ++trial) {
      auto x = random_product(env, rng, 1 + static_cast<int>(rng() % 6));
      std::vector<Rational> lam;
      for (const auto& term : uma_normal_form(env, x)) lam.push_back(term.lambda);
      bool ok = env.expand(r, order, lam) == x;
      for (std::size_t k = 0; ok && k < lam.size(); ++k) {
        auto bumped = lam;
        bumped[k] += 1;
        ok = !(env.expand(r, order, bumped) == x);
      }
      ++products;
      if (!ok) ++bad;
    }
  }
  return {bad == 0, count("products", products) + ", " + count("failures", bad)};
}

// 8. Iwahori-Bruhat cell of every s~-word of length <= 8
Outcome bruhat() {
  LieAlgebra lie(kA1t);
  LoopOracle o(lie);
  int words = 0, bad = 0;
  for (int len = 0; len <= 8; ++len)
    for (int code = 0; code < (1 << len); ++code) {
      std::vector<int> letters;
      GroupWord w;
      for (int k = 0; k < len; ++k) {
        letters.push_back((code >> k) & 1);
        w.push_back(GroupLetter::s(letters.back()));
      }
      ++words;
      if (iwahori_bruhat(o.realize_word(w, kQ), kQ) != length(kA1t, letters).reduced) ++bad;
    }
  return {bad == 0, count("words", words) + ", " + count("failures", bad)};
}

// 9. classification sweep; 2x2 also against a12 a21 <=> 4
Outcome classification() {
  int checked = 0, bad = 0;
  for (int a = -5; a <= 0; ++a)
    for (int b = -5; b <= 0; ++b) {
      if ((a == 0) != (b == 0)) continue;
      Gcm g = Gcm::validate({{2, a}, {b, 2}});
      for (const auto& block : components(g)) {
        ++checked;
        ClassKind k = classify(g, block);
        if (k != vinberg_classify(g.principal(block))) ++bad;
        if (block.size() == 2) {
          int p = a * b;
          ClassKind want = p < 4 ? ClassKind::Finite : p == 4 ? ClassKind::Affine : ClassKind::Indefinite;
          if (k != want) ++bad;
        }
      }
    }
  int off[6];
  const int pos[6][2] = {{0, 1}, {1, 0}, {0, 2}, {2, 0}, {1, 2}, {2, 1}};
  for (int code = 0; code < 4096; ++code) {
    int c = code;
    for (int& v : off) {
      v = -(c % 4);
      c /= 4;
    }
    std::vector<std::vector<int>> rows{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}};
    bool symmetric_zeros = true;
    for (int k = 0; k < 6; ++k) rows[pos[k][0]][pos[k][1]] = off[k];
    for (int k = 0; k < 6; k += 2) symmetric_zeros = symmetric_zeros && ((off[k] == 0) == (off[k + 1] == 0));
    if (!symmetric_zeros) continue;
    Gcm g = Gcm::validate(rows);
    if (components(g).size() != 1) continue;
    ++checked;
    if (classify(g, {0, 1, 2}) != vinberg_classify(g)) ++bad;
  }
  return {bad == 0, count("blocks", checked) + ", " + count("disagreements", bad)};
}

// 10. Jacobi, antisymmetry and grading on basis triples of total height <= 6
Outcome lie_invariants() {
  long pairs = 0, triples = 0, bad = 0;
  for (const Gcm* g : {&kA2, &kB2, &kG2, &kA1t, &kH3}) {
    LieAlgebra lie(*g);
    auto keys = basis_up_to(lie, 6);
    auto ht = [&](BasisKey k) { return std::abs(height(lie.degree_root(k.deg))); };
    for (auto a : keys)
      for (auto b : keys) {
        if (ht(a) + ht(b) > 6) continue;
        LieElt x = LieAlgebra::basis_vector(a), y = LieAlgebra::basis_vector(b);
        LieElt xy = lie.bracket(x, y);
        ++pairs;
        if (!(xy == scaled(lie.bracket(y, x), -1))) ++bad;
        RootVec d = add(lie.degree_root(a.deg), lie.degree_root(b.deg));
        for (const auto& [k, c] : xy)
          if (lie.degree_root(k.deg) != d) ++bad;
        for (auto c : keys) {
          if (ht(a) + ht(b) + ht(c) > 6) continue;
          LieElt z = LieAlgebra::basis_vector(c);
          ++triples;
          if (!(lie.bracket(x, lie.bracket(y, z)) + lie.bracket(y, lie.bracket(z, x)) + lie.bracket(z, xy))
                   .empty())
            ++bad;
        }
      }
  }
  return {bad == 0, count("pairs", pairs) + ", " + count("triples", triples) + ", " + count("failures", bad)};
}

}  // namespace

int main() {
  criterion(1, "affine A1 root table to height 13", affine_roots);
  criterion(2, "A2 finiteness", a2_finite);
  criterion(3, "A2 commutator constant", a2_constant);
  criterion(4, "R0 in the truncated algebra", r0_identity);
  criterion(5, "R1-R4 operator sweeps over Q, F5, F7", relations);
  criterion(6, "loop oracle, 100 random words over F7", oracle);
  criterion(7, "normal form round trip", normal_form);
  criterion(8, "Iwahori-Bruhat on Weyl words", bruhat);
  criterion(9, "classification sweep", classification);
  criterion(10, "Jacobi, antisymmetry, grading", lie_invariants);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
