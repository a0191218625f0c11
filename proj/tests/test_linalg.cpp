#include <doctest.h>

#include <random>

#include "kacmoody/errors.hpp"
#include "kacmoody/linalg.hpp"

using namespace kacmoody;

namespace {

QMatrix multiply(const QMatrix& a, const QMatrix& b) {
  QMatrix out(a.size(), QVector(b[0].size(), Rational(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

QMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  QMatrix m(r, QVector(c));
  for (auto& row : m)
    for (auto& x : row) x = frac(static_cast<long>(rng() % 7) - 3, 1 + rng() % 4);
  return m;
}

}  // namespace

TEST_CASE("rationals") {
  CHECK(parse_rational("-3/6") == frac(-1, 2));
  CHECK(parse_rational("4") == 4);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
  CHECK(reduce_mod(frac(1, 2), 7) == 4);
  CHECK(reduce_mod(frac(-1, 1), 5) == 4);
  CHECK_THROWS_AS(reduce_mod(frac(1, 5), 5), DeniedDenominator);
  CHECK(inverse_mod(3, 7) * 3 % 7 == 1);
}

TEST_CASE("inverse, solve and nullspace") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + rng() % 4;
    QMatrix m = random_matrix(rng, n, n);
    auto inv = inverse(m);
    if (determinant(m) == 0) {
      CHECK_FALSE(inv);
      continue;
    }
    REQUIRE(inv);
    QMatrix id(n, QVector(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    CHECK(multiply(m, *inv) == id);
    CHECK(multiply(*inv, m) == id);

    QMatrix b = random_matrix(rng, n, 1);
    QVector bv;
    for (auto& row : b) bv.push_back(row[0]);
    auto x = solve(m, bv);
    REQUIRE(x);
    QMatrix xm;
    for (auto& v : *x) xm.push_back({v});
    CHECK(multiply(m, xm) == b);
  }
  QMatrix sing{{1, 2}, {2, 4}};
  CHECK(rank(sing) == 1);
  CHECK_FALSE(solve(sing, {1, 0}));
  auto ns = nullspace(sing, 2);
  REQUIRE(ns.size() == 1);
  CHECK(ns[0][0] + 2 * ns[0][1] == 0);
}

TEST_CASE("Hermite normal form") {
  auto h = hermite_normal_form({{2, 4}, {3, 6}, {0, 5}});
  // Lattice spanned by (1,2) and (0,5).
  CHECK(h == std::vector<ZVector>{{1, 2}, {0, 5}});
  CHECK(hermite_normal_form({{0, 0}}).empty());
  CHECK(hermite_normal_form({{-4}}) == std::vector<ZVector>{{4}});
}

TEST_CASE("echelon coordinates") {
  Echelon e(3);
  CHECK(e.insert({1, 1, 0}));
  CHECK(e.insert({0, 1, 1}));
  CHECK_FALSE(e.insert({1, 2, 1}));
  auto c = e.coordinates({2, 3, 1});
  REQUIRE(c);
  CHECK(*c == QVector{2, 1});
  CHECK_FALSE(e.coordinates({0, 0, 1}));
  CHECK(e.size() == 2);
}
