#include <doctest.h>

#include <algorithm>
#include <set>

#include "hamvt/geometry.hpp"

using namespace hamvt;

TEST_CASE("matrix basics over F_p") {
  PrimeField f(5);
  Matrix a{{1, 2, 0}, {0, 1, 3}, {4, 0, 2}};
  auto inv = matrix_inverse(f, a);
  CHECK(matrix_mul(f, a, inv) == identity_matrix(3));
  CHECK(transpose(transpose(a)) == a);
  // 1*2 - 2*(0-12) = 26
  CHECK(determinant(f, a) == 1);
  CHECK(determinant(f, {{1, 2, 0}, {0, 1, 3}, {4, 0, 1}}) == 0);
  Matrix b{{2, 1}, {1, 1}};
  CHECK(determinant(f, b) == 1);
  CHECK_THROWS(matrix_inverse(f, Matrix{{1, 2}, {2, 4}}));
  CHECK(rank(f, {{1, 2, 3}, {2, 4, 1}, {0, 0, 1}}) == 2);
  CHECK(normalize(f, {0, 3, 1}) == Vec{0, 1, 2});
  CHECK(decode(f, 3, encode(f, {4, 0, 2})) == Vec{4, 0, 2});
  CHECK(block_diagonal({b, identity_matrix(1)}).size() == 3);
}

TEST_CASE("point and subspace counts") {
  CHECK(projective_points(PrimeField(2), 3).size() == 7);
  CHECK(projective_points(PrimeField(3), 4).size() == 40);
  // Gaussian binomials [4 2]_3 and [5 2]_2
  CHECK(two_spaces(PrimeField(3), 4).size() == 130);
  CHECK(two_spaces(PrimeField(2), 5).size() == 155);
  CHECK(one_spaces(PrimeField(5), 3).size() == 31);
}

TEST_CASE("Singer matrix is regular on points") {
  for (auto [p, d] : {std::pair{2u, 3u}, {3u, 3u}, {2u, 5u}, {5u, 3u}, {3u, 4u}}) {
    PrimeField f(p);
    auto a = singer_matrix(f, d);
    auto pts = one_spaces(f, d);
    auto h = pts.action(a);
    auto semi = is_semiregular(h);
    REQUIRE(semi);
    CHECK(semi->first == 1);
    CHECK(semi->second == pts.size());
  }
}

TEST_CASE("SL generators act as PSL on 2-spaces") {
  {
    PrimeField f(3);
    auto sp = two_spaces(f, 4);
    GroupAction act{sp.size(), {}, {"t", "c"}};
    for (auto& m : sl_generators(f, 4)) {
      CHECK(determinant(f, m) == 1);
      act.generators.push_back(sp.action(m));
    }
    PermGroup g(act.degree, act.generators);
    CHECK(g.order() == 6065280);
    auto subs = suborbits(act);
    std::multiset<std::size_t> lens;
    for (std::size_t k = 1; k < subs.size(); ++k) lens.insert(subs[k].length());
    // meeting in a point: q(q+1)^2; disjoint: q^4
    CHECK(lens == std::multiset<std::size_t>{48, 81});
  }
  {
    PrimeField f(2);
    auto sp = two_spaces(f, 5);
    std::vector<Permutation> gens;
    for (auto& m : sl_generators(f, 5)) gens.push_back(sp.action(m));
    CHECK(PermGroup(sp.size(), gens).order() == 9999360);
  }
}

TEST_CASE("quadratic forms and singular points") {
  PrimeField f3(3);
  auto ell = elliptic_form(f3, 3);
  CHECK(singular_points(ell).size() == 1066);
  // the last two coordinates carry an anisotropic plane
  for (std::uint64_t a = 0; a < 3; ++a)
    for (std::uint64_t b = 0; b < 3; ++b)
      if (a || b) CHECK(ell.value({0, 0, 0, 0, 0, 0, a, b}) != 0);
  auto hyp = hyperbolic_form(PrimeField(2), 5);
  CHECK(singular_points(hyp).size() == 527);
  CHECK(singular_points(hyperbolic_form(f3, 2)).size() == 16);
  Vec x{1, 2, 0, 1, 0, 0, 1, 2}, y{0, 1, 1, 2, 2, 0, 0, 1};
  CHECK(ell.polar(x, y) == ell.polar(y, x));
  CHECK(ell.polar(x, x) == f3.mul(2, ell.value(x)));
}

TEST_CASE("Singer-derived element preserves the forms") {
  PrimeField f(3);
  auto c = matrix_pow(f, singer_matrix(f, 3), 2);
  auto b = block_diagonal({c, matrix_inverse(f, transpose(c)), identity_matrix(2)});
  CHECK(elliptic_form(f, 3).preserved_by(b));
  PrimeField f2(2);
  auto a = singer_matrix(f2, 5);
  CHECK(hyperbolic_form(f2, 5).preserved_by(block_diagonal({a, matrix_inverse(f2, transpose(a))})));
  CHECK_FALSE(elliptic_form(f, 3).preserved_by(block_diagonal({c, c, identity_matrix(2)})));
}
