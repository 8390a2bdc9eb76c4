#include "doctest.h"
#include "hamvt/permgrp.hpp"

#include <algorithm>
#include <map>

using namespace hamvt;

namespace {

std::vector<Permutation> m11_gens() {
  return {Permutation::parse(11, "(0 1 2 3 4 5 6 7 8 9 10)"), Permutation::parse(11, "(2 6 10 7)(3 9 4 5)")};
}

// Brute-force closure of a small group, the order oracle.
std::size_t closure_size(const std::vector<Permutation>& gens) {
  std::vector<Permutation> elems{Permutation(gens.front().degree())};
  std::map<std::vector<std::uint32_t>, int> seen{{elems[0].images(), 0}};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      auto h = elems[i] * g;
      if (seen.emplace(h.images(), 0).second) elems.push_back(h);
    }
  return elems.size();
}

}  // namespace

TEST_CASE("permutation basics") {
  auto p = Permutation::parse(5, "(0 1 2)(3 4)");
  CHECK(p(0) == 1);
  CHECK(p(2) == 0);
  CHECK(p.order() == 6);
  CHECK((p * p.inverse()).is_identity());
  CHECK(p.to_string() == "(0 1 2)(3 4)");
  CHECK(p.pow(6).is_identity());
  CHECK(p.pow(-1) == p.inverse());
  auto a = Permutation::parse(3, "(0 1)"), b = Permutation::parse(3, "(1 2)");
  CHECK((a * b)(0) == 2);  // apply a then b
  CHECK_THROWS(Permutation::parse(3, "(0 1)(1 2)"));
  CHECK_THROWS(Permutation::parse(3, "(0 5)"));
  CHECK_THROWS(Permutation(std::vector<std::uint32_t>{0, 0}));
}

TEST_CASE("orbits") {
  CHECK(orbit({0}, {Permutation(3)}) == std::vector<std::uint32_t>{0});
  auto o = orbit({0}, {Permutation::parse(3, "(0 1 2)")});
  CHECK(o.size() == 3);
  CHECK(orbit({0}, m11_gens()).size() == 11);
}

TEST_CASE("semiregularity") {
  CHECK_FALSE(is_semiregular(Permutation(5)).has_value());
  auto s = is_semiregular(Permutation::parse(4, "(0 1)(2 3)"));
  REQUIRE(s.has_value());
  CHECK(s->first == 2);
  CHECK(s->second == 2);
  CHECK_FALSE(is_semiregular(Permutation::parse(5, "(0 1)(2 3)")).has_value());
  CHECK_FALSE(is_semiregular(Permutation::parse(5, "(0 1)(2 3 4)")).has_value());
}

TEST_CASE("stabilizer chain orders") {
  PermGroup s4(4, {Permutation::parse(4, "(0 1)"), Permutation::parse(4, "(0 1 2 3)")});
  CHECK(s4.order() == 24);
  // PSL(2,7) on the projective line {0..6, inf=7}: z -> z+1 and z -> -1/z
  std::vector<std::uint32_t> u(8), t(8);
  for (std::uint32_t z = 0; z < 7; ++z) u[z] = (z + 1) % 7;
  u[7] = 7;
  t[0] = 7, t[7] = 0;
  for (std::uint32_t z = 1; z < 7; ++z)
    for (std::uint32_t w = 1; w < 7; ++w)
      if (z * w % 7 == 6) t[z] = w;
  PermGroup psl27(8, {Permutation(u), Permutation(t)});
  CHECK(psl27.order() == 168);
  CHECK(closure_size({Permutation(u), Permutation(t)}) == 168);
  PermGroup m11(11, m11_gens());
  CHECK(m11.order() == 7920);
  for (const auto& g : m11_gens()) CHECK(m11.contains(g));
  CHECK_FALSE(m11.contains(Permutation::parse(11, "(0 1)")));
}

TEST_CASE("membership fuzz") {
  std::mt19937_64 rng(7);
  PermGroup m11(11, m11_gens());
  PermGroup s11(11, {Permutation::parse(11, "(0 1)"), Permutation::parse(11, "(0 1 2 3 4 5 6 7 8 9 10)")});
  int members = 0;
  for (int i = 0; i < 300; ++i) {
    auto g = s11.random_element(rng);
    bool in = m11.contains(g);
    members += in;
    bool grows = PermGroup(11, {m11_gens()[0], m11_gens()[1], g}).order() != 7920;
    CHECK(in == !grows);
  }
  CHECK(members < 10);
  for (int i = 0; i < 50; ++i) CHECK(m11.contains(m11.random_element(rng)));
}

TEST_CASE("schreier-sims against brute force on random small groups") {
  std::mt19937_64 rng(11);
  PermGroup s7(7, {Permutation::parse(7, "(0 1)"), Permutation::parse(7, "(0 1 2 3 4 5 6)")});
  for (int i = 0; i < 40; ++i) {
    std::vector<Permutation> gens{s7.random_element(rng), s7.random_element(rng)};
    if (i % 3 == 0) gens.pop_back();
    CHECK(PermGroup(7, gens).order() == closure_size(gens));
  }
}

TEST_CASE("coset actions") {
  PermGroup s3(3, {Permutation::parse(3, "(0 1)"), Permutation::parse(3, "(0 1 2)")});
  PermGroup h(3, {Permutation::parse(3, "(0 1)")});
  auto ca = coset_action(s3, h);
  CHECK(ca.action.degree == 3);
  CHECK(ca.representatives[0].images() == canonical_coset_rep(h, Permutation(3)).images());
  PermGroup bad(3, {Permutation::parse(3, "(0 1)")});
  PermGroup a3(3, {Permutation::parse(3, "(0 1 2)")});
  CHECK_THROWS(coset_action(a3, bad));
  CHECK_THROWS(coset_action(s3, PermGroup(3, {}), 5));
}

TEST_CASE("suborbits and pairing") {
  // S5 on 2-subsets: the Petersen/triangular split 6 + 3
  PermGroup s5(5, {Permutation::parse(5, "(0 1)"), Permutation::parse(5, "(0 1 2 3 4)")});
  PermGroup stab(5, {Permutation::parse(5, "(0 1)"), Permutation::parse(5, "(2 3)"), Permutation::parse(5, "(2 3 4)")});
  auto ca = coset_action(s5, stab);
  CHECK(ca.action.degree == 10);
  auto subs = suborbits(ca.action);
  REQUIRE(subs.size() == 3);
  CHECK(subs[0].points == std::vector<std::uint32_t>{0});
  std::vector<std::size_t> lens{subs[1].length(), subs[2].length()};
  std::sort(lens.begin(), lens.end());
  CHECK(lens == std::vector<std::size_t>{3, 6});
  for (const auto& s : subs) CHECK(s.self_paired);

  // Z7 regular action: x and -x are paired
  GroupAction z7{7, {Permutation::parse(7, "(0 1 2 3 4 5 6)")}, {"a"}};
  auto zs = suborbits(z7);
  REQUIRE(zs.size() == 7);
  for (std::size_t k = 1; k < 7; ++k) {
    CHECK(zs[k].representative() == k);
    CHECK(zs[k].paired == 7 - k);
    CHECK_FALSE(zs[k].self_paired);
  }
}

TEST_CASE("words") {
  auto g = m11_gens();
  auto w = evaluate_word(g, "a b a^-1 b^2");
  CHECK(w == g[0] * g[1] * g[0].inverse() * g[1] * g[1]);
  CHECK_THROWS(evaluate_word(g, "c"));
  CHECK_THROWS(evaluate_word(g, "a2"));
}
