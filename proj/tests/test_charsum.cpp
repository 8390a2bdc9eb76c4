#include "doctest.h"
#include "hamvt/charsum.hpp"

#include <cmath>

using namespace hamvt;

TEST_CASE("residue intersection counts") {
  CHECK(residue_intersection_counts(7).c_sp1_minus_s == 2);
  CHECK(residue_intersection_counts(13).c_ss == 2);
  CHECK(residue_intersection_counts(5).c_sp1_minus_s == 0);
  for (std::uint64_t q = 3; q < 400; q += 2)
    if (is_prime(q)) CHECK(matches_closed_form(residue_intersection_counts(q)));
  CHECK_THROWS(residue_intersection_counts(9));
  CHECK_THROWS(residue_intersection_counts(2));
}

TEST_CASE("triple bound arithmetic") {
  CHECK(triple_upper_bound(7) == 3);
  CHECK(triple_lower_bound(11) == -1);
  for (std::uint64_t q : {3, 7, 11, 101, 499}) {
    double s = std::sqrt(static_cast<double>(q));
    CHECK(triple_upper_bound(q) == static_cast<std::int64_t>(std::ceil((q + 11 + 2 * s) / 8)));
    CHECK(triple_lower_bound(q) == static_cast<std::int64_t>(std::floor((q - 11.0 - 2 * s) / 8)));
  }
}

TEST_CASE("triple counts") {
  PrimeField f7(7);
  CHECK(triple_count(f7, 1, 2, TriplePattern::SSN) <= 3);
  PrimeField f11(11);
  CHECK(static_cast<std::int64_t>(triple_count(f11, 1, 2, TriplePattern::NNS)) >= 0);
  CHECK_THROWS(triple_count(f11, 1, 1, TriplePattern::SSN));
  CHECK_THROWS(triple_count(f11, 0, 1, TriplePattern::SSN));
  // the bitset scan and the plain count agree
  PrimeField f(31);
  auto rep = check_triple_bounds(31);
  std::uint64_t mx = 0, mn = 31;
  for (std::uint64_t a = 1; a < 31; ++a)
    for (std::uint64_t b = 1; b < 31; ++b) {
      if (a == b) continue;
      mx = std::max(mx, triple_count(f, a, b, TriplePattern::SSN));
      mn = std::min(mn, triple_count(f, a, b, TriplePattern::NNS));
    }
  CHECK(rep.max_ssn == mx);
  CHECK(rep.min_nns == mn);
  CHECK(check_triple_bounds(199).ok);
}

TEST_CASE("character sum identities") {
  PrimeField f7(7);
  CHECK(eta_cubic_sum(f7, 0) == 1);
  CHECK(within_weil(eta_cubic_sum(f7, 1), 7));
  PrimeField f13(13);
  CHECK(within_weil(eta_cubic_sum(f13, 2), 13));
  for (std::uint64_t q = 3; q <= 61; q += 2) {
    if (!is_prime(q)) continue;
    PrimeField f(q);
    CHECK(eta_sum(f) == 0);
    for (std::uint64_t A = 0; A < q; ++A)
      for (std::uint64_t B = 0; B < q; ++B) {
        auto disc = f.sub(f.mul(A, A), f.mul(4, B));
        REQUIRE(eta_quadratic_sum(f, A, B) == (disc == 0 ? static_cast<std::int64_t>(q) - 1 : -1));
      }
  }
}
