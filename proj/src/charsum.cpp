#include "hamvt/charsum.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>
#include <vector>

namespace hamvt {

namespace {

PrimeField odd_prime_field(std::uint64_t q) {
  if (q < 3 || !is_prime(q)) throw std::invalid_argument("charsum: " + std::to_string(q) + " is not an odd prime");
  return PrimeField(q);
}

}  // namespace

ResidueCounts residue_intersection_counts(std::uint64_t q) {
  auto f = odd_prime_field(q);
  ResidueCounts c;
  c.q = q;
  auto S = [&](std::uint64_t x) { return f.residue(x) == Residue::Square; };
  auto N = [&](std::uint64_t x) { return f.residue(x) == Residue::NonSquare; };
  for (std::uint64_t x = 0; x < q; ++x) {
    auto xm1 = f.sub(x, 1), xp1 = f.add(x, 1);
    if (S(xm1) && S(f.neg(x))) ++c.c_sp1_minus_s;
    if (S(x) && S(xm1)) ++c.c_ss;
    if (N(x) && N(xm1)) ++c.c_nn;
    if (S(x) && N(xm1)) ++c.c_sn_plus;
    if (S(x) && N(xp1)) ++c.c_sn_minus;
  }
  return c;
}

bool matches_closed_form(const ResidueCounts& c) {
  auto q = c.q;
  if (q % 4 == 3) return c.c_sp1_minus_s == (q + 1) / 4;
  auto a = (q - 5) / 4, b = (q - 1) / 4;
  return c.c_sp1_minus_s == a && c.c_ss == a && c.c_nn == b && c.c_sn_plus == b && c.c_sn_minus == b;
}

std::uint64_t triple_count(const PrimeField& f, std::uint64_t a, std::uint64_t b, TriplePattern pattern) {
  a %= f.p();
  b %= f.p();
  if (a == 0 || b == 0 || a == b) throw std::invalid_argument("triple_count: need distinct nonzero a, b");
  Residue c1, c2, c3;
  switch (pattern) {
    case TriplePattern::SSN: c1 = Residue::Square, c2 = Residue::Square, c3 = Residue::NonSquare; break;
    case TriplePattern::SNN: c1 = Residue::Square, c2 = Residue::NonSquare, c3 = Residue::NonSquare; break;
    case TriplePattern::SNS: c1 = Residue::Square, c2 = Residue::NonSquare, c3 = Residue::Square; break;
    default: c1 = Residue::NonSquare, c2 = Residue::NonSquare, c3 = Residue::Square; break;
  }
  std::uint64_t n = 0;
  for (std::uint64_t x = 0; x < f.p(); ++x)
    if (f.residue(f.sub(x, a)) == c1 && f.residue(f.sub(x, b)) == c2 && f.residue(x) == c3) ++n;
  return n;
}

std::int64_t triple_upper_bound(std::uint64_t q) {
  auto Q = static_cast<std::int64_t>(q);
  std::int64_t k = (Q + 11) / 8;
  while (!(8 * k - Q - 11 >= 0 && (8 * k - Q - 11) * (8 * k - Q - 11) >= 4 * Q)) ++k;
  return k;
}

std::int64_t triple_lower_bound(std::uint64_t q) {
  auto Q = static_cast<std::int64_t>(q);
  // floor division that also works for negative numerators
  std::int64_t k = (Q - 11 >= 0 ? (Q - 11) / 8 : -((11 - Q + 7) / 8)) + 1;
  while (!(Q - 11 - 8 * k >= 0 && (Q - 11 - 8 * k) * (Q - 11 - 8 * k) >= 4 * Q)) --k;
  return k;
}

TripleBoundReport check_triple_bounds(std::uint64_t q) {
  auto f = odd_prime_field(q);
  // Bitset per shift: sq[a] has bit x iff x-a in S*, ns[a] likewise for N.
  auto words = (q + 63) / 64;
  std::vector<std::uint64_t> sq(q * words, 0), ns(q * words, 0);
  for (std::uint64_t a = 0; a < q; ++a)
    for (std::uint64_t x = 0; x < q; ++x) {
      auto r = f.residue(f.sub(x, a));
      if (r == Residue::Square) sq[a * words + x / 64] |= 1ULL << (x % 64);
      if (r == Residue::NonSquare) ns[a * words + x / 64] |= 1ULL << (x % 64);
    }
  const auto* S0 = &sq[0];
  const auto* N0 = &ns[0];
  TripleBoundReport rep;
  rep.q = q;
  rep.min_sns = rep.min_nns = q;
  for (std::uint64_t a = 1; a < q; ++a)
    for (std::uint64_t b = 1; b < q; ++b) {
      if (a == b) continue;
      const auto* Sa = &sq[a * words];
      const auto* Sb = &sq[b * words];
      const auto* Nb = &ns[b * words];
      const auto* Na = &ns[a * words];
      std::uint64_t ssn = 0, snn = 0, sns = 0, nns = 0;
      for (std::uint64_t w = 0; w < words; ++w) {
        ssn += std::popcount(Sa[w] & Sb[w] & N0[w]);
        snn += std::popcount(Sa[w] & Nb[w] & N0[w]);
        sns += std::popcount(Sa[w] & Nb[w] & S0[w]);
        nns += std::popcount(Na[w] & Nb[w] & S0[w]);
      }
      rep.max_ssn = std::max(rep.max_ssn, ssn);
      rep.max_snn = std::max(rep.max_snn, snn);
      rep.min_sns = std::min(rep.min_sns, sns);
      rep.min_nns = std::min(rep.min_nns, nns);
    }
  auto ub = triple_upper_bound(q), lb = triple_lower_bound(q);
  rep.ok = static_cast<std::int64_t>(rep.max_ssn) <= ub && static_cast<std::int64_t>(rep.max_snn) <= ub &&
           static_cast<std::int64_t>(rep.min_sns) >= lb && static_cast<std::int64_t>(rep.min_nns) >= lb;
  return rep;
}

std::int64_t eta_sum(const PrimeField& f) {
  std::int64_t s = 0;
  for (std::uint64_t x = 0; x < f.p(); ++x) s += f.eta(x);
  return s;
}

std::int64_t eta_quadratic_sum(const PrimeField& f, std::uint64_t A, std::uint64_t B) {
  std::int64_t s = 0;
  for (std::uint64_t x = 0; x < f.p(); ++x) s += f.eta(f.add(f.add(f.mul(x, x), f.mul(A, x)), B));
  return s;
}

std::int64_t eta_cubic_sum(const PrimeField& f, std::uint64_t t) {
  std::int64_t s = 0;
  for (std::uint64_t x = 0; x < f.p(); ++x) s += f.eta(f.mul(f.mul(x, f.sub(x, 1)), f.sub(x, t)));
  return s;
}

}  // namespace hamvt
