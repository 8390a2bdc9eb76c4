#pragma once

#include <cstdint>

#include "hamvt/ff.hpp"

namespace hamvt {

struct ResidueCounts {
  std::uint64_t q = 0;
  std::uint64_t c_sp1_minus_s = 0;  // |(S*+1) ∩ (-S*)|
  std::uint64_t c_ss = 0;           // |S* ∩ (S*+1)|
  std::uint64_t c_nn = 0;           // |N ∩ (N+1)|
  std::uint64_t c_sn_plus = 0;      // |S* ∩ (N+1)|
  std::uint64_t c_sn_minus = 0;     // |S* ∩ (N-1)|
};

ResidueCounts residue_intersection_counts(std::uint64_t q);

// Closed forms: (q-5)/4 or (q+1)/4 for the first count, and for q = 1 mod 4
// the three companion equalities.
bool matches_closed_form(const ResidueCounts& c);

// {x : x-a in C1, x-b in C2, x in C3}; the four shapes of the triple bounds.
enum class TriplePattern { SSN, SNN, SNS, NNS };

std::uint64_t triple_count(const PrimeField& f, std::uint64_t a, std::uint64_t b, TriplePattern pattern);

// ceil((q+11+2 sqrt q)/8) and floor((q-11-2 sqrt q)/8), in exact integer arithmetic.
std::int64_t triple_upper_bound(std::uint64_t q);
std::int64_t triple_lower_bound(std::uint64_t q);

struct TripleBoundReport {
  std::uint64_t q = 0;
  std::uint64_t max_ssn = 0, max_snn = 0;
  std::uint64_t min_sns = 0, min_nns = 0;
  bool ok = false;
};

// Exhaustive scan over all a != b in F_q^*.
TripleBoundReport check_triple_bounds(std::uint64_t q);

std::int64_t eta_sum(const PrimeField& f);
std::int64_t eta_quadratic_sum(const PrimeField& f, std::uint64_t A, std::uint64_t B);
std::int64_t eta_cubic_sum(const PrimeField& f, std::uint64_t t);

// m^2 <= 4q, i.e. |m| <= 2 sqrt q without floating point.
inline bool within_weil(std::int64_t m, std::uint64_t q) {
  return static_cast<std::uint64_t>(m * m) <= 4 * q;
}

}  // namespace hamvt
