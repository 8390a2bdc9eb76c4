#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hamvt/ff.hpp"
#include "hamvt/graph.hpp"
#include "hamvt/permgrp.hpp"

namespace hamvt {

// 2x2 matrix acting on row vectors: z -> (a z + c) / (b z + d).
struct Mat2 {
  std::uint64_t a = 1, b = 0, c = 0, d = 1;
  bool operator==(const Mat2&) const = default;
};

Mat2 mat_mul(const PrimeField& f, const Mat2& x, const Mat2& y);
Mat2 mat_inv(const PrimeField& f, const Mat2& x);  // determinant 1 assumed
Mat2 mat_pow(const PrimeField& f, Mat2 x, std::int64_t e);

// PSL(2,q) on the projective line {0..q-1, q = infinity}.
Permutation projective_permutation(const PrimeField& f, const Mat2& m);
// Generators u: z -> z+1 and t: z -> -1/z of PSL(2,q), q an odd prime.
GroupAction projective_line_action(std::uint64_t q);

// q(q+1)/2 resp. q(q-1)/2 equals 2rs for distinct odd primes r, s.
bool is_2rs(std::uint64_t n);

enum class SuborbitCase { SPShort, NSPShort, SPLong, NSPLong };
const char* case_name(SuborbitCase c);

struct SuborbitDescriptor {
  std::uint32_t representative = 0;  // vertex index
  std::size_t length = 0;
  bool self_paired = true;
  std::optional<std::uint32_t> partner;  // representative of the paired suborbit
  SuborbitCase kind = SuborbitCase::SPShort;
  std::uint64_t param = 0;  // j for pairs, i or k for cosets
  std::string word;         // e.g. "{3,4}", "l^2 t", "u^5"
  Mat2 element;             // coset representative g with Hg the representative (cosets only)
};

// Unordered pairs of projective points with H the stabilizer of {0, inf}.
// Vertex order: {inf, x} at x, then {x, x+j} at q*j + x for j = 1..(q-1)/2, so the
// base vertex {0, inf} is 0 and the blocks under u are consecutive runs of q.
struct PairsModel {
  std::uint64_t q = 0;
  PrimeField f{3};
  GroupAction action;  // generators u, u', l, t
  std::vector<ActionVertex> labels;

  std::uint32_t n() const { return action.degree; }
  std::uint32_t index(std::uint64_t x, std::uint64_t y) const;  // points, q = infinity
  std::uint32_t block_of(std::uint32_t v) const { return static_cast<std::uint32_t>(v / q); }  // 0 = B_inf
  const Permutation& u() const { return action.generators[0]; }
  const Permutation& l() const { return action.generators[2]; }
};

PairsModel pairs_action(std::uint64_t q, bool require_2rs = true);

// Closed-form classification of {j, j+1}^H.  Pairing uses S* (see README).
SuborbitDescriptor classify_suborbit_dminus(const PairsModel& m, std::uint64_t j);
// One descriptor per distinct non-trivial suborbit, smallest j first.
std::vector<SuborbitDescriptor> classify_suborbits_dminus(const PairsModel& m);

struct DminusDegrees {
  SuborbitCase kind = SuborbitCase::SPShort;
  std::size_t valency = 0;
  std::vector<std::uint32_t> from_b1;  // d(B_1, B_i) at index i-1; index 0 is d(B_1)
  std::uint32_t b1_to_inf = 0;         // d(B_1, B_inf)
  std::uint32_t inf_internal = 0;      // d(B_inf)
  std::vector<std::uint32_t> inf_to;   // d(B_inf, B_i) at index i-1
  std::vector<Residue> delta1, delta2;  // residue of i^2 -+ (2+4j)i + 1 per block
};

// Counts neighbours of {0,1} per block by solving the quadratics for both halves
// of H; the orbital graph is X(Delta) or X(Delta u Delta*) per the case.
DminusDegrees block_degrees_dminus(const PairsModel& m, SuborbitCase kind, std::uint64_t j);
// d(B_k, B_i) from the B_1 row via the regular action of <l> on the blocks.
std::uint32_t dminus_block_degree(const PairsModel& m, const DminusDegrees& d, std::uint64_t k, std::uint64_t i);

// Cosets of H = D_{q+1}, the stabilizer of {w, -w} with w^2 = theta, identified
// with conjugate pairs {z, zbar} in F_{q^2}.  Labels H u^j l^i (plain) and
// H t u^j l^i (primed), i in 1..r with r = (q-1)/4.  Vertex order:
// primed*q*r + (i mod r)*q + j, so H = H l^r is vertex 0.
struct DplusModel {
  std::uint64_t q = 0, r = 0;
  PrimeField f{5};
  std::uint64_t sqrt_minus_one = 0;
  GroupAction action;  // generators u, l, t
  std::vector<ActionVertex> labels;
  std::vector<std::uint32_t> key_to_vertex;  // indexed a*q + min(b, q-b)

  std::uint32_t n() const { return action.degree; }
  std::uint32_t vertex_of(const Mat2& m) const;  // the coset H m
  std::uint32_t index(bool primed, std::uint64_t j, std::uint64_t i) const;
  std::uint32_t block_of(std::uint32_t v) const { return static_cast<std::uint32_t>(v / q); }
  std::string block_name(std::uint32_t b) const;
  // Elements of H: t(x,y) and t(x,y)s over the conic x^2 - theta y^2 = 1.
  std::vector<Mat2> stabilizer() const;
  Mat2 t_xy(std::uint64_t x, std::uint64_t y) const;
  Mat2 swap() const;  // s: z -> -z
  Mat2 u_pow(std::int64_t k) const;
  Mat2 l_pow(std::int64_t i) const;
  Mat2 t() const;
};

DplusModel dplus_action(std::uint64_t q, bool require_2rs = true);

// H l^i t H (self-paired short), H l^i H (non-self-paired short), H u^k H with
// k^2 in S* and k^2 - 4 theta in N (long).  Throws if the lists overlap or miss
// part of the vertex set.
std::vector<SuborbitDescriptor> classify_suborbits_dplus(const DplusModel& m);

struct DplusDegrees {
  SuborbitCase kind = SuborbitCase::SPShort;
  std::size_t valency = 0;
  std::vector<std::uint32_t> d;  // neighbours of H per block, in vertex block order
  std::uint32_t primed_total() const;
};

// Solves N(g t(x,y)) = c on the conic for each block class c.
DplusDegrees block_degrees_dplus(const DplusModel& m, const SuborbitDescriptor& s);

// 2 floor((q - 11 - 2 sqrt q) / 8), exactly.
std::int64_t dplus_short_lower_bound(std::uint64_t q);

}  // namespace hamvt
