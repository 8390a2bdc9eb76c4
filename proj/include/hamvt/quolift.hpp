#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hamvt/graph.hpp"
#include "hamvt/hamsearch.hpp"
#include "hamvt/permgrp.hpp"

namespace hamvt {

// Orbits of a semiregular permutation rho.  Block b lists its cell as
// x, rho(x), rho^2(x), ... starting from its least point x.
struct BlockSystem {
  Permutation rho;
  std::uint32_t p = 0;  // cell size
  std::vector<std::vector<std::uint32_t>> blocks;
  std::vector<std::uint32_t> block_of;
  std::vector<std::uint32_t> offset;  // v = rho^offset[v](first point of its block)

  std::uint32_t m() const { return static_cast<std::uint32_t>(blocks.size()); }
};

BlockSystem block_system(const Permutation& rho);

// d[a][b] = neighbours a vertex of block a has in block b; d[a][a] is the internal degree.
struct QuotientGraph {
  std::uint32_t m = 0, p = 0;
  std::vector<std::vector<std::uint32_t>> d;

  bool adjacent(std::uint32_t a, std::uint32_t b) const { return a != b && d[a][b] > 0; }
  std::uint32_t internal(std::uint32_t a) const { return d[a][a]; }
  Graph simple(const std::vector<std::uint32_t>& cells) const;  // induced on `cells`, relabelled 0..
};

// Checks that rho is an automorphism and the counts do not depend on the vertex.
QuotientGraph quotient(const Graph& g, const BlockSystem& bs);

struct LiftResult {
  std::optional<HamiltonCertificate> cycle;
  std::vector<std::vector<std::uint32_t>> split;  // the p disjoint m-cycles otherwise
};

// Lifts a Hamilton cycle of the quotient.  A voltage is chosen per quotient edge;
// when the total is 0 mod p and some edge has d >= 2 one voltage is switched,
// which always makes the total non-zero.
LiftResult lift_cycle(const std::vector<std::uint32_t>& qc, const Graph& g, const BlockSystem& bs,
                      const QuotientGraph& qg);

// Hamilton cycle of the quotient restricted to `cells` that uses the edge (a, b),
// returned as block indices starting with a, b.  Empty if none exists.
std::vector<std::uint32_t> quotient_hcycle_through_edge(const QuotientGraph& qg, const std::vector<std::uint32_t>& cells,
                                                        std::uint32_t a, std::uint32_t b,
                                                        std::uint64_t budget = 10'000'000);

// Same, for a circulant restriction: throws if the restriction is disconnected or
// no cycle exists (either would contradict the circulant edge theorem).
std::vector<std::uint32_t> circulant_hcycle_through_edge(const QuotientGraph& qg, const std::vector<std::uint32_t>& cells,
                                                         std::uint32_t a, std::uint32_t b);

enum class DensityTag { Dirac, Jackson };
std::optional<DensityTag> density_hamiltonian(const Graph& g);
const char* density_name(DensityTag t);

// Element of prime order p acting semiregularly, from powers of random elements.
std::optional<Permutation> find_semiregular(const PermGroup& G, std::uint32_t p, std::mt19937_64& rng,
                                            int attempts = 2000);

// Quotient cycles through edges with d >= 2 first, then any quotient cycle; the
// first successful lift wins.
std::optional<HamiltonCertificate> quotient_lift_search(const Graph& g, const BlockSystem& bs,
                                                        std::uint64_t budget = 10'000'000);

}  // namespace hamvt
