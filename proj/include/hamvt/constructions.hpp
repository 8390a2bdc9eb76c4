#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hamvt/graph.hpp"
#include "hamvt/hamsearch.hpp"

namespace hamvt {

// Which rung of the fallback ladder produced the answer.
enum class Strategy {
  BlockSplice,       // quotient minus B_inf through an edge, B_inf spliced in, lifted
  AlternatingCycle,  // <l>-regular cycle B_i', B_r, B_i'^d, ... lifted
  QuotientLift,      // quotient Hamilton cycle found by search, lifted
  CompleteQuotient,  // complete block quotient, lifted
  StarSplice,        // explicit star-path splicing (2-subsets, 2-spaces through a point)
  SingerCover,       // chained Singer orbits
  DensitySearch,     // Dirac/Jackson guarantee, cycle found by search
  Search,            // plain search
  Exhaustive,        // exhaustive search decided the graph
  None,
};
const char* strategy_name(Strategy s);

enum class Outcome { Hamiltonian, NonHamiltonian, Timeout, Failed };
const char* outcome_name(Outcome o);

// A closed-form identity compared with enumeration.  `known` marks closed forms
// that enumeration contradicts; those are reported, not failed.
struct FormulaCheck {
  std::string name;
  std::int64_t expected = 0, actual = 0;
  bool known = false;
  bool ok() const { return expected == actual; }
};

struct CaseReport {
  std::string family, params, suborbit;
  std::uint32_t n = 0;
  std::size_t valency = 0;
  Outcome outcome = Outcome::Failed;
  Strategy strategy = Strategy::None;
  std::vector<Strategy> attempted;  // rungs tried in order, the last one decided
  std::optional<HamiltonCertificate> certificate;
  std::vector<FormulaCheck> checks;
  std::vector<std::string> notes;
  double elapsed_ms = 0;
  std::shared_ptr<const Graph> graph;

  bool checks_ok() const;  // all non-`known` checks pass
};

struct RunOptions {
  std::uint64_t budget = 100'000'000;  // per search call and root branch
  unsigned jobs = 1;                  // threads inside one search
  bool constructive = true;           // false: skip straight to search
};

enum class DihedralFamily { Dminus, Dplus };

// Every non-trivial orbital graph of PSL(2,q) on the cosets of D_{q-1} or D_{q+1},
// or only suborbit `only` (index into the classification order).
std::vector<CaseReport> dihedral_cases(std::uint64_t q, DihedralFamily fam, std::optional<std::size_t> only = {},
                                       const RunOptions& opts = {});
CaseReport dihedral_pipeline(std::uint64_t q, DihedralFamily fam, std::size_t k, const RunOptions& opts = {});

// 2-subsets of {0..c-1}, index of {a,b} (a < b) in lexicographic order.
std::uint32_t pair_index(std::uint32_t c, std::uint32_t a, std::uint32_t b);
Graph johnson_graph(std::uint32_t c);  // meet in one point
Graph kneser_graph(std::uint32_t c);   // disjoint

// Spine cycle {0,1},{1,2},...,{c-1,0}; each spine edge through point k is replaced
// by a path through the unused 2-subsets containing k.  No search.
HamiltonCertificate johnson_splice(std::uint32_t c);
CaseReport johnson_case(std::uint32_t c, const RunOptions& opts = {});
// c >= 7 is Dirac; c = 5, 6 are decided exhaustively (c = 5 is the Petersen graph).
CaseReport kneser_case(std::uint32_t c, const RunOptions& opts = {});

// PSL(m,q) on 2-spaces, m in {4,5}: reports for Delta1 (meet in a point) and
// Delta2 (trivial intersection).
std::vector<CaseReport> grassmann_case(std::uint32_t m, std::uint64_t q, const RunOptions& opts = {},
                                       std::uint32_t cap = 20000, std::optional<std::size_t> only = {});
// Suborbit k (0 = Delta1, 1 = Delta2) alone.
Graph grassmann_graph(std::uint32_t m, std::uint64_t q, std::size_t k, std::uint32_t cap = 20000);

struct SingerCover {
  std::uint32_t n = 0;       // 2-spaces
  std::uint32_t s = 0;       // Singer orbit length
  std::vector<std::vector<std::uint32_t>> chains;  // one per orbit, consecutive members meet in a point
};
// Orbits of a Singer cycle of PGL(5,q) on 2-spaces, each listed as
// W_i, W_i^{h^i}, W_i^{h^2i}, ... with W_i = <a, a^{h^i}>.
SingerCover singer_cover(std::uint64_t q);

// PΩ on totally singular points: sign '-' with 2m = 8 (q odd), or '+' with 2m = 2k.
std::vector<CaseReport> orthogonal_case(char sign, std::uint32_t two_m, std::uint64_t q, const RunOptions& opts = {},
                                        std::uint32_t cap = 20000, std::optional<std::size_t> only = {});
Graph orthogonal_graph(char sign, std::uint32_t two_m, std::uint64_t q, std::size_t k, std::uint32_t cap = 20000);

// Fallback ladder for a graph without a constructive route: density tag plus
// search, plain search, then (small graphs) exhaustive search.
void search_rungs(CaseReport& rep, const Graph& g, const RunOptions& opts);

// Quotient/lift rung for an arbitrary semiregular element (abstract actions).
bool quotient_lift_rung(CaseReport& rep, const Graph& g, const Permutation& rho, const RunOptions& opts);

}  // namespace hamvt
