#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hamvt/graph.hpp"

namespace hamvt {

struct HamiltonCertificate {
  std::uint64_t graph_hash = 0;
  std::vector<std::uint32_t> cycle;
};

enum class SearchStatus { Found, Exhausted, Timeout };

struct SearchOptions {
  std::uint64_t budget = 100'000'000;  // node expansions per root branch
  std::vector<std::uint32_t> hint;     // optional path prefix starting at vertex 0
  unsigned jobs = 1;
};

struct SearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<HamiltonCertificate> certificate;
  std::uint64_t expansions = 0;
};

// Backtracking from vertex 0; branches in ascending degree-to-unvisited order
// and backtracks as soon as some unvisited vertex has fewer than two possible
// cycle neighbours.  Root branches may run on several threads; the lowest
// successful branch wins, so the answer does not depend on `jobs`.
SearchResult find_hcycle(const Graph& g, const SearchOptions& opts = {});

enum class VerifyReason { Ok, Hash, Permutation, Adjacency };

struct Verification {
  bool ok = false;
  VerifyReason reason = VerifyReason::Ok;
  std::string detail;
};

Verification verify_certificate(const Graph& g, const HamiltonCertificate& cert);
const char* reason_name(VerifyReason r);

enum class Verdict { Hamiltonian, NonHamiltonian };

struct HamiltonVerdict {
  Verdict verdict = Verdict::NonHamiltonian;
  std::optional<HamiltonCertificate> witness;
  std::uint64_t expansions = 0;
};

// Exhaustive search; refuses graphs above `cap` vertices.
HamiltonVerdict prove_nonhamiltonian(const Graph& g, std::uint32_t cap = 40);

std::string hash_hex(std::uint64_t h);
void write_certificate(std::ostream& os, const HamiltonCertificate& cert);
HamiltonCertificate read_certificate(std::istream& is);
void save_certificate(const std::string& path, const HamiltonCertificate& cert);
HamiltonCertificate load_certificate(const std::string& path);

}  // namespace hamvt
