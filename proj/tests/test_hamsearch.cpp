#include "doctest.h"
#include "hamvt/hamsearch.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

using namespace hamvt;

namespace {

Graph petersen() {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  for (std::uint32_t k = 0; k < 5; ++k) {
    e.emplace_back(k, (k + 1) % 5);
    e.emplace_back(k, k + 5);
    e.emplace_back(k + 5, (k + 2) % 5 + 5);
  }
  return graph_from_edges(10, e);
}

// Oracle: try every ordering of 1..n-1 after vertex 0.
bool hamiltonian_by_permutations(const Graph& g) {
  std::vector<std::uint32_t> rest(g.n() - 1);
  std::iota(rest.begin(), rest.end(), 1u);
  do {
    std::uint32_t prev = 0;
    bool ok = true;
    for (auto v : rest) {
      if (!g.adjacent(prev, v)) {
        ok = false;
        break;
      }
      prev = v;
    }
    if (ok && g.adjacent(prev, 0)) return true;
  } while (std::next_permutation(rest.begin(), rest.end()));
  return false;
}

Graph random_graph(std::uint32_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  GraphBuilder b(n);
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v)
      if (coin(rng)) b.add_edge(u, v);
  return std::move(b).build();
}

}  // namespace

TEST_CASE("first solution on K5") {
  auto r = find_hcycle(complete_graph(5));
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(r.certificate->cycle == std::vector<std::uint32_t>{0, 1, 2, 3, 4});
}

TEST_CASE("Petersen has no Hamilton cycle") {
  SearchOptions o;
  o.budget = 10'000'000;
  auto r = find_hcycle(petersen(), o);
  CHECK(r.status == SearchStatus::Exhausted);
  CHECK_FALSE(r.certificate);
  CHECK(prove_nonhamiltonian(petersen()).verdict == Verdict::NonHamiltonian);
  auto k7 = prove_nonhamiltonian(complete_graph(7));
  CHECK(k7.verdict == Verdict::Hamiltonian);
  CHECK(k7.witness);
  CHECK_THROWS_AS(prove_nonhamiltonian(complete_graph(41)), std::length_error);
}

TEST_CASE("search agrees with the permutation oracle on small graphs") {
  std::mt19937_64 rng(2024);
  int found = 0, total = 0;
  for (std::uint32_t n = 3; n <= 10; ++n) {
    int reps = n <= 8 ? 120 : 15;
    for (int k = 0; k < reps; ++k) {
      auto g = random_graph(n, 0.25 + 0.5 * (k % 5) / 4.0, rng);
      SearchOptions o;
      o.budget = UINT64_MAX;
      auto r = find_hcycle(g, o);
      bool oracle = hamiltonian_by_permutations(g);
      CHECK(oracle == (r.status == SearchStatus::Found));
      found += oracle;
      ++total;
    }
  }
  // the corpus should not be degenerate
  CHECK(found > total / 5);
  CHECK(found < total * 4 / 5);
}

TEST_CASE("budget and determinism") {
  std::mt19937_64 rng(5);
  auto g = random_graph(60, 0.2, rng);
  SearchOptions o;
  auto a = find_hcycle(g, o);
  auto b = find_hcycle(g, o);
  REQUIRE(a.status == SearchStatus::Found);
  CHECK(a.certificate->cycle == b.certificate->cycle);
  o.jobs = 4;
  auto c = find_hcycle(g, o);
  REQUIRE(c.status == SearchStatus::Found);
  CHECK(c.certificate->cycle == a.certificate->cycle);
  SearchOptions tiny;
  tiny.budget = 3;
  CHECK(find_hcycle(petersen(), tiny).status == SearchStatus::Timeout);
}

TEST_CASE("hint fixes the prefix") {
  SearchOptions o;
  o.hint = {0, 3, 1};
  auto r = find_hcycle(complete_graph(6), o);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(std::vector<std::uint32_t>(r.certificate->cycle.begin(), r.certificate->cycle.begin() + 3) == o.hint);
  o.hint = {1, 2};
  CHECK_THROWS(find_hcycle(complete_graph(6), o));
  o.hint = {0, 2};
  CHECK_THROWS(find_hcycle(cycle_graph(6), o));
}

TEST_CASE("certificate verification and reason codes") {
  auto k4 = complete_graph(4);
  auto h = k4.content_hash();
  CHECK(verify_certificate(k4, {h, {0, 1, 2, 3}}).ok);
  auto perm = verify_certificate(k4, {h, {0, 1, 1, 3}});
  CHECK_FALSE(perm.ok);
  CHECK(perm.reason == VerifyReason::Permutation);
  CHECK(verify_certificate(k4, {h, {0, 1, 2}}).reason == VerifyReason::Permutation);
  CHECK(verify_certificate(k4, {h, {0, 1, 2, 4}}).reason == VerifyReason::Permutation);
  auto c5 = cycle_graph(5);
  auto adj = verify_certificate(c5, {c5.content_hash(), {0, 2, 4, 1, 3}});
  CHECK(adj.reason == VerifyReason::Adjacency);
  CHECK(verify_certificate(k4, {h ^ 1, {0, 1, 2, 3}}).reason == VerifyReason::Hash);
  CHECK(std::string(reason_name(VerifyReason::Adjacency)) == "adjacency");
}

TEST_CASE("certificate file format") {
  HamiltonCertificate c{0x00ab00000000cdefULL, {0, 2, 1}};
  std::stringstream ss;
  write_certificate(ss, c);
  CHECK(ss.str() == "hash 00ab00000000cdef\n0 2 1\n");
  auto d = read_certificate(ss);
  CHECK(d.graph_hash == c.graph_hash);
  CHECK(d.cycle == c.cycle);
  std::istringstream bad("hash 12\n0 1 2\n");
  CHECK_THROWS(read_certificate(bad));
  std::istringstream junk("hash 0000000000000001\n0 x 2\n");
  CHECK_THROWS(read_certificate(junk));
}
