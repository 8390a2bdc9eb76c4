#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hamvt/permgrp.hpp"

namespace hamvt {

constexpr std::uint32_t kInfinity = std::numeric_limits<std::uint32_t>::max();

// Unordered pair of projective points; kInfinity stands for the point at infinity.
struct PairVertex {
  std::uint32_t a = 0, b = 0;  // canonical: infinity first, else a < b
  bool operator==(const PairVertex&) const = default;
};
// Coset H u^j l^i (plain) or H t u^j l^i (primed).
struct CosetVertex {
  bool primed = false;
  std::uint32_t j = 0, i = 1;
  bool operator==(const CosetVertex&) const = default;
};
// 2-space given by its reduced row echelon basis, each row encoded base q.
struct SubspaceVertex {
  std::vector<std::uint64_t> rows;
  bool operator==(const SubspaceVertex&) const = default;
};
// Totally singular 1-space, normalized spanning vector encoded base q.
struct SingularPoint {
  std::uint64_t code = 0;
  bool operator==(const SingularPoint&) const = default;
};
struct TwoSubset {
  std::uint32_t a = 0, b = 1;
  bool operator==(const TwoSubset&) const = default;
};
struct CosetIndex {
  std::uint32_t index = 0;
  bool operator==(const CosetIndex&) const = default;
};

using ActionVertex = std::variant<CosetIndex, PairVertex, CosetVertex, SubspaceVertex, SingularPoint, TwoSubset>;

std::string to_string(const ActionVertex& v);

// Immutable simple undirected graph with bitset rows.
class Graph {
 public:
  Graph() = default;

  std::uint32_t n() const { return n_; }
  std::size_t words() const { return words_; }
  const std::uint64_t* row(std::uint32_t v) const { return bits_.data() + v * words_; }
  bool adjacent(std::uint32_t u, std::uint32_t v) const { return (row(u)[v >> 6] >> (v & 63)) & 1; }
  const std::vector<std::uint32_t>& neighbors(std::uint32_t v) const { return nbrs_[v]; }
  std::uint32_t degree(std::uint32_t v) const { return static_cast<std::uint32_t>(nbrs_[v].size()); }
  std::size_t edge_count() const { return edges_; }
  std::uint64_t content_hash() const { return hash_; }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;  // sorted, u < v

  bool is_regular() const;
  std::uint32_t valency() const;  // degree of vertex 0; callers check regularity

  const std::vector<ActionVertex>& labels() const { return labels_; }
  void set_labels(std::vector<ActionVertex> labels);

 private:
  friend class GraphBuilder;
  std::uint32_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::vector<std::uint32_t>> nbrs_;
  std::size_t edges_ = 0;
  std::uint64_t hash_ = 0;
  std::vector<ActionVertex> labels_;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(std::uint32_t n);
  void add_edge(std::uint32_t u, std::uint32_t v);
  bool has_edge(std::uint32_t u, std::uint32_t v) const;
  Graph build(std::vector<ActionVertex> labels = {}) &&;

 private:
  std::uint32_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

constexpr std::uint32_t kMaxVertices = 65536;

Graph graph_from_edges(std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);
Graph complete_graph(std::uint32_t n);
Graph cycle_graph(std::uint32_t n);

// FNV-1a over the sorted edge list, each endpoint as 4 little-endian bytes.
std::uint64_t edge_list_hash(std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

// X(G, Δ) for a self-paired suborbit, X(G, Δ ∪ Δ') otherwise.
Graph orbital_graph(const GroupAction& action, const std::vector<Suborbit>& subs, std::size_t k,
                    std::uint32_t base = 0, std::vector<ActionVertex> labels = {});

bool is_connected(const Graph& g);
bool is_two_connected(const Graph& g);
bool is_automorphism(const Graph& g, const Permutation& p);

// Edge-list interchange format: header "n m", then "u v" with u < v.
void write_edge_list(std::ostream& os, const Graph& g);
Graph read_edge_list(std::istream& is);
void save_edge_list(const std::string& path, const Graph& g);
Graph load_edge_list(const std::string& path);

}  // namespace hamvt
