#include "hamvt/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hamvt {

namespace {

struct LabelPrinter {
  std::string operator()(const CosetIndex& v) const { return "c" + std::to_string(v.index); }
  std::string operator()(const PairVertex& v) const {
    auto pt = [](std::uint32_t x) { return x == kInfinity ? std::string("inf") : std::to_string(x); };
    return "{" + pt(v.a) + "," + pt(v.b) + "}";
  }
  std::string operator()(const CosetVertex& v) const {
    return "(" + std::to_string(v.j) + "," + std::to_string(v.i) + ")" + (v.primed ? "'" : "");
  }
  std::string operator()(const SubspaceVertex& v) const {
    std::string s = "<";
    for (std::size_t k = 0; k < v.rows.size(); ++k) s += (k ? "," : "") + std::to_string(v.rows[k]);
    return s + ">";
  }
  std::string operator()(const SingularPoint& v) const { return "<" + std::to_string(v.code) + ">"; }
  std::string operator()(const TwoSubset& v) const {
    return "{" + std::to_string(v.a) + "," + std::to_string(v.b) + "}";
  }
};

}  // namespace

std::string to_string(const ActionVertex& v) { return std::visit(LabelPrinter{}, v); }

std::vector<std::pair<std::uint32_t, std::uint32_t>> Graph::edges() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  out.reserve(edges_);
  for (std::uint32_t u = 0; u < n_; ++u)
    for (auto v : nbrs_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

bool Graph::is_regular() const {
  for (std::uint32_t v = 1; v < n_; ++v)
    if (degree(v) != degree(0)) return false;
  return true;
}

std::uint32_t Graph::valency() const { return n_ ? degree(0) : 0; }

void Graph::set_labels(std::vector<ActionVertex> labels) {
  if (!labels.empty() && labels.size() != n_) throw std::invalid_argument("Graph: label count mismatch");
  labels_ = std::move(labels);
}

GraphBuilder::GraphBuilder(std::uint32_t n) : n_(n), words_((n + 63) / 64) {
  if (n > kMaxVertices) throw std::length_error("Graph: vertex cap exceeded");
  bits_.assign(static_cast<std::size_t>(n) * words_, 0);
}

void GraphBuilder::add_edge(std::uint32_t u, std::uint32_t v) {
  if (u >= n_ || v >= n_) throw std::out_of_range("Graph: vertex out of range");
  if (u == v) throw std::invalid_argument("Graph: loops are not allowed");
  bits_[u * words_ + v / 64] |= 1ULL << (v % 64);
  bits_[v * words_ + u / 64] |= 1ULL << (u % 64);
}

bool GraphBuilder::has_edge(std::uint32_t u, std::uint32_t v) const {
  return (bits_[u * words_ + v / 64] >> (v % 64)) & 1;
}

Graph GraphBuilder::build(std::vector<ActionVertex> labels) && {
  Graph g;
  g.n_ = n_;
  g.words_ = words_;
  g.bits_ = std::move(bits_);
  g.nbrs_.resize(n_);
  std::size_t arcs = 0;
  for (std::uint32_t u = 0; u < n_; ++u) {
    const auto* r = g.row(u);
    for (std::size_t w = 0; w < words_; ++w)
      for (auto x = r[w]; x; x &= x - 1) g.nbrs_[u].push_back(static_cast<std::uint32_t>(w * 64 + std::countr_zero(x)));
    arcs += g.nbrs_[u].size();
  }
  g.edges_ = arcs / 2;
  g.hash_ = edge_list_hash(n_, g.edges());
  g.set_labels(std::move(labels));
  return g;
}

Graph graph_from_edges(std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  GraphBuilder b(n);
  for (auto [u, v] : edges) b.add_edge(u, v);
  return std::move(b).build();
}

Graph complete_graph(std::uint32_t n) {
  GraphBuilder b(n);
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v) b.add_edge(u, v);
  return std::move(b).build();
}

Graph cycle_graph(std::uint32_t n) {
  GraphBuilder b(n);
  for (std::uint32_t u = 0; u < n; ++u) b.add_edge(u, (u + 1) % n);
  return std::move(b).build();
}

std::uint64_t edge_list_hash(std::uint32_t, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  std::uint64_t h = 14695981039346656037ULL;
  auto feed = [&](std::uint32_t x) {
    for (int k = 0; k < 4; ++k) {
      h ^= (x >> (8 * k)) & 0xFF;
      h *= 1099511628211ULL;
    }
  };
  for (auto [u, v] : edges) {
    feed(std::min(u, v));
    feed(std::max(u, v));
  }
  return h;
}

Graph orbital_graph(const GroupAction& action, const std::vector<Suborbit>& subs, std::size_t k, std::uint32_t base,
                    std::vector<ActionVertex> labels) {
  if (k >= subs.size()) throw std::out_of_range("orbital_graph: suborbit index");
  const auto& delta = subs[k].points;
  if (delta.size() == 1 && delta.front() == base) throw std::invalid_argument("orbital_graph: trivial suborbit");
  auto n = action.degree;
  std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> arc(static_cast<std::size_t>(n) * words, 0);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> queue;
  auto visit = [&](std::uint32_t u, std::uint32_t v) {
    auto& w = arc[u * words + v / 64];
    auto bit = 1ULL << (v % 64);
    if (w & bit) return;
    w |= bit;
    queue.emplace_back(u, v);
  };
  for (auto x : delta) visit(base, x);
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto [u, v] = queue[i];
    for (const auto& g : action.generators) visit(g(u), g(v));
  }
  GraphBuilder b(n);
  for (auto [u, v] : queue) b.add_edge(u, v);
  return std::move(b).build(std::move(labels));
}

bool is_connected(const Graph& g) {
  if (g.n() == 0) return true;
  std::vector<char> seen(g.n(), 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto w : g.neighbors(v))
      if (!seen[w]) seen[w] = 1, ++count, stack.push_back(w);
  }
  return count == g.n();
}

bool is_two_connected(const Graph& g) {
  auto n = g.n();
  if (n < 3 || !is_connected(g)) return false;
  // Iterative Tarjan articulation-point search from vertex 0.
  std::vector<std::int32_t> disc(n, -1), low(n, 0), parent(n, -1);
  std::vector<std::size_t> it(n, 0);
  std::int32_t timer = 0;
  std::size_t root_children = 0;
  std::vector<std::uint32_t> stack{0};
  disc[0] = low[0] = timer++;
  while (!stack.empty()) {
    auto v = stack.back();
    if (it[v] < g.neighbors(v).size()) {
      auto w = g.neighbors(v)[it[v]++];
      if (disc[w] < 0) {
        parent[w] = static_cast<std::int32_t>(v);
        disc[w] = low[w] = timer++;
        if (v == 0) ++root_children;
        stack.push_back(w);
      } else if (static_cast<std::int32_t>(w) != parent[v]) {
        low[v] = std::min(low[v], disc[w]);
      }
    } else {
      stack.pop_back();
      if (parent[v] >= 0) {
        auto p = static_cast<std::uint32_t>(parent[v]);
        low[p] = std::min(low[p], low[v]);
        if (p != 0 && low[v] >= disc[p]) return false;
      }
    }
  }
  return root_children < 2;
}

bool is_automorphism(const Graph& g, const Permutation& p) {
  if (p.degree() != g.n()) return false;
  for (std::uint32_t u = 0; u < g.n(); ++u)
    for (auto v : g.neighbors(u))
      if (!g.adjacent(p(u), p(v))) return false;
  return true;
}

void write_edge_list(std::ostream& os, const Graph& g) {
  os << g.n() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
}

Graph read_edge_list(std::istream& is) {
  std::uint64_t n = 0, m = 0;
  if (!(is >> n >> m)) throw std::runtime_error("edge list: missing 'n m' header");
  if (n > kMaxVertices) throw std::runtime_error("edge list: too many vertices");
  GraphBuilder b(static_cast<std::uint32_t>(n));
  for (std::uint64_t k = 0; k < m; ++k) {
    std::uint64_t u, v;
    if (!(is >> u >> v)) throw std::runtime_error("edge list: truncated");
    if (u >= n || v >= n || u == v) throw std::runtime_error("edge list: bad edge");
    if (b.has_edge(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)))
      throw std::runtime_error("edge list: duplicate edge");
    b.add_edge(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
  }
  return std::move(b).build();
}

void save_edge_list(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_edge_list(out, g);
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_edge_list(in);
}

}  // namespace hamvt
