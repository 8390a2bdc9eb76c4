#include "hamvt/quolift.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "hamvt/ff.hpp"

namespace hamvt {

BlockSystem block_system(const Permutation& rho) {
  auto sr = is_semiregular(rho);
  if (!sr) throw std::invalid_argument("block_system: permutation is not semiregular");
  BlockSystem bs;
  bs.rho = rho;
  bs.p = static_cast<std::uint32_t>(sr->second);
  auto n = rho.degree();
  bs.block_of.assign(n, UINT32_MAX);
  bs.offset.assign(n, 0);
  for (std::uint32_t x = 0; x < n; ++x) {
    if (bs.block_of[x] != UINT32_MAX) continue;
    std::vector<std::uint32_t> cell;
    auto b = static_cast<std::uint32_t>(bs.blocks.size());
    for (std::uint32_t y = x, k = 0; k < bs.p; y = rho(y), ++k) {
      bs.block_of[y] = b;
      bs.offset[y] = k;
      cell.push_back(y);
    }
    bs.blocks.push_back(std::move(cell));
  }
  return bs;
}

Graph QuotientGraph::simple(const std::vector<std::uint32_t>& cells) const {
  GraphBuilder b(static_cast<std::uint32_t>(cells.size()));
  for (std::uint32_t i = 0; i < cells.size(); ++i)
    for (std::uint32_t j = i + 1; j < cells.size(); ++j)
      if (adjacent(cells[i], cells[j])) b.add_edge(i, j);
  return std::move(b).build();
}

QuotientGraph quotient(const Graph& g, const BlockSystem& bs) {
  if (bs.rho.degree() != g.n()) throw std::invalid_argument("quotient: block system size mismatch");
  if (!is_automorphism(g, bs.rho)) throw std::invalid_argument("quotient: rho is not an automorphism");
  QuotientGraph qg;
  qg.m = bs.m();
  qg.p = bs.p;
  qg.d.assign(qg.m, std::vector<std::uint32_t>(qg.m, 0));
  std::vector<std::uint32_t> count(qg.m);
  for (std::uint32_t b = 0; b < qg.m; ++b) {
    for (std::size_t k = 0; k < bs.blocks[b].size(); ++k) {
      std::fill(count.begin(), count.end(), 0);
      for (auto w : g.neighbors(bs.blocks[b][k])) ++count[bs.block_of[w]];
      if (k == 0)
        qg.d[b] = count;
      else if (count != qg.d[b])
        throw std::logic_error("quotient: block counts depend on the vertex");
    }
  }
  for (std::uint32_t a = 0; a < qg.m; ++a)
    for (std::uint32_t b = 0; b < qg.m; ++b)
      if (qg.d[a][b] != qg.d[b][a]) throw std::logic_error("quotient: asymmetric multiplicities");
  return qg;
}

LiftResult lift_cycle(const std::vector<std::uint32_t>& qc, const Graph& g, const BlockSystem& bs,
                      const QuotientGraph& qg) {
  auto m = static_cast<std::uint32_t>(qc.size());
  auto p = bs.p;
  if (!is_prime(p)) throw std::invalid_argument("lift_cycle: cell size is not prime");
  if (m < 3) throw std::invalid_argument("lift_cycle: quotient cycle needs at least 3 cells");
  if (m != qg.m) throw std::invalid_argument("lift_cycle: not a Hamilton cycle of the quotient");
  std::vector<char> seen(m, 0);
  for (auto b : qc) {
    if (b >= m || seen[b]) throw std::invalid_argument("lift_cycle: not a Hamilton cycle of the quotient");
    seen[b] = 1;
  }
  // Voltages: x_a ~ rho^s(x_b) with x the first point of each block.
  std::vector<std::vector<std::uint32_t>> volt(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    auto a = qc[i], b = qc[(i + 1) % m];
    if (!qg.adjacent(a, b)) throw std::invalid_argument("lift_cycle: quotient cycle uses a non-edge");
    for (std::uint32_t s = 0; s < p; ++s)
      if (g.adjacent(bs.blocks[a][0], bs.blocks[b][s])) volt[i].push_back(s);
    if (volt[i].size() != qg.d[a][b]) throw std::logic_error("lift_cycle: voltage count mismatch");
  }
  std::vector<std::uint32_t> pick(m);
  std::uint64_t total = 0;
  for (std::uint32_t i = 0; i < m; ++i) total += pick[i] = volt[i][0];
  if (total % p == 0) {
    for (std::uint32_t i = 0; i < m; ++i)
      if (volt[i].size() >= 2) {
        total += volt[i][1] - pick[i];
        pick[i] = volt[i][1];
        break;
      }
  }
  LiftResult res;
  if (total % p == 0) {
    for (std::uint32_t i = 0; i < m; ++i)
      if (volt[i].size() != 1) throw std::logic_error("lift_cycle: split lift with a multiple edge");
    res.split.resize(p);
    for (std::uint32_t t = 0; t < p; ++t) {
      std::uint64_t off = t;
      for (std::uint32_t i = 0; i < m; ++i) {
        res.split[t].push_back(bs.blocks[qc[i]][off % p]);
        off += pick[i];
      }
    }
    return res;
  }
  // Walking offset k in block qc[i] to offset k + s in qc[i+1] stays on edges
  // because rho is an automorphism; p rounds cover every vertex once.
  HamiltonCertificate cert;
  cert.graph_hash = g.content_hash();
  std::uint64_t off = 0;
  for (std::uint32_t t = 0; t < p; ++t)
    for (std::uint32_t i = 0; i < m; ++i) {
      cert.cycle.push_back(bs.blocks[qc[i]][off % p]);
      off += pick[i];
    }
  // rotate so the certificate starts at vertex 0, matching the search convention
  auto it = std::find(cert.cycle.begin(), cert.cycle.end(), 0u);
  std::rotate(cert.cycle.begin(), it, cert.cycle.end());
  auto v = verify_certificate(g, cert);
  if (!v.ok) throw std::logic_error("lift_cycle: lifted cycle failed verification: " + v.detail);
  res.cycle = std::move(cert);
  return res;
}

std::vector<std::uint32_t> quotient_hcycle_through_edge(const QuotientGraph& qg, const std::vector<std::uint32_t>& cells,
                                                        std::uint32_t a, std::uint32_t b, std::uint64_t budget) {
  if (!qg.adjacent(a, b)) throw std::invalid_argument("quotient cycle: forced edge absent");
  std::vector<std::uint32_t> order{a, b};
  for (auto c : cells)
    if (c != a && c != b) order.push_back(c);
  if (order.size() != cells.size()) throw std::invalid_argument("quotient cycle: forced edge outside the cells");
  if (order.size() < 3) return {};
  auto sg = qg.simple(order);
  SearchOptions opts;
  opts.budget = budget;
  opts.hint = {0, 1};
  auto r = find_hcycle(sg, opts);
  if (r.status != SearchStatus::Found) return {};
  std::vector<std::uint32_t> out;
  for (auto k : r.certificate->cycle) out.push_back(order[k]);
  return out;
}

std::vector<std::uint32_t> circulant_hcycle_through_edge(const QuotientGraph& qg, const std::vector<std::uint32_t>& cells,
                                                         std::uint32_t a, std::uint32_t b) {
  if (!is_connected(qg.simple(cells))) throw std::logic_error("circulant quotient is disconnected");
  auto c = quotient_hcycle_through_edge(qg, cells, a, b, UINT64_MAX);
  if (c.empty()) throw std::logic_error("circulant quotient has no Hamilton cycle through the edge");
  return c;
}

std::optional<DensityTag> density_hamiltonian(const Graph& g) {
  auto n = static_cast<std::uint64_t>(g.n());
  std::uint64_t k = g.valency();
  if (n >= 3 && 2 * k >= n) return DensityTag::Dirac;
  if (n >= 3 && 3 * k >= n && is_two_connected(g)) return DensityTag::Jackson;
  return std::nullopt;
}

const char* density_name(DensityTag t) { return t == DensityTag::Dirac ? "dirac" : "jackson"; }

std::optional<Permutation> find_semiregular(const PermGroup& G, std::uint32_t p, std::mt19937_64& rng, int attempts) {
  for (int k = 0; k < attempts; ++k) {
    auto g = G.random_element(rng);
    auto o = g.order();
    if (o % p) continue;
    auto h = g.pow(static_cast<std::int64_t>(o / p));
    auto sr = is_semiregular(h);
    if (sr && sr->second == p) return h;
  }
  return std::nullopt;
}

std::optional<HamiltonCertificate> quotient_lift_search(const Graph& g, const BlockSystem& bs, std::uint64_t budget) {
  if (bs.m() < 3 || !is_prime(bs.p)) return std::nullopt;
  auto qg = quotient(g, bs);
  std::vector<std::uint32_t> cells(qg.m);
  std::iota(cells.begin(), cells.end(), 0u);
  // Forced edges: multiple ones first, since any cycle through them lifts.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> multi, single;
  for (std::uint32_t a = 0; a < qg.m; ++a)
    for (std::uint32_t b = a + 1; b < qg.m; ++b)
      if (qg.d[a][b] >= 2)
        multi.emplace_back(a, b);
      else if (qg.d[a][b] == 1)
        single.emplace_back(a, b);
  auto attempt = [&](std::pair<std::uint32_t, std::uint32_t> e) -> std::optional<HamiltonCertificate> {
    auto qc = quotient_hcycle_through_edge(qg, cells, e.first, e.second, budget);
    if (qc.empty()) return std::nullopt;
    auto lr = lift_cycle(qc, g, bs, qg);
    return lr.cycle;
  };
  if (!multi.empty()) {
    // one forced multiple edge suffices when the quotient has a cycle through it
    for (std::size_t k = 0; k < std::min<std::size_t>(multi.size(), 8); ++k)
      if (auto c = attempt(multi[k])) return c;
  }
  for (std::size_t k = 0; k < std::min<std::size_t>(single.size(), 32); ++k)
    if (auto c = attempt(single[k])) return c;
  return std::nullopt;
}

}  // namespace hamvt
