#include "hamvt/constructions.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "hamvt/geometry.hpp"
#include "hamvt/psl2.hpp"
#include "hamvt/quolift.hpp"

namespace hamvt {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::BlockSplice: return "block-splice-lift";
    case Strategy::AlternatingCycle: return "alternating-cycle-lift";
    case Strategy::QuotientLift: return "quotient-lift";
    case Strategy::CompleteQuotient: return "complete-quotient-lift";
    case Strategy::StarSplice: return "star-splice";
    case Strategy::SingerCover: return "singer-cover";
    case Strategy::DensitySearch: return "density+search";
    case Strategy::Search: return "search";
    case Strategy::Exhaustive: return "exhaustive";
    default: return "none";
  }
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Hamiltonian: return "Hamiltonian";
    case Outcome::NonHamiltonian: return "NonHamiltonian";
    case Outcome::Timeout: return "Timeout";
    default: return "Failed";
  }
}

bool CaseReport::checks_ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const FormulaCheck& c) { return c.known || c.ok(); });
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Records a certificate after independent verification.
void accept(CaseReport& rep, const Graph& g, HamiltonCertificate cert, Strategy s) {
  auto v = verify_certificate(g, cert);
  if (!v.ok) throw std::logic_error(std::string(strategy_name(s)) + " produced an invalid certificate: " + v.detail);
  rep.certificate = std::move(cert);
  rep.outcome = Outcome::Hamiltonian;
  rep.strategy = s;
}

void check(CaseReport& rep, std::string name, std::int64_t expected, std::int64_t actual, bool known = false) {
  rep.checks.push_back({std::move(name), expected, actual, known});
}

CaseReport start(const std::string& family, const std::string& params, const std::string& suborbit, const Graph& g) {
  CaseReport rep;
  rep.family = family;
  rep.params = params;
  rep.suborbit = suborbit;
  rep.n = g.n();
  rep.valency = g.valency();
  rep.graph = std::make_shared<const Graph>(g);
  return rep;
}

bool try_lift(CaseReport& rep, const Graph& g, const BlockSystem& bs, const QuotientGraph& qg,
              const std::vector<std::uint32_t>& qc, Strategy s) {
  auto lr = lift_cycle(qc, g, bs, qg);
  if (!lr.cycle) return false;
  accept(rep, g, std::move(*lr.cycle), s);
  return true;
}

// Cycle through the cells other than `inf` using an edge (a,b) with both ends
// adjacent to inf, then inf inserted between a and b.
bool block_splice(CaseReport& rep, const Graph& g, const BlockSystem& bs, const QuotientGraph& qg, std::uint32_t inf,
                  const RunOptions& opts) {
  rep.attempted.push_back(Strategy::BlockSplice);
  std::vector<std::uint32_t> rest;
  for (std::uint32_t c = 0; c < qg.m; ++c)
    if (c != inf) rest.push_back(c);
  if (rest.size() < 3 || !is_connected(qg.simple(rest))) return false;
  int tries = 0;
  for (auto a : rest)
    for (auto b : rest) {
      if (a == b || !qg.adjacent(a, b) || !qg.adjacent(inf, a) || !qg.adjacent(inf, b)) continue;
      if (++tries > 40) return false;
      auto c = quotient_hcycle_through_edge(qg, rest, a, b, std::min<std::uint64_t>(opts.budget, 2'000'000));
      if (c.empty()) continue;
      // c = a, b, ..., z  ->  inf, b, ..., z, a
      std::vector<std::uint32_t> qc{inf};
      qc.insert(qc.end(), c.begin() + 1, c.end());
      qc.push_back(a);
      if (try_lift(rep, g, bs, qg, qc, Strategy::BlockSplice)) return true;
    }
  return false;
}

bool quotient_rung(CaseReport& rep, const Graph& g, const BlockSystem& bs, const RunOptions& opts) {
  rep.attempted.push_back(Strategy::QuotientLift);
  auto c = quotient_lift_search(g, bs, std::min<std::uint64_t>(opts.budget, 2'000'000));
  if (!c) return false;
  accept(rep, g, std::move(*c), Strategy::QuotientLift);
  return true;
}

std::size_t suborbit_index(const std::vector<Suborbit>& subs, std::uint32_t v) {
  for (std::size_t k = 0; k < subs.size(); ++k)
    if (std::binary_search(subs[k].points.begin(), subs[k].points.end(), v)) return k;
  throw std::logic_error("vertex in no suborbit");
}

// Delta and Delta* give the same orbital graph; only the one with the smaller
// representative is run unless asked for explicitly.
bool skip_partner(const SuborbitDescriptor& d) {
  return !d.self_paired && d.partner && *d.partner < d.representative;
}

std::string describe(const SuborbitDescriptor& d) {
  return d.word + " " + case_name(d.kind) + " len " + std::to_string(d.length);
}

void dminus_run(std::uint64_t q, std::optional<std::size_t> only, const RunOptions& opts, std::vector<CaseReport>& out) {
  auto m = pairs_action(q);
  auto descs = classify_suborbits_dminus(m);
  auto subs = suborbits(m.action);
  auto bs = block_system(m.u());
  auto h = static_cast<std::uint32_t>((q - 1) / 2);
  for (std::size_t k = 0; k < descs.size(); ++k) {
    if (only ? *only != k : skip_partner(descs[k])) continue;
    auto t0 = Clock::now();
    const auto& d = descs[k];
    auto g = orbital_graph(m.action, subs, suborbit_index(subs, d.representative), 0, m.labels);
    auto rep = start("psl2-dminus", "q=" + std::to_string(q), std::to_string(k) + " " + describe(d), g);
    check(rep, "valency", static_cast<std::int64_t>(d.self_paired ? d.length : 2 * d.length), rep.valency);
    check(rep, "connected", 1, is_connected(g));
    auto qg = quotient(g, bs);
    auto deg = block_degrees_dminus(m, d.kind, d.param);
    std::int64_t bad = 0;
    if (qg.d[0][0] != deg.inf_internal) ++bad;
    for (std::uint32_t i = 1; i <= h; ++i) {
      if (qg.d[0][i] != deg.inf_to[i - 1]) ++bad;
      for (std::uint32_t j = 1; j <= h; ++j)
        if (qg.d[j][i] != dminus_block_degree(m, deg, j, i)) ++bad;
    }
    check(rep, "block degrees: formula vs edge count mismatches", 0, bad);
    std::int64_t claim = 0;
    for (std::uint32_t i = 1; i <= h; ++i) {
      auto x = deg.from_b1[i - 1];
      auto inf = deg.inf_to[i - 1];
      switch (d.kind) {
        case SuborbitCase::SPShort: claim += x > 2 || inf != 1; break;
        case SuborbitCase::NSPShort: claim += (x != 0 && x != 2 && x != 4) || inf != 2; break;
        case SuborbitCase::SPLong: claim += x > 4 || inf != 2; break;
        case SuborbitCase::NSPLong: claim += x != (i == 1 ? 2u : 4u) || inf != 2; break;
      }
    }
    check(rep, "case bounds on d(B_1,B_i) and d(B_inf,B_i): violations", 0, claim);
    if (d.kind == SuborbitCase::NSPLong) {
      std::int64_t missing = 0;
      for (std::uint32_t a = 1; a <= h; ++a)
        for (std::uint32_t b = a + 1; b <= h; ++b) missing += !qg.adjacent(a, b);
      check(rep, "quotient minus B_inf complete: missing edges", 0, missing);
    }
    bool done = false;
    if (opts.constructive) done = block_splice(rep, g, bs, qg, 0, opts) || quotient_rung(rep, g, bs, opts);
    if (!done) search_rungs(rep, g, opts);
    rep.elapsed_ms = ms_since(t0);
    out.push_back(std::move(rep));
  }
}

// B_i', B_r, B_i'^d, B_r^d, ... with d = l^(b-a) for two primed blocks B_a', B_b'
// joined to B_r by multiple edges.
bool alternating_cycle(CaseReport& rep, const Graph& g, const DplusModel& m, const BlockSystem& bs,
                       const QuotientGraph& qg) {
  rep.attempted.push_back(Strategy::AlternatingCycle);
  auto r = m.r;
  auto plain = [&](std::uint64_t i) { return bs.block_of[m.index(false, 0, i % r)]; };
  auto primed = [&](std::uint64_t i) { return bs.block_of[m.index(true, 0, i % r)]; };
  auto b0 = plain(0);
  std::vector<std::uint64_t> usable;
  for (std::uint64_t i = 0; i < r; ++i)
    if (qg.d[b0][primed(i)] >= 2) usable.push_back(i);
  for (auto a : usable)
    for (auto b : usable) {
      if (a == b) continue;
      auto delta = (b + r - a) % r;
      std::vector<std::uint32_t> qc;
      for (std::uint64_t k = 0; k < r; ++k) {
        qc.push_back(primed(a + k * delta));
        qc.push_back(plain(k * delta));
      }
      if (try_lift(rep, g, bs, qg, qc, Strategy::AlternatingCycle)) return true;
    }
  return false;
}

void dplus_run(std::uint64_t q, std::optional<std::size_t> only, const RunOptions& opts, std::vector<CaseReport>& out) {
  auto m = dplus_action(q);
  auto descs = classify_suborbits_dplus(m);
  auto subs = suborbits(m.action);
  auto bs = block_system(m.action.generators[0]);
  auto r = static_cast<std::uint32_t>(m.r);
  for (std::size_t k = 0; k < descs.size(); ++k) {
    if (only ? *only != k : skip_partner(descs[k])) continue;
    auto t0 = Clock::now();
    const auto& d = descs[k];
    auto g = orbital_graph(m.action, subs, suborbit_index(subs, d.representative), 0, m.labels);
    auto rep = start("psl2-dplus", "q=" + std::to_string(q), std::to_string(k) + " " + describe(d), g);
    check(rep, "valency", static_cast<std::int64_t>(d.self_paired ? d.length : 2 * d.length), rep.valency);
    check(rep, "connected", 1, is_connected(g));
    auto qg = quotient(g, bs);
    auto deg = block_degrees_dplus(m, d);
    std::int64_t bad = 0;
    for (std::uint32_t b = 0; b < qg.m; ++b) bad += qg.d[0][b] != deg.d[b];
    check(rep, "block degrees: formula vs edge count mismatches", 0, bad);
    std::int64_t odd = 0, over = 0;
    for (std::uint32_t b = r; b < 2 * r; ++b) {
      odd += deg.d[b] % 2;
      over += deg.d[b] > (d.kind == SuborbitCase::SPShort ? 4u : 8u);
    }
    switch (d.kind) {
      case SuborbitCase::SPShort:
        check(rep, "odd d(B_r,B_i') entries", 1, odd);
        check(rep, "d(B_r,B_i') > 4 entries", 0, over);
        break;
      case SuborbitCase::NSPShort:
        check(rep, "odd d(B_r,B_i') entries", 0, odd);
        check(rep, "d(B_r,B_i') > 8 entries", 0, over);
        break;
      default:
        check(rep, "d(B_r)", 2, deg.d[0]);
        check(rep, "odd d(B_r,B_i') entries", 0, odd);
    }
    if (d.kind != SuborbitCase::SPLong) {
      auto lb = dplus_short_lower_bound(q);
      check(rep, "d(H, union B') >= 2 floor((q-11-2 sqrt q)/8)", 1, static_cast<std::int64_t>(deg.primed_total()) >= lb);
    }
    bool done = false;
    if (opts.constructive) done = alternating_cycle(rep, g, m, bs, qg) || quotient_rung(rep, g, bs, opts);
    if (!done) search_rungs(rep, g, opts);
    rep.elapsed_ms = ms_since(t0);
    out.push_back(std::move(rep));
  }
}

}  // namespace

void search_rungs(CaseReport& rep, const Graph& g, const RunOptions& opts) {
  SearchOptions so;
  so.budget = opts.budget;
  so.jobs = opts.jobs;
  auto tag = density_hamiltonian(g);
  auto rung = tag ? Strategy::DensitySearch : Strategy::Search;
  rep.attempted.push_back(rung);
  if (tag) rep.notes.push_back(std::string("density: ") + density_name(*tag));
  auto res = find_hcycle(g, so);
  if (res.status == SearchStatus::Found) {
    accept(rep, g, std::move(*res.certificate), rung);
    return;
  }
  if (res.status == SearchStatus::Exhausted) {
    // every root branch ran to completion
    rep.attempted.push_back(Strategy::Exhaustive);
    rep.strategy = Strategy::Exhaustive;
    rep.outcome = Outcome::NonHamiltonian;
    return;
  }
  rep.outcome = Outcome::Timeout;
}

bool quotient_lift_rung(CaseReport& rep, const Graph& g, const Permutation& rho, const RunOptions& opts) {
  auto bs = block_system(rho);
  if (!is_prime(bs.p) || bs.m() < 3 || !is_automorphism(g, rho)) return false;
  return quotient_rung(rep, g, bs, opts);
}

std::vector<CaseReport> dihedral_cases(std::uint64_t q, DihedralFamily fam, std::optional<std::size_t> only,
                                       const RunOptions& opts) {
  std::vector<CaseReport> out;
  if (fam == DihedralFamily::Dminus)
    dminus_run(q, only, opts, out);
  else
    dplus_run(q, only, opts, out);
  if (only && out.empty()) throw std::out_of_range("dihedral_cases: no suborbit " + std::to_string(*only));
  return out;
}

CaseReport dihedral_pipeline(std::uint64_t q, DihedralFamily fam, std::size_t k, const RunOptions& opts) {
  return std::move(dihedral_cases(q, fam, k, opts).front());
}

std::uint32_t pair_index(std::uint32_t c, std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return a * c - a * (a + 1) / 2 + (b - a - 1);
}

namespace {

Graph two_subset_graph(std::uint32_t c, bool meet) {
  if (c < 3) throw std::invalid_argument("2-subset graphs need c >= 3");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> sets;
  std::vector<ActionVertex> labels;
  for (std::uint32_t a = 0; a < c; ++a)
    for (std::uint32_t b = a + 1; b < c; ++b) {
      sets.emplace_back(a, b);
      labels.push_back(TwoSubset{a, b});
    }
  auto n = static_cast<std::uint32_t>(sets.size());
  GraphBuilder gb(n);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = x + 1; y < n; ++y) {
      auto [a, b] = sets[x];
      auto [u, v] = sets[y];
      int common = (a == u) + (a == v) + (b == u) + (b == v);
      if ((common == 1) == meet && common < 2) gb.add_edge(x, y);
    }
  return std::move(gb).build(std::move(labels));
}

}  // namespace

Graph johnson_graph(std::uint32_t c) { return two_subset_graph(c, true); }
Graph kneser_graph(std::uint32_t c) { return two_subset_graph(c, false); }

HamiltonCertificate johnson_splice(std::uint32_t c) {
  if (c < 5) throw std::invalid_argument("johnson_splice: c must be at least 5");
  auto n = c * (c - 1) / 2;
  std::vector<char> used(n, 0);
  auto spine = [&](std::uint32_t k) { return pair_index(c, k, (k + 1) % c); };
  for (std::uint32_t k = 0; k < c; ++k) used[spine(k)] = 1;  // reserved as path ends
  std::vector<std::uint32_t> cycle{spine(0)};
  // pivot k: from {k-1,k} through the unused sets containing k to {k,k+1}
  for (std::uint32_t k = 1; k + 1 < c; ++k) {
    for (std::uint32_t x = 0; x < c; ++x) {
      if (x == k) continue;
      auto v = pair_index(c, k, x);
      if (used[v]) continue;
      used[v] = 1;
      cycle.push_back(v);
    }
    cycle.push_back(spine(k));
  }
  cycle.push_back(spine(c - 1));
  if (cycle.size() != n) throw std::logic_error("johnson_splice: cells do not partition the 2-subsets");
  HamiltonCertificate cert;
  cert.cycle = std::move(cycle);
  cert.graph_hash = johnson_graph(c).content_hash();
  return cert;
}

CaseReport johnson_case(std::uint32_t c, const RunOptions& opts) {
  auto t0 = Clock::now();
  auto g = johnson_graph(c);
  auto rep = start("alt-2sets", "c=" + std::to_string(c), "0 meet-in-one-point", g);
  check(rep, "valency 2(c-2)", 2 * (c - 2), rep.valency);
  if (opts.constructive) {
    rep.attempted.push_back(Strategy::StarSplice);
    accept(rep, g, johnson_splice(c), Strategy::StarSplice);
  } else {
    search_rungs(rep, g, opts);
  }
  rep.notes.push_back("vertex count C(c,2) = c(c-1)/2, not c(c+1)/2");
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

CaseReport kneser_case(std::uint32_t c, const RunOptions& opts) {
  if (c < 5) throw std::invalid_argument("kneser_case: c must be at least 5");
  auto t0 = Clock::now();
  auto g = kneser_graph(c);
  auto rep = start("alt-2sets", "c=" + std::to_string(c), "1 disjoint", g);
  check(rep, "valency C(c-2,2)", (c - 2) * (c - 3) / 2, rep.valency);
  if (c <= 6) {
    rep.attempted.push_back(Strategy::Exhaustive);
    auto v = prove_nonhamiltonian(g);
    rep.strategy = Strategy::Exhaustive;
    if (v.verdict == Verdict::Hamiltonian) {
      accept(rep, g, std::move(*v.witness), Strategy::Exhaustive);
    } else {
      rep.outcome = Outcome::NonHamiltonian;
      if (c == 5) rep.notes.push_back("Petersen graph");
    }
  } else {
    if (2 * rep.valency <= rep.n) rep.notes.push_back("valency does not exceed n/2");
    search_rungs(rep, g, opts);
  }
  rep.elapsed_ms = ms_since(t0);
  return rep;
}

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Star-of-alpha cycle for 2-spaces of F_q^4: alpha = e0, the plane P = <e1,e2,e3>
// with points beta_i = beta h^i.  Sets through beta_k not inside P form X_k.
HamiltonCertificate grassmann_star_splice(const SubspaceSet& sp, const Graph& g) {
  const auto& f = sp.field();
  auto q = f.p();
  auto s = static_cast<std::uint32_t>(q * q + q + 1);
  auto h = block_diagonal({identity_matrix(1), singer_matrix(f, 3)});
  std::vector<Vec> beta;
  std::unordered_map<std::uint64_t, std::uint32_t> beta_index;
  Vec b{0, 1, 0, 0};
  for (std::uint32_t i = 0; i < s; ++i) {
    beta.push_back(b);
    if (!beta_index.emplace(encode(f, b), i).second) throw std::logic_error("Singer orbit shorter than s");
    b = normalize(f, vec_mul(f, b, h));
  }
  Vec alpha{1, 0, 0, 0};
  std::vector<std::vector<std::uint32_t>> cells(s);
  for (std::uint32_t w = 0; w < sp.size(); ++w) {
    const auto& rows = sp[w];
    if (rows[0][0] == 0) continue;  // inside P: a spine vertex
    auto k = beta_index.at(encode(f, normalize(f, rows[1])));
    cells[k].push_back(w);
  }
  std::vector<std::uint32_t> cycle;
  for (std::uint32_t step = 1; step <= s; ++step) {
    auto k = step % s;
    auto spine = sp.index_of({beta[(k + s - 1) % s], beta[k]});
    auto star_end = sp.index_of({alpha, beta[k]});
    cycle.push_back(spine);
    for (auto w : cells[k])
      if (w != star_end) cycle.push_back(w);
    cycle.push_back(star_end);
  }
  if (cycle.size() != sp.size()) throw std::logic_error("star splice: cells and spine do not partition the 2-spaces");
  HamiltonCertificate cert;
  cert.cycle = std::move(cycle);
  cert.graph_hash = g.content_hash();
  return cert;
}

}  // namespace

SingerCover singer_cover(std::uint64_t q) {
  PrimeField f(q);
  auto sp = two_spaces(f, 5);
  auto h = singer_matrix(f, 5);
  auto s = static_cast<std::uint32_t>((ipow(q, 5) - 1) / (q - 1));
  std::vector<Vec> alpha;
  Vec a{1, 0, 0, 0, 0};
  for (std::uint32_t i = 0; i < s; ++i) {
    alpha.push_back(a);
    a = normalize(f, vec_mul(f, a, h));
  }
  SingerCover cover;
  cover.n = sp.size();
  cover.s = s;
  std::vector<char> covered(sp.size(), 0);
  for (std::uint32_t i = 1; i < s; ++i) {
    if (covered[sp.index_of({alpha[0], alpha[i]})]) continue;
    std::vector<std::uint32_t> chain;
    for (std::uint64_t k = 0; k < s; ++k) {
      auto w = sp.index_of({alpha[(k * i) % s], alpha[((k + 1) * i) % s]});
      if (covered[w]) throw std::logic_error("singer_cover: orbit is not regular");
      covered[w] = 1;
      chain.push_back(w);
    }
    cover.chains.push_back(std::move(chain));
  }
  if (std::count(covered.begin(), covered.end(), 1) != static_cast<std::ptrdiff_t>(sp.size()))
    throw std::logic_error("singer_cover: chains miss some 2-space");
  return cover;
}

namespace {

std::uint64_t gaussian_2(std::uint32_t m, std::uint64_t q) {
  return (ipow(q, m) - 1) * (ipow(q, m - 1) - 1) / ((q - 1) * (q * q - 1));
}

struct GrassmannGraphs {
  SubspaceSet sp;
  Graph delta1, delta2;
};

GrassmannGraphs build_grassmann(std::uint32_t m, std::uint64_t q, std::uint32_t cap) {
  if (m != 4 && m != 5) throw std::invalid_argument("grassmann: m must be 4 or 5");
  if (gaussian_2(m, q) > cap) throw std::length_error("grassmann: vertex cap exceeded");
  PrimeField f(q);
  auto sp = two_spaces(f, m);
  auto n = sp.size();
  GraphBuilder b1(n), b2(n);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = x + 1; y < n; ++y) {
      Matrix rows = sp[x];
      rows.insert(rows.end(), sp[y].begin(), sp[y].end());
      auto rk = rank(f, rows);
      if (rk == 3) b1.add_edge(x, y);
      if (rk == 4) b2.add_edge(x, y);
    }
  std::vector<ActionVertex> labels;
  for (std::uint32_t k = 0; k < n; ++k) labels.push_back(SubspaceVertex{sp.codes(k)});
  auto g1 = std::move(b1).build(labels);
  auto g2 = std::move(b2).build(std::move(labels));
  return {std::move(sp), std::move(g1), std::move(g2)};
}

struct OrthogonalSpec {
  std::uint64_t n, d1, d2, internal, cross, blocks;
  unsigned singer_dim;
};

OrthogonalSpec orthogonal_spec(char sign, std::uint32_t two_m, std::uint64_t q) {
  if (two_m % 2 || two_m < 4) throw std::invalid_argument("orthogonal: dimension must be even and >= 4");
  auto k = two_m / 2;
  if (sign == '-') {
    if (two_m != 8 || q == 2) throw std::invalid_argument("orthogonal: minus type needs 2m = 8 and q odd");
    return {(ipow(q, 4) + 1) * (ipow(q, 3) - 1) / (q - 1), ipow(q, 5) + ipow(q, 4) + q * q + q, ipow(q, 6), q * q + q,
            q + 1, ipow(q, 4) + 1, 3};
  }
  if (sign != '+') throw std::invalid_argument("orthogonal: sign must be + or -");
  return {(ipow(q, k) - 1) * (ipow(q, k - 1) + 1) / (q - 1),
          (ipow(q, k - 1) + q) * (ipow(q, k - 1) - 1) / (q - 1),
          ipow(q, two_m - 2),
          (ipow(q, k) - 1) / (q - 1) - 1,
          (ipow(q, k - 1) - 1) / (q - 1),
          ipow(q, k - 1) + 1,
          k};
}

struct OrthogonalGraphs {
  QuadraticForm form;
  std::vector<Vec> pts;
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  Graph delta1, delta2;
};

OrthogonalGraphs build_orthogonal(char sign, std::uint32_t two_m, std::uint64_t q, const OrthogonalSpec& spec,
                                  std::uint32_t cap) {
  if (spec.n > cap) throw std::length_error("orthogonal: vertex cap exceeded");
  PrimeField f(q);
  OrthogonalGraphs o{sign == '-' ? elliptic_form(f, 3) : hyperbolic_form(f, two_m / 2), {}, {}, {}, {}};
  o.pts = singular_points(o.form);
  if (o.pts.size() != spec.n)
    throw std::logic_error("orthogonal: " + std::to_string(o.pts.size()) + " singular points, expected " +
                           std::to_string(spec.n));
  auto n = static_cast<std::uint32_t>(o.pts.size());
  std::vector<ActionVertex> labels;
  for (std::uint32_t x = 0; x < n; ++x) {
    o.index[encode(f, o.pts[x])] = x;
    labels.push_back(SingularPoint{encode(f, o.pts[x])});
  }
  GraphBuilder b1(n), b2(n);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = x + 1; y < n; ++y) {
      if (o.form.polar(o.pts[x], o.pts[y]) == 0)
        b1.add_edge(x, y);
      else
        b2.add_edge(x, y);
    }
  o.delta1 = std::move(b1).build(labels);
  o.delta2 = std::move(b2).build(std::move(labels));
  return o;
}

}  // namespace

Graph grassmann_graph(std::uint32_t m, std::uint64_t q, std::size_t k, std::uint32_t cap) {
  if (k > 1) throw std::out_of_range("grassmann_graph: suborbit must be 0 or 1");
  auto gg = build_grassmann(m, q, cap);
  return k == 0 ? std::move(gg.delta1) : std::move(gg.delta2);
}

Graph orthogonal_graph(char sign, std::uint32_t two_m, std::uint64_t q, std::size_t k, std::uint32_t cap) {
  if (k > 1) throw std::out_of_range("orthogonal_graph: suborbit must be 0 or 1");
  auto og = build_orthogonal(sign, two_m, q, orthogonal_spec(sign, two_m, q), cap);
  return k == 0 ? std::move(og.delta1) : std::move(og.delta2);
}

std::vector<CaseReport> grassmann_case(std::uint32_t m, std::uint64_t q, const RunOptions& opts, std::uint32_t cap,
                                       std::optional<std::size_t> only) {
  if (only && *only > 1) throw std::out_of_range("grassmann_case: suborbit must be 0 or 1");
  auto t0 = Clock::now();
  auto gg = build_grassmann(m, q, cap);
  const auto& sp = gg.sp;
  const auto& g1 = gg.delta1;
  const auto& g2 = gg.delta2;
  auto n = sp.size();
  auto family = m == 4 ? "psl4-2spaces" : "psl5-2spaces";
  auto params = "q=" + std::to_string(q);
  auto build_ms = ms_since(t0);

  std::vector<CaseReport> out;
  if (!only || *only == 0) {
    auto t1 = Clock::now();
    auto r1 = start(family, params, "0 Delta1 meet-in-a-point", g1);
    check(r1, "n = [m 2]_q", static_cast<std::int64_t>(gaussian_2(m, q)), n);
    if (m == 4) {
      check(r1, "|Delta1| = q(q+1)^2 (enumeration)", static_cast<std::int64_t>(q * (q + 1) * (q + 1)), r1.valency);
      check(r1, "|Delta1| = (q^3-1)/(q-1), known discrepancy", static_cast<std::int64_t>((ipow(q, 3) - 1) / (q - 1)),
            r1.valency, true);
      r1.notes.push_back("enumerated |Delta1| = " + std::to_string(r1.valency) +
                         " differs from (q^3-1)/(q-1)");
    } else {
      check(r1, "|Delta1| = q(q+1)(q^2+q+1)", static_cast<std::int64_t>(q * (q + 1) * (q * q + q + 1)), r1.valency);
    }
    if (opts.constructive) {
      if (m == 4) {
        r1.attempted.push_back(Strategy::StarSplice);
        accept(r1, g1, grassmann_star_splice(sp, g1), Strategy::StarSplice);
      } else {
        r1.attempted.push_back(Strategy::SingerCover);
        auto cover = singer_cover(q);
        check(r1, "Singer chains = q^2+1", static_cast<std::int64_t>(q * q + 1), cover.chains.size());
        check(r1, "chains x s = n", n, static_cast<std::int64_t>(cover.chains.size()) * cover.s);
        HamiltonCertificate cert;
        for (auto& c : cover.chains) cert.cycle.insert(cert.cycle.end(), c.begin(), c.end());
        cert.graph_hash = g1.content_hash();
        accept(r1, g1, std::move(cert), Strategy::SingerCover);
      }
    }
    if (!r1.certificate) search_rungs(r1, g1, opts);
    r1.elapsed_ms = build_ms + ms_since(t1);
    out.push_back(std::move(r1));
  }
  if (!only || *only == 1) {
    auto t2 = Clock::now();
    auto r2 = start(family, params, "1 Delta2 disjoint", g2);
    auto d2 = m == 4 ? ipow(q, 4) : ipow(q, 4) * (q * q + q + 1);
    check(r2, m == 4 ? "|Delta2| = q^4" : "|Delta2| = q^4(q^2+q+1)", static_cast<std::int64_t>(d2), r2.valency);
    check(r2, "|Delta2| >= n/2", 1, 2 * r2.valency >= n);
    search_rungs(r2, g2, opts);
    r2.elapsed_ms = build_ms + ms_since(t2);
    out.push_back(std::move(r2));
  }
  return out;
}

std::vector<CaseReport> orthogonal_case(char sign, std::uint32_t two_m, std::uint64_t q, const RunOptions& opts,
                                        std::uint32_t cap, std::optional<std::size_t> only) {
  if (only && *only > 1) throw std::out_of_range("orthogonal_case: suborbit must be 0 or 1");
  auto spec = orthogonal_spec(sign, two_m, q);
  PrimeField f(q);
  auto t0 = Clock::now();
  auto og = build_orthogonal(sign, two_m, q, spec, cap);
  const auto& g1 = og.delta1;
  const auto& g2 = og.delta2;
  auto n = g1.n();
  auto family = sign == '-' ? "pomega-minus" : "pomega-plus";
  auto params = "2m=" + std::to_string(two_m) + " q=" + std::to_string(q);
  auto build_ms = ms_since(t0);

  std::vector<CaseReport> out;
  if (!only || *only == 0) {
    auto t1 = Clock::now();
    auto r1 = start(family, params, "0 Delta1 perpendicular", g1);
    check(r1, "t.s. points", static_cast<std::int64_t>(spec.n), n);
    check(r1, "|Delta1|", static_cast<std::int64_t>(spec.d1), r1.valency);
    if (opts.constructive) {
      r1.attempted.push_back(Strategy::CompleteQuotient);
      auto c = matrix_pow(f, singer_matrix(f, spec.singer_dim), q - 1);
      std::vector<Matrix> parts{c, matrix_inverse(f, transpose(c))};
      if (sign == '-') parts.push_back(identity_matrix(2));
      auto bm = block_diagonal(parts);
      check(r1, "B preserves the form", 1, og.form.preserved_by(bm));
      std::vector<std::uint32_t> img(n);
      for (std::uint32_t x = 0; x < n; ++x)
        img[x] = og.index.at(encode(f, normalize(f, vec_mul(f, og.pts[x], bm))));
      auto bs = block_system(Permutation(std::move(img)));
      auto qg = quotient(g1, bs);
      check(r1, "blocks", static_cast<std::int64_t>(spec.blocks), qg.m);
      // the counts are stated for the block of alpha; S is not normal, so other rows differ
      auto a0 = bs.block_of[0];
      std::int64_t bad_cross = 0, missing = 0;
      for (std::uint32_t b = 0; b < qg.m; ++b) {
        if (b != a0) bad_cross += qg.d[a0][b] != spec.cross;
        for (std::uint32_t a = 0; a < b; ++a) missing += !qg.adjacent(a, b);
      }
      check(r1, "d(alpha^S) internal", static_cast<std::int64_t>(spec.internal), qg.d[a0][a0]);
      check(r1, "d(alpha^S, B) != " + std::to_string(spec.cross) + ": blocks", 0, bad_cross);
      check(r1, "|Delta1| = internal + (blocks-1) cross", static_cast<std::int64_t>(spec.d1),
            static_cast<std::int64_t>(spec.internal + (spec.blocks - 1) * spec.cross));
      // completeness is asserted from the row of alpha alone
      check(r1, "quotient complete: missing edges", 0, missing, missing != 0);
      if (missing)
        r1.notes.push_back("block quotient is not complete: " + std::to_string(missing) + " block pairs without edges");
      std::vector<std::uint32_t> qc(qg.m);
      std::iota(qc.begin(), qc.end(), 0u);
      if (missing != 0 || !try_lift(r1, g1, bs, qg, qc, Strategy::CompleteQuotient)) quotient_rung(r1, g1, bs, opts);
    }
    if (!r1.certificate) search_rungs(r1, g1, opts);
    r1.elapsed_ms = build_ms + ms_since(t1);
    out.push_back(std::move(r1));
  }
  if (!only || *only == 1) {
    auto t2 = Clock::now();
    auto r2 = start(family, params, "1 Delta2 non-perpendicular", g2);
    check(r2, "|Delta2| = q^(2m-2)", static_cast<std::int64_t>(spec.d2), r2.valency);
    search_rungs(r2, g2, opts);
    r2.elapsed_ms = build_ms + ms_since(t2);
    out.push_back(std::move(r2));
  }
  return out;
}

}  // namespace hamvt
