#include "hamvt/families.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "hamvt/geometry.hpp"
#include "hamvt/psl2.hpp"
#include "hamvt/quolift.hpp"

namespace hamvt {

namespace fs = std::filesystem;

const std::vector<FamilyInfo>& family_table() {
  static const std::vector<FamilyInfo> table = {
      {"psl2-dminus", FamilyKind::Dihedral, "PSL(2,q) on cosets of D_{q-1} (unordered pairs of points)", 'q', 19, {}},
      {"psl2-dplus", FamilyKind::Dihedral, "PSL(2,q) on cosets of D_{q+1}", 'q', 13, {}},
      {"psl2-17-s4", FamilyKind::Abstract, "PSL(2,17) on cosets of S4, 102 points", 0, 0, {}},
      {"psl2-41-a5", FamilyKind::Abstract, "PSL(2,41) on cosets of A5, 574 points", 0, 0, {}},
      {"psl2-47-s4", FamilyKind::Abstract, "PSL(2,47) on cosets of S4, 2162 points", 0, 0, {}},
      {"psl4-2spaces", FamilyKind::Grassmann, "PSL(4,q) on 2-spaces", 'q', 3, {}},
      {"psl5-2spaces", FamilyKind::Grassmann, "PSL(5,q) on 2-spaces", 'q', 2, {}},
      {"pomega-minus", FamilyKind::Orthogonal, "POmega-(8,q) on totally singular points", 'q', 3, {}},
      {"pomega-plus", FamilyKind::Orthogonal, "POmega+(10,q) on totally singular points", 'q', 2, {}},
      {"psl3-5-flags", FamilyKind::Abstract, "PSL(3,5) with a polarity on the 186 flags", 0, 0, {10, 50, 125}},
      {"alt-2sets", FamilyKind::TwoSubsets, "A_c on 2-subsets (0: Johnson, 1: Kneser)", 'c', 7, {}},
      {"m11-cosets", FamilyKind::Abstract, "M11 on cosets of S5, 66 points", 0, 0, {15, 20, 30}},
      {"m12-cosets", FamilyKind::Abstract, "M12 on cosets of M10:2 (2-subsets), 66 points", 0, 0, {20, 45}},
      {"m23-cosets", FamilyKind::Abstract, "M23 on cosets of A8 (octads), 506 points", 0, 0, {15, 210, 280}},
      {"j1-cosets", FamilyKind::Abstract, "J1 on cosets of PSL(2,11), 266 points", 0, 0, {11, 12, 110, 132}},
      {"coxeter", FamilyKind::FixedGraph, "Coxeter graph, 28 points (shipped edge list)", 0, 0, {}},
  };
  return table;
}

const FamilyInfo& family_info(std::string_view id) {
  for (const auto& f : family_table())
    if (f.id == id) return f;
  throw std::invalid_argument("unknown family '" + std::string(id) + "'");
}

std::string CaseDescriptor::id() const {
  std::ostringstream os;
  os << family;
  if (q) os << " q=" << *q;
  if (c) os << " c=" << *c;
  if (suborbit) os << " suborbit=" << *suborbit;
  if (strategy != "auto") os << " strategy=" << strategy;
  return os.str();
}

CaseDescriptor parse_case(std::string_view line) {
  std::istringstream is{std::string(line.substr(0, line.find('#')))};
  CaseDescriptor d;
  if (!(is >> d.family)) throw std::invalid_argument("empty case line");
  const auto& fam = family_info(d.family);
  std::string tok;
  auto number = [](const std::string& key, const std::string& v) {
    std::size_t used = 0;
    unsigned long long x = 0;
    try {
      x = std::stoull(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != v.size() || v.empty()) throw std::invalid_argument("bad value for " + key + ": '" + v + "'");
    return static_cast<std::uint64_t>(x);
  };
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got '" + tok + "'");
    auto key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "q" || key == "c") {
      if (fam.param != key[0]) throw std::invalid_argument(d.family + " takes no parameter " + key);
      (key == "q" ? d.q : d.c) = number(key, val);
    } else if (key == "suborbit") {
      d.suborbit = number(key, val);
    } else if (key == "strategy") {
      if (val != "auto" && val != "search") throw std::invalid_argument("strategy must be auto or search");
      d.strategy = val;
    } else {
      throw std::invalid_argument("unknown key '" + key + "'");
    }
  }
  if (fam.param == 'q' && !d.q) d.q = fam.default_param;
  if (fam.param == 'c' && !d.c) d.c = fam.default_param;
  return d;
}

GroupAction two_subset_action(const GroupAction& a) {
  auto n = a.degree;
  GroupAction out;
  out.degree = n * (n - 1) / 2;
  out.generator_names = a.generator_names;
  for (const auto& g : a.generators) {
    std::vector<std::uint32_t> img(out.degree);
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t y = x + 1; y < n; ++y) img[pair_index(n, x, y)] = pair_index(n, g(x), g(y));
    out.generators.emplace_back(std::move(img));
  }
  return out;
}

GroupAction flag_action(std::uint64_t p) {
  PrimeField f(p);
  auto pts = projective_points(f, 3);
  std::vector<std::pair<std::size_t, std::size_t>> flags;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = 0; b < pts.size(); ++b)
      if (dot(f, pts[a], pts[b]) == 0) flags.emplace_back(a, b);
  std::unordered_map<std::uint64_t, std::size_t> code_to_point;
  for (std::size_t k = 0; k < pts.size(); ++k) code_to_point[encode(f, pts[k])] = k;
  auto point_index = [&](const Vec& v) { return code_to_point.at(encode(f, normalize(f, v))); };
  auto flag_index = [&](std::pair<std::size_t, std::size_t> fl) {
    return static_cast<std::uint32_t>(std::lower_bound(flags.begin(), flags.end(), fl) - flags.begin());
  };
  GroupAction act;
  act.degree = static_cast<std::uint32_t>(flags.size());
  // points x -> xM, lines (as dual vectors) l -> l M^{-T}
  for (const auto& m : sl_generators(f, 3)) {
    auto dual = transpose(matrix_inverse(f, m));
    std::vector<std::uint32_t> img;
    for (auto [a, b] : flags) img.push_back(flag_index({point_index(vec_mul(f, pts[a], m)), point_index(vec_mul(f, pts[b], dual))}));
    act.generators.emplace_back(std::move(img));
  }
  std::vector<std::uint32_t> polarity;
  for (auto [a, b] : flags) polarity.push_back(flag_index({b, a}));
  act.generators.emplace_back(std::move(polarity));
  act.generator_names = {"t", "c", "d"};
  return act;
}

namespace {

GroupAction alternating_action(std::uint32_t c) {
  // (0 1 2) with an even c-cycle or (c-1)-cycle
  std::vector<std::uint32_t> cyc;
  for (std::uint32_t x = c % 2 ? 0 : 1; x < c; ++x) cyc.push_back(x);
  GroupAction a;
  a.degree = c;
  a.generators = {Permutation::from_cycles(c, {{0, 1, 2}}), Permutation::from_cycles(c, {cyc})};
  a.generator_names = {"a", "b"};
  return a;
}

GroupAction coset_action_from(const fs::path& sub_file) {
  auto sub = load_subgroup(sub_file);
  auto parent = load_generators(sub.parent);
  std::vector<Permutation> hgens;
  for (const auto& w : sub.words) hgens.push_back(evaluate_word(parent.generators, w));
  PermGroup G(parent.degree, parent.generators);
  PermGroup H(parent.degree, hgens);
  if (sub.order && H.order() != *sub.order)
    throw std::runtime_error(sub_file.string() + ": subgroup order " + std::to_string(H.order()) + ", expected " +
                             std::to_string(*sub.order));
  return coset_action(G, H).action;
}

GroupAction from_generators(const fs::path& file) {
  auto d = load_generators(file);
  GroupAction a;
  a.degree = static_cast<std::uint32_t>(d.degree);
  a.generators = std::move(d.generators);
  for (std::size_t k = 0; k < a.generators.size(); ++k) a.generator_names.emplace_back(1, static_cast<char>('a' + k));
  return a;
}

std::vector<ActionVertex> index_labels(std::uint32_t n) {
  std::vector<ActionVertex> labels;
  for (std::uint32_t k = 0; k < n; ++k) labels.push_back(CosetIndex{k});
  return labels;
}

std::size_t suborbit_of(const std::vector<Suborbit>& subs, std::uint32_t v) {
  for (std::size_t k = 0; k < subs.size(); ++k)
    if (std::binary_search(subs[k].points.begin(), subs[k].points.end(), v)) return k;
  throw std::logic_error("vertex in no suborbit");
}

std::uint64_t param_q(const CaseDescriptor& c) { return c.q.value(); }

}  // namespace

GroupAction abstract_action(const FamilyInfo& fam, const fs::path& data_dir) {
  const auto& id = fam.id;
  if (id == "psl2-17-s4") return coset_action_from(data_dir / "s4_in_psl2_17.sub");
  if (id == "psl2-41-a5") return coset_action_from(data_dir / "a5_in_psl2_41.sub");
  if (id == "psl2-47-s4") return coset_action_from(data_dir / "s4_in_psl2_47.sub");
  if (id == "m11-cosets") return coset_action_from(data_dir / "s5_in_m11.sub");
  if (id == "j1-cosets") return coset_action_from(data_dir / "l2_11_in_j1.sub");
  if (id == "m12-cosets") return two_subset_action(from_generators(data_dir / "m12.gens"));
  if (id == "m23-cosets") return from_generators(data_dir / "m23_octads.gens");
  if (id == "psl3-5-flags") return flag_action(5);
  throw std::invalid_argument(id + " is not an abstract family");
}

namespace {

struct DihedralSetup {
  GroupAction action;
  std::vector<ActionVertex> labels;
  std::vector<SuborbitDescriptor> descs;
};

DihedralSetup dihedral_setup(const CaseDescriptor& c) {
  auto q = param_q(c);
  if (c.family == "psl2-dminus") {
    auto m = pairs_action(q);
    auto descs = classify_suborbits_dminus(m);
    return {m.action, m.labels, std::move(descs)};
  }
  auto m = dplus_action(q);
  auto descs = classify_suborbits_dplus(m);
  return {m.action, m.labels, std::move(descs)};
}

// Action of a family whose suborbits come from a permutation group.
std::optional<GroupAction> group_action_of(const CaseDescriptor& c, const FamilyInfo& fam, const fs::path& data_dir) {
  switch (fam.kind) {
    case FamilyKind::Abstract: return abstract_action(fam, data_dir);
    case FamilyKind::TwoSubsets: return two_subset_action(alternating_action(static_cast<std::uint32_t>(*c.c)));
    case FamilyKind::Grassmann: {
      PrimeField f(param_q(c));
      auto sp = two_spaces(f, c.family == "psl4-2spaces" ? 4 : 5);
      GroupAction a{sp.size(), {}, {"t", "c"}};
      for (const auto& m : sl_generators(f, c.family == "psl4-2spaces" ? 4 : 5)) a.generators.push_back(sp.action(m));
      return a;
    }
    default: return std::nullopt;
  }
}

char orth_sign(const CaseDescriptor& c) { return c.family == "pomega-minus" ? '-' : '+'; }
std::uint32_t orth_dim(const CaseDescriptor& c) { return c.family == "pomega-minus" ? 8 : 10; }

}  // namespace

std::vector<SuborbitRow> family_suborbits(const CaseDescriptor& c, const fs::path& data_dir) {
  const auto& fam = family_info(c.family);
  std::vector<SuborbitRow> rows;
  if (fam.kind == FamilyKind::Dihedral) {
    auto ds = dihedral_setup(c);
    auto subs = suborbits(ds.action);
    for (std::size_t k = 0; k < ds.descs.size(); ++k) {
      const auto& d = ds.descs[k];
      SuborbitRow r;
      r.index = k;
      r.length = d.length;
      r.self_paired = d.self_paired;
      r.paired = k;
      if (d.partner)
        for (std::size_t j = 0; j < ds.descs.size(); ++j)
          if (ds.descs[j].representative == *d.partner) r.paired = j;
      r.representative = to_string(ds.labels[d.representative]);
      r.description = d.word + " " + case_name(d.kind);
      const auto& s = subs[suborbit_of(subs, d.representative)];
      r.oracle_agrees = s.length() == d.length && s.self_paired == d.self_paired &&
                        (!d.partner || s.paired == suborbit_of(subs, *d.partner));
      rows.push_back(std::move(r));
    }
    return rows;
  }
  if (fam.kind == FamilyKind::Orthogonal) {
    // no group generators: the two suborbits are read off the graphs
    for (std::size_t k = 0; k < 2; ++k) {
      auto g = orthogonal_graph(orth_sign(c), orth_dim(c), param_q(c), k);
      SuborbitRow r;
      r.index = k;
      r.length = g.valency();
      r.paired = k;
      r.representative = to_string(g.labels()[g.neighbors(0).front()]);
      r.description = k == 0 ? "perpendicular" : "non-perpendicular";
      rows.push_back(std::move(r));
    }
    return rows;
  }
  auto act = group_action_of(c, fam, data_dir);
  if (!act) throw std::invalid_argument(c.family + " has no group action to list suborbits for");
  auto subs = suborbits(*act);
  for (std::size_t k = 1; k < subs.size(); ++k) {
    SuborbitRow r;
    r.index = k - 1;
    r.length = subs[k].length();
    r.self_paired = subs[k].self_paired;
    r.paired = subs[k].paired - 1;
    r.representative = std::to_string(subs[k].representative());
    rows.push_back(std::move(r));
  }
  if (!fam.suborbit_lengths.empty()) {
    std::vector<std::size_t> got;
    for (auto& r : rows) got.push_back(r.length);
    std::sort(got.begin(), got.end());
    for (auto& r : rows) r.oracle_agrees = got == fam.suborbit_lengths;
  }
  return rows;
}

Graph family_graph(const CaseDescriptor& c, const fs::path& data_dir) {
  const auto& fam = family_info(c.family);
  auto k = c.suborbit.value_or(0);
  switch (fam.kind) {
    case FamilyKind::Dihedral: {
      auto ds = dihedral_setup(c);
      if (k >= ds.descs.size()) throw std::out_of_range("no suborbit " + std::to_string(k));
      auto subs = suborbits(ds.action);
      return orbital_graph(ds.action, subs, suborbit_of(subs, ds.descs[k].representative), 0, ds.labels);
    }
    case FamilyKind::Grassmann:
      return grassmann_graph(c.family == "psl4-2spaces" ? 4 : 5, param_q(c), k);
    case FamilyKind::Orthogonal:
      return orthogonal_graph(orth_sign(c), orth_dim(c), param_q(c), k);
    case FamilyKind::TwoSubsets:
      if (k > 1) throw std::out_of_range("alt-2sets has suborbits 0 and 1");
      return k == 0 ? johnson_graph(static_cast<std::uint32_t>(*c.c)) : kneser_graph(static_cast<std::uint32_t>(*c.c));
    case FamilyKind::FixedGraph:
      return load_edge_list((data_dir / "coxeter.el").string());
    case FamilyKind::Abstract: {
      auto act = abstract_action(fam, data_dir);
      auto subs = suborbits(act);
      if (k + 1 >= subs.size()) throw std::out_of_range("no suborbit " + std::to_string(k));
      return orbital_graph(act, subs, k + 1, 0, index_labels(act.degree));
    }
  }
  throw std::logic_error("family_graph: unhandled kind");
}

namespace {

std::vector<CaseReport> run_abstract(const CaseDescriptor& c, const FamilyInfo& fam, const RunOptions& opts,
                                     const fs::path& data_dir) {
  auto act = abstract_action(fam, data_dir);
  auto subs = suborbits(act);
  if (c.suborbit && *c.suborbit + 1 >= subs.size()) throw std::out_of_range("no suborbit " + std::to_string(*c.suborbit));
  std::vector<std::size_t> lengths;
  for (std::size_t k = 1; k < subs.size(); ++k) lengths.push_back(subs[k].length());
  std::sort(lengths.begin(), lengths.end());
  PermGroup G(act.degree, act.generators);
  auto labels = index_labels(act.degree);
  std::vector<CaseReport> out;
  for (std::size_t k = 1; k < subs.size(); ++k) {
    if (c.suborbit ? *c.suborbit + 1 != k : subs[k].paired < k) continue;
    auto t0 = std::chrono::steady_clock::now();
    auto g = orbital_graph(act, subs, k, 0, labels);
    CaseReport rep;
    rep.family = c.family;
    rep.suborbit = std::to_string(k - 1) + " len " + std::to_string(subs[k].length()) +
                   (subs[k].self_paired ? "" : " paired " + std::to_string(subs[k].paired - 1));
    rep.n = g.n();
    rep.valency = g.valency();
    rep.graph = std::make_shared<const Graph>(g);
    auto expect = subs[k].self_paired ? subs[k].length() : 2 * subs[k].length();
    rep.checks.push_back({"valency", static_cast<std::int64_t>(expect), static_cast<std::int64_t>(rep.valency)});
    rep.checks.push_back({"connected", 1, is_connected(g)});
    if (!fam.suborbit_lengths.empty())
      rep.checks.push_back({"suborbit lengths as expected", 1, lengths == fam.suborbit_lengths});
    bool done = false;
    if (opts.constructive && !density_hamiltonian(g)) {
      // quotient by a semiregular element of the largest prime order dividing n/2
      auto primes = prime_factors(g.n());
      std::mt19937_64 rng(g.n());
      for (auto it = primes.rbegin(); it != primes.rend() && !done; ++it) {
        if (*it == 2) continue;
        if (auto rho = find_semiregular(G, static_cast<std::uint32_t>(*it), rng)) done = quotient_lift_rung(rep, g, *rho, opts);
      }
    }
    if (!done) search_rungs(rep, g, opts);
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace

std::vector<CaseReport> run_case(const CaseDescriptor& c, const RunOptions& base, const fs::path& data_dir) {
  const auto& fam = family_info(c.family);
  auto opts = base;
  if (c.strategy == "search") opts.constructive = false;
  std::vector<CaseReport> out;
  switch (fam.kind) {
    case FamilyKind::Dihedral:
      out = dihedral_cases(param_q(c), c.family == "psl2-dminus" ? DihedralFamily::Dminus : DihedralFamily::Dplus,
                           c.suborbit, opts);
      break;
    case FamilyKind::Grassmann:
      out = grassmann_case(c.family == "psl4-2spaces" ? 4 : 5, param_q(c), opts, 20000, c.suborbit);
      break;
    case FamilyKind::Orthogonal:
      out = orthogonal_case(orth_sign(c), orth_dim(c), param_q(c), opts, 20000, c.suborbit);
      break;
    case FamilyKind::TwoSubsets: {
      auto cc = static_cast<std::uint32_t>(*c.c);
      if (c.suborbit && *c.suborbit > 1) throw std::out_of_range("alt-2sets has suborbits 0 and 1");
      if (!c.suborbit || *c.suborbit == 0) out.push_back(johnson_case(cc, opts));
      if (!c.suborbit || *c.suborbit == 1) out.push_back(kneser_case(cc, opts));
      break;
    }
    case FamilyKind::FixedGraph: {
      auto t0 = std::chrono::steady_clock::now();
      auto g = load_edge_list((data_dir / "coxeter.el").string());
      CaseReport rep;
      rep.family = c.family;
      rep.suborbit = "0";
      rep.n = g.n();
      rep.valency = g.valency();
      rep.graph = std::make_shared<const Graph>(g);
      rep.attempted.push_back(Strategy::Exhaustive);
      auto v = prove_nonhamiltonian(g);
      rep.strategy = Strategy::Exhaustive;
      rep.outcome = v.verdict == Verdict::NonHamiltonian ? Outcome::NonHamiltonian : Outcome::Hamiltonian;
      if (v.witness) rep.certificate = std::move(v.witness);
      rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      out.push_back(std::move(rep));
      break;
    }
    case FamilyKind::Abstract:
      out = run_abstract(c, fam, opts, data_dir);
      break;
  }
  for (auto& r : out) r.family = c.family;
  return out;
}

}  // namespace hamvt
