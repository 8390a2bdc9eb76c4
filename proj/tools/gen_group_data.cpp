// Regenerates data/: generator files for the abstract-group families, subgroup
// words found by seeded random search, the M23 octad action and the Coxeter graph.
// Every group order is checked before anything is written.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "hamvt/geometry.hpp"
#include "hamvt/graph.hpp"
#include "hamvt/permgrp.hpp"
#include "hamvt/psl2.hpp"

using namespace hamvt;
namespace fs = std::filesystem;

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error("check failed: " + what);
}

std::string random_word(std::mt19937_64& rng, std::size_t ngens, int len) {
  std::ostringstream os;
  for (int k = 0; k < len; ++k) {
    if (k) os << ' ';
    os << static_cast<char>('a' + rng() % ngens);
    if (auto e = rng() % 3; e) os << "^" << (e == 1 ? "-1" : "2");
  }
  return os.str();
}

// Random words x, y of orders ox, oy with x*y of order oxy generating a group of `order`.
std::pair<std::string, std::string> find_pair(const std::vector<Permutation>& gens, std::uint64_t ox, std::uint64_t oy,
                                              std::uint64_t oxy, std::uint64_t order, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto n = gens.front().degree();
  auto with_order = [&](std::uint64_t o) {
    for (;;) {
      auto w = random_word(rng, gens.size(), 8 + static_cast<int>(rng() % 16));
      auto p = evaluate_word(gens, w);
      auto po = p.order();
      if (po % o == 0) {
        // shorten to the right power by appending the word again
        std::string full = w;
        for (std::uint64_t k = 1; k < po / o; ++k) full += " " + w;
        return std::pair{full, p.pow(static_cast<std::int64_t>(po / o))};
      }
    }
  };
  for (int tries = 0; tries < 200000; ++tries) {
    auto [wx, x] = with_order(ox);
    auto [wy, y] = with_order(oy);
    if ((x * y).order() != oxy) continue;
    if (PermGroup(n, {x, y}).order() == order) return {wx, wy};
  }
  throw std::runtime_error("find_pair: no subgroup found");
}

void write_subgroup(const fs::path& path, const std::string& parent, std::uint64_t order,
                    const std::pair<std::string, std::string>& words, const std::string& comment) {
  std::ofstream out(path);
  out << "# " << comment << "\nparent " << parent << "\norder " << order << '\n'
      << words.first << '\n'
      << words.second << '\n';
}

void psl2_data(const fs::path& dir, std::uint64_t q, bool s4) {
  auto act = projective_line_action(q);
  auto name = "psl2_" + std::to_string(q) + ".gens";
  save_generators(dir / name, {act.degree, act.generators},
                  "PSL(2," + std::to_string(q) + ") on the projective line: a = z+1, b = -1/z");
  require(PermGroup(act.degree, act.generators).order() == q * (q * q - 1) / 2, "PSL(2,q) order");
  if (s4) {
    // <x, y | x^4 = y^3 = (xy)^2 = 1> is S4
    auto w = find_pair(act.generators, 4, 3, 2, 24, q);
    write_subgroup(dir / ("s4_in_psl2_" + std::to_string(q) + ".sub"), name, 24, w, "S4 in PSL(2," + std::to_string(q) + ")");
  } else {
    auto w = find_pair(act.generators, 2, 3, 5, 60, q);
    write_subgroup(dir / ("a5_in_psl2_" + std::to_string(q) + ".sub"), name, 60, w, "A5 in PSL(2," + std::to_string(q) + ")");
  }
  std::cout << "PSL(2," << q << ") done\n";
}

void mathieu_12_11(const fs::path& dir) {
  auto a = Permutation::parse(12, "(0 1 2 3 4 5 6 7 8 9 10)");
  auto b = Permutation::parse(12, "(2 6 10 7)(3 9 4 5)");
  auto c = Permutation::parse(12, "(0 11)(1 10)(2 5)(3 7)(4 8)(6 9)");
  require(PermGroup(12, {a, b, c}).order() == 95040, "|M12|");
  save_generators(dir / "m12.gens", {12, {a, b, c}}, "M12 on 12 points");
  auto a11 = Permutation::parse(11, "(0 1 2 3 4 5 6 7 8 9 10)");
  auto b11 = Permutation::parse(11, "(2 6 10 7)(3 9 4 5)");
  require(PermGroup(11, {a11, b11}).order() == 7920, "|M11|");
  save_generators(dir / "m11.gens", {11, {a11, b11}}, "M11 on 11 points");
  // S5 = <(12), (12345)>: orders 2 and 5, product of order 4
  auto w = find_pair({a11, b11}, 2, 5, 4, 120, 11);
  write_subgroup(dir / "s5_in_m11.sub", "m11.gens", 120, w, "S5 in M11");
  std::cout << "M11, M12 done\n";
}

// M24 on PG(1,23) (point 23 = infinity), its Golay code and the octads.
void mathieu_23(const fs::path& dir) {
  const std::uint32_t q = 23, inf = 23;
  PrimeField f(q);
  auto line = projective_line_action(q);
  std::vector<std::uint32_t> d(24);
  for (std::uint32_t x = 0; x < q; ++x) {
    auto x3 = f.pow(x, 3);
    d[x] = static_cast<std::uint32_t>(f.is_nonzero_square(x) ? f.mul(x3, f.inv(9)) : f.mul(9, x3));
  }
  d[inf] = inf;
  std::vector<Permutation> gens = line.generators;
  gens.emplace_back(d);
  PermGroup m24(24, gens, {inf});
  require(m24.order() == 244823040ULL, "|M24|");

  // extended quadratic residue code: shifts of the non-residue indicator plus a parity bit
  std::vector<std::uint32_t> basis;
  for (std::uint32_t s = 0; s < q; ++s) {
    std::uint32_t w = 0;
    for (std::uint32_t x = 1; x < q; ++x)
      if (!f.is_nonzero_square(x)) w |= 1u << ((x + s) % q);
    if (std::popcount(w) % 2) w |= 1u << inf;
    basis.push_back(w);
  }
  std::set<std::uint32_t> code{0};
  for (auto b : basis) {
    if (code.count(b)) continue;
    std::vector<std::uint32_t> add;
    for (auto c : code) add.push_back(c ^ b);
    code.insert(add.begin(), add.end());
  }
  require(code.size() == 4096, "Golay code dimension 12");
  std::vector<std::uint32_t> octads;
  for (auto c : code) {
    require(c == 0 || std::popcount(c) >= 8, "Golay minimum weight 8");
    if (std::popcount(c) == 8) octads.push_back(c);
  }
  require(octads.size() == 759, "759 octads");
  auto image = [](const Permutation& p, std::uint32_t set) {
    std::uint32_t r = 0;
    for (std::uint32_t x = 0; x < 24; ++x)
      if (set >> x & 1) r |= 1u << p(x);
    return r;
  };
  for (auto& g : gens)
    for (auto o : octads) require(std::binary_search(octads.begin(), octads.end(), image(g, o)), "M24 preserves octads");

  std::vector<std::uint32_t> avoid;
  for (auto o : octads)
    if (!(o >> inf & 1)) avoid.push_back(o);
  require(avoid.size() == 506, "506 octads avoid a point");
  // M23 = stabilizer of infinity; two random elements usually generate it
  std::mt19937_64 rng(23);
  const auto& stab = m24.levels().at(1).gens;
  PermGroup m23_full(24, stab);
  std::vector<Permutation> m23;
  for (int tries = 0; tries < 100; ++tries) {
    m23 = {m23_full.random_element(rng), m23_full.random_element(rng)};
    if (PermGroup(24, m23).order() == 10200960ULL) break;
    m23.clear();
  }
  require(!m23.empty(), "two generators for M23");
  GeneratorData out{506, {}};
  for (auto& g : m23) {
    std::vector<std::uint32_t> img;
    for (auto o : avoid) img.push_back(static_cast<std::uint32_t>(
        std::lower_bound(avoid.begin(), avoid.end(), image(g, o)) - avoid.begin()));
    out.generators.emplace_back(img);
  }
  require(PermGroup(506, out.generators).order() == 10200960ULL, "M23 faithful on 506 octads");
  save_generators(dir / "m23_octads.gens", out, "M23 on the 506 octads avoiding a point (stabilizer A8)");
  std::cout << "M23 done\n";
}

// J1 < GL(7,11) generated by the cyclic permutation matrix and Janko's matrix,
// acting on the projective orbit of e0.
void janko_1(const fs::path& dir) {
  PrimeField f(11);
  Matrix y(7, Vec(7, 0));
  for (int i = 0; i < 7; ++i) y[i][(i + 1) % 7] = 1;
  const int zraw[7][7] = {{-3, 2, -1, -1, -3, -1, -3}, {-2, 1, 1, 3, 1, 3, 3},  {-1, -1, -3, -1, -3, -3, 2},
                          {-1, -3, -1, -3, -3, 2, -1}, {-3, -1, -3, -3, 2, -1, -1}, {1, 3, 3, -2, 1, 1, 3},
                          {3, 3, -2, 1, 1, 3, 1}};
  Matrix z(7, Vec(7));
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) z[i][j] = f.reduce(zraw[i][j]);
  std::map<std::uint64_t, std::uint32_t> index;
  std::vector<Vec> pts{normalize(f, {1, 0, 0, 0, 0, 0, 0})};
  index[encode(f, pts[0])] = 0;
  for (std::size_t k = 0; k < pts.size(); ++k)
    for (auto* m : {&y, &z}) {
      auto v = normalize(f, vec_mul(f, pts[k], *m));
      if (index.emplace(encode(f, v), static_cast<std::uint32_t>(pts.size())).second) pts.push_back(v);
    }
  std::vector<Permutation> gens;
  for (auto* m : {&y, &z}) {
    std::vector<std::uint32_t> img;
    for (auto& v : pts) img.push_back(index.at(encode(f, normalize(f, vec_mul(f, v, *m)))));
    gens.emplace_back(img);
  }
  auto n = static_cast<std::uint32_t>(pts.size());
  require(PermGroup(n, gens).order() == 175560, "|J1|");
  save_generators(dir / "j1.gens", {n, gens}, "J1 on an orbit of points of PG(6,11)");
  // PSL(2,11) as a (2,3,11)-generated subgroup
  auto w = find_pair(gens, 2, 3, 11, 660, 1);
  write_subgroup(dir / "l2_11_in_j1.sub", "j1.gens", 660, w, "PSL(2,11) in J1");
  std::cout << "J1 on " << n << " points done\n";
}

void coxeter(const fs::path& dir) {
  const int lines[7][3] = {{0, 1, 3}, {1, 2, 4}, {2, 3, 5}, {3, 4, 6}, {4, 5, 0}, {5, 6, 1}, {6, 0, 2}};
  std::vector<unsigned> triples;
  for (unsigned s = 0; s < 128; ++s) {
    if (std::popcount(s) != 3) continue;
    bool is_line = false;
    for (auto& l : lines) is_line |= s == (1u << l[0] | 1u << l[1] | 1u << l[2]);
    if (!is_line) triples.push_back(s);
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (std::uint32_t a = 0; a < triples.size(); ++a)
    for (std::uint32_t b = a + 1; b < triples.size(); ++b)
      if (!(triples[a] & triples[b])) edges.emplace_back(a, b);
  auto g = graph_from_edges(static_cast<std::uint32_t>(triples.size()), edges);
  require(g.n() == 28 && g.is_regular() && g.valency() == 3, "Coxeter graph is cubic on 28 vertices");
  save_edge_list((dir / "coxeter.el").string(), g);
  std::cout << "Coxeter graph done\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regenerate group data files"};
  std::string out = "data";
  app.add_option("--out", out, "output directory");
  CLI11_PARSE(app, argc, argv);
  try {
    fs::create_directories(out);
    psl2_data(out, 17, true);
    psl2_data(out, 41, false);
    psl2_data(out, 47, true);
    mathieu_12_11(out);
    mathieu_23(out);
    janko_1(out);
    coxeter(out);
  } catch (const std::exception& e) {
    std::cerr << "gen_group_data: " << e.what() << '\n';
    return 1;
  }
}
