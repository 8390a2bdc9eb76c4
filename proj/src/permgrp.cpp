#include "hamvt/permgrp.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace hamvt {

Permutation::Permutation(std::size_t n) : images_(n) { std::iota(images_.begin(), images_.end(), 0u); }

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (auto x : images_) {
    if (x >= images_.size() || seen[x]) throw std::invalid_argument("Permutation: images are not a bijection");
    seen[x] = 1;
  }
}

Permutation Permutation::from_cycles(std::size_t n, const std::vector<std::vector<std::uint32_t>>& cycles) {
  std::vector<std::uint32_t> img(n);
  std::iota(img.begin(), img.end(), 0u);
  std::vector<char> used(n, 0);
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= n) throw std::invalid_argument("Permutation: cycle point out of range");
      if (used[c[i]]) throw std::invalid_argument("Permutation: cycles are not disjoint");
      used[c[i]] = 1;
      img[c[i]] = c[(i + 1) % c.size()];
    }
  return Permutation(std::move(img));
}

Permutation Permutation::parse(std::size_t n, std::string_view text) {
  std::vector<std::vector<std::uint32_t>> cycles;
  std::vector<std::uint32_t>* cur = nullptr;
  std::size_t i = 0;
  while (i < text.size()) {
    char ch = text[i];
    if (ch == '(') {
      if (cur) throw std::invalid_argument("Permutation::parse: nested '('");
      cycles.emplace_back();
      cur = &cycles.back();
      ++i;
    } else if (ch == ')') {
      if (!cur) throw std::invalid_argument("Permutation::parse: unmatched ')'");
      cur = nullptr;
      ++i;
    } else if (ch >= '0' && ch <= '9') {
      if (!cur) throw std::invalid_argument("Permutation::parse: point outside a cycle");
      std::uint64_t v = 0;
      while (i < text.size() && text[i] >= '0' && text[i] <= '9') v = v * 10 + (text[i++] - '0');
      cur->push_back(static_cast<std::uint32_t>(v));
    } else if (ch == ' ' || ch == ',' || ch == '\t' || ch == '\r') {
      ++i;
    } else {
      throw std::invalid_argument(std::string("Permutation::parse: unexpected '") + ch + "'");
    }
  }
  if (cur) throw std::invalid_argument("Permutation::parse: unterminated cycle");
  return from_cycles(n, cycles);
}

Permutation Permutation::operator*(const Permutation& o) const {
  if (o.degree() != degree()) throw std::invalid_argument("Permutation: degree mismatch");
  std::vector<std::uint32_t> r(images_.size());
  for (std::size_t x = 0; x < r.size(); ++x) r[x] = o.images_[images_[x]];
  Permutation p;
  p.images_ = std::move(r);
  return p;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.images_.resize(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) p.images_[images_[x]] = static_cast<std::uint32_t>(x);
  return p;
}

Permutation Permutation::pow(std::int64_t e) const {
  Permutation base = e < 0 ? inverse() : *this;
  auto n = static_cast<std::uint64_t>(e < 0 ? -e : e);
  Permutation r(degree());
  while (n) {
    if (n & 1) r = r * base;
    base = base * base;
    n >>= 1;
  }
  return r;
}

bool Permutation::is_identity() const {
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[x] != x) return false;
  return true;
}

std::uint64_t Permutation::order() const {
  std::uint64_t o = 1;
  for (const auto& c : cycles()) o = std::lcm(o, static_cast<std::uint64_t>(c.size()));
  return o;
}

std::vector<std::vector<std::uint32_t>> Permutation::cycles() const {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<char> seen(images_.size(), 0);
  for (std::uint32_t x = 0; x < images_.size(); ++x) {
    if (seen[x] || images_[x] == x) continue;
    std::vector<std::uint32_t> c;
    for (auto y = x; !seen[y]; y = images_[y]) seen[y] = 1, c.push_back(y);
    out.push_back(std::move(c));
  }
  return out;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  auto cs = cycles();
  if (cs.empty()) return "()";
  for (const auto& c : cs) {
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
    os << ')';
  }
  return os.str();
}

std::vector<std::uint32_t> orbit(const std::vector<std::uint32_t>& points, const std::vector<Permutation>& gens) {
  if (gens.empty()) return points;
  std::vector<char> seen(gens.front().degree(), 0);
  std::vector<std::uint32_t> out;
  for (auto p : points)
    if (!seen[p]) seen[p] = 1, out.push_back(p);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      auto y = g(out[i]);
      if (!seen[y]) seen[y] = 1, out.push_back(y);
    }
  return out;
}

std::optional<std::pair<std::size_t, std::size_t>> is_semiregular(const Permutation& g) {
  auto n = g.degree();
  if (n == 0) return std::nullopt;
  std::size_t len = 0;
  for (auto x = g(0); x != 0; x = g(x)) ++len;
  ++len;
  if (len < 2 || n % len) return std::nullopt;
  for (const auto& c : g.cycles())
    if (c.size() != len) return std::nullopt;
  if (g.cycles().size() != n / len) return std::nullopt;
  return std::make_pair(n / len, len);
}

// ---------------------------------------------------------------------------

namespace {

std::uint32_t first_moved(const Permutation& g) {
  for (std::uint32_t x = 0; x < g.degree(); ++x)
    if (g(x) != x) return x;
  return static_cast<std::uint32_t>(g.degree());
}

}  // namespace

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> gens, std::vector<std::uint32_t> base_prefix)
    : degree_(degree) {
  for (auto& g : gens) {
    if (g.degree() != degree) throw std::invalid_argument("PermGroup: generator degree mismatch");
    if (!g.is_identity()) gens_.push_back(std::move(g));
  }
  build(std::move(base_prefix));
}

void PermGroup::add_level(std::uint32_t base_point) {
  Level lv;
  lv.base_point = base_point;
  lv.position.assign(degree_, -1);
  lv.position[base_point] = 0;
  lv.orbit.push_back(base_point);
  lv.transversal.emplace_back(degree_);
  lv.checked.push_back(0);
  levels_.push_back(std::move(lv));
}

void PermGroup::extend_orbit(Level& lv) {
  for (std::size_t i = 0; i < lv.orbit.size(); ++i)
    for (const auto& s : lv.gens) {
      auto y = s(lv.orbit[i]);
      if (lv.position[y] >= 0) continue;
      lv.position[y] = static_cast<std::int32_t>(lv.orbit.size());
      lv.orbit.push_back(y);
      lv.transversal.push_back(lv.transversal[i] * s);
      lv.checked.push_back(0);
    }
}

std::pair<Permutation, std::size_t> PermGroup::strip(Permutation h, std::size_t from) const {
  for (std::size_t l = from; l < levels_.size(); ++l) {
    const auto& lv = levels_[l];
    auto beta = h(lv.base_point);
    auto pos = lv.position[beta];
    if (pos < 0) return {std::move(h), l};
    h = h * lv.transversal[pos].inverse();
  }
  return {std::move(h), levels_.size()};
}

void PermGroup::build(std::vector<std::uint32_t> base_prefix) {
  for (auto b : base_prefix) {
    if (b >= degree_) throw std::invalid_argument("PermGroup: base point out of range");
    add_level(b);
  }
  auto fixes_base = [&](const Permutation& g) {
    for (const auto& lv : levels_)
      if (g(lv.base_point) != lv.base_point) return false;
    return true;
  };
  for (const auto& g : gens_)
    if (fixes_base(g)) add_level(first_moved(g));
  for (std::size_t l = 0; l < levels_.size(); ++l) {
    for (const auto& g : gens_) {
      bool fixes = true;
      for (std::size_t j = 0; j < l && fixes; ++j) fixes = g(levels_[j].base_point) == levels_[j].base_point;
      if (fixes) levels_[l].gens.push_back(g);
    }
    extend_orbit(levels_[l]);
  }

  auto i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
  // Verify Schreier generators level by level from the bottom; a non-trivial
  // residue joins the levels it fixes and checking resumes at the deepest one.
  while (i >= 0) {
    bool restarted = false;
    for (std::size_t k = 0; k < levels_[i].orbit.size() && !restarted; ++k) {
      while (levels_[i].checked[k] < levels_[i].gens.size()) {
        auto& cur = levels_[i];
        auto s = cur.gens[cur.checked[k]];
        ++cur.checked[k];
        auto img = s(cur.orbit[k]);
        auto h = cur.transversal[k] * s * cur.transversal[cur.position[img]].inverse();
        auto [r, j] = strip(std::move(h), i + 1);
        if (r.is_identity()) continue;
        if (j == levels_.size()) add_level(first_moved(r));
        for (auto l = static_cast<std::size_t>(i) + 1; l <= j; ++l) {
          levels_[l].gens.push_back(r);
          extend_orbit(levels_[l]);
        }
        i = static_cast<std::ptrdiff_t>(j);
        restarted = true;
        break;
      }
    }
    if (!restarted) --i;
  }
}

std::vector<std::uint32_t> PermGroup::base() const {
  std::vector<std::uint32_t> b;
  for (const auto& lv : levels_) b.push_back(lv.base_point);
  return b;
}

std::uint64_t PermGroup::order() const {
  std::uint64_t o = 1;
  for (const auto& lv : levels_) {
    if (o > UINT64_MAX / lv.orbit.size()) throw std::overflow_error("PermGroup::order overflows 64 bits");
    o *= lv.orbit.size();
  }
  return o;
}

bool PermGroup::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  return strip(g, 0).first.is_identity();
}

Permutation PermGroup::random_element(std::mt19937_64& rng) const {
  Permutation r(degree_);
  for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
    std::uniform_int_distribution<std::size_t> d(0, it->orbit.size() - 1);
    r = r * it->transversal[d(rng)];
  }
  return r;
}

Permutation canonical_coset_rep(const PermGroup& H, const Permutation& g) {
  Permutation c = g;
  for (const auto& lv : H.levels()) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < lv.orbit.size(); ++k)
      if (c(lv.orbit[k]) < c(lv.orbit[best])) best = k;
    if (best) c = lv.transversal[best] * c;
  }
  return c;
}

namespace {

struct VecHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto x : v) h = (h ^ x) * 1099511628211ULL;
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

CosetAction coset_action(const PermGroup& G, const PermGroup& H, std::size_t cap) {
  if (H.degree() != G.degree()) throw std::invalid_argument("coset_action: degree mismatch");
  for (const auto& h : H.generators())
    if (!G.contains(h)) throw std::invalid_argument("coset_action: H is not a subgroup of G");
  auto index = G.order() / H.order();
  if (index > cap) throw std::length_error("coset_action: index " + std::to_string(index) + " exceeds cap");

  CosetAction ca;
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VecHash> lookup;
  auto id = canonical_coset_rep(H, Permutation(G.degree()));
  lookup.emplace(id.images(), 0);
  ca.representatives.push_back(id);
  const auto& gens = G.generators();
  std::vector<std::vector<std::uint32_t>> img(gens.size());
  for (std::size_t i = 0; i < ca.representatives.size(); ++i)
    for (std::size_t k = 0; k < gens.size(); ++k) {
      auto c = canonical_coset_rep(H, ca.representatives[i] * gens[k]);
      auto [it, fresh] = lookup.emplace(c.images(), static_cast<std::uint32_t>(ca.representatives.size()));
      if (fresh) ca.representatives.push_back(std::move(c));
      img[k].push_back(it->second);
    }
  if (ca.representatives.size() != index) throw std::logic_error("coset_action: coset count disagrees with |G|/|H|");
  ca.action.degree = static_cast<std::uint32_t>(index);
  for (std::size_t k = 0; k < gens.size(); ++k) {
    ca.action.generators.emplace_back(std::move(img[k]));
    ca.action.generator_names.emplace_back(1, static_cast<char>('a' + k));
  }
  return ca;
}

std::vector<Suborbit> suborbits(const GroupAction& action, std::uint32_t base) {
  auto n = action.degree;
  PermGroup G(n, action.generators, {base});
  const auto& top = G.levels().front();
  if (top.orbit.size() != n) throw std::invalid_argument("suborbits: action is not transitive");
  std::vector<Permutation> stab;
  if (G.levels().size() > 1) stab = G.levels()[1].gens;
  std::vector<std::int32_t> which(n, -1);
  std::vector<Suborbit> out;
  auto add = [&](std::uint32_t seed) {
    Suborbit s;
    s.points = orbit({seed}, stab);
    std::sort(s.points.begin(), s.points.end());
    for (auto x : s.points) which[x] = static_cast<std::int32_t>(out.size());
    out.push_back(std::move(s));
  };
  add(base);
  for (std::uint32_t x = 0; x < n; ++x)
    if (which[x] < 0) add(x);
  for (std::size_t k = 0; k < out.size(); ++k) {
    auto x = out[k].representative();
    const auto& t = top.transversal[top.position[x]];  // base -> x
    auto y = t.inverse()(base);
    out[k].paired = static_cast<std::size_t>(which[y]);
    out[k].self_paired = out[k].paired == k;
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string strip_comment(std::string line) {
  auto h = line.find('#');
  if (h != std::string::npos) line.resize(h);
  auto b = line.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = line.find_last_not_of(" \t\r");
  return line.substr(b, e - b + 1);
}

}  // namespace

GeneratorData load_generators(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open generator file " + path.string());
  GeneratorData d;
  std::string line;
  bool have_degree = false;
  while (std::getline(in, line)) {
    line = strip_comment(line);
    if (line.empty()) continue;
    if (!have_degree) {
      std::istringstream is(line);
      std::string kw;
      is >> kw >> d.degree;
      if (kw != "degree" || !is) throw std::runtime_error(path.string() + ": expected 'degree n' header");
      have_degree = true;
      continue;
    }
    d.generators.push_back(Permutation::parse(d.degree, line));
  }
  if (!have_degree) throw std::runtime_error(path.string() + ": missing degree header");
  return d;
}

void save_generators(const std::filesystem::path& path, const GeneratorData& data, const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (!comment.empty()) out << "# " << comment << '\n';
  out << "degree " << data.degree << '\n';
  for (const auto& g : data.generators) out << g.to_string() << '\n';
}

SubgroupData load_subgroup(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open subgroup file " + path.string());
  SubgroupData d;
  std::string line;
  while (std::getline(in, line)) {
    line = strip_comment(line);
    if (line.empty()) continue;
    if (line.rfind("parent ", 0) == 0) {
      d.parent = path.parent_path() / strip_comment(line.substr(7));
    } else if (line.rfind("order ", 0) == 0) {
      d.order = std::stoull(line.substr(6));
    } else {
      d.words.push_back(line);
    }
  }
  if (d.parent.empty()) throw std::runtime_error(path.string() + ": missing 'parent' line");
  return d;
}

Permutation evaluate_word(const std::vector<Permutation>& gens, std::string_view word) {
  if (gens.empty()) throw std::invalid_argument("evaluate_word: no generators");
  Permutation r(gens.front().degree());
  std::istringstream is{std::string(word)};
  std::string tok;
  while (is >> tok) {
    auto k = static_cast<std::size_t>(tok[0] - 'a');
    if (tok[0] < 'a' || k >= gens.size()) throw std::invalid_argument("evaluate_word: unknown generator '" + tok + "'");
    std::int64_t e = 1;
    if (tok.size() > 1) {
      if (tok[1] != '^') throw std::invalid_argument("evaluate_word: bad token '" + tok + "'");
      e = std::stoll(tok.substr(2));
    }
    r = r * gens[k].pow(e);
  }
  return r;
}

}  // namespace hamvt
