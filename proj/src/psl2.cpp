#include "hamvt/psl2.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace hamvt {

Mat2 mat_mul(const PrimeField& f, const Mat2& x, const Mat2& y) {
  return {f.add(f.mul(x.a, y.a), f.mul(x.b, y.c)), f.add(f.mul(x.a, y.b), f.mul(x.b, y.d)),
          f.add(f.mul(x.c, y.a), f.mul(x.d, y.c)), f.add(f.mul(x.c, y.b), f.mul(x.d, y.d))};
}

Mat2 mat_inv(const PrimeField& f, const Mat2& x) { return {x.d, f.neg(x.b), f.neg(x.c), x.a}; }

Mat2 mat_pow(const PrimeField& f, Mat2 x, std::int64_t e) {
  if (e < 0) {
    x = mat_inv(f, x);
    e = -e;
  }
  Mat2 r;
  for (; e; e >>= 1) {
    if (e & 1) r = mat_mul(f, r, x);
    x = mat_mul(f, x, x);
  }
  return r;
}

Permutation projective_permutation(const PrimeField& f, const Mat2& m) {
  auto q = f.p();
  std::vector<std::uint32_t> img(q + 1);
  for (std::uint64_t z = 0; z < q; ++z) {
    auto den = f.add(f.mul(m.b, z), m.d);
    img[z] = static_cast<std::uint32_t>(den == 0 ? q : f.mul(f.add(f.mul(m.a, z), m.c), f.inv(den)));
  }
  img[q] = static_cast<std::uint32_t>(m.b == 0 ? q : f.mul(m.a, f.inv(m.b)));
  return Permutation(img);
}

GroupAction projective_line_action(std::uint64_t q) {
  if (!is_prime(q) || q == 2) throw std::invalid_argument("projective_line_action: q must be an odd prime");
  PrimeField f(q);
  GroupAction act;
  act.degree = static_cast<std::uint32_t>(q + 1);
  act.generators = {projective_permutation(f, {1, 0, 1, 1}), projective_permutation(f, {0, 1, f.neg(1), 0})};
  act.generator_names = {"u", "t"};
  return act;
}

bool is_2rs(std::uint64_t n) {
  if (n % 2) return false;
  auto m = n / 2;
  auto ps = prime_factors(m);
  if (ps.size() != 2 || ps[0] == 2) return false;
  return ps[0] * ps[1] == m;
}

const char* case_name(SuborbitCase c) {
  switch (c) {
    case SuborbitCase::SPShort: return "sp-short";
    case SuborbitCase::NSPShort: return "nsp-short";
    case SuborbitCase::SPLong: return "sp-long";
    default: return "nsp-long";
  }
}

namespace {

// Distinct roots of A s^2 + B s + C = 0; a vanishing leading term falls back to
// the linear equation.  A = B = C = 0 is the caller's problem.
std::vector<std::uint64_t> solve_quadratic(const PrimeField& f, std::uint64_t A, std::uint64_t B, std::uint64_t C) {
  if (A == 0) {
    if (B == 0) return {};
    return {f.mul(f.neg(C), f.inv(B))};
  }
  auto disc = f.sub(f.mul(B, B), f.mul(4 % f.p(), f.mul(A, C)));
  auto r = f.sqrt(disc);
  if (!r) return {};
  auto inv2a = f.inv(f.mul(2, A));
  auto s1 = f.mul(f.sub(*r, B), inv2a);
  auto s2 = f.mul(f.sub(f.neg(*r), B), inv2a);
  if (s1 == s2) return {s1};
  return {s1, s2};
}

// Projective arithmetic with q standing for infinity.
std::uint64_t apply(const PrimeField& f, const Mat2& m, std::uint64_t z) {
  auto q = f.p();
  if (z == q) return m.b == 0 ? q : f.mul(m.a, f.inv(m.b));
  auto den = f.add(f.mul(m.b, z), m.d);
  return den == 0 ? q : f.mul(f.add(f.mul(m.a, z), m.c), f.inv(den));
}

}  // namespace

// ---------------------------------------------------------------- pairs model

std::uint32_t PairsModel::index(std::uint64_t x, std::uint64_t y) const {
  if (x == y) throw std::invalid_argument("pair of equal points");
  if (x == q) return static_cast<std::uint32_t>(y);
  if (y == q) return static_cast<std::uint32_t>(x);
  auto d = f.sub(y, x);
  if (d <= (q - 1) / 2) return static_cast<std::uint32_t>(q * d + x);
  return static_cast<std::uint32_t>(q * (q - d) + y);
}

PairsModel pairs_action(std::uint64_t q, bool require_2rs) {
  if (!is_prime(q) || q % 4 != 3) throw std::invalid_argument("pairs_action: q must be a prime = 3 mod 4");
  if (require_2rs && !is_2rs(q * (q + 1) / 2)) throw std::invalid_argument("pairs_action: q(q+1)/2 is not 2rs");
  PairsModel m;
  m.q = q;
  m.f = PrimeField(q);
  const auto& f = m.f;
  auto n = static_cast<std::uint32_t>(q * (q + 1) / 2);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> pts(n);
  m.labels.resize(n);
  for (std::uint64_t x = 0; x < q; ++x) {
    pts[x] = {q, x};
    m.labels[x] = PairVertex{kInfinity, static_cast<std::uint32_t>(x)};
  }
  for (std::uint64_t j = 1; j <= (q - 1) / 2; ++j)
    for (std::uint64_t x = 0; x < q; ++x) {
      auto y = f.add(x, j);
      pts[q * j + x] = {x, y};
      m.labels[q * j + x] = PairVertex{static_cast<std::uint32_t>(std::min(x, y)), static_cast<std::uint32_t>(std::max(x, y))};
    }
  auto theta = f.theta();
  std::vector<Mat2> gens{{1, 0, 1, 1}, {1, 1, 0, 1}, {theta, 0, 0, f.inv(theta)}, {0, 1, f.neg(1), 0}};
  m.action.degree = n;
  m.action.generator_names = {"u", "u'", "l", "t"};
  for (const auto& g : gens) {
    std::vector<std::uint32_t> img(n);
    for (std::uint32_t v = 0; v < n; ++v) img[v] = m.index(apply(f, g, pts[v].first), apply(f, g, pts[v].second));
    m.action.generators.emplace_back(img);
  }
  return m;
}

namespace {

// H = {z -> s z, z -> -s/z : s in S*} applied to the pair {x, y}.
std::vector<std::uint32_t> h_orbit(const PairsModel& m, std::uint64_t x, std::uint64_t y) {
  const auto& f = m.f;
  std::set<std::uint32_t> out;
  for (std::uint64_t s = 1; s < m.q; ++s) {
    if (!f.is_nonzero_square(s)) continue;
    Mat2 scale{s, 0, 0, 1}, flip{0, 1, f.neg(s), 0};  // z -> s z, z -> -s / z (projectively)
    out.insert(m.index(apply(f, scale, x), apply(f, scale, y)));
    out.insert(m.index(apply(f, flip, x), apply(f, flip, y)));
  }
  return {out.begin(), out.end()};
}

std::string pair_word(std::uint64_t j, std::uint64_t q) {
  return "{" + std::to_string(j) + "," + std::to_string((j + 1) % q) + "}";
}

}  // namespace

SuborbitDescriptor classify_suborbit_dminus(const PairsModel& m, std::uint64_t j) {
  const auto& f = m.f;
  auto q = m.q;
  j %= q;
  auto j1 = f.add(j, 1);
  SuborbitDescriptor d;
  d.param = j;
  d.word = pair_word(j, q);
  d.representative = m.index(j, j1);
  bool long_orbit = f.is_square(f.mul(j, j1));  // 0 counts as a square here
  d.length = long_orbit ? q - 1 : (q - 1) / 2;
  // {j, j+1} = {j, -j} when j = -1/2: its own partner whatever the residues say
  d.self_paired = f.is_nonzero_square(j) || f.residue(j1) == Residue::NonSquare || j1 == f.neg(j);
  if (!d.self_paired) d.partner = m.index(f.neg(j), f.neg(j1));
  d.kind = long_orbit ? (d.self_paired ? SuborbitCase::SPLong : SuborbitCase::NSPLong)
                      : (d.self_paired ? SuborbitCase::SPShort : SuborbitCase::NSPShort);
  return d;
}

std::vector<SuborbitDescriptor> classify_suborbits_dminus(const PairsModel& m) {
  std::vector<char> covered(m.n(), 0);
  covered[0] = 1;
  std::vector<SuborbitDescriptor> out;
  std::size_t total = 1;
  for (std::uint64_t j = 0; j < m.q; ++j) {
    auto d = classify_suborbit_dminus(m, j);
    if (covered[d.representative]) continue;
    auto orb = h_orbit(m, j, m.f.add(j, 1));
    for (auto v : orb) covered[v] = 1;
    total += orb.size();
    out.push_back(d);
  }
  if (total != m.n()) throw std::logic_error("classify_suborbits_dminus: suborbits do not cover the vertices");
  return out;
}

DminusDegrees block_degrees_dminus(const PairsModel& m, SuborbitCase kind, std::uint64_t j) {
  const auto& f = m.f;
  auto q = m.q;
  auto h = (q - 1) / 2;
  auto desc = classify_suborbit_dminus(m, j);
  if (desc.kind != kind) throw std::invalid_argument("block_degrees_dminus: case does not match the suborbit");
  std::vector<std::uint64_t> C{j % q};
  if (!desc.self_paired) C.push_back(f.sub(f.neg(j % q), 1));

  DminusDegrees out;
  out.kind = kind;
  out.from_b1.assign(h, 0);
  out.inf_to.assign(h, 0);

  // Neighbours of the base vertex {0, inf} are Delta itself.
  std::set<std::uint32_t> delta;
  for (auto c : C)
    for (auto v : h_orbit(m, c, f.add(c, 1))) delta.insert(v);
  out.valency = delta.size();
  for (auto v : delta) {
    auto b = m.block_of(v);
    if (b == 0)
      ++out.inf_internal;
    else
      ++out.inf_to[b - 1];
  }

  // Neighbours of {0,1} = u'({0,inf}) are u'(Delta), u'(z) = z/(z+1).  A pair
  // {a,b} lands at difference (a-b)/((a+1)(b+1)); for the halves {sc, s(c+1)}
  // and {-s/c, -s/(c+1)} of Delta, difference = +-i becomes a quadratic in s.
  const Mat2 up{1, 1, 0, 1};
  auto image = [&](std::uint64_t a, std::uint64_t b) {
    return std::pair{apply(f, up, a), apply(f, up, b)};
  };
  auto half1 = [&](std::uint64_t c, std::uint64_t s) { return image(f.mul(s, c), f.mul(s, f.add(c, 1))); };
  auto half2 = [&](std::uint64_t c, std::uint64_t s) {
    Mat2 flip{0, 1, f.neg(s), 0};
    return image(apply(f, flip, c), apply(f, flip, f.add(c, 1)));
  };
  std::set<std::uint32_t> seen;
  for (std::uint64_t i = 1; i <= h; ++i) {
    for (auto c : C) {
      auto cc1 = f.mul(c, f.add(c, 1));
      auto c21 = f.add(f.mul(2, c), 1);
      for (auto v : {i, f.neg(i)}) {
        auto r1 = solve_quadratic(f, f.mul(v, cc1), f.sub(f.mul(v, c21), 1), v);
        auto r2 = solve_quadratic(f, v, f.sub(1, f.mul(v, c21)), f.mul(v, cc1));
        for (int half = 0; half < 2; ++half)
          for (auto s : half ? r2 : r1) {
            if (!f.is_nonzero_square(s)) continue;
            auto [a, b] = half ? half2(c, s) : half1(c, s);
            if (a == q || b == q) continue;
            auto w = m.index(a, b);
            if (m.block_of(w) != i) throw std::logic_error("block_degrees_dminus: root lands in the wrong block");
            if (seen.insert(w).second) ++out.from_b1[i - 1];
          }
      }
    }
    auto j2 = f.mul(4, j % q);
    auto ii = f.mul(i, i);
    out.delta1.push_back(f.residue(f.add(f.sub(ii, f.mul(f.add(2, j2), i)), 1)));
    out.delta2.push_back(f.residue(f.add(f.add(ii, f.mul(f.add(2, j2), i)), 1)));
  }
  // Hits of B_inf: one point of the image is infinity, i.e. a = -1 or b = -1.
  std::set<std::uint32_t> inf_hits;
  for (auto c : C) {
    std::vector<std::pair<int, std::uint64_t>> cand;
    if (c != 0) cand.emplace_back(0, f.neg(f.inv(c)));
    if (f.add(c, 1) != 0) cand.emplace_back(0, f.neg(f.inv(f.add(c, 1))));
    cand.emplace_back(1, c);
    cand.emplace_back(1, f.add(c, 1));
    for (auto [half, s] : cand) {
      if (!f.is_nonzero_square(s)) continue;
      auto [a, b] = half ? half2(c, s) : half1(c, s);
      if (a != q && b != q) throw std::logic_error("block_degrees_dminus: expected a point at infinity");
      inf_hits.insert(m.index(a, b));
    }
  }
  out.b1_to_inf = static_cast<std::uint32_t>(inf_hits.size());
  std::size_t sum = out.b1_to_inf;
  for (auto x : out.from_b1) sum += x;
  if (sum != out.valency) throw std::logic_error("block_degrees_dminus: degrees do not add up to the valency");
  return out;
}

std::uint32_t dminus_block_degree(const PairsModel& m, const DminusDegrees& d, std::uint64_t k, std::uint64_t i) {
  const auto& f = m.f;
  auto h = (m.q - 1) / 2;
  if (k < 1 || k > h || i < 1 || i > h) throw std::out_of_range("dminus_block_degree: block index");
  // z -> z/k or z -> -z/k (whichever multiplier is a square) maps B_k to B_1.
  auto v = f.mul(i, f.inv(k));
  auto norm = std::min(v, m.q - v);
  return d.from_b1[norm - 1];
}

// ---------------------------------------------------------------- cosets of D_{q+1}

namespace {

// a + b w with w^2 = theta.
struct Quad {
  std::uint64_t a = 0, b = 0;
};

Quad qmul(const PrimeField& f, std::uint64_t theta, Quad x, Quad y) {
  return {f.add(f.mul(x.a, y.a), f.mul(theta, f.mul(x.b, y.b))), f.add(f.mul(x.a, y.b), f.mul(x.b, y.a))};
}

Quad qinv(const PrimeField& f, std::uint64_t theta, Quad x) {
  auto n = f.sub(f.mul(x.a, x.a), f.mul(theta, f.mul(x.b, x.b)));
  auto ni = f.inv(n);
  return {f.mul(x.a, ni), f.mul(f.neg(x.b), ni)};
}

Quad mobius(const PrimeField& f, std::uint64_t theta, const Mat2& m, Quad z) {
  Quad num = qmul(f, theta, {m.a, 0}, z);
  num.a = f.add(num.a, m.c);
  Quad den = qmul(f, theta, {m.b, 0}, z);
  den.a = f.add(den.a, m.d);
  return qmul(f, theta, num, qinv(f, theta, den));
}

std::uint64_t quad_key(std::uint64_t q, Quad z) { return z.a * q + std::min(z.b, q - z.b); }

}  // namespace

std::uint32_t DplusModel::index(bool primed, std::uint64_t j, std::uint64_t i) const {
  return static_cast<std::uint32_t>((primed ? q * r : 0) + (i % r) * q + j % q);
}

std::string DplusModel::block_name(std::uint32_t b) const {
  auto i = b % r == 0 ? r : b % r;
  return "B" + std::to_string(i) + (b >= r ? "'" : "");
}

Mat2 DplusModel::t_xy(std::uint64_t x, std::uint64_t y) const { return {x, y, f.mul(f.theta(), y), x}; }
Mat2 DplusModel::swap() const { return {sqrt_minus_one, 0, 0, f.neg(sqrt_minus_one)}; }
Mat2 DplusModel::u_pow(std::int64_t k) const { return {1, 0, f.reduce(k), 1}; }
Mat2 DplusModel::l_pow(std::int64_t i) const {
  Mat2 l{f.theta(), 0, 0, f.inv(f.theta())};
  return mat_pow(f, l, i);
}
Mat2 DplusModel::t() const { return {0, 1, f.neg(1), 0}; }

std::uint32_t DplusModel::vertex_of(const Mat2& m) const {
  auto z = mobius(f, f.theta(), m, {0, 1});
  if (z.b == 0) throw std::logic_error("dplus: image of w is rational");
  auto v = key_to_vertex[quad_key(q, z)];
  if (v == UINT32_MAX) throw std::logic_error("dplus: coset missing from the label table");
  return v;
}

std::vector<Mat2> DplusModel::stabilizer() const {
  auto theta = f.theta();
  std::vector<Mat2> out;
  for (std::uint64_t y = 0; y < q; ++y) {
    auto x = f.sqrt(f.add(1, f.mul(theta, f.mul(y, y))));
    if (!x) continue;
    // (x, y) and (-x, -y) give the same element of PSL
    std::set<std::uint64_t> xs{*x, f.neg(*x)};
    for (auto xx : xs) {
      auto yy = y;
      if (std::pair{f.neg(xx), f.neg(yy)} < std::pair{xx, yy}) continue;
      auto h = t_xy(xx, yy);
      out.push_back(h);
      out.push_back(mat_mul(f, h, swap()));
    }
  }
  if (out.size() != q + 1) throw std::logic_error("dplus: stabilizer has the wrong order");
  return out;
}

DplusModel dplus_action(std::uint64_t q, bool require_2rs) {
  if (!is_prime(q) || q % 4 != 1) throw std::invalid_argument("dplus_action: q must be a prime = 1 mod 4");
  if (require_2rs && !is_2rs(q * (q - 1) / 2)) throw std::invalid_argument("dplus_action: q(q-1)/2 is not 2rs");
  DplusModel m;
  m.q = q;
  m.r = (q - 1) / 4;
  m.f = PrimeField(q);
  const auto& f = m.f;
  m.sqrt_minus_one = *f.sqrt(f.neg(1));
  auto n = static_cast<std::uint32_t>(q * (q - 1) / 2);
  m.key_to_vertex.assign(q * q, UINT32_MAX);
  m.labels.resize(n);
  std::vector<Mat2> rep(n);
  for (int primed = 0; primed < 2; ++primed)
    for (std::uint64_t i = 1; i <= m.r; ++i)
      for (std::uint64_t j = 0; j < q; ++j) {
        Mat2 g = mat_mul(f, m.u_pow(static_cast<std::int64_t>(j)), m.l_pow(static_cast<std::int64_t>(i)));
        if (primed) g = mat_mul(f, m.t(), g);
        auto v = m.index(primed, j, i);
        auto z = mobius(f, f.theta(), g, {0, 1});
        auto& slot = m.key_to_vertex[quad_key(q, z)];
        if (slot != UINT32_MAX) throw std::logic_error("dplus: coset labels collide");
        slot = v;
        rep[v] = g;
        m.labels[v] = CosetVertex{primed == 1, static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(i)};
      }
  m.action.degree = n;
  m.action.generator_names = {"u", "l", "t"};
  for (const auto& g : {m.u_pow(1), m.l_pow(1), m.t()}) {
    std::vector<std::uint32_t> img(n);
    for (std::uint32_t v = 0; v < n; ++v) img[v] = m.vertex_of(mat_mul(f, rep[v], g));
    m.action.generators.emplace_back(img);
  }
  return m;
}

namespace {

std::vector<std::uint32_t> coset_orbit(const DplusModel& m, const std::vector<Mat2>& H, const Mat2& g) {
  std::set<std::uint32_t> out;
  for (const auto& h : H) out.insert(m.vertex_of(mat_mul(m.f, g, h)));
  return {out.begin(), out.end()};
}

}  // namespace

std::vector<SuborbitDescriptor> classify_suborbits_dplus(const DplusModel& m) {
  const auto& f = m.f;
  auto q = m.q;
  auto H = m.stabilizer();
  struct Cand {
    SuborbitCase kind;
    std::uint64_t param;
    std::string word;
    Mat2 g;
  };
  std::vector<Cand> cands;
  for (std::uint64_t i = 1; i <= m.r; ++i)
    cands.push_back({SuborbitCase::SPShort, i, "l^" + std::to_string(i) + " t",
                     mat_mul(f, m.l_pow(static_cast<std::int64_t>(i)), m.t())});
  for (std::uint64_t i = 1; i < m.r; ++i)
    cands.push_back({SuborbitCase::NSPShort, i, "l^" + std::to_string(i), m.l_pow(static_cast<std::int64_t>(i))});
  auto four_theta = f.mul(4, f.theta());
  for (std::uint64_t k = 1; k <= (q - 1) / 2; ++k)
    if (f.residue(f.sub(f.mul(k, k), four_theta)) == Residue::NonSquare)
      cands.push_back({SuborbitCase::SPLong, k, "u^" + std::to_string(k), m.u_pow(static_cast<std::int64_t>(k))});

  std::vector<char> covered(m.n(), 0);
  covered[0] = 1;
  std::size_t total = 1;
  std::vector<SuborbitDescriptor> out;
  for (const auto& c : cands) {
    auto orb = coset_orbit(m, H, c.g);
    for (auto v : orb) {
      if (covered[v]) throw std::logic_error("classify_suborbits_dplus: listed suborbits overlap (" + c.word + ")");
      covered[v] = 1;
    }
    total += orb.size();
    SuborbitDescriptor d;
    d.representative = m.vertex_of(c.g);
    d.length = orb.size();
    d.param = c.param;
    d.word = c.word;
    d.element = c.g;
    d.kind = c.kind;
    auto inv = m.vertex_of(mat_inv(f, c.g));
    d.self_paired = std::binary_search(orb.begin(), orb.end(), inv);
    if (!d.self_paired) d.partner = inv;
    auto expect_sp = c.kind != SuborbitCase::NSPShort;
    auto expect_len = c.kind == SuborbitCase::SPLong ? q + 1 : (q + 1) / 2;
    if (d.self_paired != expect_sp || d.length != expect_len)
      throw std::logic_error("classify_suborbits_dplus: " + c.word + " does not have the stated type");
    out.push_back(d);
  }
  if (total != m.n()) throw std::logic_error("classify_suborbits_dplus: suborbits do not cover the vertices");
  return out;
}

std::uint32_t DplusDegrees::primed_total() const {
  std::uint32_t s = 0;
  for (std::size_t b = d.size() / 2; b < d.size(); ++b) s += d[b];
  return s;
}

namespace {

// Points (x, y) of x^2 - theta y^2 = 1 with A x^2 + B x y + C y^2 = c.
std::vector<std::pair<std::uint64_t, std::uint64_t>> conic_solutions(const PrimeField& f, std::uint64_t A, std::uint64_t B,
                                                                     std::uint64_t C, std::uint64_t c) {
  auto theta = f.theta();
  std::set<std::pair<std::uint64_t, std::uint64_t>> out;
  auto all = [&] {
    for (std::uint64_t y = 0; y < f.p(); ++y)
      if (auto x = f.sqrt(f.add(1, f.mul(theta, f.mul(y, y))))) {
        out.insert({*x, y});
        out.insert({f.neg(*x), y});
      }
  };
  // With x^2 = 1 + theta u, u = y^2:  B x y = K - P u.
  auto P = f.add(f.mul(A, theta), C);
  auto K = f.sub(c, A);
  if (B == 0) {
    if (P == 0) {
      if (K == 0) all();
    } else {
      auto u = f.mul(K, f.inv(P));
      auto y = f.sqrt(u);
      auto x = f.sqrt(f.add(1, f.mul(theta, u)));
      if (y && x)
        for (auto xx : {*x, f.neg(*x)})
          for (auto yy : {*y, f.neg(*y)}) out.insert({xx, yy});
    }
  } else {
    auto B2 = f.mul(B, B);
    auto Q2 = f.sub(f.mul(B2, theta), f.mul(P, P));
    auto Q1 = f.add(B2, f.mul(2, f.mul(K, P)));
    auto Q0 = f.neg(f.mul(K, K));
    if (Q2 == 0 && Q1 == 0 && Q0 == 0) {
      all();
      // keep only true solutions of the unsquared equation
      std::set<std::pair<std::uint64_t, std::uint64_t>> keep;
      for (auto [x, y] : out)
        if (f.mul(B, f.mul(x, y)) == f.sub(K, f.mul(P, f.mul(y, y)))) keep.insert({x, y});
      out.swap(keep);
    } else {
      for (auto u : solve_quadratic(f, Q2, Q1, Q0)) {
        if (u == 0) {
          if (K == 0) {
            out.insert({1, 0});
            out.insert({f.neg(1), 0});
          }
          continue;
        }
        auto y0 = f.sqrt(u);
        if (!y0) continue;
        for (auto y : {*y0, f.neg(*y0)}) {
          auto x = f.mul(f.sub(K, f.mul(P, u)), f.inv(f.mul(B, y)));
          if (f.mul(x, x) == f.add(1, f.mul(theta, u))) out.insert({x, y});
        }
      }
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace

DplusDegrees block_degrees_dplus(const DplusModel& m, const SuborbitDescriptor& s) {
  const auto& f = m.f;
  auto theta = f.theta();
  std::vector<Mat2> C{s.element};
  if (!s.self_paired) C.push_back(mat_inv(f, s.element));
  DplusDegrees out;
  out.kind = s.kind;
  auto blocks = static_cast<std::uint32_t>(2 * m.r);
  out.d.assign(blocks, 0);
  std::set<std::uint32_t> seen;
  // The second coordinate of (w,1) M has norm N(M) = d^2 - theta b^2; it is fixed
  // by right multiplication with u, scaled by theta^-2 under l, and changes at
  // most by sign under H on the left.  Block B_i has N = +-theta^-2i, B_i' has
  // N = +-(-theta) theta^-2i.
  for (std::uint32_t b = 0; b < blocks; ++b) {
    auto i = b % m.r == 0 ? m.r : b % m.r;
    auto cls = f.pow(f.inv(theta), 2 * i);
    if (b >= m.r) cls = f.mul(f.neg(theta), cls);
    for (const auto& g : C) {
      // N(g t(x,y)) = A x^2 + B x y + C y^2
      auto A = f.sub(f.mul(g.d, g.d), f.mul(theta, f.mul(g.b, g.b)));
      auto B = f.mul(2, f.sub(f.mul(g.c, g.d), f.mul(theta, f.mul(g.a, g.b))));
      auto Cc = f.sub(f.mul(g.c, g.c), f.mul(theta, f.mul(g.a, g.a)));
      for (auto c : {cls, f.neg(cls)})
        for (auto [x, y] : conic_solutions(f, A, B, Cc, c)) {
          auto h = m.t_xy(x, y);
          for (const auto& hh : {h, mat_mul(f, h, m.swap())}) {
            auto v = m.vertex_of(mat_mul(f, g, hh));
            if (m.block_of(v) != b) throw std::logic_error("block_degrees_dplus: solution outside its block");
            if (seen.insert(v).second) ++out.d[b];
          }
        }
    }
  }
  out.valency = seen.size();
  auto expect = s.self_paired ? s.length : 2 * s.length;
  if (out.valency != expect) throw std::logic_error("block_degrees_dplus: degrees do not add up to the valency");
  return out;
}

std::int64_t dplus_short_lower_bound(std::uint64_t q) {
  // largest k with 8k <= q - 11 - 2 sqrt(q), i.e. q - 11 - 8k >= 0 and (q - 11 - 8k)^2 >= 4q
  auto fits = [&](std::int64_t k) {
    auto t = static_cast<std::int64_t>(q) - 11 - 8 * k;
    return t >= 0 && static_cast<__int128>(t) * t >= static_cast<__int128>(4) * static_cast<__int128>(q);
  };
  std::int64_t k = (static_cast<std::int64_t>(q) - 11) / 8;
  while (!fits(k)) --k;  // terminates: for k very negative, t grows beyond 2 sqrt(q)
  return 2 * k;
}

}  // namespace hamvt
