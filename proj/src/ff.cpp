#include "hamvt/ff.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace hamvt {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

namespace {

bool has_order(std::uint64_t x, std::uint64_t n, const std::vector<std::uint64_t>& primes,
               std::uint64_t p) {
  if (powmod(x, n, p) != 1) return false;
  for (auto l : primes)
    if (powmod(x, n / l, p) == 1) return false;
  return true;
}

}  // namespace

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (!is_prime(p)) throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not prime");
  if (p > 2) {
    auto primes = prime_factors(p - 1);
    for (std::uint64_t g = 2; g < p; ++g)
      if (has_order(g, p - 1, primes, p)) {
        theta_ = g;
        break;
      }
  }
  if (p < kScanThreshold) {
    chi_.assign(p, -1);
    root_.assign(p, std::numeric_limits<std::uint32_t>::max());
    chi_[0] = 0;
    for (std::uint64_t t = p; t-- > 0;) {
      auto s = t * t % p;
      root_[s] = static_cast<std::uint32_t>(t);  // descending scan keeps the smallest
      if (s) chi_[s] = 1;
    }
    if (p == 2) chi_[1] = 1;
    log_.assign(p, 0);
    std::uint64_t x = 1;
    for (std::uint64_t e = 0; e + 1 < p; ++e) {
      log_[x] = static_cast<std::uint32_t>(e);
      x = x * theta_ % p;
    }
  }
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw std::domain_error("PrimeField: inverse of zero");
  return powmod(a, p_ - 2, p_);
}

std::uint64_t PrimeField::reduce(std::int64_t a) const {
  auto m = static_cast<std::int64_t>(p_);
  auto r = a % m;
  return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

Residue PrimeField::residue(std::uint64_t x) const {
  if (p_ == 2) throw std::domain_error("residue classes need odd characteristic");
  x %= p_;
  if (x == 0) return Residue::Zero;
  if (!chi_.empty()) return chi_[x] > 0 ? Residue::Square : Residue::NonSquare;
  return powmod(x, (p_ - 1) / 2, p_) == 1 ? Residue::Square : Residue::NonSquare;
}

int PrimeField::eta(std::uint64_t x) const {
  switch (residue(x)) {
    case Residue::Zero: return 0;
    case Residue::Square: return 1;
    default: return -1;
  }
}

std::optional<std::uint64_t> PrimeField::sqrt(std::uint64_t x) const {
  x %= p_;
  if (!root_.empty()) {
    if (root_[x] == std::numeric_limits<std::uint32_t>::max()) return std::nullopt;
    return root_[x];
  }
  if (x == 0) return 0;
  if (residue(x) != Residue::Square) return std::nullopt;
  // Tonelli-Shanks with theta as the non-residue.
  std::uint64_t q = p_ - 1, s = 0;
  while (q % 2 == 0) q /= 2, ++s;
  std::uint64_t m = s, c = pow(theta_, q), t = pow(x, q), r = pow(x, (q + 1) / 2);
  while (t != 1) {
    std::uint64_t i = 0, tt = t;
    while (tt != 1) tt = mul(tt, tt), ++i;
    auto b = c;
    for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mul(b, b);
    m = i;
    c = mul(b, b);
    t = mul(t, c);
    r = mul(r, b);
  }
  return std::min(r, neg(r));
}

std::uint64_t PrimeField::log(std::uint64_t x) const {
  x %= p_;
  if (x == 0) throw std::domain_error("PrimeField: log of zero");
  if (!log_.empty()) return log_[x];
  std::uint64_t y = 1;
  for (std::uint64_t e = 0; e + 1 < p_; ++e, y = mul(y, theta_))
    if (y == x) return e;
  throw std::logic_error("PrimeField: theta is not primitive");
}

// ---------------------------------------------------------------------------

namespace {

using Poly = std::vector<std::uint64_t>;

// Remainder of a modulo the monic polynomial m.
Poly poly_mod(Poly a, const Poly& m, const PrimeField& f) {
  auto dm = m.size() - 1;
  while (a.size() > dm) {
    auto lead = a.back();
    auto shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(lead, m[i]));
    a.pop_back();
  }
  return a;
}

bool is_zero(const Poly& a) {
  for (auto c : a)
    if (c) return false;
  return true;
}

bool irreducible(const Poly& m, const PrimeField& f) {
  auto k = m.size() - 1;
  std::uint64_t p = f.p();
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t v = 0;
    for (auto i = k + 1; i-- > 0;) v = f.add(f.mul(v, x), m[i]);
    if (v == 0) return false;
  }
  if (k == 4) {
    for (std::uint64_t a = 0; a < p; ++a)
      for (std::uint64_t b = 0; b < p; ++b)
        if (is_zero(poly_mod(m, {b, a, 1}, f))) return false;
  }
  return true;
}

}  // namespace

FieldContext::FieldContext(std::uint64_t p, int k) : fp_(p), k_(k), q_(1) {
  for (int i = 0; i < k; ++i) q_ *= p;
  if (k == 1) {
    modulus_ = {0, 1};
    theta_.c[0] = fp_.theta();
    return;
  }
  std::uint64_t count = q_;
  for (std::uint64_t e = 0; e < count && modulus_.empty(); ++e) {
    Poly m(k + 1, 0);
    auto x = e;
    for (int i = 0; i < k; ++i) m[i] = x % p, x /= p;
    m[k] = 1;
    if (irreducible(m, fp_)) modulus_ = m;
  }
  if (modulus_.empty()) throw std::logic_error("make_field: no irreducible modulus found");
  for (std::uint64_t e = 1; e < q_; ++e) {
    auto x = from_int(e);
    if (is_generator(x)) {
      theta_ = x;
      break;
    }
  }
}

FieldContext make_field(std::uint64_t q) {
  if (q < 3) throw std::invalid_argument("make_field: q must be an odd prime power");
  auto primes = prime_factors(q);
  if (primes.size() != 1) throw std::invalid_argument("make_field: " + std::to_string(q) + " is not a prime power");
  auto p = primes[0];
  if (p == 2) throw std::invalid_argument("make_field: characteristic 2 is not supported");
  int k = 0;
  for (auto x = q; x > 1; x /= p) ++k;
  if (k > kMaxExtensionDegree) throw std::invalid_argument("make_field: extension degree above 4");
  return FieldContext(p, k);
}

FieldElement FieldContext::one() const {
  FieldElement e;
  e.c[0] = 1;
  return e;
}

FieldElement FieldContext::from_int(std::uint64_t encoding) const {
  if (encoding >= q_) throw std::out_of_range("FieldContext::from_int");
  FieldElement e;
  for (int i = 0; i < k_; ++i) e.c[i] = encoding % fp_.p(), encoding /= fp_.p();
  return e;
}

std::uint64_t FieldContext::to_int(const FieldElement& x) const {
  std::uint64_t v = 0;
  for (int i = k_; i-- > 0;) v = v * fp_.p() + x.c[i];
  return v;
}

FieldElement FieldContext::add(const FieldElement& a, const FieldElement& b) const {
  FieldElement r;
  for (int i = 0; i < k_; ++i) r.c[i] = fp_.add(a.c[i], b.c[i]);
  return r;
}

FieldElement FieldContext::sub(const FieldElement& a, const FieldElement& b) const {
  FieldElement r;
  for (int i = 0; i < k_; ++i) r.c[i] = fp_.sub(a.c[i], b.c[i]);
  return r;
}

FieldElement FieldContext::neg(const FieldElement& a) const {
  FieldElement r;
  for (int i = 0; i < k_; ++i) r.c[i] = fp_.neg(a.c[i]);
  return r;
}

FieldElement FieldContext::mul(const FieldElement& a, const FieldElement& b) const {
  if (k_ == 1) {
    FieldElement r;
    r.c[0] = fp_.mul(a.c[0], b.c[0]);
    return r;
  }
  Poly prod(2 * k_ - 1, 0);
  for (int i = 0; i < k_; ++i)
    for (int j = 0; j < k_; ++j) prod[i + j] = fp_.add(prod[i + j], fp_.mul(a.c[i], b.c[j]));
  auto rem = poly_mod(std::move(prod), modulus_, fp_);
  FieldElement r;
  for (std::size_t i = 0; i < rem.size(); ++i) r.c[i] = rem[i];
  return r;
}

FieldElement FieldContext::pow(FieldElement a, std::uint64_t e) const {
  auto r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

FieldElement FieldContext::inv(const FieldElement& a) const {
  if (a == zero()) throw std::domain_error("FieldContext: inverse of zero");
  return pow(a, q_ - 2);
}

bool FieldContext::is_generator(const FieldElement& x) const {
  if (x == zero()) return false;
  for (auto l : prime_factors(q_ - 1))
    if (pow(x, (q_ - 1) / l) == one()) return false;
  return true;
}

Residue FieldContext::residue_class(const FieldElement& x) const {
  if (x == zero()) return Residue::Zero;
  return pow(x, (q_ - 1) / 2) == one() ? Residue::Square : Residue::NonSquare;
}

std::optional<FieldElement> FieldContext::sqrt(const FieldElement& x) const {
  if (k_ == 1) {
    auto r = fp_.sqrt(x.c[0]);
    if (!r) return std::nullopt;
    FieldElement e;
    e.c[0] = *r;
    return e;
  }
  if (x == zero()) return zero();
  if (residue_class(x) != Residue::Square) return std::nullopt;
  if (q_ < kScanThreshold) {
    for (std::uint64_t e = 1; e < q_; ++e) {
      auto t = from_int(e);
      if (mul(t, t) == x) return t;  // ascending scan: first hit is the smaller encoding
    }
    throw std::logic_error("FieldContext::sqrt: square without root");
  }
  std::uint64_t q = q_ - 1, s = 0;
  while (q % 2 == 0) q /= 2, ++s;
  auto c = pow(theta_, q), t = pow(x, q), r = pow(x, (q + 1) / 2);
  auto m = s;
  while (!(t == one())) {
    std::uint64_t i = 0;
    auto tt = t;
    while (!(tt == one())) tt = mul(tt, tt), ++i;
    auto b = c;
    for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mul(b, b);
    m = i;
    c = mul(b, b);
    t = mul(t, c);
    r = mul(r, b);
  }
  auto nr = neg(r);
  return to_int(r) <= to_int(nr) ? r : nr;
}

}  // namespace hamvt
