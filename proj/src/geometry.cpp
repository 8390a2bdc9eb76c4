#include "hamvt/geometry.hpp"

#include <stdexcept>

namespace hamvt {

Matrix identity_matrix(std::size_t d) {
  Matrix m(d, Vec(d, 0));
  for (std::size_t i = 0; i < d; ++i) m[i][i] = 1;
  return m;
}

Matrix matrix_mul(const PrimeField& f, const Matrix& a, const Matrix& b) {
  auto n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Matrix c(n, Vec(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] = f.add(c[i][j], f.mul(a[i][t], b[t][j]));
    }
  return c;
}

Matrix matrix_pow(const PrimeField& f, Matrix a, std::uint64_t e) {
  auto r = identity_matrix(a.size());
  while (e) {
    if (e & 1) r = matrix_mul(f, r, a);
    a = matrix_mul(f, a, a);
    e >>= 1;
  }
  return r;
}

Matrix matrix_inverse(const PrimeField& f, const Matrix& a) {
  auto n = a.size();
  Matrix w(n, Vec(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) w[i][j] = a[i][j];
    w[i][n + i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && w[piv][c] == 0) ++piv;
    if (piv == n) throw std::invalid_argument("matrix_inverse: singular matrix");
    std::swap(w[c], w[piv]);
    auto s = f.inv(w[c][c]);
    for (auto& x : w[c]) x = f.mul(x, s);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || w[r][c] == 0) continue;
      auto k = w[r][c];
      for (std::size_t j = 0; j < 2 * n; ++j) w[r][j] = f.sub(w[r][j], f.mul(k, w[c][j]));
    }
  }
  Matrix inv(n, Vec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = w[i][n + j];
  return inv;
}

Matrix transpose(const Matrix& a) {
  if (a.empty()) return {};
  Matrix t(a[0].size(), Vec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

Matrix block_diagonal(const std::vector<Matrix>& blocks) {
  std::size_t n = 0;
  for (auto& b : blocks) n += b.size();
  Matrix m(n, Vec(n, 0));
  std::size_t off = 0;
  for (auto& b : blocks) {
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) m[off + i][off + j] = b[i][j];
    off += b.size();
  }
  return m;
}

Vec vec_mul(const PrimeField& f, const Vec& v, const Matrix& m) {
  Vec out(m.empty() ? 0 : m[0].size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = f.add(out[j], f.mul(v[i], m[i][j]));
  }
  return out;
}

std::uint64_t dot(const PrimeField& f, const Vec& a, const Vec& b) {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

std::uint64_t determinant(const PrimeField& f, Matrix a) {
  auto n = a.size();
  std::uint64_t det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[c], a[piv]);
      det = f.neg(det);
    }
    det = f.mul(det, a[c][c]);
    auto s = f.inv(a[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      auto k = f.mul(a[r][c], s);
      for (std::size_t j = c; j < n; ++j) a[r][j] = f.sub(a[r][j], f.mul(k, a[c][j]));
    }
  }
  return det;
}

Matrix rref(const PrimeField& f, Matrix rows) {
  if (rows.empty()) return rows;
  auto cols = rows[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    auto s = f.inv(rows[r][c]);
    for (auto& x : rows[r]) x = f.mul(x, s);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == r || rows[k][c] == 0) continue;
      auto m = rows[k][c];
      for (std::size_t j = 0; j < cols; ++j) rows[k][j] = f.sub(rows[k][j], f.mul(m, rows[r][j]));
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

std::size_t rank(const PrimeField& f, const Matrix& rows) { return rref(f, rows).size(); }

Vec normalize(const PrimeField& f, Vec v) {
  for (auto x : v) {
    if (x == 0) continue;
    auto s = f.inv(x);
    for (auto& y : v) y = f.mul(y, s);
    break;
  }
  return v;
}

std::uint64_t encode(const PrimeField& f, const Vec& v) {
  std::uint64_t code = 0;
  for (std::size_t i = v.size(); i-- > 0;) code = code * f.p() + v[i];
  return code;
}

Vec decode(const PrimeField& f, std::size_t dim, std::uint64_t code) {
  Vec v(dim);
  for (auto& x : v) {
    x = code % f.p();
    code /= f.p();
  }
  return v;
}

std::vector<Vec> projective_points(const PrimeField& f, std::size_t d) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= f.p();
  std::vector<Vec> pts;
  for (std::uint64_t code = 1; code < total; ++code) {
    auto v = decode(f, d, code);
    if (normalize(f, v) == v) pts.push_back(std::move(v));
  }
  return pts;
}

Matrix singer_matrix(const PrimeField& f, std::size_t d) {
  std::uint64_t qd = 1;
  for (std::size_t i = 0; i < d; ++i) qd *= f.p();
  auto order = qd - 1;
  auto primes = prime_factors(order);
  auto one = identity_matrix(d);
  // x^d + c_{d-1} x^{d-1} + ... + c_0, coefficient vectors in code order
  for (std::uint64_t code = 0; code < qd; ++code) {
    auto c = decode(f, d, code);
    if (c[0] == 0) continue;
    Matrix a(d, Vec(d, 0));
    for (std::size_t i = 0; i + 1 < d; ++i) a[i][i + 1] = 1;
    for (std::size_t j = 0; j < d; ++j) a[d - 1][j] = f.neg(c[j]);
    if (matrix_pow(f, a, order) != one) continue;
    bool primitive = true;
    for (auto l : primes)
      if (matrix_pow(f, a, order / l) == one) primitive = false;
    if (primitive) return a;
  }
  throw std::logic_error("singer_matrix: no primitive polynomial found");
}

std::vector<Matrix> sl_generators(const PrimeField& f, std::size_t d) {
  if (d < 2) throw std::invalid_argument("sl_generators: dimension below 2");
  auto t = identity_matrix(d);
  t[0][1] = 1;
  Matrix c(d, Vec(d, 0));
  for (std::size_t i = 0; i + 1 < d; ++i) c[i][i + 1] = 1;
  c[d - 1][0] = d % 2 == 1 ? 1 : f.neg(1);
  return {t, c};
}

std::size_t SubspaceSet::Hash::operator()(const std::vector<std::uint64_t>& v) const {
  std::size_t h = 1469598103934665603ULL;
  for (auto x : v) h = (h ^ x) * 1099511628211ULL;
  return h;
}

std::vector<std::uint64_t> SubspaceSet::key(const Matrix& basis) const {
  std::vector<std::uint64_t> k;
  for (auto& r : basis) k.push_back(encode(f_, r));
  return k;
}

std::uint32_t SubspaceSet::index_of(const Matrix& rows) const {
  auto it = index_.find(key(rref(f_, rows)));
  if (it == index_.end()) throw std::out_of_range("SubspaceSet: subspace not in the set");
  return it->second;
}

std::uint32_t SubspaceSet::add(const Matrix& rows) {
  auto basis = rref(f_, rows);
  if (basis.size() != dim_) throw std::invalid_argument("SubspaceSet: wrong dimension");
  auto k = key(basis);
  auto [it, fresh] = index_.emplace(k, static_cast<std::uint32_t>(spaces_.size()));
  if (fresh) spaces_.push_back(std::move(basis));
  return it->second;
}

Permutation SubspaceSet::action(const Matrix& m) const {
  std::vector<std::uint32_t> img(spaces_.size());
  for (std::uint32_t k = 0; k < spaces_.size(); ++k) img[k] = index_of(matrix_mul(f_, spaces_[k], m));
  return Permutation(std::move(img));
}

std::vector<std::uint64_t> SubspaceSet::codes(std::uint32_t k) const { return key(spaces_[k]); }

SubspaceSet two_spaces(const PrimeField& f, std::size_t d) {
  SubspaceSet s(f, 2);
  auto pts = projective_points(f, d);
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) s.add({pts[a], pts[b]});  // add() dedupes
  return s;
}

SubspaceSet one_spaces(const PrimeField& f, std::size_t d) {
  SubspaceSet s(f, 1);
  for (auto& p : projective_points(f, d)) s.add({p});
  return s;
}

std::uint64_t QuadraticForm::value(const Vec& x) const {
  std::uint64_t s = 0;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = i; j < dim(); ++j)
      if (c[i][j] && x[j]) s = f.add(s, f.mul(c[i][j], f.mul(x[i], x[j])));
  }
  return s;
}

std::uint64_t QuadraticForm::polar(const Vec& x, const Vec& y) const {
  Vec z(dim());
  for (std::size_t i = 0; i < dim(); ++i) z[i] = f.add(x[i], y[i]);
  return f.sub(f.sub(value(z), value(x)), value(y));
}

bool QuadraticForm::preserved_by(const Matrix& m) const {
  for (auto& v : projective_points(f, dim()))
    if (value(vec_mul(f, v, m)) != value(v)) return false;
  return true;
}

QuadraticForm elliptic_form(const PrimeField& f, std::size_t k) {
  if (f.p() == 2) throw std::invalid_argument("elliptic_form: odd characteristic only");
  auto d = 2 * k + 2;
  QuadraticForm q{f, Matrix(d, Vec(d, 0))};
  for (std::size_t i = 0; i < k; ++i) q.c[i][k + i] = 1;
  std::uint64_t t = 2;
  while (f.is_square(t)) ++t;
  auto half = f.inv(2);
  q.c[2 * k][2 * k] = half;
  q.c[2 * k + 1][2 * k + 1] = f.neg(f.mul(t, half));
  return q;
}

QuadraticForm hyperbolic_form(const PrimeField& f, std::size_t k) {
  QuadraticForm q{f, Matrix(2 * k, Vec(2 * k, 0))};
  for (std::size_t i = 0; i < k; ++i) q.c[i][k + i] = 1;
  return q;
}

std::vector<Vec> singular_points(const QuadraticForm& q) {
  std::vector<Vec> out;
  for (auto& v : projective_points(q.f, q.dim()))
    if (q.value(v) == 0) out.push_back(v);
  return out;
}

}  // namespace hamvt
