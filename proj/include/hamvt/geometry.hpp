#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "hamvt/ff.hpp"
#include "hamvt/permgrp.hpp"

namespace hamvt {

// Linear algebra over a prime field, row-vector convention: v -> v M.
using Vec = std::vector<std::uint64_t>;
using Matrix = std::vector<Vec>;

Matrix identity_matrix(std::size_t d);
Matrix matrix_mul(const PrimeField& f, const Matrix& a, const Matrix& b);
Matrix matrix_pow(const PrimeField& f, Matrix a, std::uint64_t e);
Matrix matrix_inverse(const PrimeField& f, const Matrix& a);  // throws if singular
Matrix transpose(const Matrix& a);
Matrix block_diagonal(const std::vector<Matrix>& blocks);
Vec vec_mul(const PrimeField& f, const Vec& v, const Matrix& m);
std::uint64_t dot(const PrimeField& f, const Vec& a, const Vec& b);
std::uint64_t determinant(const PrimeField& f, Matrix a);

// Reduced row echelon form with zero rows dropped.
Matrix rref(const PrimeField& f, Matrix rows);
std::size_t rank(const PrimeField& f, const Matrix& rows);

// Scales v so that its first non-zero coordinate is 1.
Vec normalize(const PrimeField& f, Vec v);
std::uint64_t encode(const PrimeField& f, const Vec& v);  // sum v_i p^i
Vec decode(const PrimeField& f, std::size_t dim, std::uint64_t code);

// Normalized representatives of the points of PG(d-1, p), ascending by code.
std::vector<Vec> projective_points(const PrimeField& f, std::size_t d);

// Companion matrix of the least primitive polynomial of degree d; its powers
// act regularly on the non-zero vectors, its image in PGL regularly on points.
Matrix singer_matrix(const PrimeField& f, std::size_t d);

// Two generators of SL(d, p): a transvection and a signed cyclic permutation.
std::vector<Matrix> sl_generators(const PrimeField& f, std::size_t d);

// A finite set of subspaces of one dimension, indexed by their RREF basis.
class SubspaceSet {
 public:
  SubspaceSet(const PrimeField& f, std::size_t dim) : f_(f), dim_(dim) {}

  const PrimeField& field() const { return f_; }
  std::size_t dim() const { return dim_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(spaces_.size()); }
  const Matrix& operator[](std::uint32_t k) const { return spaces_[k]; }

  // Index of span(rows); throws if it is not in the set.
  std::uint32_t index_of(const Matrix& rows) const;
  std::uint32_t add(const Matrix& rows);  // idempotent
  Permutation action(const Matrix& m) const;
  std::vector<std::uint64_t> codes(std::uint32_t k) const;

 private:
  std::vector<std::uint64_t> key(const Matrix& basis) const;
  struct Hash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const;
  };

  PrimeField f_;
  std::size_t dim_;
  std::vector<Matrix> spaces_;
  std::unordered_map<std::vector<std::uint64_t>, std::uint32_t, Hash> index_;
};

// All 2-spaces of F_p^d.
SubspaceSet two_spaces(const PrimeField& f, std::size_t d);
// Projective points of F_p^d as 1-spaces.
SubspaceSet one_spaces(const PrimeField& f, std::size_t d);

// Q(x) = sum_{i <= j} c[i][j] x_i x_j.
struct QuadraticForm {
  PrimeField f;
  Matrix c;

  std::size_t dim() const { return c.size(); }
  std::uint64_t value(const Vec& x) const;
  std::uint64_t polar(const Vec& x, const Vec& y) const;  // Q(x+y) - Q(x) - Q(y)
  bool preserved_by(const Matrix& m) const;
};

// x1 x_{k+1} + ... + xk x_{2k} + (x_{2k+1}^2 - t x_{2k+2}^2)/2 on F_p^{2k+2}, t the
// least non-square.  p odd.
QuadraticForm elliptic_form(const PrimeField& f, std::size_t k);
// x1 x_{k+1} + ... + xk x_{2k} on F_p^{2k}.
QuadraticForm hyperbolic_form(const PrimeField& f, std::size_t k);

// Singular points of Q as normalized vectors, ascending by code.
std::vector<Vec> singular_points(const QuadraticForm& q);

}  // namespace hamvt
