#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace hamvt {

enum class Residue { Zero, Square, NonSquare };

// Integer helpers shared by the field and group code.
bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);  // distinct, ascending
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

// Z/p.  p = 2 is allowed here because the projective-geometry code needs F_2;
// the residue machinery requires p odd.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t p() const { return p_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return mulmod(a, b, p_); }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const { return powmod(a, e, p_); }
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t reduce(std::int64_t a) const;

  // Smallest primitive root.
  std::uint64_t theta() const { return theta_; }

  Residue residue(std::uint64_t x) const;
  int eta(std::uint64_t x) const;  // Legendre symbol, eta(0) = 0
  bool is_square(std::uint64_t x) const { return residue(x) != Residue::NonSquare; }
  bool is_nonzero_square(std::uint64_t x) const { return residue(x) == Residue::Square; }
  // Smaller of the two roots, or nothing for a non-square.
  std::optional<std::uint64_t> sqrt(std::uint64_t x) const;
  // Discrete log to base theta (table-backed below the scan threshold).
  std::uint64_t log(std::uint64_t x) const;

 private:
  std::uint64_t p_;
  std::uint64_t theta_ = 1;
  // For p below the scan threshold: Legendre table, smallest roots, logs.
  std::vector<std::int8_t> chi_;
  std::vector<std::uint32_t> root_;
  std::vector<std::uint32_t> log_;
};

constexpr std::uint64_t kScanThreshold = 10000;
constexpr int kMaxExtensionDegree = 4;

// Coordinates over the prime field, lowest degree first.
struct FieldElement {
  std::array<std::uint64_t, kMaxExtensionDegree> c{};
  bool operator==(const FieldElement&) const = default;
};

// F_q with q = p^k, p odd, k <= 4.
class FieldContext {
 public:
  std::uint64_t order() const { return q_; }
  std::uint64_t characteristic() const { return fp_.p(); }
  int degree() const { return k_; }
  // Monic modulus, coefficients lowest first (length k+1); {0,1} for k = 1.
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  const PrimeField& prime_field() const { return fp_; }

  FieldElement zero() const { return {}; }
  FieldElement one() const;
  FieldElement from_int(std::uint64_t encoding) const;  // sum c_i p^i
  std::uint64_t to_int(const FieldElement& x) const;

  FieldElement add(const FieldElement& a, const FieldElement& b) const;
  FieldElement sub(const FieldElement& a, const FieldElement& b) const;
  FieldElement neg(const FieldElement& a) const;
  FieldElement mul(const FieldElement& a, const FieldElement& b) const;
  FieldElement pow(FieldElement a, std::uint64_t e) const;
  FieldElement inv(const FieldElement& a) const;

  FieldElement theta() const { return theta_; }
  Residue residue_class(const FieldElement& x) const;
  std::optional<FieldElement> sqrt(const FieldElement& x) const;

 private:
  friend FieldContext make_field(std::uint64_t q);
  FieldContext(std::uint64_t p, int k);

  bool is_generator(const FieldElement& x) const;

  PrimeField fp_;
  int k_;
  std::uint64_t q_;
  std::vector<std::uint64_t> modulus_;
  FieldElement theta_{};
};

// Rejects q that is not an odd prime power or whose degree exceeds 4.
FieldContext make_field(std::uint64_t q);

}  // namespace hamvt
