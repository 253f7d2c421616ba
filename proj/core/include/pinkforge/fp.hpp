#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace pinkforge {

using Coeff = std::uint8_t;
using Vec = std::vector<Coeff>;
using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 0x9e3779b97f4a7c15ULL;

bool is_prime(std::uint64_t n) noexcept;

// Arithmetic in Z/p for a prime p < 256.
class PrimeField {
 public:
  explicit PrimeField(unsigned p);

  unsigned p() const noexcept { return p_; }

  Coeff add(Coeff a, Coeff b) const noexcept {
    unsigned s = unsigned(a) + b;
    return Coeff(s >= p_ ? s - p_ : s);
  }
  Coeff sub(Coeff a, Coeff b) const noexcept { return Coeff(a >= b ? a - b : a + p_ - b); }
  Coeff neg(Coeff a) const noexcept { return Coeff(a == 0 ? 0 : p_ - a); }
  Coeff mul(Coeff a, Coeff b) const noexcept { return Coeff((unsigned(a) * b) % p_); }
  Coeff inv(Coeff a) const;
  Coeff pow(Coeff a, std::uint64_t e) const noexcept;
  Coeff from_int(long long v) const noexcept;
  Coeff random(Rng& rng) const { return Coeff(rng() % p_); }

  // a += c * b, coordinatewise
  void axpy(std::span<Coeff> a, Coeff c, std::span<const Coeff> b) const noexcept;
  void scale(std::span<Coeff> a, Coeff c) const noexcept;

 private:
  unsigned p_;
  std::vector<Coeff> inverse_;
};

bool is_zero(std::span<const Coeff> v) noexcept;

// F_p-subspace of F_p^n held as a reduced row echelon basis.
class Subspace {
 public:
  Subspace(unsigned p, std::size_t ambient);

  static Subspace span(unsigned p, std::size_t ambient, const std::vector<Vec>& generators);
  static Subspace full(unsigned p, std::size_t ambient);

  unsigned p() const noexcept { return field_.p(); }
  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  const std::vector<Vec>& basis() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  bool insert(std::span<const Coeff> v);
  bool contains(std::span<const Coeff> v) const;
  Vec reduce(std::span<const Coeff> v) const;
  // Coordinates of v in basis(), or nullopt when v lies outside.
  std::optional<Vec> coordinates(std::span<const Coeff> v) const;
  bool includes(const Subspace& other) const;

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  // Orthogonal complement under the standard dot product.
  Subspace annihilator() const;
  // Image of the subspace under the coordinate projection onto [offset, offset + len).
  Subspace project(std::size_t offset, std::size_t len) const;

  Vec random_element(Rng& rng) const;
  // All p^dim elements; the caller bounds dim.
  std::vector<Vec> elements() const;

  friend bool operator==(const Subspace& a, const Subspace& b);

 private:
  PrimeField field_;
  std::size_t ambient_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

// Dense matrix over F_p, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(unsigned p, std::size_t rows, std::size_t cols);

  static Matrix identity(unsigned p, std::size_t n);

  unsigned p() const noexcept { return p_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Coeff& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Coeff operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<Coeff> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Coeff> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  Matrix operator*(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Vec apply(std::span<const Coeff> v) const;
  bool is_zero() const noexcept;

  std::size_t rank() const;
  // Basis of {x : M x = 0}.
  std::vector<Vec> kernel() const;
  // Some x with M x = b.
  std::optional<Vec> solve(std::span<const Coeff> b) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  unsigned p_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Coeff> data_;
};

}  // namespace pinkforge
