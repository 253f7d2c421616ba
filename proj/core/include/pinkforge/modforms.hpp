#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "pinkforge/fp.hpp"

namespace pinkforge {

// Power series a_0 + a_1 q + ... + a_deg q^deg over F_p; one bit per coefficient when p = 2.
class FpSeries {
 public:
  FpSeries(unsigned p, std::size_t deg);
  static FpSeries from_coeffs(unsigned p, const std::vector<unsigned>& coeffs);
  static FpSeries one(unsigned p, std::size_t deg);
  static FpSeries monomial(unsigned p, std::size_t deg, std::size_t n, unsigned c = 1);

  unsigned p() const noexcept { return p_; }
  std::size_t deg() const noexcept { return deg_; }
  unsigned coeff(std::size_t n) const;
  void set(std::size_t n, unsigned value);
  bool is_zero() const noexcept;
  std::size_t support_size() const noexcept;
  std::vector<std::size_t> support() const;
  FpSeries truncate(std::size_t deg) const;

  const std::vector<std::uint64_t>& words() const noexcept { return bits_; }
  std::vector<std::uint64_t>& words() noexcept { return bits_; }
  const std::vector<Coeff>& digits() const noexcept { return digits_; }
  std::vector<Coeff>& digits() noexcept { return digits_; }

  friend bool operator==(const FpSeries& a, const FpSeries& b);

 private:
  void clear_tail() noexcept;

  unsigned p_;
  std::size_t deg_;
  std::vector<std::uint64_t> bits_;  // p = 2
  std::vector<Coeff> digits_;        // p odd
};

FpSeries series_add(const FpSeries& a, const FpSeries& b);
FpSeries series_sub(const FpSeries& a, const FpSeries& b);
FpSeries series_scale(unsigned c, const FpSeries& a);
// Truncated at the smaller degree.
FpSeries series_mul(const FpSeries& a, const FpSeries& b);
FpSeries series_pow(const FpSeries& f, std::uint64_t n);
// f(q^m), same degree.
FpSeries dilate(const FpSeries& f, std::size_t m);
// q^s f, same degree.
FpSeries shift(const FpSeries& f, std::size_t s);

// prod (1 - q^n) by the pentagonal number theorem.
FpSeries eta_product(unsigned p, std::size_t deg);
// q prod (1 - q^n)^24.
FpSeries delta_expansion(unsigned p, std::size_t deg);

// sum a_{n l} q^n, degree floor(deg / l).
FpSeries hecke_U(unsigned l, const FpSeries& f);
// a_{n l} + l^(k-1) a_{n/l} with k taken mod p - 1; degree floor(deg / l).
FpSeries hecke_T(unsigned l, unsigned k_eff, const FpSeries& f);

std::vector<std::uint32_t> primes_up_to(std::uint64_t x);

struct DensityCheckpoint {
  std::uint64_t x = 0;
  std::uint64_t counted = 0;
  std::uint64_t total = 0;
  double estimate = 0.0;
};

struct DensityReport {
  std::uint64_t x = 0;
  std::uint64_t counted = 0;
  std::uint64_t total_primes = 0;
  double estimate = 0.0;
  std::vector<DensityCheckpoint> checkpoints;  // at X/8, X/4, X/2, X
};

// Primes l <= X prime to N p with a_l != 0.
DensityReport density_sweep(const FpSeries& f, std::uint64_t x, std::uint64_t np = 1);

struct CyclotomicResult {
  bool cyclotomic = false;
  // a_l per residue class mod M, -1 where no prime was seen.
  std::vector<int> table;
  // Primes l < l' in the same class with a_l != a_l'.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> violation;
};

CyclotomicResult cyclotomic_test(const FpSeries& f, std::uint64_t m, std::uint64_t x, std::uint64_t np = 1);

struct HeckeSpan {
  std::vector<FpSeries> basis;
  std::vector<unsigned> primes;
  // matrices[i] is T_{primes[i]} on the basis, column j = coordinates of T(basis[j]).
  std::vector<Matrix> matrices;
  // Common degree at which all coordinates were compared.
  std::size_t degree = 0;
};

// Span of f under the T_l, compared at a degree no smaller than min_degree.
HeckeSpan hecke_span(const FpSeries& f, const std::vector<unsigned>& primes, unsigned k_eff,
                     std::size_t min_degree, std::size_t max_dim);

// Least k with (M_l - lambda)^k = 0 on the span.
std::optional<std::size_t> nilpotency_check(const HeckeSpan& span, unsigned l, unsigned lambda);

// Header line "p deg", then the coefficients: bit n of byte n/8 for p = 2, one byte each otherwise.
void write_series(std::ostream& out, const FpSeries& f);
FpSeries read_series(std::istream& in);

}  // namespace pinkforge
