#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pinkforge/fp.hpp"

namespace pinkforge {

// Coordinates of a ring element in the F_p-basis of its ring.
struct RingElem {
  Vec coords;

  friend bool operator==(const RingElem&, const RingElem&) = default;
  friend auto operator<=>(const RingElem&, const RingElem&) = default;
};

// One local factor F_q[X_1..X_n] / (X)^truncation of a finite commutative F_p-algebra.
// Coordinates of the factor start at `offset`; the basis element at offset + m * f + i
// is alpha^i times the m-th monomial, with alpha a root of `residue_poly` and
// monomials ordered by total degree (monomial 0 is the constant 1).
struct LocalFactor {
  std::size_t offset = 0;
  std::size_t dim = 0;
  unsigned residue_degree = 1;
  Vec residue_poly;
  unsigned variables = 1;
  unsigned truncation = 1;
  std::vector<std::vector<unsigned>> monomials;

  std::uint64_t residue_size(unsigned p) const;
  unsigned nilpotency() const noexcept { return variables == 0 ? 1 : truncation; }
};

// Finite commutative F_p-algebra that is a product of truncated polynomial rings over
// finite fields.  Elements are coordinate vectors; arithmetic goes through sparse
// structure constants.
class Ring {
 public:
  unsigned p() const noexcept { return field_.p(); }
  const PrimeField& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  std::span<const LocalFactor> factors() const noexcept { return factors_; }
  bool is_local() const noexcept { return factors_.size() == 1; }
  unsigned nilpotency_index() const noexcept;

  RingElem zero() const { return {Vec(dim_, 0)}; }
  RingElem one() const { return one_; }
  RingElem from_int(long long v) const;
  RingElem basis(std::size_t i) const;
  RingElem monomial(std::size_t factor, std::span<const unsigned> exponents, Coeff c = 1) const;
  RingElem variable(std::size_t factor = 0, unsigned which = 0) const;
  // alpha^i embedded in the given factor.
  RingElem constant_basis(std::size_t factor, unsigned i) const;
  RingElem idempotent(std::size_t factor) const;

  RingElem add(const RingElem& a, const RingElem& b) const;
  RingElem sub(const RingElem& a, const RingElem& b) const;
  RingElem neg(const RingElem& a) const;
  RingElem scale(Coeff c, const RingElem& a) const;
  RingElem mul(const RingElem& a, const RingElem& b) const;
  RingElem pow(const RingElem& a, std::uint64_t e) const;
  // out += a * b over raw coordinates.
  void mul_acc(std::span<const Coeff> a, std::span<const Coeff> b, std::span<Coeff> out) const;

  bool is_unit(const RingElem& a) const;
  RingElem inverse(const RingElem& a) const;
  bool in_radical(const RingElem& a) const { return radical_.contains(a.coords); }
  const Subspace& radical() const noexcept { return radical_; }
  // F_p-span of the constant fields of all factors.
  const Subspace& constants() const noexcept { return constants_; }
  // Span of basis elements whose monomial has total degree >= j, i.e. rad^j.
  Subspace radical_power(unsigned j) const;

  // The coordinates of the factor's residue, as an element of residue_field(factor).
  RingElem residue(const RingElem& a, std::size_t factor = 0) const;
  Ring residue_field(std::size_t factor = 0) const;
  // Lift of a residue field element to the constant subfield of the factor.
  RingElem lift_constant(const RingElem& residue_elem, std::size_t factor = 0) const;
  // Projection onto one factor, as an element of factor_ring(i).
  RingElem project(const RingElem& a, std::size_t factor) const;
  Ring factor_ring(std::size_t factor) const;

  RingElem random(Rng& rng) const;
  std::size_t monomial_degree(std::size_t index) const;
  std::string to_string(const RingElem& a) const;
  std::string descriptor_json() const;

  bool same_as(const Ring& other) const noexcept;

  friend Ring make_truncated_multivariate_ring(std::uint64_t q, unsigned variables, unsigned truncation);
  friend Ring make_product_ring(const std::vector<Ring>& factors);

 private:
  explicit Ring(unsigned p) : field_(p), radical_(p, 0), constants_(p, 0) {}
  void finalize();

  struct Term {
    std::uint32_t right;
    std::uint32_t out;
    Coeff c;
  };

  PrimeField field_;
  std::size_t dim_ = 0;
  std::vector<LocalFactor> factors_;
  std::vector<std::uint32_t> term_start_;
  std::vector<Term> terms_;
  std::vector<std::size_t> factor_of_;
  RingElem one_;
  Subspace radical_;
  Subspace constants_;
};

Ring make_truncated_multivariate_ring(std::uint64_t q, unsigned variables, unsigned truncation);
// F_q[X] / (X^k).
Ring make_truncated_poly_ring(std::uint64_t q, unsigned k);
Ring make_field(std::uint64_t q);
Ring make_product_ring(const std::vector<Ring>& factors);

// Monic polynomial (low to high) defining F_{p^f}; Conway polynomial when tabulated,
// else the first primitive polynomial in lexicographic order.
Vec residue_field_polynomial(unsigned p, unsigned f);
bool is_primitive_polynomial(unsigned p, const Vec& monic);

// Square root congruent to 1 of an element congruent to 1 modulo the radical.
RingElem hensel_sqrt(const Ring& ring, const RingElem& x);
bool is_square_unit(const Ring& ring, const RingElem& x);
// Constant lift of a residue field element.
RingElem teichmuller(const Ring& ring, const RingElem& residue_elem, std::size_t factor = 0);

// F_p-linear map of the quotient F_q[X]/(X)^k -> F_q[X]/(X)^k' for k' <= k, as a matrix.
Matrix truncation_matrix(const Ring& from, const Ring& to);
RingElem apply_truncation(const Matrix& map, const RingElem& a);

// Ideal-theoretic helpers over F_p-subspaces of a ring.
Subspace product_space(const Ring& ring, const Subspace& u, const Subspace& v);
Subspace ideal_generated(const Ring& ring, const Subspace& s);
bool is_ideal(const Ring& ring, const Subspace& s);
Subspace annihilator_of(const Ring& ring, const Subspace& s);
// Smallest subspace containing s and closed under multiplication.
Subspace multiplicative_closure(const Ring& ring, const Subspace& s);
Subspace span_of(const Ring& ring, const std::vector<RingElem>& elems);

}  // namespace pinkforge
