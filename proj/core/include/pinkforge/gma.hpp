#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pinkforge/fp.hpp"
#include "pinkforge/localring.hpp"

namespace pinkforge {

// A finite A-module presented by an F_p-basis and the matrices of the ring basis elements.
struct Module {
  std::size_t dim = 0;
  std::vector<Matrix> action;
};

Module regular_module(const Ring& ring);
Module zero_module(const Ring& ring);
Module ideal_module(const Ring& ring, const Subspace& ideal);
// A / I on the standard basis vectors outside the pivots of I.
Module quotient_module(const Ring& ring, const Subspace& ideal);

// Element of a generalized matrix algebra [[A, B], [C, A]], flat coordinates [a | b | c | d].
struct GmaElem {
  Vec v;

  friend bool operator==(const GmaElem&, const GmaElem&) = default;
  friend auto operator<=>(const GmaElem&, const GmaElem&) = default;
};

enum class FactorCase { Matrix, Reduced };

// Generalized matrix algebra of type (1,1) over a finite commutative F_p-algebra.
// Immutable after construction; the product is a precomputed sparse bilinear map.
class GmaStructure {
 public:
  // pairing[jb * C.dim + jc] = m(b_jb, c_jc)
  static std::shared_ptr<const GmaStructure> create(std::shared_ptr<const Ring> ring, Module b, Module c,
                                                    std::vector<RingElem> pairing);
  static std::shared_ptr<const GmaStructure> matrix_algebra(std::shared_ptr<const Ring> ring);
  static std::shared_ptr<const GmaStructure> diagonal(std::shared_ptr<const Ring> ring);
  // B = C = A / ann(u) with m(b, c) = u b c.
  static std::shared_ptr<const GmaStructure> twisted(std::shared_ptr<const Ring> ring, const RingElem& u);
  // B, C ideals of A with m(b, c) = b c.
  static std::shared_ptr<const GmaStructure> from_ideals(std::shared_ptr<const Ring> ring, const Subspace& b,
                                                         const Subspace& c);

  const Ring& ring() const noexcept { return *ring_; }
  std::shared_ptr<const Ring> ring_ptr() const noexcept { return ring_; }
  unsigned p() const noexcept { return ring_->p(); }
  std::size_t dim() const noexcept { return 2 * n_ + nb_ + nc_; }
  std::size_t ring_dim() const noexcept { return n_; }
  std::size_t b_dim() const noexcept { return nb_; }
  std::size_t c_dim() const noexcept { return nc_; }
  std::size_t b_offset() const noexcept { return n_; }
  std::size_t c_offset() const noexcept { return n_ + nb_; }
  std::size_t d_offset() const noexcept { return n_ + nb_ + nc_; }
  bool is_matrix_algebra() const noexcept { return matrix_algebra_; }
  const Module& b_module() const noexcept { return b_; }
  const Module& c_module() const noexcept { return c_; }

  GmaElem zero() const { return {Vec(dim(), 0)}; }
  GmaElem identity() const;
  GmaElem J() const;
  GmaElem make(const RingElem& a, std::span<const Coeff> b, std::span<const Coeff> c, const RingElem& d) const;
  GmaElem diag(const RingElem& a, const RingElem& d) const;
  GmaElem scalar(const RingElem& r) const { return diag(r, r); }
  RingElem a(const GmaElem& x) const;
  RingElem d(const GmaElem& x) const;
  Vec b(const GmaElem& x) const;
  Vec c(const GmaElem& x) const;

  GmaElem add(const GmaElem& x, const GmaElem& y) const;
  GmaElem sub(const GmaElem& x, const GmaElem& y) const;
  GmaElem neg(const GmaElem& x) const;
  GmaElem scale(Coeff c, const GmaElem& x) const;
  GmaElem scale(const RingElem& r, const GmaElem& x) const;
  GmaElem mul(const GmaElem& x, const GmaElem& y) const;
  void mul_into(std::span<const Coeff> x, std::span<const Coeff> y, std::span<Coeff> out) const;
  GmaElem bracket(const GmaElem& x, const GmaElem& y) const;
  GmaElem inverse(const GmaElem& x) const;
  GmaElem pow(const GmaElem& x, std::uint64_t e) const;
  RingElem trace(const GmaElem& x) const;
  RingElem det(const GmaElem& x) const;
  RingElem pairing(std::span<const Coeff> b, std::span<const Coeff> c) const;
  Vec act_b(const RingElem& r, std::span<const Coeff> b) const;
  Vec act_c(const RingElem& r, std::span<const Coeff> c) const;

  std::span<const FactorCase> factor_cases() const noexcept { return cases_; }
  bool is_reduced() const noexcept;
  const Subspace& radical() const noexcept { return radical_; }
  bool in_radical(const GmaElem& x) const { return radical_.contains(x.v); }
  bool in_SR1(const GmaElem& x) const;
  bool is_faithful() const;
  // The A-span of all m(b, c).
  Subspace pairing_ideal() const;

  GmaElem random(Rng& rng) const;
  std::string to_string(const GmaElem& x) const;
  void check_length(const GmaElem& x) const;

 private:
  GmaStructure(std::shared_ptr<const Ring> ring, Module b, Module c, std::vector<RingElem> pairing);
  void validate() const;
  void build_product();
  void build_radical();

  struct Term {
    std::uint32_t right;
    std::uint32_t out;
    Coeff c;
  };

  std::shared_ptr<const Ring> ring_;
  Module b_;
  Module c_;
  std::vector<RingElem> pairing_;
  std::size_t n_, nb_, nc_;
  bool matrix_algebra_ = false;
  std::vector<std::uint32_t> term_start_;
  std::vector<Term> terms_;
  std::vector<FactorCase> cases_;
  Subspace radical_;
};

using GmaPtr = std::shared_ptr<const GmaStructure>;

inline GmaElem gma_mul(const GmaStructure& r, const GmaElem& x, const GmaElem& y) { return r.mul(x, y); }
inline RingElem gma_trace(const GmaStructure& r, const GmaElem& x) { return r.trace(x); }
inline RingElem gma_det(const GmaStructure& r, const GmaElem& x) { return r.det(x); }
inline GmaElem gma_inverse(const GmaStructure& r, const GmaElem& x) { return r.inverse(x); }
inline bool in_SR1(const GmaStructure& r, const GmaElem& x) { return r.in_SR1(x); }
inline bool is_faithful(const GmaStructure& r) { return r.is_faithful(); }
// x^2 - tr(x) x + det(x) vanishes on every sampled element.
bool is_cayley_hamilton(const GmaStructure& r, Rng& rng, std::size_t samples = 64);

// Isomorphism onto M_2(A) for a local A with m(B, C) = A.
class MatrixForm {
 public:
  explicit MatrixForm(GmaPtr source);

  const GmaStructure& target() const noexcept { return *target_; }
  GmaPtr target_ptr() const noexcept { return target_; }
  GmaElem apply(const GmaElem& x) const;

 private:
  GmaPtr source_;
  GmaPtr target_;
  Vec b0_, c0_;
  RingElem u_inv_;
};

// Trace-zero elements of the radical: a random element with d = -a.
GmaElem random_traceless_radical(const GmaStructure& r, Rng& rng);

}  // namespace pinkforge
