#pragma once

#include <memory>
#include <vector>

#include "pinkforge/gma.hpp"
#include "pinkforge/group.hpp"
#include "pinkforge/pinklie.hpp"

namespace pinkforge::fixture {

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr ring_of(std::uint64_t q, unsigned k) {
  return std::make_shared<const Ring>(make_truncated_poly_ring(q, k));
}

inline GmaElem random_sr1(const GmaStructure& r, Rng& rng) { return theta_inv(r, random_traceless_radical(r, rng)); }

// Algebras whose SR^1 has at most 3^9 elements.
inline std::vector<GmaPtr> small_algebras() {
  RingPtr a2 = ring_of(3, 2), a3 = ring_of(3, 3), a4 = ring_of(3, 4), b2 = ring_of(5, 2);
  RingPtr xy = std::make_shared<const Ring>(make_truncated_multivariate_ring(3, 2, 2));
  return {GmaStructure::matrix_algebra(a3), GmaStructure::matrix_algebra(b2), GmaStructure::matrix_algebra(xy),
          GmaStructure::twisted(a4, a4->variable()), GmaStructure::matrix_algebra(a2),
          GmaStructure::twisted(a3, a3->variable())};
}

// Gamma_n = Theta^-1(L_n) as sets, for the given n.
inline bool series_agree(const GmaStructure& r, const FiniteMatrixGroup& gamma_n, const Subspace& l_n) {
  std::size_t expected = 1;
  for (std::size_t i = 0; i < l_n.dim(); ++i) expected *= r.p();
  if (gamma_n.order() != expected) return false;
  for (const Vec& m : l_n.elements())
    if (!gamma_n.contains(theta_inv(r, GmaElem{m}))) return false;
  return true;
}

}  // namespace pinkforge::fixture
