#pragma once

#include <functional>
#include <vector>

#include "fixtures.hpp"
#include "pinkforge/structure.hpp"

namespace pinkforge::fixture {


inline RingPtr poly(std::uint64_t q, unsigned k) { return ring_of(q, k); }
inline RingPtr plane(std::uint64_t q) { return std::make_shared<const Ring>(make_truncated_multivariate_ring(q, 2, 2)); }

struct Instance {
  GmaPtr algebra;
  Subspace lie;
};

struct Case {
  const char* name;
  StructureTheorem kind;
  unsigned lambda;
  std::function<Instance()> build;
};

inline Subspace zero_in(const Ring& a) { return Subspace(a.p(), a.dim()); }

inline GmaElem antidiag(const GmaStructure& r, const RingElem& b, const RingElem& c) {
  return r.make(r.ring().zero(), b.coords, c.coords, r.ring().zero());
}

inline Instance large(RingPtr a) {
  GmaPtr r = GmaStructure::matrix_algebra(a);
  return {r, lie_from_blocks(*r, a->radical(), a->radical(), a->radical())};
}

inline Instance dihedral(RingPtr a, const Subspace& i1) {
  GmaPtr r = GmaStructure::matrix_algebra(a);
  return {r, lie_from_blocks(*r, i1, a->radical(), a->radical())};
}

inline Instance cyclic_twisted(RingPtr a) {
  GmaPtr r = GmaStructure::twisted(a, a->variable());
  Subspace full = Subspace::full(a->p(), r->b_dim());
  return {r, lie_from_blocks(*r, a->radical(), full, full)};
}

inline Instance cyclic_diagonal(RingPtr a) {
  GmaPtr r = GmaStructure::diagonal(a);
  Subspace none(a->p(), 0);
  return {r, lie_from_blocks(*r, a->radical(), none, none)};
}

inline Instance order_two_diagonal(RingPtr a) {
  GmaPtr r = GmaStructure::diagonal(a);
  return {r, lie_from_decomposition(*r, a->radical(), Subspace(a->p(), r->dim()))};
}

inline Instance order_two_twisted(RingPtr a) {
  GmaPtr r = GmaStructure::twisted(a, a->variable());
  return {r, traceless_radical(*r)};
}

inline Instance klein(RingPtr a, const Subspace& i1, const std::vector<std::pair<RingElem, RingElem>>& antidiagonals) {
  GmaPtr r = GmaStructure::matrix_algebra(a);
  Subspace nabla(a->p(), r->dim());
  for (const auto& [b, c] : antidiagonals) nabla.insert(antidiag(*r, b, c).v);
  return {r, lie_from_decomposition(*r, i1, nabla)};
}

inline std::vector<Case> structure_cases() {
  using T = StructureTheorem;
  std::vector<Case> out;
  out.push_back({"large_F3_X2", T::LargeImage, 1, [] { return large(poly(3, 2)); }});
  out.push_back({"large_F3_X3", T::LargeImage, 1, [] { return large(poly(3, 3)); }});
  out.push_back({"large_F5_X2", T::LargeImage, 1, [] { return large(poly(5, 2)); }});
  out.push_back({"large_F3_XY", T::LargeImage, 1, [] { return large(plane(3)); }});
  out.push_back({"large_F9_X2_prime_field_ideal", T::LargeImage, 1, [] {
                   RingPtr a = poly(9, 2);
                   GmaPtr r = GmaStructure::matrix_algebra(a);
                   Subspace i = span_of(*a, {a->variable()});
                   return Instance{r, lie_from_blocks(*r, i, i, i)};
                 }});

  out.push_back({"dihedral_F5_X2", T::Dihedral, 1, [] { return dihedral(poly(5, 2), zero_in(*poly(5, 2))); }});
  out.push_back({"dihedral_F7_X2", T::Dihedral, 1, [] { return dihedral(poly(7, 2), zero_in(*poly(7, 2))); }});
  out.push_back({"dihedral_F9_X2", T::Dihedral, 1, [] { return dihedral(poly(9, 2), zero_in(*poly(9, 2))); }});
  out.push_back({"dihedral_F5_X2_full", T::Dihedral, 1, [] {
                   RingPtr a = poly(5, 2);
                   return dihedral(a, a->radical());
                 }});
  out.push_back({"dihedral_F5_X3_square", T::Dihedral, 1, [] {
                   RingPtr a = poly(5, 3);
                   return dihedral(a, span_of(*a, {a->pow(a->variable(), 2)}));
                 }});
  out.push_back({"dihedral_F5_XY", T::Dihedral, 1, [] {
                   RingPtr a = plane(5);
                   return dihedral(a, zero_in(*a));
                 }});

  out.push_back({"cyclic_diagonal_F5_X2", T::Cyclic, 1, [] { return cyclic_diagonal(poly(5, 2)); }});
  out.push_back({"cyclic_twisted_F5_X2", T::Cyclic, 1, [] { return cyclic_twisted(poly(5, 2)); }});
  out.push_back({"cyclic_twisted_F5_X3", T::Cyclic, 1, [] { return cyclic_twisted(poly(5, 3)); }});
  out.push_back({"cyclic_twisted_F9_X2", T::Cyclic, 1, [] { return cyclic_twisted(poly(9, 2)); }});
  out.push_back({"cyclic_twisted_F25_X2", T::Cyclic, 1, [] { return cyclic_twisted(poly(25, 2)); }});
  out.push_back({"cyclic_diagonal_F5_XY", T::Cyclic, 1, [] { return cyclic_diagonal(plane(5)); }});

  out.push_back({"order_two_diagonal_F3_X2", T::OrderTwo, 1, [] { return order_two_diagonal(poly(3, 2)); }});
  out.push_back({"order_two_diagonal_F3_X3", T::OrderTwo, 1, [] { return order_two_diagonal(poly(3, 3)); }});
  out.push_back({"order_two_twisted_F3_X3", T::OrderTwo, 1, [] { return order_two_twisted(poly(3, 3)); }});
  out.push_back({"order_two_twisted_F3_X4", T::OrderTwo, 1, [] { return order_two_twisted(poly(3, 4)); }});
  out.push_back({"order_two_diagonal_F3_XY", T::OrderTwo, 1, [] { return order_two_diagonal(plane(3)); }});

  out.push_back({"klein_F3_X2_lambda1", T::Klein, 1, [] {
                   RingPtr a = poly(3, 2);
                   RingElem x = a->variable();
                   return klein(a, zero_in(*a), {{x, x}});
                 }});
  out.push_back({"klein_F3_X2_lambda2", T::Klein, 2, [] {
                   RingPtr a = poly(3, 2);
                   RingElem x = a->variable();
                   return klein(a, a->radical(), {{x, x}});
                 }});
  out.push_back({"klein_F3_X3_full", T::Klein, 1, [] {
                   RingPtr a = poly(3, 3);
                   GmaPtr r = GmaStructure::matrix_algebra(a);
                   return Instance{r, traceless_radical(*r)};
                 }});
  out.push_back({"klein_F5_X2_lambda2", T::Klein, 2, [] {
                   RingPtr a = poly(5, 2);
                   RingElem x = a->variable();
                   return klein(a, a->radical(), {{x, a->scale(2, x)}});
                 }});
  out.push_back({"klein_F3_XY", T::Klein, 1, [] {
                   RingPtr a = plane(3);
                   RingElem x = a->variable(0, 0), y = a->variable(0, 1);
                   return klein(a, a->radical(), {{x, x}, {y, y}});
                 }});
  out.push_back({"klein_F3_X3_square", T::Klein, 1, [] {
                   RingPtr a = poly(3, 3);
                   RingElem x = a->variable(), x2 = a->mul(x, x);
                   return klein(a, span_of(*a, {x2}), {{x, x}, {x2, x2}});
                 }});
  return out;
}

}  // namespace pinkforge::fixture
