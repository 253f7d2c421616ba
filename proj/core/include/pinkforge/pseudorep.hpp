#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pinkforge/gma.hpp"
#include "pinkforge/group.hpp"
#include "pinkforge/localring.hpp"

namespace pinkforge {

inline constexpr std::size_t kAlgebraGroupCap = 10'000;

// Two-dimensional pseudo-representation of a finite group with values in a finite ring.
struct PseudoRep {
  std::shared_ptr<const FiniteGroup> group;
  std::shared_ptr<const Ring> ring;
  std::vector<RingElem> t;
  std::vector<RingElem> d;
};

// (tr, det) of the tautological representation, indexed like the group's elements.
PseudoRep trace_det(const FiniteMatrixGroup& group);
// Reduction modulo the maximal ideal of a local ring, valued in the residue field.
PseudoRep residual(const PseudoRep& tr);

struct AxiomViolation {
  std::string axiom;
  std::uint32_t x = 0;
  std::uint32_t y = 0;
};

// nullopt when d is multiplicative, t central, t(1) = 2 and t(xy) + d(y) t(xy^-1) = t(x) t(y).
std::optional<AxiomViolation> check_axioms(const PseudoRep& tr);

// Elements y with d(y) = 1 and t(xy) = t(x) for every x, in increasing index order.
std::vector<std::uint32_t> kernel(const PseudoRep& tr);

// Element of A[G] as one ring coefficient per group element.
using GroupAlgebraElem = std::vector<RingElem>;

GroupAlgebraElem group_algebra_zero(const PseudoRep& tr);
GroupAlgebraElem group_algebra_basis(const PseudoRep& tr, std::uint32_t g);
GroupAlgebraElem group_algebra_mul(const PseudoRep& tr, const GroupAlgebraElem& x, const GroupAlgebraElem& y);
RingElem extend_T(const PseudoRep& tr, const GroupAlgebraElem& x);
// D(sum a_g g) = sum a_g^2 d(g) + sum_{g<h} a_g a_h (t(g) t(h) - t(gh)).
RingElem extend_D(const PseudoRep& tr, const GroupAlgebraElem& x);

// Ker(T, D) as an F_p-subspace of A[G], coordinate g * dim A + i.  For odd p it equals
// {y : T(yx) = 0 for all x}.
Subspace linear_kernel(const PseudoRep& tr);
Vec flatten(const PseudoRep& tr, const GroupAlgebraElem& x);

// A homomorphism G -> R* into a GMA whose trace and determinant are (t, d).
struct TdRepresentation {
  GmaPtr algebra;
  std::vector<GmaElem> image;
  std::uint32_t g0 = 0;
};

// Adapted (t, d)-representation on R = A[G] / Ker(T, D) with rho(g0) diagonal and
// residually diag(lambda0, mu0).  The eigenvalues are residue field elements.
TdRepresentation build_td_representation(const PseudoRep& tr, std::uint32_t g0, const RingElem& lambda0,
                                         const RingElem& mu0, std::size_t cap = kAlgebraGroupCap);
// Same with the first g0 whose residual characteristic polynomial has distinct roots in F_q.
TdRepresentation build_td_representation(const PseudoRep& tr, std::size_t cap = kAlgebraGroupCap);

// The element of G whose residual image has two distinct eigenvalues in F_q, with them.
struct AdaptedChoice {
  std::uint32_t g0;
  RingElem lambda0;
  RingElem mu0;
};
std::optional<AdaptedChoice> first_adapted_element(const PseudoRep& tr);

// Nonzero residual dimension over F_q of F_q[G] / Ker; NotMultFree unless 4, or 2 with
// two distinct F_q-valued characters.
void require_multiplicity_free(const PseudoRep& tr, std::size_t cap = kAlgebraGroupCap);
bool is_multiplicity_free(const PseudoRep& tr, std::size_t cap = kAlgebraGroupCap);

// The A-algebra isomorphism R1 -> R2 carrying rho1 to rho2 and respecting the GMA blocks,
// as a matrix on flat coordinates; nullopt if none exists.
std::optional<Matrix> find_gma_isomorphism(const TdRepresentation& first, const TdRepresentation& second);

FiniteMatrixGroup image_group(const TdRepresentation& rho);

enum class ResidualTag { CyclicOrder2, CyclicOrderN, DihedralOrder4, DihedralN, LargeImage, Exceptional };

std::string_view to_string(ResidualTag tag) noexcept;

struct ResidualClass {
  ResidualTag tag;
  // Order of the projective image.
  std::size_t projective_order = 1;
  // n for cyclic, half the projective order for dihedral, e with F_{p^e} for large image.
  std::size_t parameter = 0;
  // For large image: whether the projective image is PGL_2 rather than PSL_2.
  bool pgl = false;
  bool reducible = false;
};

// Classification of a finite subgroup of GL_2(F_q), given in M_2(F_q) or as a diagonal
// GMA over F_q.
ResidualClass classify_projective_image(const FiniteMatrixGroup& gbar);

// Image of G modulo the maximal ideal: M_2(F_q) for a matrix algebra, the diagonal
// semisimplification otherwise.
FiniteMatrixGroup residual_image(const FiniteMatrixGroup& group);

// F_q-span of t(G) equals A.
bool is_admissible(const PseudoRep& tr);
bool is_admissible(const Ring& ring, std::span<const RingElem> traces);

bool is_well_adapted(const FiniteMatrixGroup& group, const GmaElem& g0);

// Ideal generated by t(c s) - t(s) over commutators c and elements s.
Subspace commutator_trace_ideal(const PseudoRep& tr);

// Greedy generating set, each element outside the subgroup generated by the previous ones.
std::vector<std::uint32_t> generating_set(const FiniteGroup& group);

}  // namespace pinkforge
