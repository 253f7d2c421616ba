#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pinkforge/gma.hpp"
#include "pinkforge/group.hpp"
#include "pinkforge/localring.hpp"

namespace pinkforge {

// x - tr(x)/2 Id.
GmaElem theta(const GmaStructure& r, const GmaElem& x);
// m + sqrt(1 + tr(m^2)/2) Id for traceless m in rad R.
GmaElem theta_inv(const GmaStructure& r, const GmaElem& m);

using ThetaFn = std::function<GmaElem(const GmaStructure&, const GmaElem&)>;

// (rad R)^0 in flat coordinates.
Subspace traceless_radical(const GmaStructure& r);
bool is_traceless(const GmaStructure& r, std::span<const Coeff> v);

// F_p-subspace of (rad R)^0.
struct LieSubspace {
  GmaPtr algebra;
  Subspace span;

  std::size_t dim() const noexcept { return span.dim(); }
  friend bool operator==(const LieSubspace& x, const LieSubspace& y) { return x.span == y.span; }
};

LieSubspace lie_of_subgroup(const FiniteMatrixGroup& gamma);
Subspace bracket_span(const GmaStructure& r, const Subspace& u, const Subspace& v);
bool is_bracket_closed(const GmaStructure& r, const Subspace& l);

// L_1 = L, L_{n+1} = [L_n, L]; returns L_1 .. L_{n_max}.
std::vector<Subspace> descending_series(const GmaStructure& r, const Subspace& l, std::size_t n_max);
// Gamma_1 = Gamma, Gamma_{n+1} = (Gamma_n, Gamma); returns Gamma_1 .. Gamma_{n_max}.
std::vector<FiniteMatrixGroup> group_series(const FiniteMatrixGroup& gamma, std::size_t n_max,
                                            std::size_t cap = kDefaultGroupCap);

// tr(x y) over pairs of basis members of L.
Subspace pseudo_ring(const GmaStructure& r, const Subspace& l);
// Smallest multiplicatively closed subspace containing tr(g) - 2 for g in Gamma.
Subspace pseudo_ring_of_group(const FiniteMatrixGroup& gamma);
// P x L in flat coordinates.
Subspace pseudo_ring_action(const GmaStructure& r, const Subspace& p, const Subspace& l);

struct PinkStabilityFailure {
  std::string condition;
  GmaElem witness;
};
// nullopt when [L, L] is in L and tr(L L) L is in L.
std::optional<PinkStabilityFailure> check_pink_stable(const GmaStructure& r, const Subspace& l);

// Theta^-1(L) for a Pink-stable L, verified to be a group; NotPinkStable otherwise.
FiniteMatrixGroup pink_converse(GmaPtr algebra, const Subspace& l, std::size_t cap = kDefaultGroupCap);

// x sqrt(1 + tr(y^2)/2) + y sqrt(1 + tr(x^2)/2).
GmaElem star(const GmaStructure& r, const GmaElem& x, const GmaElem& y);
// Canonical representative of x * y modulo L_2.
GmaElem star_mod(const GmaStructure& r, const Subspace& l2, const GmaElem& x, const GmaElem& y);

struct Decomposition {
  bool decomposable = false;
  bool strongly_decomposable = false;
  Subspace delta;   // diagonal part, flat coordinates
  Subspace nabla;   // antidiagonal part, flat coordinates
  Subspace i1;      // in A
  Subspace b1;      // in B
  Subspace c1;      // in C
};
Decomposition decompose(const GmaStructure& r, const Subspace& l);

GmaElem diagonal_part(const GmaStructure& r, const GmaElem& x);
GmaElem antidiagonal_part(const GmaStructure& r, const GmaElem& x);

// [[I, I B], [I C, I]]^0 in flat coordinates.
Subspace congruence_lie(const GmaStructure& r, const Subspace& ideal);

struct CongruenceResult {
  bool congruence = false;
  // Largest ideal I with [[I, I B], [I C, I]]^0 inside L.
  Subspace ideal;
};
CongruenceResult is_congruence_subgroup(const GmaStructure& r, const Subspace& l);

struct SubringResult {
  Subspace span;
  bool is_ring = false;
};
// F_p 1 + I_1 + I_1^2.
SubringResult compute_A0(const Ring& ring, const Subspace& i1);

struct EssentialData {
  std::vector<std::uint32_t> s;  // indices into G
  Subspace a_ess;
  bool weakly_odd = false;
};
EssentialData essential_data(const FiniteMatrixGroup& g, const Subspace& l2);

struct KeyMeasure {
  std::size_t group_order = 0;
  std::size_t residual_order = 0;
  std::uint64_t forms_checked = 0;
  std::uint64_t forms_qualifying = 0;
  std::uint64_t min_count = 0;
  // Coefficients over F_q per monomial block, as residue-field indices.
  std::vector<std::uint32_t> worst_form;
  double min_measure = 1.0;
  double bound = 0.0;
  bool vacuous = true;
  bool pass = true;
};
// Exact count of {g : l(tr g) != 0} over every F-linear form l with l(A_ess) != 0.
KeyMeasure key_measure_check(const FiniteMatrixGroup& g, const EssentialData& ess, std::size_t residual_order,
                             std::uint64_t form_cap = 1u << 22);

struct PsiReport {
  std::size_t l2_size = 0;
  bool maps_into_l2 = false;
  bool bijective = false;
  bool affine = false;
  bool image_matches = false;
};
// Psi(m) = m + (sqrt(1 + tr(m^2)/2) - 1) tr(J gamma)/tr(gamma) J on L_2 and the affine
// form of tr(J gamma Theta^-1(Psi^-1 m)), with image tr(J gamma) + I_2.
PsiReport measure_change_psi(const GmaStructure& r, const Subspace& l2, const GmaElem& gamma,
                             std::size_t cap = 1u << 20);

struct Section8 {
  std::shared_ptr<const Ring> ring;
  GmaPtr algebra;
  GmaElem g, h;
  FiniteMatrixGroup gamma;
  FiniteMatrixGroup group;  // Gamma and J Gamma
  bool conjugation_identities = false;
  Subspace lie;
  Subspace expected_lie;
};
// A = F_p[X]/(X^k), g = diag(X + sqrt(1+X^2), -X + sqrt(1+X^2)),
// h = [[sqrt(1-X^2), X], [-X, sqrt(1-X^2)]], Gamma = <g, h>.
Section8 example_section8(unsigned p, unsigned k, std::size_t cap = kDefaultGroupCap);
// Odd diagonal part and b(X) = c(-X), truncated at X^k.
Subspace section8_expected_lie(const GmaStructure& r);

// (x, a) with x in S and a x outside S, if S is not an ideal.
std::optional<std::pair<RingElem, RingElem>> ideal_witness(const Ring& ring, const Subspace& s);

struct FormulaResult {
  std::string formula;
  std::size_t trials = 0;
  std::size_t violations = 0;
};
// Randomized check of the Theta identities; `map` replaces Theta for fault injection.
std::vector<FormulaResult> formula_battery(const GmaStructure& r, std::size_t trials, std::uint64_t seed,
                                           const ThetaFn& map = theta);

struct ThetaImageGap {
  std::vector<GmaElem> generators;
  std::size_t group_order = 0;
  std::size_t lie_dim = 0;
};
// Random subgroups of SR^1 with |Gamma| < |L(Gamma)|, so that Theta(Gamma) is a proper subset.
std::optional<ThetaImageGap> search_theta_image_gap(GmaPtr algebra, std::size_t trials, std::uint64_t seed,
                                                    std::size_t cap = 100'000);

}  // namespace pinkforge
