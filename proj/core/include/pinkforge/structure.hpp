#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pinkforge/pinklie.hpp"
#include "pinkforge/pseudorep.hpp"

namespace pinkforge {

enum class StructureTheorem { OrderTwo, Cyclic, Klein, Dihedral, LargeImage };

std::string_view to_string(StructureTheorem kind) noexcept;
// Exceptional images fall under the large image theorem.
StructureTheorem theorem_for(const ResidualClass& residual);

// Lifted constants of the subfield F_{p^degree} of the residue field; degree must divide f.
Subspace subfield_constants(const Ring& ring, unsigned degree);
// Smallest degree e | f with gcd(m, p^e - 1) > 2, or f when none qualifies.
unsigned smallest_subfield_degree(const Ring& ring, std::size_t m);
// F_q-span of L for the lifted constants `scalars`.
Subspace scalar_span(const GmaStructure& r, const Subspace& scalars, const Subspace& l);

// I_1 J + nabla.
Subspace lie_from_decomposition(const GmaStructure& r, const Subspace& i1, const Subspace& nabla);
// [[I_1, B_1], [C_1, I_1]]^0.
Subspace lie_from_blocks(const GmaStructure& r, const Subspace& i1, const Subspace& b1, const Subspace& c1);

struct ConditionCheck {
  std::string condition;
  bool holds = false;
};

// The listed conditions of the theorem, evaluated on L (OrderTwo, Klein) or on its span
// over F_q (Cyclic, Dihedral, LargeImage) with q = p^subfield_degree.
std::vector<ConditionCheck> structure_conditions(StructureTheorem kind, const GmaStructure& r, const Subspace& l,
                                                 unsigned subfield_degree);

struct StructureReport {
  StructureTheorem theorem;
  ResidualClass residual;
  std::size_t group_order = 0;
  std::size_t gamma_order = 0;
  unsigned subfield_degree = 1;
  Subspace lie;
  std::vector<ConditionCheck> conditions;

  bool holds() const;
  // First failing condition, empty when all hold.
  std::string first_failure() const;
};

// Classifies the residual image of G, computes L of G n SR^1 and checks the matching shape.
StructureReport check_structure_theorem(const FiniteMatrixGroup& g, std::optional<unsigned> subfield_degree = {},
                                        std::size_t cap = kDefaultGroupCap);

// Lifted constant matrices generating the residual group used by the converse constructions:
// OrderTwo {J}, Cyclic {diag(z,1)}, Klein {z Id, J, antidiag(1,lambda), antidiag(1,-lambda)},
// Dihedral {diag(z,1), diag(1,z), antidiag(1,1)}, LargeImage generators of GL_2(F_p);
// z generates F_q^*.
std::vector<GmaElem> standard_residual_generators(StructureTheorem kind, const GmaStructure& r, unsigned lambda = 1);

struct ConverseResult {
  std::vector<ConditionCheck> conditions;
  std::optional<FiniteMatrixGroup> group;  // Theta^-1(L) s(G-bar)
  std::optional<FiniteMatrixGroup> gamma;  // group n SR^1
  std::optional<Subspace> recovered;
  bool normalized = false;
  bool admissible = false;
  bool round_trip = false;

  bool ok() const { return round_trip && admissible; }
  std::string first_failure() const;
};

ConverseResult build_group_from_lie(StructureTheorem kind, GmaPtr algebra, const Subspace& l,
                                    const std::vector<GmaElem>& residual_generators,
                                    std::size_t cap = kDefaultGroupCap);

}  // namespace pinkforge
