#include <gtest/gtest.h>

#include <algorithm>

#include "pinkforge/errors.hpp"
#include "pinkforge/pinklie.hpp"
#include "pinkforge/pseudorep.hpp"
#include "pinkforge/structure.hpp"

namespace pinkforge {
namespace {

using RingPtr = std::shared_ptr<const Ring>;

RingPtr ring_of(std::uint64_t q, unsigned k) { return std::make_shared<const Ring>(make_truncated_poly_ring(q, k)); }

struct Gl2F3 {
  RingPtr f3 = ring_of(3, 1);
  GmaPtr m2 = GmaStructure::matrix_algebra(f3);
  GmaElem e(int a, int b, int c, int d) const {
    return m2->make(f3->from_int(a), f3->from_int(b).coords, f3->from_int(c).coords, f3->from_int(d));
  }
  FiniteMatrixGroup group() const { return generate_group(m2, {e(1, 1, 0, 1), e(1, 0, 1, 1), e(2, 0, 0, 1)}); }
};

// t = chi1 + chi2, d = chi1 chi2 for chi1(g) = 2^g, chi2(g) = 4^g on Z/3 into F_7^*.
PseudoRep sum_of_characters(unsigned order, unsigned quotient) {
  PseudoRep tr;
  tr.group = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(order));
  tr.ring = ring_of(7, 1);
  for (unsigned g = 0; g < order; ++g) {
    unsigned e = g % quotient;
    long long c1 = 1, c2 = 1;
    for (unsigned i = 0; i < e; ++i) {
      c1 = c1 * 2 % 7;
      c2 = c2 * 4 % 7;
    }
    tr.t.push_back(tr.ring->from_int(c1 + c2));
    tr.d.push_back(tr.ring->from_int(c1 * c2));
  }
  return tr;
}

TEST(PseudoRep, TautologicalTraceDeterminantSatisfiesAxioms) {
  Gl2F3 gl;
  EXPECT_FALSE(check_axioms(trace_det(gl.group())).has_value());
  Section8 s = example_section8(3, 3);
  EXPECT_FALSE(check_axioms(trace_det(s.group)).has_value());
}

TEST(PseudoRep, PerturbedTraceIsDetected) {
  Gl2F3 gl;
  PseudoRep tr = trace_det(gl.group());
  for (std::uint32_t g : {1u, 7u, 30u}) {
    PseudoRep bad = tr;
    bad.t[g] = tr.ring->add(bad.t[g], tr.ring->one());
    auto v = check_axioms(bad);
    ASSERT_TRUE(v.has_value());
    EXPECT_FALSE(v->axiom.empty());
  }
}

TEST(PseudoRep, SumOfTwoCharacters) {
  PseudoRep tr = sum_of_characters(3, 3);
  EXPECT_FALSE(check_axioms(tr).has_value());
  EXPECT_EQ(kernel(tr), (std::vector<std::uint32_t>{0}));
}

// Elements y with det y = 1 and tr(x y) = tr(x) for all x, by direct search.
std::vector<std::uint32_t> kernel_by_search(const FiniteMatrixGroup& g) {
  const GmaStructure& r = g.algebra();
  std::vector<std::uint32_t> out;
  for (std::size_t j = 0; j < g.order(); ++j) {
    GmaElem y = g.element(j);
    bool in = r.det(y) == r.ring().one();
    for (std::size_t i = 0; in && i < g.order(); ++i) in = r.trace(r.mul(g.element(i), y)) == r.trace(g.element(i));
    if (in) out.push_back(std::uint32_t(j));
  }
  return out;
}

TEST(PseudoRep, Kernels) {
  Gl2F3 gl;
  EXPECT_EQ(kernel(trace_det(gl.group())).size(), 1u);
  for (unsigned k = 2; k <= 3; ++k) {
    Section8 s = example_section8(3, k);
    EXPECT_EQ(kernel(trace_det(s.group)), kernel_by_search(s.group)) << k;
  }
  // inflated from Z/6 -> Z/3
  PseudoRep inflated = sum_of_characters(6, 3);
  EXPECT_FALSE(check_axioms(inflated).has_value());
  EXPECT_EQ(kernel(inflated), (std::vector<std::uint32_t>{0, 3}));
}

TEST(PseudoRep, AlgebraExtension) {
  Gl2F3 gl;
  PseudoRep tr = trace_det(gl.group());
  const Ring& a = *tr.ring;
  const FiniteGroup& g = *tr.group;
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    EXPECT_EQ(extend_T(tr, group_algebra_basis(tr, x)), tr.t[x]);
    EXPECT_EQ(extend_D(tr, group_algebra_basis(tr, x)), tr.d[x]);
  }
  for (std::uint32_t x = 0; x < g.order(); x += 5)
    for (std::uint32_t y = 0; y < g.order(); y += 7) {
      GroupAlgebraElem sum = group_algebra_basis(tr, x);
      sum[y] = a.add(sum[y], a.one());
      RingElem expected = a.add(a.add(tr.d[x], tr.d[y]), a.sub(a.mul(tr.t[x], tr.t[y]), tr.t[g.mul(x, y)]));
      EXPECT_EQ(extend_D(tr, sum), expected);
    }
  Rng rng(9);
  auto random_elem = [&] {
    GroupAlgebraElem z = group_algebra_zero(tr);
    for (int i = 0; i < 4; ++i) z[rng() % g.order()] = a.random(rng);
    return z;
  };
  for (int i = 0; i < 100; ++i) {
    GroupAlgebraElem x = random_elem(), y = random_elem();
    RingElem lambda = a.random(rng);
    GroupAlgebraElem scaled = x;
    for (auto& c : scaled) c = a.mul(lambda, c);
    EXPECT_EQ(extend_D(tr, scaled), a.mul(a.mul(lambda, lambda), extend_D(tr, x)));
    EXPECT_EQ(extend_D(tr, group_algebra_mul(tr, x, y)), a.mul(extend_D(tr, x), extend_D(tr, y)));
    std::uint32_t h = std::uint32_t(rng() % g.order());
    GroupAlgebraElem hx = group_algebra_basis(tr, h);
    GroupAlgebraElem hinv = group_algebra_basis(tr, g.inv(h));
    RingElem lhs = a.add(extend_T(tr, group_algebra_mul(tr, x, hx)),
                         a.mul(tr.d[h], extend_T(tr, group_algebra_mul(tr, x, hinv))));
    EXPECT_EQ(lhs, a.mul(extend_T(tr, x), tr.t[h]));
  }
}

TEST(PseudoRep, LinearKernel) {
  Gl2F3 gl;
  PseudoRep tr = trace_det(gl.group());
  Subspace ker = linear_kernel(tr);
  EXPECT_EQ(ker.ambient(), 48u);
  EXPECT_EQ(ker.dim(), 48u - 4u);

  PseudoRep inflated = sum_of_characters(6, 3);
  Subspace ker6 = linear_kernel(inflated);
  GroupAlgebraElem diff = group_algebra_basis(inflated, 3);
  diff[0] = inflated.ring->from_int(-1);
  EXPECT_TRUE(ker6.contains(flatten(inflated, diff)));
  GroupAlgebraElem other = group_algebra_basis(inflated, 1);
  other[0] = inflated.ring->from_int(-1);
  EXPECT_FALSE(ker6.contains(flatten(inflated, other)));
}

TEST(PseudoRep, IrreducibleResidueGivesMatrixAlgebra) {
  Gl2F3 gl;
  PseudoRep tr = trace_det(gl.group());
  TdRepresentation rho = build_td_representation(tr);
  EXPECT_EQ(rho.algebra->factor_cases()[0], FactorCase::Matrix);
  EXPECT_TRUE(rho.algebra->is_faithful());
  for (std::uint32_t x = 0; x < tr.group->order(); ++x) {
    EXPECT_EQ(rho.algebra->trace(rho.image[x]), tr.t[x]);
    EXPECT_EQ(rho.algebra->det(rho.image[x]), tr.d[x]);
  }
  const GmaElem& g0 = rho.image[rho.g0];
  EXPECT_TRUE(is_zero(rho.algebra->b(g0)));
  EXPECT_TRUE(is_zero(rho.algebra->c(g0)));
}

TEST(PseudoRep, ReducibleResidueGivesReducedAlgebra) {
  RingPtr a = ring_of(3, 2);
  GmaPtr r = GmaStructure::twisted(a, a->variable());
  auto gens = standard_residual_generators(StructureTheorem::OrderTwo, *r);
  ConverseResult built = build_group_from_lie(StructureTheorem::OrderTwo, r, traceless_radical(*r), gens);
  ASSERT_TRUE(built.group.has_value());
  PseudoRep tr = trace_det(*built.group);
  TdRepresentation rho = build_td_representation(tr);
  EXPECT_EQ(rho.algebra->factor_cases()[0], FactorCase::Reduced);
  const GmaStructure& s = *rho.algebra;
  for (std::size_t i = 0; i < s.b_dim(); ++i)
    for (std::size_t j = 0; j < s.c_dim(); ++j) {
      Vec b(s.b_dim(), 0), c(s.c_dim(), 0);
      b[i] = c[j] = 1;
      EXPECT_TRUE(a->in_radical(s.pairing(b, c)));
    }
  for (std::uint32_t x = 0; x < tr.group->order(); ++x) EXPECT_EQ(s.trace(rho.image[x]), tr.t[x]);

  // Kernel of rho equals ker(t, d).
  std::vector<std::uint32_t> ker_rho;
  for (std::uint32_t x = 0; x < tr.group->order(); ++x)
    if (rho.image[x] == s.identity()) ker_rho.push_back(x);
  EXPECT_EQ(ker_rho, kernel(tr));

  auto choice = first_adapted_element(tr);
  ASSERT_TRUE(choice.has_value());
  TdRepresentation again = build_td_representation(tr, choice->g0, choice->lambda0, choice->mu0);
  auto iso = find_gma_isomorphism(rho, again);
  ASSERT_TRUE(iso.has_value());
  for (std::uint32_t x = 0; x < tr.group->order(); ++x) EXPECT_EQ(GmaElem{iso->apply(rho.image[x].v)}, again.image[x]);
}

TEST(PseudoRep, MultiplicityFreeRequired) {
  PseudoRep trivial;
  trivial.group = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(3));
  trivial.ring = ring_of(7, 1);
  for (int g = 0; g < 3; ++g) {
    trivial.t.push_back(trivial.ring->from_int(2));
    trivial.d.push_back(trivial.ring->one());
  }
  EXPECT_FALSE(check_axioms(trivial).has_value());
  EXPECT_FALSE(is_multiplicity_free(trivial));
  try {
    build_td_representation(trivial);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotMultFree);
  }
  EXPECT_TRUE(is_multiplicity_free(sum_of_characters(3, 3)));
}

TEST(PseudoRep, ClassifyProjectiveImages) {
  RingPtr f5 = ring_of(5, 1);
  GmaPtr m2 = GmaStructure::matrix_algebra(f5);
  auto e = [&](int a, int b, int c, int d) {
    return m2->make(f5->from_int(a), f5->from_int(b).coords, f5->from_int(c).coords, f5->from_int(d));
  };
  // diag(a, a^-1) with a of order 4: projective image {1, diag(4, 1)} has order 2.
  auto split = generate_group(m2, {e(2, 0, 0, 3)});
  ASSERT_EQ(split.order(), 4u);
  ResidualClass c1 = classify_projective_image(split);
  EXPECT_EQ(c1.tag, ResidualTag::CyclicOrder2);
  EXPECT_EQ(c1.projective_order, 2u);

  auto cyclic4 = generate_group(m2, {e(2, 0, 0, 1)});
  EXPECT_EQ(classify_projective_image(cyclic4).tag, ResidualTag::CyclicOrderN);

  auto dihedral = generate_group(m2, {e(2, 0, 0, 1), e(1, 0, 0, 2), e(0, 1, 1, 0)});
  ResidualClass c2 = classify_projective_image(dihedral);
  EXPECT_EQ(c2.tag, ResidualTag::DihedralN);
  EXPECT_EQ(c2.projective_order, 8u);

  auto klein = generate_group(m2, {e(1, 0, 0, 4), e(0, 1, 1, 0), e(2, 0, 0, 2)});
  EXPECT_EQ(classify_projective_image(klein).tag, ResidualTag::DihedralOrder4);

  Gl2F3 gl;
  ResidualClass c3 = classify_projective_image(gl.group());
  EXPECT_EQ(c3.tag, ResidualTag::LargeImage);
  EXPECT_TRUE(c3.pgl);
}

TEST(PseudoRep, ClassificationIsConjugationInvariant) {
  RingPtr f7 = ring_of(7, 1);
  GmaPtr m2 = GmaStructure::matrix_algebra(f7);
  auto e = [&](int a, int b, int c, int d) {
    return m2->make(f7->from_int(a), f7->from_int(b).coords, f7->from_int(c).coords, f7->from_int(d));
  };
  std::vector<std::vector<GmaElem>> families{{e(3, 0, 0, 1)}, {e(3, 0, 0, 5), e(0, 1, 1, 0)},
                                             {e(1, 1, 0, 1), e(1, 0, 1, 1)}, {e(6, 0, 0, 1)}};
  Rng rng(11);
  for (const auto& gens : families) {
    ResidualClass base = classify_projective_image(generate_group(m2, gens));
    for (int trial = 0; trial < 5; ++trial) {
      GmaElem h;
      do h = m2->random(rng);
      while (!f7->is_unit(m2->det(h)));
      GmaElem hinv = m2->inverse(h);
      std::vector<GmaElem> conj;
      for (const auto& g : gens) conj.push_back(m2->mul(m2->mul(h, g), hinv));
      ResidualClass c = classify_projective_image(generate_group(m2, conj));
      EXPECT_EQ(c.tag, base.tag);
      EXPECT_EQ(c.projective_order, base.projective_order);
    }
  }
}

TEST(PseudoRep, Admissibility) {
  for (unsigned k = 2; k <= 5; ++k) EXPECT_TRUE(is_admissible(trace_det(example_section8(3, k).group))) << k;
  RingPtr eps = ring_of(3, 2);
  PseudoRep constant;
  constant.group = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(2));
  constant.ring = eps;
  for (int g = 0; g < 2; ++g) {
    constant.t.push_back(eps->from_int(2));
    constant.d.push_back(eps->one());
  }
  EXPECT_FALSE(is_admissible(constant));
  Gl2F3 gl;
  EXPECT_TRUE(is_admissible(trace_det(gl.group())));
}

TEST(PseudoRep, WellAdaptedness) {
  Section8 s = example_section8(3, 3);
  const GmaStructure& r = *s.algebra;
  EXPECT_TRUE(is_well_adapted(s.group, r.J()));
  // g is diagonal but congruent to the identity, so its residual eigenvalues coincide.
  EXPECT_FALSE(is_well_adapted(s.group, s.g));
}

TEST(PseudoRep, CommutatorTraceIdeal) {
  PseudoRep abelian = sum_of_characters(6, 3);
  EXPECT_EQ(commutator_trace_ideal(abelian).dim(), 0u);
  Gl2F3 gl;
  EXPECT_EQ(commutator_trace_ideal(trace_det(gl.group())).dim(), 1u);
}

}  // namespace
}  // namespace pinkforge
