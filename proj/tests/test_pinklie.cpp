#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "pinkforge/errors.hpp"
#include "pinkforge/pinklie.hpp"
#include "pinkforge/structure.hpp"

namespace pinkforge {
namespace {

using fixture::ring_of;
using fixture::RingPtr;

struct Poly3 {
  RingPtr a = ring_of(3, 3);
  GmaPtr m2 = GmaStructure::matrix_algebra(a);
  RingElem x = a->variable();
  RingElem c(long long v) const { return a->from_int(v); }
  RingElem poly(std::initializer_list<long long> coeffs) const {
    RingElem out = a->zero();
    RingElem power = a->one();
    for (long long v : coeffs) {
      out = a->add(out, a->scale(a->field().from_int(v), power));
      power = a->mul(power, x);
    }
    return out;
  }
};

GmaElem antidiag(const GmaStructure& r, const RingElem& b, const RingElem& c) {
  return r.make(r.ring().zero(), b.coords, c.coords, r.ring().zero());
}

TEST(Theta, Examples) {
  Poly3 P;
  const GmaStructure& r = *P.m2;
  EXPECT_EQ(theta(r, r.identity()), r.zero());
  GmaElem x = r.diag(P.poly({1, 1}), P.poly({1, -1, 1}));
  EXPECT_EQ(theta(r, x), r.diag(P.poly({0, 1, 1}), P.poly({0, 2, 2})));
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    GmaElem g = fixture::random_sr1(r, rng);
    EXPECT_EQ(theta(r, r.inverse(g)), r.neg(theta(r, g)));
    EXPECT_TRUE(is_zero(r.trace(theta(r, r.random(rng))).coords));
  }
  RingPtr even = ring_of(2, 2);
  GmaPtr m2_even = GmaStructure::matrix_algebra(even);
  try {
    theta(*m2_even, m2_even->identity());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CharacteristicTwo);
  }
}

TEST(Theta, InverseExamplesAndRoundTrip) {
  Poly3 P;
  const GmaStructure& r = *P.m2;
  EXPECT_EQ(theta_inv(r, r.zero()), r.identity());
  GmaElem m = r.diag(P.x, P.a->neg(P.x));
  GmaElem g = theta_inv(r, m);
  EXPECT_EQ(g, r.diag(P.poly({1, 1, 2}), P.poly({1, -1, 2})));
  EXPECT_EQ(r.det(g), P.a->one());
  Rng rng(2);
  for (const auto& alg : fixture::small_algebras())
    for (int i = 0; i < 500 / 6; ++i) {
      GmaElem t = random_traceless_radical(*alg, rng);
      GmaElem h = theta_inv(*alg, t);
      EXPECT_TRUE(alg->in_SR1(h));
      EXPECT_EQ(theta(*alg, h), t);
    }
  try {
    theta_inv(r, r.diag(P.x, P.x));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::OutOfDomain);
  }
  try {
    theta_inv(r, r.J());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::OutOfDomain);
  }
}

TEST(Theta, BijectionOntoTracelessRadical) {
  RingPtr a = ring_of(3, 2);
  GmaPtr r = GmaStructure::matrix_algebra(a);
  Subspace rad0 = traceless_radical(*r);
  ElementSet images(r->dim());
  std::size_t sr1 = 0;
  for (const Vec& v : Subspace::full(3, r->dim()).elements()) {
    GmaElem x{v};
    if (!r->in_SR1(x)) continue;
    ++sr1;
    GmaElem t = theta(*r, x);
    EXPECT_TRUE(rad0.contains(t.v));
    images.insert(t.v);
  }
  EXPECT_EQ(images.size(), sr1);
  EXPECT_EQ(sr1, 27u);
  EXPECT_EQ(rad0.dim(), 3u);
}

TEST(LieOfSubgroup, Examples) {
  RingPtr a = ring_of(3, 2);
  GmaPtr r = GmaStructure::matrix_algebra(a);
  auto trivial = generate_group(r, {r->identity()});
  EXPECT_EQ(lie_of_subgroup(trivial).dim(), 0u);
  GmaElem xj = r->scale(a->variable(), r->J());
  auto cyc = generate_group(r, {theta_inv(*r, xj)});
  LieSubspace l = lie_of_subgroup(cyc);
  EXPECT_EQ(l.span, Subspace::span(3, r->dim(), {xj.v}));

  Section8 s = example_section8(3, 2);
  const GmaStructure& rs = *s.algebra;
  RingElem x = s.ring->variable();
  GmaElem xe = antidiag(rs, x, s.ring->neg(x));
  EXPECT_EQ(s.lie, Subspace::span(3, rs.dim(), {rs.scale(x, rs.J()).v, xe.v}));

  try {
    lie_of_subgroup(generate_group(r, {r->J()}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotInSR1);
  }
}

TEST(LieOfSubgroup, BracketClosedAndPseudoRingStable) {
  Rng rng(3);
  for (const auto& alg : fixture::small_algebras())
    for (int trial = 0; trial < 3; ++trial) {
      auto gamma = generate_group(alg, {fixture::random_sr1(*alg, rng)});
      LieSubspace l = lie_of_subgroup(gamma);
      EXPECT_TRUE(is_bracket_closed(*alg, l.span));
      Subspace p = pseudo_ring(*alg, l.span);
      EXPECT_TRUE(l.span.includes(pseudo_ring_action(*alg, p, l.span)));
      EXPECT_FALSE(check_pink_stable(*alg, l.span).has_value());
    }
}

TEST(DescendingSeries, AbelianGroupHasTrivialSecondTerm) {
  Section8 s = example_section8(3, 2);
  auto groups = group_series(s.gamma, 2);
  EXPECT_EQ(groups[1].order(), 1u);
  auto lies = descending_series(*s.algebra, s.lie, 2);
  EXPECT_EQ(lies[1].dim(), 0u);
}

TEST(DescendingSeries, IdealMatricesGivePowersOfTheIdeal) {
  RingPtr a = ring_of(3, 3);
  GmaPtr r = GmaStructure::matrix_algebra(a);
  auto series = descending_series(*r, congruence_lie(*r, a->radical()), 3);
  EXPECT_EQ(series[0], congruence_lie(*r, a->radical()));
  EXPECT_EQ(series[1], congruence_lie(*r, a->radical_power(2)));
  EXPECT_EQ(series[2].dim(), 0u);
}

TEST(DescendingSeries, Section8SecondTermContainsBracketOfAntidiagonals) {
  Section8 s = example_section8(3, 4);
  const GmaStructure& r = *s.algebra;
  const Ring& a = *s.ring;
  RingElem x = a.variable(), x2 = a.mul(x, x), x3 = a.mul(x2, x);
  GmaElem xe = antidiag(r, x, a.neg(x));
  GmaElem x2f = antidiag(r, x2, x2);
  GmaElem bracket = r.bracket(xe, x2f);
  EXPECT_EQ(bracket, r.scale(a.scale(2, x3), r.J()));
  auto series = descending_series(r, s.lie, 2);
  EXPECT_TRUE(series[1].contains(bracket.v));
}

TEST(DescendingSeries, FiltrationProperties) {
  Rng rng(4);
  for (const auto& alg : fixture::small_algebras()) {
    auto gamma = generate_group(alg, {fixture::random_sr1(*alg, rng), fixture::random_sr1(*alg, rng)});
    LieSubspace l = lie_of_subgroup(gamma);
    auto series = descending_series(*alg, l.span, 4);
    for (std::size_t n = 1; n < series.size(); ++n) EXPECT_TRUE(series[n - 1].includes(series[n]));
    for (std::size_t n = 0; n < series.size(); ++n)
      for (std::size_t m = 0; n + m + 1 < series.size(); ++m)
        EXPECT_TRUE(series[n + m + 1].includes(bracket_span(*alg, series[n], series[m])));
  }
}

TEST(DescendingSeries, GroupSeriesMatchesThetaInverseOfLieSeries) {
  Rng rng(5);
  int checked = 0;
  for (const auto& alg : fixture::small_algebras())
    for (int trial = 0; trial < 2; ++trial) {
      auto gamma = generate_group(alg, {fixture::random_sr1(*alg, rng), fixture::random_sr1(*alg, rng)});
      auto groups = group_series(gamma, 4);
      auto lies = descending_series(*alg, lie_of_subgroup(gamma).span, 4);
      for (std::size_t n = 1; n < 4; ++n) EXPECT_TRUE(fixture::series_agree(*alg, groups[n], lies[n])) << n + 1;
      ++checked;
    }
  EXPECT_EQ(checked, 12);
}

TEST(DescendingSeries, TraceMultiplesPreserveEachTerm) {
  Section8 s = example_section8(3, 5);
  const GmaStructure& r = *s.algebra;
  auto series = descending_series(r, s.lie, 4);
  for (std::size_t i = 0; i < s.gamma.order(); ++i) {
    RingElem t = r.trace(s.gamma.element(i));
    for (const auto& ln : series) {
      Subspace image(3, r.dim());
      for (const Vec& v : ln.basis()) image.insert(r.scale(t, GmaElem{v}).v);
      EXPECT_EQ(image, ln);
    }
  }
}

TEST(DescendingSeries, ThetaCarriesCosetsOfGammaNToCosetsOfLN) {
  Section8 s = example_section8(3, 6);
  const GmaStructure& r = *s.algebra;
  auto groups = group_series(s.gamma, 3);
  auto lies = descending_series(r, s.lie, 3);
  const auto& g2 = groups[1];
  ElementSet images(r.dim());
  for (std::size_t i = 0; i < g2.order(); ++i) {
    GmaElem t = theta(r, g2.element(i));
    ASSERT_TRUE(lies[1].contains(t.v));
    images.insert(t.v);
  }
  EXPECT_EQ(images.size(), g2.order());
  const auto& g3 = groups[2];
  Rng rng(6);
  for (int trial = 0; trial < 300; ++trial) {
    GmaElem a = g2.element(rng() % g2.order()), b = g2.element(rng() % g2.order());
    bool same_coset = g3.contains(r.mul(r.inverse(a), b));
    GmaElem diff = r.sub(theta(r, b), theta(r, a));
    EXPECT_EQ(same_coset, lies[2].contains(diff.v));
  }
}

Matrix gma_truncation(const GmaStructure& from, const GmaStructure& to) {
  Matrix ring_map = truncation_matrix(from.ring(), to.ring());
  Matrix m(from.p(), to.dim(), from.dim());
  const std::size_t n = from.ring_dim(), k = to.ring_dim();
  for (std::size_t block = 0; block < 4; ++block)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < n; ++j) m(block * k + i, block * n + j) = ring_map(i, j);
  return m;
}

TEST(DescendingSeries, FunctorialUnderTruncation) {
  RingPtr big = ring_of(3, 4), small = ring_of(3, 2);
  GmaPtr rb = GmaStructure::matrix_algebra(big), rs = GmaStructure::matrix_algebra(small);
  Matrix pi = gma_truncation(*rb, *rs);
  Rng rng(7);
  for (int trial = 0; trial < 4; ++trial) {
    std::vector<GmaElem> gens{fixture::random_sr1(*rb, rng), fixture::random_sr1(*rb, rng)};
    std::vector<GmaElem> images;
    for (const auto& g : gens) images.push_back(GmaElem{pi.apply(g.v)});
    auto gamma = generate_group(rb, gens);
    auto gamma_bar = generate_group(rs, images);
    auto big_series = descending_series(*rb, lie_of_subgroup(gamma).span, 3);
    auto small_series = descending_series(*rs, lie_of_subgroup(gamma_bar).span, 3);
    for (std::size_t n = 0; n < 3; ++n) {
      Subspace projected(3, rs->dim());
      for (const Vec& v : big_series[n].basis()) projected.insert(pi.apply(v));
      EXPECT_EQ(projected, small_series[n]) << n + 1;
    }
  }
}

TEST(PseudoRing, TwoDescriptionsAgree) {
  Rng rng(8);
  for (const auto& alg : fixture::small_algebras())
    for (int trial = 0; trial < 2; ++trial) {
      auto gamma = generate_group(alg, {fixture::random_sr1(*alg, rng), fixture::random_sr1(*alg, rng)});
      Subspace from_lie = pseudo_ring(*alg, lie_of_subgroup(gamma).span);
      Subspace from_group = pseudo_ring_of_group(gamma);
      EXPECT_EQ(from_lie, from_group);
      EXPECT_TRUE(from_lie.includes(product_space(alg->ring(), from_lie, from_lie)));
    }
}

TEST(PinkConverse, TrivialAndIdealMatrices) {
  RingPtr a = ring_of(3, 3);
  GmaPtr r = GmaStructure::matrix_algebra(a);
  EXPECT_EQ(pink_converse(r, Subspace(3, r->dim())).order(), 1u);
  Subspace l = congruence_lie(*r, a->radical());
  auto h = pink_converse(r, l);
  EXPECT_EQ(h.order(), 729u);
  EXPECT_EQ(lie_of_subgroup(h).span, l);
  EXPECT_EQ(pseudo_ring_of_group(h), pseudo_ring(*r, l));
}

TEST(PinkConverse, UnstableSpacesAreRejected) {
  RingPtr a = ring_of(3, 4);
  GmaPtr r = GmaStructure::matrix_algebra(a);
  Subspace l = Subspace::span(3, r->dim(), {r->scale(a->variable(), r->J()).v});
  EXPECT_TRUE(is_bracket_closed(*r, l));
  auto failure = check_pink_stable(*r, l);
  ASSERT_TRUE(failure.has_value());
  try {
    pink_converse(r, l);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotPinkStable);
  }

  // Random two-dimensional bracket-closed spaces: the converse holds exactly when stable.
  Rng rng(9);
  int stable = 0, unstable = 0;
  for (int trial = 0; trial < 200 && (stable < 5 || unstable < 5); ++trial) {
    Subspace cand = Subspace::span(3, r->dim(), {random_traceless_radical(*r, rng).v, random_traceless_radical(*r, rng).v});
    if (!is_bracket_closed(*r, cand)) continue;
    if (check_pink_stable(*r, cand)) {
      ++unstable;
      EXPECT_THROW(pink_converse(r, cand), Error);
    } else {
      ++stable;
      EXPECT_EQ(lie_of_subgroup(pink_converse(r, cand)).span, cand);
    }
  }
  EXPECT_GT(stable + unstable, 0);
}

TEST(StarLaw, CommutativeGroupLawAndMorphism) {
  Section8 s = example_section8(3, 4);
  const GmaStructure& r = *s.algebra;
  auto series = descending_series(r, s.lie, 2);
  const Subspace& l2 = series[1];
  std::vector<GmaElem> reps;
  {
    ElementSet seen(r.dim());
    for (const Vec& v : s.lie.elements()) {
      GmaElem rep{l2.reduce(v)};
      if (seen.insert(rep.v).second) reps.push_back(rep);
    }
  }
  ASSERT_GT(reps.size(), 1u);
  GmaElem zero = r.zero();
  for (const auto& x : reps) {
    EXPECT_EQ(star_mod(r, l2, x, zero), GmaElem{l2.reduce(x.v)});
    for (const auto& y : reps) {
      EXPECT_EQ(star_mod(r, l2, x, y), star_mod(r, l2, y, x));
      for (const auto& z : reps)
        EXPECT_EQ(star_mod(r, l2, star_mod(r, l2, x, y), z), star_mod(r, l2, x, star_mod(r, l2, y, z)));
    }
  }
  Rng rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    GmaElem g = s.gamma.element(rng() % s.gamma.order()), h = s.gamma.element(rng() % s.gamma.order());
    EXPECT_EQ(GmaElem{l2.reduce(theta(r, r.mul(g, h)).v)}, star_mod(r, l2, theta(r, g), theta(r, h)));
  }
}

TEST(Decompose, Shapes) {
  RingPtr a = ring_of(3, 3);
  GmaPtr r = GmaStructure::matrix_algebra(a);
  Subspace diag_only = Subspace::span(3, r->dim(), {r->scale(a->variable(), r->J()).v});
  Decomposition d1 = decompose(*r, diag_only);
  EXPECT_TRUE(d1.decomposable);
  EXPECT_EQ(d1.nabla.dim(), 0u);

  for (unsigned k = 2; k <= 6; ++k) {
    Section8 s = example_section8(3, k);
    Decomposition d = decompose(*s.algebra, s.lie);
    EXPECT_TRUE(d.decomposable) << k;
    EXPECT_FALSE(d.strongly_decomposable) << k;
  }

  Decomposition d3 = decompose(*r, congruence_lie(*r, a->radical()));
  EXPECT_TRUE(d3.strongly_decomposable);
  EXPECT_EQ(d3.i1, a->radical());
  EXPECT_EQ(d3.b1, a->radical());
  EXPECT_EQ(d3.c1, a->radical());
}

TEST(Congruence, Detection) {
  RingPtr eps = ring_of(3, 2);
  GmaPtr r = GmaStructure::matrix_algebra(eps);
  CongruenceResult full = is_congruence_subgroup(*r, traceless_radical(*r));
  EXPECT_TRUE(full.congruence);
  EXPECT_EQ(full.ideal, eps->radical());

  RingPtr a = ring_of(3, 4);
  GmaPtr r4 = GmaStructure::matrix_algebra(a);
  Subspace i = a->radical_power(2);
  auto gamma = pink_converse(r4, congruence_lie(*r4, i));
  CongruenceResult c = is_congruence_subgroup(*r4, lie_of_subgroup(gamma).span);
  EXPECT_TRUE(c.congruence);
  EXPECT_EQ(c.ideal, i);

  for (unsigned k = 4; k <= 6; ++k) {
    Section8 s = example_section8(3, k);
    EXPECT_FALSE(is_congruence_subgroup(*s.algebra, s.lie).congruence) << k;
  }
}

TEST(Congruence, A0IsASubring) {
  RingPtr a = ring_of(3, 5);
  RingElem x = a->variable();
  Subspace i1 = span_of(*a, {a->mul(x, x), a->pow(x, 3)});
  SubringResult a0 = compute_A0(*a, i1);
  EXPECT_TRUE(a0.is_ring);
  EXPECT_TRUE(a0.span.contains(a->one().coords));
  EXPECT_TRUE(a0.span.includes(product_space(*a, a0.span, a0.span)));
  EXPECT_EQ(a0.span.dim(), 1u + 2u + 1u);
}

TEST(Section8, ConstructionMatchesTheClosedForm) {
  for (unsigned k = 2; k <= 6; ++k) {
    Section8 s = example_section8(3, k);
    EXPECT_TRUE(s.conjugation_identities) << k;
    EXPECT_EQ(s.lie, s.expected_lie) << k;
    EXPECT_EQ(s.group.order(), 2 * s.gamma.order());
  }
  EXPECT_EQ(example_section8(3, 2).lie.dim(), 2u);
  EXPECT_EQ(example_section8(3, 4).lie.dim(), 5u);
  EXPECT_EQ(example_section8(3, 6).gamma.order(), 6561u);
}

TEST(Section8, ExpectedLieByIndependentDescription) {
  for (unsigned k = 2; k <= 6; ++k) {
    Section8 s = example_section8(3, k);
    const GmaStructure& r = *s.algebra;
    const Ring& a = *s.ring;
    Subspace expected(3, r.dim());
    RingElem x = a.variable();
    for (unsigned j = 1; j < k; ++j) {
      RingElem xj = a.pow(x, j);
      if (j % 2 == 1) expected.insert(r.diag(xj, a.neg(xj)).v);
      expected.insert(antidiag(r, xj, j % 2 ? a.neg(xj) : xj).v);
    }
    EXPECT_EQ(s.lie, expected) << k;
  }
}

TEST(Essential, DataAndIdealFailure) {
  Section8 s2 = example_section8(3, 2);
  auto ess2 = essential_data(s2.group, descending_series(*s2.algebra, s2.lie, 2)[1]);
  EXPECT_TRUE(ess2.weakly_odd);
  EXPECT_EQ(ess2.a_ess.dim(), 0u);
  KeyMeasure km2 = key_measure_check(s2.group, ess2, 2);
  EXPECT_TRUE(km2.vacuous);
  EXPECT_TRUE(km2.pass);

  Section8 s6 = example_section8(3, 6);
  const Ring& a = *s6.ring;
  auto ess6 = essential_data(s6.group, descending_series(*s6.algebra, s6.lie, 2)[1]);
  RingElem x = a.variable();
  EXPECT_EQ(ess6.a_ess, span_of(a, {a.pow(x, 3), a.pow(x, 5)}));
  auto witness = ideal_witness(a, ess6.a_ess);
  ASSERT_TRUE(witness.has_value());
  EXPECT_TRUE(ess6.a_ess.contains(witness->first.coords));
  EXPECT_FALSE(ess6.a_ess.contains(a.mul(witness->first, witness->second).coords));
}

TEST(Essential, NotWeaklyOddIsAnError) {
  Section8 s = example_section8(3, 4);
  auto ess = essential_data(s.gamma, descending_series(*s.algebra, s.lie, 2)[1]);
  EXPECT_FALSE(ess.weakly_odd);
  EXPECT_TRUE(ess.s.empty());
  try {
    key_measure_check(s.gamma, ess, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotWeaklyOdd);
  }
}

// Exact count for one linear form, independent of the enumeration in the library.
std::size_t count_nonzero(const FiniteMatrixGroup& g, const Vec& form) {
  const GmaStructure& r = g.algebra();
  std::size_t count = 0;
  for (std::size_t i = 0; i < g.order(); ++i) {
    RingElem t = r.trace(g.element(i));
    unsigned s = 0;
    for (std::size_t j = 0; j < form.size(); ++j) s += unsigned(form[j]) * t.coords[j];
    if (s % r.p()) ++count;
  }
  return count;
}

TEST(KeyMeasure, MinimumMatchesDirectCount) {
  Section8 s = example_section8(3, 4);
  const Ring& a = *s.ring;
  auto ess = essential_data(s.group, descending_series(*s.algebra, s.lie, 2)[1]);
  KeyMeasure km = key_measure_check(s.group, ess, 2);
  EXPECT_TRUE(km.pass);
  EXPECT_FALSE(km.vacuous);
  EXPECT_EQ(km.forms_checked, 81u);
  std::size_t best = s.group.order();
  std::size_t qualifying = 0;
  for (const Vec& form : Subspace::full(3, a.dim()).elements()) {
    bool nonzero_on_ess = false;
    for (const Vec& v : ess.a_ess.basis()) {
      unsigned dot = 0;
      for (std::size_t j = 0; j < v.size(); ++j) dot += unsigned(form[j]) * v[j];
      nonzero_on_ess = nonzero_on_ess || dot % 3;
    }
    if (!nonzero_on_ess) continue;
    ++qualifying;
    best = std::min(best, count_nonzero(s.group, form));
  }
  EXPECT_EQ(km.forms_qualifying, qualifying);
  EXPECT_EQ(km.min_count, best);
  EXPECT_NEAR(km.min_measure, double(best) / double(s.group.order()), 1e-12);
  EXPECT_GE(3 * best, s.group.order());
}

TEST(Psi, IdentityAndSection8) {
  Section8 s = example_section8(3, 4);
  const GmaStructure& r = *s.algebra;
  Subspace l2 = descending_series(r, s.lie, 2)[1];
  PsiReport id = measure_change_psi(r, l2, r.identity());
  EXPECT_TRUE(id.bijective);
  EXPECT_TRUE(id.affine);
  int checked = 0;
  for (std::size_t i = 0; i < s.group.order() && checked < 40; i += 7) {
    GmaElem gamma = s.group.element(i);
    if (!s.ring->is_unit(r.trace(gamma))) continue;
    PsiReport rep = measure_change_psi(r, l2, gamma);
    EXPECT_TRUE(rep.maps_into_l2);
    EXPECT_TRUE(rep.bijective);
    EXPECT_TRUE(rep.affine);
    EXPECT_TRUE(rep.image_matches);
    ++checked;
  }
  EXPECT_GT(checked, 10);
}

TEST(FormulaBattery, ZeroViolationsOnSampleAlgebras) {
  for (const auto& alg : fixture::small_algebras())
    for (const auto& f : formula_battery(*alg, 200, 42)) {
      EXPECT_EQ(f.violations, 0u) << f.formula;
      EXPECT_EQ(f.trials, 200u);
    }
}

TEST(FormulaBattery, CorruptedThetaIsCaught) {
  GmaPtr r = GmaStructure::matrix_algebra(ring_of(3, 3));
  ThetaFn doubled = [](const GmaStructure& s, const GmaElem& x) { return s.scale(2, theta(s, x)); };
  auto results = formula_battery(*r, 200, 1, doubled);
  ASSERT_FALSE(results.empty());
  EXPECT_EQ(results[0].formula, "[Theta(x),Theta(y)] = Theta(xy) - Theta(yx)");
  EXPECT_GT(results[0].violations, 0u);
}

TEST(FormulaBattery, DeterministicForASeed) {
  GmaPtr r = GmaStructure::matrix_algebra(ring_of(5, 2));
  ThetaFn doubled = [](const GmaStructure& s, const GmaElem& x) { return s.scale(2, theta(s, x)); };
  auto a = formula_battery(*r, 300, 77, doubled);
  auto b = formula_battery(*r, 300, 77, doubled);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].violations, b[i].violations);
}

}  // namespace
}  // namespace pinkforge
