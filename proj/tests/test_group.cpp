#include <gtest/gtest.h>

#include "pinkforge/errors.hpp"
#include "pinkforge/group.hpp"
#include "pinkforge/pinklie.hpp"
#include "pinkforge/pseudorep.hpp"

namespace pinkforge {
namespace {

using RingPtr = std::shared_ptr<const Ring>;

RingPtr ring_of(std::uint64_t q, unsigned k) { return std::make_shared<const Ring>(make_truncated_poly_ring(q, k)); }

TEST(Group, ElementSetKeepsInsertionOrder) {
  ElementSet set(3);
  EXPECT_EQ(set.insert(Vec{1, 2, 3}), (std::pair<std::size_t, bool>{0, true}));
  EXPECT_EQ(set.insert(Vec{0, 0, 0}), (std::pair<std::size_t, bool>{1, true}));
  EXPECT_EQ(set.insert(Vec{1, 2, 3}), (std::pair<std::size_t, bool>{0, false}));
  for (unsigned i = 0; i < 5000; ++i) set.insert(Vec{Coeff(i % 251), Coeff(i / 251), 7});
  EXPECT_EQ(set.size(), 5002u);
  EXPECT_EQ(set.find(Vec{4, 0, 7}), std::optional<std::size_t>(6));
  EXPECT_FALSE(set.contains(Vec{9, 9, 9}));
  EXPECT_EQ(Vec(set.at(1).begin(), set.at(1).end()), (Vec{0, 0, 0}));
}

TEST(Group, TrivialAndSmallCyclic) {
  RingPtr a = ring_of(3, 2);
  GmaPtr m2 = GmaStructure::matrix_algebra(a);
  EXPECT_EQ(generate_group(m2, {m2->identity()}).order(), 1u);
  GmaElem xj = m2->scale(a->variable(), m2->J());
  GmaElem g = theta_inv(*m2, xj);
  auto cyc = generate_group(m2, {g});
  ASSERT_EQ(cyc.order(), 3u);
  EXPECT_TRUE(cyc.contains(m2->identity()));
  EXPECT_TRUE(cyc.contains(m2->add(m2->identity(), xj)));
  EXPECT_TRUE(cyc.contains(m2->sub(m2->identity(), xj)));
}

TEST(Group, Section8AtK2IsAbelianOfOrderNine) {
  Section8 s = example_section8(3, 2);
  ASSERT_EQ(s.gamma.order(), 9u);
  const auto& r = s.gamma.algebra();
  for (std::size_t i = 0; i < s.gamma.order(); ++i)
    for (std::size_t j = 0; j < s.gamma.order(); ++j)
      EXPECT_EQ(r.mul(s.gamma.element(i), s.gamma.element(j)), r.mul(s.gamma.element(j), s.gamma.element(i)));
}

TEST(Group, CapIsEnforced) {
  RingPtr a = ring_of(5, 2);
  GmaPtr m2 = GmaStructure::matrix_algebra(a);
  auto e = [&](int x, int y, int z, int w) {
    return m2->make(a->from_int(x), a->from_int(y).coords, a->from_int(z).coords, a->from_int(w));
  };
  try {
    generate_group(m2, {e(1, 1, 0, 1), e(1, 0, 1, 1)}, 100);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), Errc::TooLarge);
  }
  EXPECT_EQ(generate_group(m2, {e(1, 1, 0, 1), e(1, 0, 1, 1)}).order(), 120u);
}

TEST(Group, SubgroupsAndNormalClosure) {
  RingPtr f3 = ring_of(3, 1);
  GmaPtr m2 = GmaStructure::matrix_algebra(f3);
  auto e = [&](int x, int y, int z, int w) {
    return m2->make(f3->from_int(x), f3->from_int(y).coords, f3->from_int(z).coords, f3->from_int(w));
  };
  auto gl2 = generate_group(m2, {e(1, 1, 0, 1), e(1, 0, 1, 1), e(2, 0, 0, 1)});
  ASSERT_EQ(gl2.order(), 48u);
  auto sl2 = subgroup_where(gl2, [&](const GmaElem& x) { return m2->det(x) == f3->one(); });
  EXPECT_EQ(sl2.order(), 24u);
  EXPECT_TRUE(is_subgroup_of(sl2, gl2));
  // The normal closure of a transvection in GL_2(F_3) is SL_2(F_3).
  auto closure = normal_closure(gl2, {e(1, 1, 0, 1)});
  EXPECT_EQ(closure.order(), 24u);
  EXPECT_EQ(group_commutator(*m2, m2->identity(), e(1, 1, 0, 1)), m2->identity());
}

TEST(Group, AbstractGroups) {
  FiniteGroup c6 = FiniteGroup::cyclic(6);
  EXPECT_EQ(c6.order(), 6u);
  EXPECT_EQ(c6.pow(1, 6), c6.identity());
  FiniteGroup klein = FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  EXPECT_EQ(klein.order(), 4u);
  for (std::uint32_t x = 0; x < 4; ++x) EXPECT_EQ(klein.mul(x, x), klein.identity());

  RingPtr f3 = ring_of(3, 1);
  GmaPtr m2 = GmaStructure::matrix_algebra(f3);
  auto e = [&](int x, int y, int z, int w) {
    return m2->make(f3->from_int(x), f3->from_int(y).coords, f3->from_int(z).coords, f3->from_int(w));
  };
  auto gl2 = generate_group(m2, {e(1, 1, 0, 1), e(1, 0, 1, 1), e(2, 0, 0, 1)});
  FiniteGroup table = FiniteGroup::from_matrix_group(gl2);
  ASSERT_EQ(table.order(), 48u);
  for (std::uint32_t x = 0; x < 48; ++x)
    for (std::uint32_t y = 0; y < 48; ++y)
      EXPECT_EQ(gl2.element(table.mul(x, y)), m2->mul(gl2.element(x), gl2.element(y)));
  auto gens = generating_set(table);
  EXPECT_LE(gens.size(), 3u);
}

}  // namespace
}  // namespace pinkforge
