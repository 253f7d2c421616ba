#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pinkforge/gma.hpp"

namespace pinkforge {

inline constexpr std::size_t kDefaultGroupCap = 2'000'000;

// Insertion-ordered set of fixed-width coefficient vectors with open addressing.
class ElementSet {
 public:
  explicit ElementSet(std::size_t width);

  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return count_; }
  std::span<const Coeff> at(std::size_t i) const { return {data_.data() + i * width_, width_}; }
  // Index of v and whether it was newly inserted.
  std::pair<std::size_t, bool> insert(std::span<const Coeff> v);
  std::optional<std::size_t> find(std::span<const Coeff> v) const;
  bool contains(std::span<const Coeff> v) const { return find(v).has_value(); }

 private:
  std::uint64_t hash(std::span<const Coeff> v) const noexcept;
  void grow();

  static constexpr std::uint32_t kEmpty = 0xffffffffu;
  std::size_t width_;
  std::size_t count_ = 0;
  std::vector<Coeff> data_;
  std::vector<std::uint32_t> slots_;
};

// Finite subgroup of the unit group of a GMA, stored with every element.
class FiniteMatrixGroup {
 public:
  FiniteMatrixGroup(GmaPtr algebra, ElementSet elements, std::vector<GmaElem> generators);

  const GmaStructure& algebra() const noexcept { return *algebra_; }
  GmaPtr algebra_ptr() const noexcept { return algebra_; }
  std::size_t order() const noexcept { return elements_.size(); }
  GmaElem element(std::size_t i) const { return {Vec(elements_.at(i).begin(), elements_.at(i).end())}; }
  std::span<const Coeff> view(std::size_t i) const { return elements_.at(i); }
  std::optional<std::size_t> index_of(const GmaElem& x) const { return elements_.find(x.v); }
  bool contains(const GmaElem& x) const { return elements_.contains(x.v); }
  const std::vector<GmaElem>& generators() const noexcept { return generators_; }
  const ElementSet& element_set() const noexcept { return elements_; }

 private:
  GmaPtr algebra_;
  ElementSet elements_;
  std::vector<GmaElem> generators_;
};

// Closure of the generators under multiplication; TooLarge past `cap` elements.
FiniteMatrixGroup generate_group(GmaPtr algebra, const std::vector<GmaElem>& generators,
                                 std::size_t cap = kDefaultGroupCap);
FiniteMatrixGroup extend_group(const FiniteMatrixGroup& group, const GmaElem& generator,
                               std::size_t cap = kDefaultGroupCap);
// Subgroup of elements satisfying `keep`, which must define a subgroup.
FiniteMatrixGroup subgroup_where(const FiniteMatrixGroup& group, const std::function<bool(const GmaElem&)>& keep,
                                 std::size_t cap = kDefaultGroupCap);
// Smallest subgroup normalized by `ambient` that contains `seeds`.
FiniteMatrixGroup normal_closure(const FiniteMatrixGroup& ambient, const std::vector<GmaElem>& seeds,
                                 std::size_t cap = kDefaultGroupCap);
GmaElem group_commutator(const GmaStructure& r, const GmaElem& x, const GmaElem& y);
bool is_subgroup_of(const FiniteMatrixGroup& h, const FiniteMatrixGroup& g);

// Sub-GMA (A, B', C') spanned over A by a group that contains a diagonal element with
// residually distinct entries.
struct SubGma {
  GmaPtr algebra;
  Subspace b_span;
  Subspace c_span;
};
SubGma sub_gma_from_group(const FiniteMatrixGroup& group);

// Abstract finite group given by its multiplication table.
class FiniteGroup {
 public:
  static FiniteGroup from_table(std::vector<std::uint32_t> table, std::size_t order);
  static FiniteGroup from_matrix_group(const FiniteMatrixGroup& g, std::size_t cap = 4096);
  static FiniteGroup cyclic(std::size_t n);
  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);

  std::size_t order() const noexcept { return n_; }
  std::uint32_t identity() const noexcept { return identity_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table_[std::size_t(a) * n_ + b]; }
  std::uint32_t inv(std::uint32_t a) const { return inverse_[a]; }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  std::uint32_t commutator(std::uint32_t x, std::uint32_t y) const { return mul(mul(x, y), mul(inv(x), inv(y))); }

 private:
  FiniteGroup() = default;
  void index_inverses();

  std::size_t n_ = 0;
  std::uint32_t identity_ = 0;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
};

}  // namespace pinkforge
