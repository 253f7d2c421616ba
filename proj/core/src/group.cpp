#include "pinkforge/group.hpp"

#include <algorithm>
#include <deque>

#include "pinkforge/errors.hpp"

namespace pinkforge {

ElementSet::ElementSet(std::size_t width) : width_(width), slots_(64, kEmpty) {}

std::uint64_t ElementSet::hash(std::span<const Coeff> v) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (Coeff c : v) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h ^ (h >> 29);
}

void ElementSet::grow() {
  std::vector<std::uint32_t> fresh(slots_.size() * 2, kEmpty);
  const std::size_t mask = fresh.size() - 1;
  for (std::size_t i = 0; i < count_; ++i) {
    std::size_t s = hash(at(i)) & mask;
    while (fresh[s] != kEmpty) s = (s + 1) & mask;
    fresh[s] = std::uint32_t(i);
  }
  slots_ = std::move(fresh);
}

std::optional<std::size_t> ElementSet::find(std::span<const Coeff> v) const {
  if (v.size() != width_) raise(Errc::StructureMismatch, "element width differs from the set");
  const std::size_t mask = slots_.size() - 1;
  for (std::size_t s = hash(v) & mask;; s = (s + 1) & mask) {
    std::uint32_t idx = slots_[s];
    if (idx == kEmpty) return std::nullopt;
    if (std::equal(v.begin(), v.end(), data_.begin() + std::ptrdiff_t(idx * width_))) return idx;
  }
}

std::pair<std::size_t, bool> ElementSet::insert(std::span<const Coeff> v) {
  if (auto idx = find(v)) return {*idx, false};
  if ((count_ + 1) * 2 > slots_.size()) grow();
  const std::size_t mask = slots_.size() - 1;
  std::size_t s = hash(v) & mask;
  while (slots_[s] != kEmpty) s = (s + 1) & mask;
  slots_[s] = std::uint32_t(count_);
  data_.insert(data_.end(), v.begin(), v.end());
  return {count_++, true};
}

FiniteMatrixGroup::FiniteMatrixGroup(GmaPtr algebra, ElementSet elements, std::vector<GmaElem> generators)
    : algebra_(std::move(algebra)), elements_(std::move(elements)), generators_(std::move(generators)) {}

namespace {

// Closes `set` under right multiplication by `gens`, starting the queue at `from`.
void close_right(const GmaStructure& r, ElementSet& set, std::size_t from, const std::vector<GmaElem>& gens,
                 std::size_t cap) {
  Vec prod(r.dim());
  Vec cur(r.dim());
  for (std::size_t i = from; i < set.size(); ++i) {
    auto src = set.at(i);
    std::copy(src.begin(), src.end(), cur.begin());
    for (const auto& g : gens) {
      r.mul_into(cur, g.v, prod);
      if (set.insert(prod).second && set.size() > cap)
        raise(Errc::TooLarge, "group exceeds the element cap of " + std::to_string(cap));
    }
  }
}

void check_invertible(const GmaStructure& r, const GmaElem& g) {
  r.check_length(g);
  if (!r.ring().is_unit(r.det(g))) raise(Errc::NotAUnit, "generator is not invertible: " + r.to_string(g));
}

}  // namespace

FiniteMatrixGroup generate_group(GmaPtr algebra, const std::vector<GmaElem>& generators, std::size_t cap) {
  const GmaStructure& r = *algebra;
  ElementSet set(r.dim());
  set.insert(r.identity().v);
  std::vector<GmaElem> gens;
  for (const auto& g : generators) {
    check_invertible(r, g);
    if (g != r.identity()) gens.push_back(g);
  }
  close_right(r, set, 0, gens, cap);
  return FiniteMatrixGroup(std::move(algebra), std::move(set), std::move(gens));
}

FiniteMatrixGroup extend_group(const FiniteMatrixGroup& group, const GmaElem& generator, std::size_t cap) {
  const GmaStructure& r = group.algebra();
  check_invertible(r, generator);
  if (group.contains(generator)) return group;
  ElementSet set = group.element_set();
  std::size_t old = set.size();
  Vec prod(r.dim());
  for (std::size_t i = 0; i < old; ++i) {
    r.mul_into(set.at(i), generator.v, prod);
    set.insert(prod);
  }
  if (set.size() > cap) raise(Errc::TooLarge, "group exceeds the element cap of " + std::to_string(cap));
  std::vector<GmaElem> gens = group.generators();
  gens.push_back(generator);
  close_right(r, set, old, gens, cap);
  return FiniteMatrixGroup(group.algebra_ptr(), std::move(set), std::move(gens));
}

FiniteMatrixGroup subgroup_where(const FiniteMatrixGroup& group, const std::function<bool(const GmaElem&)>& keep,
                                 std::size_t cap) {
  FiniteMatrixGroup h = generate_group(group.algebra_ptr(), {}, cap);
  for (std::size_t i = 0; i < group.order(); ++i) {
    GmaElem g = group.element(i);
    if (!h.contains(g) && keep(g)) h = extend_group(h, g, cap);
  }
  return h;
}

GmaElem group_commutator(const GmaStructure& r, const GmaElem& x, const GmaElem& y) {
  return r.mul(r.mul(x, y), r.mul(r.inverse(x), r.inverse(y)));
}

FiniteMatrixGroup normal_closure(const FiniteMatrixGroup& ambient, const std::vector<GmaElem>& seeds,
                                 std::size_t cap) {
  const GmaStructure& r = ambient.algebra();
  FiniteMatrixGroup n = generate_group(ambient.algebra_ptr(), {}, cap);
  std::deque<GmaElem> pending(seeds.begin(), seeds.end());
  std::vector<GmaElem> ambient_gens = ambient.generators();
  while (!pending.empty()) {
    GmaElem h = pending.front();
    pending.pop_front();
    if (n.contains(h)) continue;
    n = extend_group(n, h, cap);
    for (const auto& g : ambient_gens) pending.push_back(r.mul(r.mul(r.inverse(g), h), g));
  }
  return n;
}

bool is_subgroup_of(const FiniteMatrixGroup& h, const FiniteMatrixGroup& g) {
  for (std::size_t i = 0; i < h.order(); ++i)
    if (!g.element_set().contains(h.view(i))) return false;
  return true;
}

namespace {

Module submodule(const Ring& ring, const Module& m, const Subspace& sub) {
  Module out{sub.dim(), {}};
  for (std::size_t i = 0; i < ring.dim(); ++i) {
    Matrix a(ring.p(), sub.dim(), sub.dim());
    for (std::size_t j = 0; j < sub.dim(); ++j) {
      auto co = sub.coordinates(m.action[i].apply(sub.basis()[j]));
      if (!co) raise(Errc::InvalidArgument, "span is not an A-submodule");
      for (std::size_t k = 0; k < sub.dim(); ++k) a(k, j) = (*co)[k];
    }
    out.action.push_back(std::move(a));
  }
  return out;
}

}  // namespace

SubGma sub_gma_from_group(const FiniteMatrixGroup& group) {
  const GmaStructure& r = group.algebra();
  const Ring& A = r.ring();
  bool adapted = false;
  for (std::size_t i = 0; i < group.order() && !adapted; ++i) {
    GmaElem g = group.element(i);
    if (!is_zero(r.b(g)) || !is_zero(r.c(g))) continue;
    adapted = A.is_unit(A.sub(r.a(g), r.d(g)));
  }
  if (!adapted) raise(Errc::NotAdapted, "no diagonal element with residually distinct entries");
  Subspace span(r.p(), r.dim());
  for (std::size_t i = 0; i < group.order() && span.dim() < r.dim(); ++i) {
    GmaElem g = group.element(i);
    for (std::size_t k = 0; k < A.dim(); ++k) span.insert(r.scale(A.basis(k), g).v);
  }
  Subspace bs = span.project(r.b_offset(), r.b_dim());
  Subspace cs = span.project(r.c_offset(), r.c_dim());
  Module mb = submodule(A, r.b_module(), bs);
  Module mc = submodule(A, r.c_module(), cs);
  std::vector<RingElem> pairing;
  for (const auto& b : bs.basis())
    for (const auto& c : cs.basis()) pairing.push_back(r.pairing(b, c));
  auto sub = GmaStructure::create(r.ring_ptr(), std::move(mb), std::move(mc), std::move(pairing));
  return {std::move(sub), std::move(bs), std::move(cs)};
}

FiniteGroup FiniteGroup::from_table(std::vector<std::uint32_t> table, std::size_t order) {
  if (order == 0 || table.size() != order * order) raise(Errc::InvalidArgument, "table size is not order^2");
  FiniteGroup g;
  g.n_ = order;
  g.table_ = std::move(table);
  bool found = false;
  for (std::size_t e = 0; e < order && !found; ++e) {
    bool ok = true;
    for (std::size_t x = 0; x < order && ok; ++x) ok = g.mul(std::uint32_t(e), std::uint32_t(x)) == x &&
                                                       g.mul(std::uint32_t(x), std::uint32_t(e)) == x;
    if (ok) {
      g.identity_ = std::uint32_t(e);
      found = true;
    }
  }
  if (!found) raise(Errc::InvalidArgument, "table has no identity");
  for (std::size_t x = 0; x < order; ++x) {
    std::vector<bool> seen(order, false);
    for (std::size_t y = 0; y < order; ++y) {
      auto v = g.mul(std::uint32_t(x), std::uint32_t(y));
      if (v >= order || seen[v]) raise(Errc::InvalidArgument, "table row is not a permutation");
      seen[v] = true;
    }
  }
  if (order <= 128)
    for (std::uint32_t x = 0; x < order; ++x)
      for (std::uint32_t y = 0; y < order; ++y)
        for (std::uint32_t z = 0; z < order; ++z)
          if (g.mul(g.mul(x, y), z) != g.mul(x, g.mul(y, z)))
            raise(Errc::InvalidArgument, "table is not associative");
  g.index_inverses();
  return g;
}

void FiniteGroup::index_inverses() {
  inverse_.assign(n_, 0);
  for (std::uint32_t x = 0; x < n_; ++x)
    for (std::uint32_t y = 0; y < n_; ++y)
      if (mul(x, y) == identity_) {
        inverse_[x] = y;
        break;
      }
}

FiniteGroup FiniteGroup::from_matrix_group(const FiniteMatrixGroup& group, std::size_t cap) {
  const std::size_t n = group.order();
  if (n > cap) raise(Errc::TooLarge, "group too large for a multiplication table");
  const GmaStructure& r = group.algebra();
  FiniteGroup g;
  g.n_ = n;
  g.table_.assign(n * n, 0);
  Vec prod(r.dim());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      r.mul_into(group.view(x), group.view(y), prod);
      g.table_[x * n + y] = std::uint32_t(*group.element_set().find(prod));
    }
  g.identity_ = std::uint32_t(*group.index_of(r.identity()));
  g.index_inverses();
  return g;
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) raise(Errc::InvalidArgument, "cyclic group of order 0");
  std::vector<std::uint32_t> t(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a * n + b] = std::uint32_t((a + b) % n);
  FiniteGroup g;
  g.n_ = n;
  g.table_ = std::move(t);
  g.identity_ = 0;
  g.index_inverses();
  return g;
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t n = a.order() * b.order();
  FiniteGroup g;
  g.n_ = n;
  g.table_.assign(n * n, 0);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y) {
      auto xa = std::uint32_t(x / b.order()), xb = std::uint32_t(x % b.order());
      auto ya = std::uint32_t(y / b.order()), yb = std::uint32_t(y % b.order());
      g.table_[std::size_t(x) * n + y] = std::uint32_t(a.mul(xa, ya) * b.order() + b.mul(xb, yb));
    }
  g.identity_ = std::uint32_t(a.identity() * b.order() + b.identity());
  g.index_inverses();
  return g;
}

std::uint32_t FiniteGroup::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint32_t result = identity_, base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

}  // namespace pinkforge
