#include "pinkforge/pseudorep.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "pinkforge/errors.hpp"

namespace pinkforge {

namespace {

std::vector<RingElem> field_elements(const Ring& field) {
  const unsigned p = field.p();
  std::size_t q = 1;
  for (std::size_t i = 0; i < field.dim(); ++i) q *= p;
  std::vector<RingElem> out;
  out.reserve(q);
  for (std::size_t idx = 0; idx < q; ++idx) {
    RingElem x = field.zero();
    std::size_t v = idx;
    for (std::size_t i = 0; i < field.dim(); ++i, v /= p) x.coords[i] = Coeff(v % p);
    out.push_back(std::move(x));
  }
  return out;
}

// Roots in F of X^2 - t X + d, in enumeration order.
std::vector<RingElem> quadratic_roots(const Ring& field, const std::vector<RingElem>& elements, const RingElem& t,
                                      const RingElem& d) {
  std::vector<RingElem> roots;
  for (const auto& x : elements) {
    RingElem v = field.add(field.sub(field.mul(x, x), field.mul(t, x)), d);
    if (is_zero(v.coords)) roots.push_back(x);
  }
  return roots;
}

Matrix invert_matrix(const Matrix& m) {
  const std::size_t n = m.rows();
  Matrix inv(m.p(), n, n);
  Vec e(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), 0);
    e[j] = 1;
    auto col = m.solve(e);
    if (!col) raise(Errc::InvalidArgument, "matrix is singular");
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = (*col)[i];
  }
  return inv;
}

// A[G] / {y : T(yx) = 0 for all x}, with an F_p-basis of elements e_i h.  Elements are
// coordinate vectors in that basis, recovered from the values of T(y g_s) at a few
// probe coordinates.
class TraceQuotient {
 public:
  TraceQuotient(const PseudoRep& tr, std::size_t cap) : tr_(tr), ring_(*tr.ring), group_(*tr.group) {
    const std::size_t n = ring_.dim(), N = group_.order();
    if (N > cap) raise(Errc::TooLarge, "group order exceeds the algebra cap of " + std::to_string(cap));
    Subspace span(ring_.p(), n * N);
    Vec v(n * N), w(n * N);
    for (std::uint32_t h = 0; h < N; ++h) {
      for (std::uint32_t g = 0; g < N; ++g) {
        const auto& tv = tr.t[group_.mul(h, g)].coords;
        std::copy(tv.begin(), tv.end(), v.begin() + std::ptrdiff_t(g * n));
      }
      if (span.contains(v)) continue;
      for (std::size_t i = 0; i < n; ++i) {
        std::fill(w.begin(), w.end(), 0);
        RingElem e = ring_.basis(i);
        for (std::size_t g = 0; g < N; ++g)
          ring_.mul_acc(e.coords, std::span<const Coeff>(v).subspan(g * n, n),
                        std::span<Coeff>(w).subspan(g * n, n));
        if (span.insert(w)) basis_.push_back({i, h});
      }
    }
    r_ = basis_.size();
    for (std::size_t pos : span.pivots()) {
      probe_g_.push_back(std::uint32_t(pos / n));
      probe_j_.push_back(pos % n);
    }
    Matrix v_mat(ring_.p(), r_, r_);
    for (std::size_t k = 0; k < r_; ++k) {
      Vec pv = probe(ring_.basis(basis_[k].first), basis_[k].second);
      for (std::size_t s = 0; s < r_; ++s) v_mat(s, k) = pv[s];
    }
    v_inv_ = invert_matrix(v_mat);
    table_.resize(r_ * r_);
    for (std::size_t k = 0; k < r_; ++k)
      for (std::size_t l = 0; l < r_; ++l) {
        RingElem a = ring_.mul(ring_.basis(basis_[k].first), ring_.basis(basis_[l].first));
        table_[k * r_ + l] = coords(a, group_.mul(basis_[k].second, basis_[l].second));
      }
  }

  std::size_t dim() const noexcept { return r_; }
  const Ring& ring() const noexcept { return ring_; }

  Vec coords(const RingElem& a, std::uint32_t h) const { return v_inv_.apply(probe(a, h)); }
  Vec scalar(const RingElem& a) const { return coords(a, group_.identity()); }
  Vec basis_vector(std::size_t k) const {
    Vec e(r_, 0);
    e[k] = 1;
    return e;
  }

  Vec mul(const Vec& x, const Vec& y) const {
    const PrimeField& F = ring_.field();
    Vec out(r_, 0);
    for (std::size_t k = 0; k < r_; ++k) {
      if (!x[k]) continue;
      for (std::size_t l = 0; l < r_; ++l) {
        if (!y[l]) continue;
        F.axpy(out, F.mul(x[k], y[l]), table_[k * r_ + l]);
      }
    }
    return out;
  }
  Vec add(const Vec& x, const Vec& y) const {
    Vec out = x;
    ring_.field().axpy(out, 1, y);
    return out;
  }
  Vec sub(const Vec& x, const Vec& y) const {
    Vec out = x;
    ring_.field().axpy(out, Coeff(ring_.p() - 1), y);
    return out;
  }
  Vec scale(Coeff c, const Vec& x) const {
    Vec out = x;
    ring_.field().scale(out, c);
    return out;
  }

 private:
  Vec probe(const RingElem& a, std::uint32_t h) const {
    Vec out(r_, 0);
    Vec tmp(ring_.dim());
    for (std::size_t s = 0; s < r_; ++s) {
      std::fill(tmp.begin(), tmp.end(), 0);
      ring_.mul_acc(a.coords, tr_.t[group_.mul(h, probe_g_[s])].coords, tmp);
      out[s] = tmp[probe_j_[s]];
    }
    return out;
  }

  const PseudoRep& tr_;
  const Ring& ring_;
  const FiniteGroup& group_;
  std::vector<std::pair<std::size_t, std::uint32_t>> basis_;
  std::vector<std::uint32_t> probe_g_;
  std::vector<std::size_t> probe_j_;
  std::size_t r_ = 0;
  Matrix v_inv_;
  std::vector<Vec> table_;
};

void check_local(const Ring& ring) {
  if (!ring.is_local()) raise(Errc::OutOfDomain, "the coefficient ring must be local");
}

bool has_distinct_characters(const PseudoRep& bar) {
  const Ring& F = *bar.ring;
  const FiniteGroup& G = *bar.group;
  auto elements = field_elements(F);
  auto gens = generating_set(G);
  std::vector<std::vector<RingElem>> choices;
  for (auto s : gens) {
    choices.push_back(quadratic_roots(F, elements, bar.t[s], bar.d[s]));
    if (choices.back().empty()) return false;
  }
  std::vector<std::size_t> pick(gens.size(), 0);
  for (;;) {
    std::vector<std::optional<RingElem>> chi(G.order());
    chi[G.identity()] = F.one();
    std::deque<std::uint32_t> queue{G.identity()};
    bool consistent = true;
    while (!queue.empty() && consistent) {
      auto x = queue.front();
      queue.pop_front();
      for (std::size_t k = 0; k < gens.size() && consistent; ++k) {
        auto y = G.mul(x, gens[k]);
        RingElem v = F.mul(*chi[x], choices[k][pick[k]]);
        if (!chi[y]) {
          chi[y] = v;
          queue.push_back(y);
        } else {
          consistent = *chi[y] == v;
        }
      }
    }
    if (consistent) {
      bool sums = true, distinct = false;
      for (std::uint32_t g = 0; g < G.order() && sums; ++g) {
        RingElem other = F.mul(bar.d[g], F.inverse(*chi[g]));
        sums = F.add(*chi[g], other) == bar.t[g];
        distinct = distinct || other != *chi[g];
      }
      if (sums && distinct) return true;
    }
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == choices[k].size()) pick[k++] = 0;
    if (k == pick.size()) return false;
  }
}

struct Mat2 {
  RingElem a, b, c, d;
};

Mat2 as_mat2(const GmaStructure& r, const GmaElem& x) {
  const Ring& F = r.ring();
  if (r.is_matrix_algebra()) return {r.a(x), {r.b(x)}, {r.c(x)}, r.d(x)};
  if (r.b_dim() != 0 || r.c_dim() != 0)
    raise(Errc::InvalidArgument, "expected M_2 or the diagonal algebra over a field");
  return {r.a(x), F.zero(), F.zero(), r.d(x)};
}

bool is_scalar(const Mat2& m) { return is_zero(m.b.coords) && is_zero(m.c.coords) && m.a == m.d; }

bool in_prime_field(const RingElem& x) {
  return std::all_of(x.coords.begin() + 1, x.coords.end(), [](Coeff c) { return c == 0; });
}

}  // namespace

PseudoRep trace_det(const FiniteMatrixGroup& group) {
  const GmaStructure& r = group.algebra();
  PseudoRep tr;
  tr.group = std::make_shared<const FiniteGroup>(FiniteGroup::from_matrix_group(group));
  tr.ring = r.ring_ptr();
  for (std::size_t i = 0; i < group.order(); ++i) {
    GmaElem g = group.element(i);
    tr.t.push_back(r.trace(g));
    tr.d.push_back(r.det(g));
  }
  return tr;
}

PseudoRep residual(const PseudoRep& tr) {
  check_local(*tr.ring);
  PseudoRep bar;
  bar.group = tr.group;
  bar.ring = std::make_shared<const Ring>(tr.ring->residue_field());
  for (const auto& v : tr.t) bar.t.push_back(tr.ring->residue(v));
  for (const auto& v : tr.d) bar.d.push_back(tr.ring->residue(v));
  return bar;
}

std::optional<AxiomViolation> check_axioms(const PseudoRep& tr) {
  const Ring& A = *tr.ring;
  const FiniteGroup& G = *tr.group;
  const std::uint32_t N = std::uint32_t(G.order());
  if (tr.t.size() != N || tr.d.size() != N) raise(Errc::StructureMismatch, "t and d must cover the group");
  if (tr.t[G.identity()] != A.from_int(2)) return AxiomViolation{"t(1) = 2", G.identity(), G.identity()};
  for (std::uint32_t x = 0; x < N; ++x) {
    if (!A.is_unit(tr.d[x])) return AxiomViolation{"d(x) in A*", x, x};
    for (std::uint32_t y = 0; y < N; ++y) {
      std::uint32_t xy = G.mul(x, y);
      if (tr.d[xy] != A.mul(tr.d[x], tr.d[y])) return AxiomViolation{"d(xy) = d(x) d(y)", x, y};
      if (tr.t[xy] != tr.t[G.mul(y, x)]) return AxiomViolation{"t(xy) = t(yx)", x, y};
      RingElem lhs = A.add(tr.t[xy], A.mul(tr.d[y], tr.t[G.mul(x, G.inv(y))]));
      if (lhs != A.mul(tr.t[x], tr.t[y])) return AxiomViolation{"t(xy) + d(y) t(xy^-1) = t(x) t(y)", x, y};
    }
  }
  return std::nullopt;
}

std::vector<std::uint32_t> kernel(const PseudoRep& tr) {
  const Ring& A = *tr.ring;
  const FiniteGroup& G = *tr.group;
  std::vector<std::uint32_t> out;
  for (std::uint32_t y = 0; y < G.order(); ++y) {
    if (tr.d[y] != A.one()) continue;
    bool ok = true;
    for (std::uint32_t x = 0; x < G.order() && ok; ++x) ok = tr.t[G.mul(x, y)] == tr.t[x];
    if (ok) out.push_back(y);
  }
  return out;
}

GroupAlgebraElem group_algebra_zero(const PseudoRep& tr) {
  return GroupAlgebraElem(tr.group->order(), tr.ring->zero());
}

GroupAlgebraElem group_algebra_basis(const PseudoRep& tr, std::uint32_t g) {
  auto x = group_algebra_zero(tr);
  x.at(g) = tr.ring->one();
  return x;
}

GroupAlgebraElem group_algebra_mul(const PseudoRep& tr, const GroupAlgebraElem& x, const GroupAlgebraElem& y) {
  const Ring& A = *tr.ring;
  const FiniteGroup& G = *tr.group;
  auto out = group_algebra_zero(tr);
  for (std::uint32_t g = 0; g < G.order(); ++g) {
    if (is_zero(x[g].coords)) continue;
    for (std::uint32_t h = 0; h < G.order(); ++h) {
      if (is_zero(y[h].coords)) continue;
      A.mul_acc(x[g].coords, y[h].coords, out[G.mul(g, h)].coords);
    }
  }
  return out;
}

RingElem extend_T(const PseudoRep& tr, const GroupAlgebraElem& x) {
  const Ring& A = *tr.ring;
  RingElem out = A.zero();
  for (std::size_t g = 0; g < x.size(); ++g) A.mul_acc(x[g].coords, tr.t[g].coords, out.coords);
  return out;
}

RingElem extend_D(const PseudoRep& tr, const GroupAlgebraElem& x) {
  const Ring& A = *tr.ring;
  const FiniteGroup& G = *tr.group;
  std::vector<std::uint32_t> support;
  for (std::uint32_t g = 0; g < x.size(); ++g)
    if (!is_zero(x[g].coords)) support.push_back(g);
  RingElem out = A.zero();
  for (std::size_t i = 0; i < support.size(); ++i) {
    std::uint32_t g = support[i];
    out = A.add(out, A.mul(A.mul(x[g], x[g]), tr.d[g]));
    for (std::size_t j = i + 1; j < support.size(); ++j) {
      std::uint32_t h = support[j];
      RingElem f = A.sub(A.mul(tr.t[g], tr.t[h]), tr.t[G.mul(g, h)]);
      out = A.add(out, A.mul(A.mul(x[g], x[h]), f));
    }
  }
  return out;
}

Vec flatten(const PseudoRep& tr, const GroupAlgebraElem& x) {
  const std::size_t n = tr.ring->dim();
  Vec out(n * x.size());
  for (std::size_t g = 0; g < x.size(); ++g) std::copy(x[g].coords.begin(), x[g].coords.end(), out.begin() + std::ptrdiff_t(g * n));
  return out;
}

Subspace linear_kernel(const PseudoRep& tr) {
  const Ring& A = *tr.ring;
  const FiniteGroup& G = *tr.group;
  if (A.p() == 2) raise(Errc::CharacteristicTwo, "the linear kernel needs p odd");
  const std::size_t n = A.dim(), N = G.order();
  if (n * N > 4096) raise(Errc::TooLarge, "A[G] too large for an explicit kernel");
  Matrix m(A.p(), n * N, n * N);
  Vec tmp(n);
  for (std::uint32_t x = 0; x < N; ++x)
    for (std::uint32_t g = 0; g < N; ++g)
      for (std::size_t i = 0; i < n; ++i) {
        std::fill(tmp.begin(), tmp.end(), 0);
        A.mul_acc(A.basis(i).coords, tr.t[G.mul(g, x)].coords, tmp);
        for (std::size_t j = 0; j < n; ++j) m(x * n + j, g * n + i) = tmp[j];
      }
  return Subspace::span(A.p(), n * N, m.kernel());
}

std::vector<std::uint32_t> generating_set(const FiniteGroup& group) {
  const std::size_t N = group.order();
  std::vector<std::uint32_t> gens;
  std::vector<bool> in(N, false);
  std::vector<std::uint32_t> members{group.identity()};
  in[group.identity()] = true;
  for (std::uint32_t g = 0; g < N; ++g) {
    if (in[g]) continue;
    gens.push_back(g);
    for (std::size_t i = 0; i < members.size(); ++i)
      for (auto s : gens) {
        auto y = group.mul(members[i], s);
        if (!in[y]) {
          in[y] = true;
          members.push_back(y);
        }
      }
  }
  return gens;
}

std::optional<AdaptedChoice> first_adapted_element(const PseudoRep& tr) {
  PseudoRep bar = residual(tr);
  const Ring& F = *bar.ring;
  auto elements = field_elements(F);
  for (std::uint32_t g = 0; g < bar.group->order(); ++g) {
    auto roots = quadratic_roots(F, elements, bar.t[g], bar.d[g]);
    if (roots.size() == 2) return AdaptedChoice{g, roots[0], roots[1]};
  }
  return std::nullopt;
}

bool is_multiplicity_free(const PseudoRep& tr, std::size_t cap) {
  try {
    require_multiplicity_free(tr, cap);
    return true;
  } catch (const Error& e) {
    if (e.code() == Errc::NotMultFree) return false;
    throw;
  }
}

void require_multiplicity_free(const PseudoRep& tr, std::size_t cap) {
  PseudoRep bar = residual(tr);
  TraceQuotient q(bar, cap);
  const std::size_t f = bar.ring->dim();
  if (q.dim() == 4 * f) return;
  if (q.dim() == 2 * f && has_distinct_characters(bar)) return;
  raise(Errc::NotMultFree, "residual pseudo-representation is not absolutely irreducible or a sum of two "
                           "distinct characters");
}

TdRepresentation build_td_representation(const PseudoRep& tr, std::size_t cap) {
  check_local(*tr.ring);
  if (tr.ring->p() == 2) raise(Errc::CharacteristicTwo, "(t, d)-representations need p odd");
  if (tr.group->order() > cap) raise(Errc::TooLarge, "group order exceeds the algebra cap");
  require_multiplicity_free(tr, cap);
  auto choice = first_adapted_element(tr);
  if (!choice) raise(Errc::NotAdapted, "no element has distinct residual eigenvalues in the residue field");
  return build_td_representation(tr, choice->g0, choice->lambda0, choice->mu0, cap);
}

TdRepresentation build_td_representation(const PseudoRep& tr, std::uint32_t g0, const RingElem& lambda0,
                                         const RingElem& mu0, std::size_t cap) {
  const Ring& A = *tr.ring;
  check_local(A);
  if (A.p() == 2) raise(Errc::CharacteristicTwo, "(t, d)-representations need p odd");
  if (tr.group->order() > cap) raise(Errc::TooLarge, "group order exceeds the algebra cap");
  if (g0 >= tr.group->order()) raise(Errc::InvalidArgument, "g0 is not a group element");
  require_multiplicity_free(tr, cap);
  {
    Ring F = A.residue_field();
    if (lambda0 == mu0 || F.add(lambda0, mu0) != A.residue(tr.t[g0]) || F.mul(lambda0, mu0) != A.residue(tr.d[g0]))
      raise(Errc::NotAdapted, "lambda0, mu0 are not distinct residual eigenvalues of g0");
  }
  TraceQuotient q(tr, cap);
  const std::size_t r = q.dim(), n = A.dim();

  RingElem lam = A.lift_constant(lambda0), mu = A.lift_constant(mu0);
  Vec e = q.mul(q.sub(q.coords(A.one(), g0), q.scalar(mu)), q.scalar(A.inverse(A.sub(lam, mu))));
  for (unsigned iter = 0;; ++iter) {
    if (iter > 64) raise(Errc::InvalidArgument, "idempotent lifting did not converge");
    Vec e2 = q.mul(e, e);
    if (e2 == e) break;
    e = q.sub(q.scale(3, e2), q.scale(2, q.mul(e2, e)));
  }
  const Vec one = q.scalar(A.one());
  const Vec e1 = e, e2 = q.sub(one, e);

  std::vector<Vec> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = q.scalar(A.basis(i));
  auto diagonal_block = [&](const Vec& idem) {
    Matrix m(A.p(), r, n);
    for (std::size_t i = 0; i < n; ++i) {
      Vec col = q.mul(s[i], idem);
      for (std::size_t k = 0; k < r; ++k) m(k, i) = col[k];
    }
    if (m.rank() != n) raise(Errc::InvalidArgument, "diagonal block is not free of rank one");
    return m;
  };
  const Matrix m1 = diagonal_block(e1), m2 = diagonal_block(e2);
  auto ring_part = [&](const Matrix& m, const Vec& v) {
    auto x = m.solve(v);
    if (!x) raise(Errc::InvalidArgument, "diagonal block is larger than A");
    return RingElem{*x};
  };

  Subspace bs(A.p(), r), cs(A.p(), r);
  for (std::size_t k = 0; k < r; ++k) {
    Vec u = q.basis_vector(k);
    bs.insert(q.mul(q.mul(e1, u), e2));
    cs.insert(q.mul(q.mul(e2, u), e1));
  }
  auto module_of = [&](const Subspace& sub) {
    Module mod{sub.dim(), {}};
    for (std::size_t i = 0; i < n; ++i) {
      Matrix act(A.p(), sub.dim(), sub.dim());
      for (std::size_t j = 0; j < sub.dim(); ++j) {
        auto co = *sub.coordinates(q.mul(s[i], sub.basis()[j]));
        for (std::size_t k = 0; k < sub.dim(); ++k) act(k, j) = co[k];
      }
      mod.action.push_back(std::move(act));
    }
    return mod;
  };
  std::vector<RingElem> pairing;
  for (const auto& b : bs.basis())
    for (const auto& c : cs.basis()) pairing.push_back(ring_part(m1, q.mul(b, c)));
  GmaPtr algebra = GmaStructure::create(tr.ring, module_of(bs), module_of(cs), std::move(pairing));

  auto decompose = [&](const Vec& x) {
    RingElem a = ring_part(m1, q.mul(q.mul(e1, x), e1));
    RingElem d = ring_part(m2, q.mul(q.mul(e2, x), e2));
    Vec b = *bs.coordinates(q.mul(q.mul(e1, x), e2));
    Vec c = *cs.coordinates(q.mul(q.mul(e2, x), e1));
    return algebra->make(a, b, c, d);
  };
  std::vector<GmaElem> basis_image(r);
  for (std::size_t k = 0; k < r; ++k) basis_image[k] = decompose(q.basis_vector(k));
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = 0; l < r; ++l) {
      Vec prod = q.mul(q.basis_vector(k), q.basis_vector(l));
      GmaElem expect(algebra->zero());
      for (std::size_t m = 0; m < r; ++m)
        if (prod[m]) expect = algebra->add(expect, algebra->scale(prod[m], basis_image[m]));
      if (algebra->mul(basis_image[k], basis_image[l]) != expect)
        raise(Errc::InvalidArgument, "block decomposition is not multiplicative");
    }

  TdRepresentation rep{algebra, {}, g0};
  rep.image.reserve(tr.group->order());
  for (std::uint32_t g = 0; g < tr.group->order(); ++g) {
    GmaElem x = decompose(q.coords(A.one(), g));
    if (algebra->trace(x) != tr.t[g] || algebra->det(x) != tr.d[g])
      raise(Errc::InvalidArgument, "image does not realize (t, d)");
    rep.image.push_back(std::move(x));
  }
  return rep;
}

std::optional<Matrix> find_gma_isomorphism(const TdRepresentation& first, const TdRepresentation& second) {
  const GmaStructure& r1 = *first.algebra;
  const GmaStructure& r2 = *second.algebra;
  const Ring& A = r1.ring();
  if (!A.same_as(r2.ring()) || first.image.size() != second.image.size() || r1.dim() != r2.dim())
    return std::nullopt;
  const std::size_t dim = r1.dim();
  Subspace span(A.p(), dim);
  std::vector<Vec> src, dst;
  for (std::size_t g = 0; g < first.image.size() && span.dim() < dim; ++g)
    for (std::size_t i = 0; i < A.dim(); ++i) {
      GmaElem x = r1.scale(A.basis(i), first.image[g]);
      if (span.insert(x.v)) {
        src.push_back(x.v);
        dst.push_back(r2.scale(A.basis(i), second.image[g]).v);
      }
    }
  if (span.dim() != dim) return std::nullopt;
  Matrix s(A.p(), dim, dim), t(A.p(), dim, dim);
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t i = 0; i < dim; ++i) {
      s(i, k) = src[k][i];
      t(i, k) = dst[k][i];
    }
  Matrix psi = t * invert_matrix(s);
  auto apply = [&](const GmaElem& x) { return GmaElem{psi.apply(x.v)}; };
  for (std::size_t g = 0; g < first.image.size(); ++g)
    for (std::size_t i = 0; i < A.dim(); ++i)
      if (apply(r1.scale(A.basis(i), first.image[g])) != r2.scale(A.basis(i), second.image[g])) return std::nullopt;
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t l = 0; l < dim; ++l)
      if (apply(r1.mul({src[k]}, {src[l]})) != r2.mul(apply({src[k]}), apply({src[l]}))) return std::nullopt;
  GmaElem e11 = r1.diag(A.one(), A.zero());
  if (apply(e11) != r2.diag(A.one(), A.zero())) return std::nullopt;
  return psi;
}

FiniteMatrixGroup image_group(const TdRepresentation& rho) {
  FiniteMatrixGroup g = generate_group(rho.algebra, {});
  for (const auto& x : rho.image)
    if (!g.contains(x)) g = extend_group(g, x);
  return g;
}

std::string_view to_string(ResidualTag tag) noexcept {
  switch (tag) {
    case ResidualTag::CyclicOrder2: return "CyclicOrder2";
    case ResidualTag::CyclicOrderN: return "CyclicOrderN";
    case ResidualTag::DihedralOrder4: return "DihedralOrder4";
    case ResidualTag::DihedralN: return "DihedralN";
    case ResidualTag::LargeImage: return "LargeImage";
    case ResidualTag::Exceptional: return "Exceptional";
  }
  return "?";
}

FiniteMatrixGroup residual_image(const FiniteMatrixGroup& group) {
  const GmaStructure& r = group.algebra();
  const Ring& A = r.ring();
  check_local(A);
  auto field = std::make_shared<const Ring>(A.residue_field());
  const bool matrix_case = r.factor_cases()[0] == FactorCase::Matrix;
  GmaPtr target = matrix_case ? GmaStructure::matrix_algebra(field) : GmaStructure::diagonal(field);
  std::optional<MatrixForm> form;
  if (matrix_case && !r.is_matrix_algebra()) form.emplace(group.algebra_ptr());
  auto reduce = [&](GmaElem x) {
    const GmaStructure* src = &r;
    if (form) {
      x = form->apply(x);
      src = &form->target();
    }
    RingElem a = A.residue(src->a(x)), d = A.residue(src->d(x));
    if (!matrix_case) return target->diag(a, d);
    return target->make(a, A.residue({src->b(x)}).coords, A.residue({src->c(x)}).coords, d);
  };
  std::vector<GmaElem> gens;
  for (const auto& g : group.generators()) gens.push_back(reduce(g));
  FiniteMatrixGroup out = generate_group(target, gens);
  for (std::size_t i = 0; i < group.order(); ++i) {
    GmaElem x = reduce(group.element(i));
    if (!out.contains(x)) out = extend_group(out, x);
  }
  return out;
}

ResidualClass classify_projective_image(const FiniteMatrixGroup& gbar) {
  const GmaStructure& r = gbar.algebra();
  const Ring& F = r.ring();
  if (!F.is_local() || F.nilpotency_index() != 1) raise(Errc::InvalidArgument, "expected a group over a field");
  const unsigned p = F.p();
  const std::size_t f = F.dim();
  auto elements = field_elements(F);
  const std::size_t q = elements.size();

  std::vector<Mat2> mats;
  for (std::size_t i = 0; i < gbar.order(); ++i) mats.push_back(as_mat2(r, gbar.element(i)));
  std::vector<Mat2> gens;
  for (const auto& g : gbar.generators()) gens.push_back(as_mat2(r, g));

  std::size_t invariant_lines = 0;
  for (std::size_t li = 0; li <= q; ++li) {
    RingElem u = li < q ? F.one() : F.zero();
    RingElem w = li < q ? elements[li] : F.one();
    bool stable = true;
    for (const auto& m : gens) {
      RingElem x = F.add(F.mul(m.a, u), F.mul(m.b, w));
      RingElem y = F.add(F.mul(m.c, u), F.mul(m.d, w));
      stable = stable && F.sub(F.mul(x, w), F.mul(y, u)) == F.zero();
    }
    if (stable) ++invariant_lines;
  }
  std::size_t scalars = 0;
  for (const auto& m : mats)
    if (is_scalar(m)) ++scalars;
  ResidualClass out{ResidualTag::Exceptional, gbar.order() / scalars, 0, false, false};
  const std::size_t n = out.projective_order;

  if (invariant_lines == q + 1)
    raise(Errc::NotMultFree, "residual image is scalar: the two characters coincide");
  if (invariant_lines == 1) raise(Errc::NotMultFree, "residual image is reducible but not semisimple");
  if (invariant_lines == 2) {
    out.reducible = true;
    out.tag = n == 2 ? ResidualTag::CyclicOrder2 : ResidualTag::CyclicOrderN;
    out.parameter = n;
    return out;
  }
  const GmaStructure& alg = r;
  bool abelian = true;
  for (std::size_t i = 0; i < gbar.generators().size() && abelian; ++i)
    for (std::size_t j = 0; j < i && abelian; ++j)
      abelian = alg.mul(gbar.generators()[i], gbar.generators()[j]) == alg.mul(gbar.generators()[j], gbar.generators()[i]);
  if (abelian) raise(Errc::NotMultFree, "residual image is irreducible but not absolutely irreducible");

  auto projective_order = [&](const GmaElem& g) {
    GmaElem x = g;
    std::size_t k = 1;
    while (!is_scalar(as_mat2(alg, x))) {
      x = alg.mul(x, g);
      ++k;
    }
    return k;
  };
  std::size_t max_order = 1;
  for (std::size_t i = 0; i < gbar.order(); ++i) max_order = std::max(max_order, projective_order(gbar.element(i)));
  if (n == 4 && max_order == 2) {
    out.tag = ResidualTag::DihedralOrder4;
    out.parameter = 2;
    return out;
  }
  if (n >= 6 && n % 2 == 0 && max_order == n / 2) {
    out.tag = ResidualTag::DihedralN;
    out.parameter = n / 2;
    return out;
  }
  if (n % p == 0) {
    std::size_t pe = 1;
    for (std::size_t e = 1; e <= f; ++e) {
      pe *= p;
      if (f % e) continue;
      std::size_t pgl = pe * (pe * pe - 1);
      std::size_t psl = pgl / std::gcd<std::size_t>(2, pe - 1);
      if (n == pgl || n == psl) {
        out.tag = ResidualTag::LargeImage;
        out.parameter = e;
        out.pgl = n == pgl && pgl != psl;
        return out;
      }
    }
  }
  if (n == 12 || n == 24 || n == 60) return out;
  raise(Errc::InvalidArgument, "projective image of order " + std::to_string(n) + " fits no class");
}

bool is_admissible(const Ring& ring, std::span<const RingElem> traces) {
  Subspace span(ring.p(), ring.dim());
  for (const auto& c : ring.constants().basis())
    for (const auto& t : traces) {
      span.insert(ring.mul({c}, t).coords);
      if (span.dim() == ring.dim()) return true;
    }
  return span.dim() == ring.dim();
}

bool is_admissible(const PseudoRep& tr) { return is_admissible(*tr.ring, tr.t); }

bool is_well_adapted(const FiniteMatrixGroup& group, const GmaElem& g0) {
  const GmaStructure& r = group.algebra();
  const Ring& A = r.ring();
  check_local(A);
  if (!group.contains(g0)) raise(Errc::InvalidArgument, "g0 is not in the group");
  if (!is_zero(r.b(g0)) || !is_zero(r.c(g0))) return false;
  if (!A.is_unit(A.sub(r.a(g0), r.d(g0)))) return false;
  const bool matrix_case = r.factor_cases()[0] == FactorCase::Matrix;
  if (matrix_case && !r.is_matrix_algebra())
    raise(Errc::InvalidArgument, "well-adaptedness is checked in M_2(A) or in a reduced GMA");

  FiniteMatrixGroup gbar = residual_image(group);
  const GmaStructure& rb = gbar.algebra();
  const Ring& F = rb.ring();
  ResidualClass cls;
  try {
    cls = classify_projective_image(gbar);
  } catch (const Error& e) {
    if (e.code() == Errc::NotMultFree) return false;
    throw;
  }
  const bool cyclic = cls.tag == ResidualTag::CyclicOrder2 || cls.tag == ResidualTag::CyclicOrderN;
  const bool dihedral = cls.tag == ResidualTag::DihedralOrder4 || cls.tag == ResidualTag::DihedralN;
  if (!cyclic && !dihedral) return false;

  GmaElem g0bar = rb.diag(A.residue(r.a(g0)), A.residue(r.d(g0)));
  std::vector<GmaElem> gens{g0bar};
  for (std::size_t i = 0; i < gbar.order(); ++i)
    if (is_scalar(as_mat2(rb, gbar.element(i)))) gens.push_back(gbar.element(i));
  FiniteMatrixGroup h = generate_group(gbar.algebra_ptr(), gens);
  if (cyclic && h.order() != gbar.order()) return false;
  if (dihedral && 2 * h.order() != gbar.order()) return false;

  for (std::size_t i = 0; i < gbar.order(); ++i) {
    Mat2 m = as_mat2(rb, gbar.element(i));
    GmaElem lift = matrix_case ? r.make(A.lift_constant(m.a), A.lift_constant(m.b).coords,
                                        A.lift_constant(m.c).coords, A.lift_constant(m.d))
                               : r.make(A.lift_constant(m.a), Vec(r.b_dim(), 0), Vec(r.c_dim(), 0),
                                        A.lift_constant(m.d));
    if (!group.contains(lift)) return false;
  }
  if (dihedral) {
    bool found = false;
    for (std::size_t i = 0; i < gbar.order() && !found; ++i) {
      Mat2 m = as_mat2(rb, gbar.element(i));
      if (!is_zero(m.a.coords) || !is_zero(m.d.coords)) continue;
      found = in_prime_field(F.mul(m.b, F.inverse(m.c)));
    }
    if (!found) return false;
  }
  return true;
}

Subspace commutator_trace_ideal(const PseudoRep& tr) {
  const Ring& A = *tr.ring;
  const FiniteGroup& G = *tr.group;
  std::vector<bool> seen(G.order(), false);
  std::vector<std::uint32_t> commutators;
  for (std::uint32_t x = 0; x < G.order(); ++x)
    for (std::uint32_t y = 0; y < G.order(); ++y) {
      auto c = G.commutator(x, y);
      if (!seen[c]) {
        seen[c] = true;
        commutators.push_back(c);
      }
    }
  Subspace span(A.p(), A.dim());
  for (auto c : commutators)
    for (std::uint32_t s = 0; s < G.order() && span.dim() < A.dim(); ++s)
      span.insert(A.sub(tr.t[G.mul(c, s)], tr.t[s]).coords);
  return ideal_generated(A, span);
}

}  // namespace pinkforge
