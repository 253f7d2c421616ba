#include "pinkforge/pinklie.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "pinkforge/errors.hpp"
#include "pinkforge/parallel.hpp"

namespace pinkforge {

namespace {

void require_odd(const GmaStructure& r) {
  if (r.p() == 2) raise(Errc::CharacteristicTwo, "Theta needs p odd");
}

RingElem half_of(const Ring& ring, const RingElem& x) { return ring.scale(ring.field().inv(2), x); }

RingElem sqrt_term(const GmaStructure& r, const GmaElem& m) {
  const Ring& ring = r.ring();
  RingElem t2 = r.trace(r.mul(m, m));
  return hensel_sqrt(ring, ring.add(ring.one(), half_of(ring, t2)));
}

std::uint64_t checked_power(unsigned p, std::size_t e, std::uint64_t cap, const char* what) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (n > cap / p) raise(Errc::TooLarge, std::string(what) + " exceeds the enumeration cap");
    n *= p;
  }
  return n;
}

GmaElem flat(const Vec& v) { return {v}; }

}  // namespace

GmaElem theta(const GmaStructure& r, const GmaElem& x) {
  require_odd(r);
  const Ring& ring = r.ring();
  RingElem h = half_of(ring, r.trace(x));
  return r.sub(x, r.scalar(h));
}

GmaElem theta_inv(const GmaStructure& r, const GmaElem& m) {
  require_odd(r);
  r.check_length(m);
  if (!is_zero(r.trace(m).coords)) raise(Errc::OutOfDomain, "Theta^-1 needs a traceless argument");
  if (!r.in_radical(m)) raise(Errc::OutOfDomain, "Theta^-1 needs an argument in rad R");
  return r.add(m, r.scalar(sqrt_term(r, m)));
}

bool is_traceless(const GmaStructure& r, std::span<const Coeff> v) {
  const PrimeField& F = r.ring().field();
  const std::size_t n = r.ring_dim();
  for (std::size_t i = 0; i < n; ++i)
    if (F.add(v[i], v[r.d_offset() + i]) != 0) return false;
  return true;
}

Subspace traceless_radical(const GmaStructure& r) {
  const std::size_t n = r.ring_dim();
  std::vector<Vec> gens;
  for (std::size_t i = 0; i < n; ++i) {
    Vec v(r.dim(), 0);
    v[i] = 1;
    v[r.d_offset() + i] = r.ring().field().neg(1);
    gens.push_back(std::move(v));
  }
  for (std::size_t j = r.b_offset(); j < r.d_offset(); ++j) {
    Vec v(r.dim(), 0);
    v[j] = 1;
    gens.push_back(std::move(v));
  }
  return Subspace::span(r.p(), r.dim(), gens).intersect(r.radical());
}

LieSubspace lie_of_subgroup(const FiniteMatrixGroup& gamma) {
  const GmaStructure& r = gamma.algebra();
  require_odd(r);
  Subspace l(r.p(), r.dim());
  for (std::size_t i = 0; i < gamma.order(); ++i) {
    GmaElem g = gamma.element(i);
    if (!r.in_SR1(g)) raise(Errc::NotInSR1, "element outside SR^1: " + r.to_string(g));
    l.insert(theta(r, g).v);
  }
  return {gamma.algebra_ptr(), std::move(l)};
}

Subspace bracket_span(const GmaStructure& r, const Subspace& u, const Subspace& v) {
  Subspace out(r.p(), r.dim());
  for (const auto& x : u.basis())
    for (const auto& y : v.basis()) out.insert(r.bracket(flat(x), flat(y)).v);
  return out;
}

bool is_bracket_closed(const GmaStructure& r, const Subspace& l) { return l.includes(bracket_span(r, l, l)); }

std::vector<Subspace> descending_series(const GmaStructure& r, const Subspace& l, std::size_t n_max) {
  std::vector<Subspace> out;
  if (n_max == 0) return out;
  out.push_back(l);
  while (out.size() < n_max) out.push_back(bracket_span(r, out.back(), l));
  return out;
}

std::vector<FiniteMatrixGroup> group_series(const FiniteMatrixGroup& gamma, std::size_t n_max, std::size_t cap) {
  const GmaStructure& r = gamma.algebra();
  std::vector<FiniteMatrixGroup> out;
  if (n_max == 0) return out;
  out.push_back(gamma);
  while (out.size() < n_max) {
    std::vector<GmaElem> seeds;
    for (const auto& h : out.back().generators())
      for (const auto& g : gamma.generators()) seeds.push_back(group_commutator(r, h, g));
    out.push_back(normal_closure(gamma, seeds, cap));
  }
  return out;
}

Subspace pseudo_ring(const GmaStructure& r, const Subspace& l) {
  Subspace out(r.p(), r.ring_dim());
  const auto& b = l.basis();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i; j < b.size(); ++j) out.insert(r.trace(r.mul(flat(b[i]), flat(b[j]))).coords);
  return out;
}

Subspace pseudo_ring_of_group(const FiniteMatrixGroup& gamma) {
  const GmaStructure& r = gamma.algebra();
  const Ring& ring = r.ring();
  RingElem two = ring.from_int(2);
  Subspace s(r.p(), ring.dim());
  for (std::size_t i = 0; i < gamma.order(); ++i) s.insert(ring.sub(r.trace(gamma.element(i)), two).coords);
  return multiplicative_closure(ring, s);
}

Subspace pseudo_ring_action(const GmaStructure& r, const Subspace& p, const Subspace& l) {
  Subspace out(r.p(), r.dim());
  for (const auto& a : p.basis())
    for (const auto& m : l.basis()) out.insert(r.scale(RingElem{a}, flat(m)).v);
  return out;
}

std::optional<PinkStabilityFailure> check_pink_stable(const GmaStructure& r, const Subspace& l) {
  for (const auto& v : l.basis())
    if (!is_traceless(r, v) || !r.radical().contains(v)) return PinkStabilityFailure{"L in (rad R)^0", flat(v)};
  for (const auto& x : l.basis())
    for (const auto& y : l.basis()) {
      GmaElem b = r.bracket(flat(x), flat(y));
      if (!l.contains(b.v)) return PinkStabilityFailure{"[L, L] in L", b};
    }
  Subspace p = pseudo_ring(r, l);
  for (const auto& a : p.basis())
    for (const auto& m : l.basis()) {
      GmaElem v = r.scale(RingElem{a}, flat(m));
      if (!l.contains(v.v)) return PinkStabilityFailure{"tr(L L) L in L", v};
    }
  return std::nullopt;
}

FiniteMatrixGroup pink_converse(GmaPtr algebra, const Subspace& l, std::size_t cap) {
  const GmaStructure& r = *algebra;
  require_odd(r);
  if (auto fail = check_pink_stable(r, l))
    raise(Errc::NotPinkStable, "condition " + fail->condition + " fails at " + r.to_string(fail->witness));
  checked_power(r.p(), l.dim(), cap, "Theta^-1(L)");
  ElementSet target(r.dim());
  for (const auto& m : l.elements()) target.insert(theta_inv(r, flat(m)).v);
  std::vector<GmaElem> gens;
  for (const auto& m : l.basis()) gens.push_back(theta_inv(r, flat(m)));
  FiniteMatrixGroup h = generate_group(algebra, gens, cap);
  std::size_t next = 0;
  while (true) {
    for (std::size_t i = 0; i < h.order(); ++i)
      if (!target.contains(h.view(i)))
        raise(Errc::NotPinkStable, "Theta^-1(L) is not closed: " + r.to_string(h.element(i)));
    if (h.order() == target.size()) return h;
    while (h.element_set().contains(target.at(next))) ++next;
    h = extend_group(h, flat(Vec(target.at(next).begin(), target.at(next).end())), cap);
  }
}

GmaElem star(const GmaStructure& r, const GmaElem& x, const GmaElem& y) {
  require_odd(r);
  return r.add(r.scale(sqrt_term(r, y), x), r.scale(sqrt_term(r, x), y));
}

GmaElem star_mod(const GmaStructure& r, const Subspace& l2, const GmaElem& x, const GmaElem& y) {
  return flat(l2.reduce(star(r, x, y).v));
}

GmaElem diagonal_part(const GmaStructure& r, const GmaElem& x) {
  GmaElem out = x;
  std::fill(out.v.begin() + r.b_offset(), out.v.begin() + r.d_offset(), Coeff{0});
  return out;
}

GmaElem antidiagonal_part(const GmaStructure& r, const GmaElem& x) { return r.sub(x, diagonal_part(r, x)); }

Decomposition decompose(const GmaStructure& r, const Subspace& l) {
  Decomposition out{false,
                    false,
                    Subspace(r.p(), r.dim()),
                    Subspace(r.p(), r.dim()),
                    Subspace(r.p(), r.ring_dim()),
                    Subspace(r.p(), r.b_dim()),
                    Subspace(r.p(), r.c_dim())};
  bool decomposable = true;
  bool strong = true;
  for (const auto& v : l.basis()) {
    GmaElem dg = diagonal_part(r, flat(v));
    GmaElem ad = antidiagonal_part(r, flat(v));
    out.delta.insert(dg.v);
    out.nabla.insert(ad.v);
    if (!l.contains(dg.v)) decomposable = false;
    GmaElem bpart = r.zero();
    std::copy(v.begin() + r.b_offset(), v.begin() + r.c_offset(), bpart.v.begin() + r.b_offset());
    if (!l.contains(bpart.v)) strong = false;
  }
  out.decomposable = decomposable;
  out.strongly_decomposable = decomposable && strong;
  out.i1 = out.delta.project(0, r.ring_dim());
  out.b1 = out.nabla.project(r.b_offset(), r.b_dim());
  out.c1 = out.nabla.project(r.c_offset(), r.c_dim());
  return out;
}

Subspace congruence_lie(const GmaStructure& r, const Subspace& ideal) {
  const Ring& ring = r.ring();
  Subspace out(r.p(), r.dim());
  Vec zb(r.b_dim(), 0), zc(r.c_dim(), 0);
  for (const auto& x : ideal.basis()) {
    RingElem a{x};
    out.insert(r.make(a, zb, zc, ring.neg(a)).v);
    for (std::size_t j = 0; j < r.b_dim(); ++j) {
      Vec e(r.b_dim(), 0);
      e[j] = 1;
      out.insert(r.make(ring.zero(), r.act_b(a, e), zc, ring.zero()).v);
    }
    for (std::size_t j = 0; j < r.c_dim(); ++j) {
      Vec e(r.c_dim(), 0);
      e[j] = 1;
      out.insert(r.make(ring.zero(), zb, r.act_c(a, e), ring.zero()).v);
    }
  }
  return out;
}

CongruenceResult is_congruence_subgroup(const GmaStructure& r, const Subspace& l) {
  const Ring& ring = r.ring();
  const std::size_t n = ring.dim();
  Subspace ann = l.annihilator();
  // Images of x = e_s under every generator of [[A x, B x], [C x, A x]]^0.
  std::vector<std::vector<Vec>> images(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      RingElem a = ring.mul(ring.basis(i), ring.basis(s));
      Vec zb(r.b_dim(), 0), zc(r.c_dim(), 0);
      images[s].push_back(r.make(a, zb, zc, ring.neg(a)).v);
      for (std::size_t j = 0; j < r.b_dim(); ++j) {
        Vec e(r.b_dim(), 0);
        e[j] = 1;
        images[s].push_back(r.make(ring.zero(), r.act_b(a, e), zc, ring.zero()).v);
      }
      for (std::size_t j = 0; j < r.c_dim(); ++j) {
        Vec e(r.c_dim(), 0);
        e[j] = 1;
        images[s].push_back(r.make(ring.zero(), zb, r.act_c(a, e), ring.zero()).v);
      }
    }
  }
  const std::size_t per = images.empty() ? 0 : images[0].size();
  const PrimeField& F = ring.field();
  Matrix m(r.p(), std::max<std::size_t>(1, ann.dim() * per), n);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t w = 0; w < ann.dim(); ++w)
      for (std::size_t k = 0; k < per; ++k) {
        Coeff acc = 0;
        const Vec& row = ann.basis()[w];
        const Vec& img = images[s][k];
        for (std::size_t c = 0; c < row.size(); ++c) acc = F.add(acc, F.mul(row[c], img[c]));
        m(w * per + k, s) = acc;
      }
  Subspace ideal = Subspace::span(r.p(), n, m.kernel());
  return {ideal.dim() > 0, std::move(ideal)};
}

SubringResult compute_A0(const Ring& ring, const Subspace& i1) {
  Subspace s = Subspace::span(ring.p(), ring.dim(), {ring.one().coords});
  s = s.sum(i1).sum(product_space(ring, i1, i1));
  bool closed = s.includes(product_space(ring, s, s));
  return {std::move(s), closed};
}

EssentialData essential_data(const FiniteMatrixGroup& g, const Subspace& l2) {
  const GmaStructure& r = g.algebra();
  const Ring& ring = r.ring();
  EssentialData out{{}, Subspace(r.p(), ring.dim()), false};
  for (std::size_t i = 0; i < g.order(); ++i) {
    GmaElem x = g.element(i);
    if (!is_zero(r.trace(x).coords)) continue;
    if (!is_square_unit(ring, ring.neg(r.det(x)))) continue;
    out.s.push_back(std::uint32_t(i));
    for (const auto& m : l2.basis()) {
      RingElem t = r.trace(r.mul(x, flat(m)));
      for (const auto& c : ring.constants().basis()) out.a_ess.insert(ring.mul(RingElem{c}, t).coords);
    }
  }
  out.weakly_odd = !out.s.empty();
  return out;
}

namespace {

// F_q with elements indexed by base-p digits of their coordinates in the residue field.
struct ResidueTables {
  std::uint32_t q = 0;
  std::vector<std::uint32_t> add;
  std::vector<std::uint32_t> mul;
};

ResidueTables residue_tables(const Ring& field) {
  const unsigned p = field.p();
  const std::size_t f = field.dim();
  ResidueTables t;
  t.q = std::uint32_t(checked_power(p, f, 1u << 12, "residue field"));
  auto decode = [&](std::uint32_t idx) {
    RingElem e = field.zero();
    for (std::size_t i = 0; i < f; ++i, idx /= p) e.coords[i] = Coeff(idx % p);
    return e;
  };
  auto encode = [&](const RingElem& e) {
    std::uint32_t idx = 0;
    for (std::size_t i = f; i-- > 0;) idx = idx * p + e.coords[i];
    return idx;
  };
  t.add.resize(std::size_t(t.q) * t.q);
  t.mul.resize(std::size_t(t.q) * t.q);
  for (std::uint32_t a = 0; a < t.q; ++a)
    for (std::uint32_t b = 0; b < t.q; ++b) {
      t.add[a * t.q + b] = encode(field.add(decode(a), decode(b)));
      t.mul[a * t.q + b] = encode(field.mul(decode(a), decode(b)));
    }
  return t;
}

std::vector<std::uint32_t> blocks(std::span<const Coeff> x, unsigned p, std::size_t f) {
  std::vector<std::uint32_t> out(x.size() / f, 0);
  for (std::size_t m = 0; m < out.size(); ++m)
    for (std::size_t i = f; i-- > 0;) out[m] = out[m] * p + x[m * f + i];
  return out;
}

std::uint32_t evaluate(const ResidueTables& t, const std::vector<std::uint32_t>& form,
                       const std::vector<std::uint32_t>& x) {
  std::uint32_t acc = 0;
  for (std::size_t m = 0; m < form.size(); ++m) acc = t.add[acc * t.q + t.mul[form[m] * t.q + x[m]]];
  return acc;
}

}  // namespace

KeyMeasure key_measure_check(const FiniteMatrixGroup& g, const EssentialData& ess, std::size_t residual_order,
                             std::uint64_t form_cap) {
  if (!ess.weakly_odd) raise(Errc::NotWeaklyOdd, "no element with trace 0 and -det a square unit");
  const GmaStructure& r = g.algebra();
  const Ring& ring = r.ring();
  if (!ring.is_local()) raise(Errc::OutOfDomain, "key measure check needs a local ring");
  if (residual_order == 0) raise(Errc::InvalidArgument, "residual order must be positive");
  const unsigned p = ring.p();
  Ring field = ring.residue_field();
  const std::size_t f = field.dim();
  const std::size_t blocks_count = ring.dim() / f;
  ResidueTables tab = residue_tables(field);
  const std::uint64_t total = checked_power(tab.q, blocks_count, form_cap, "dual space");

  std::map<std::vector<std::uint32_t>, std::uint64_t> trace_counts;
  for (std::size_t i = 0; i < g.order(); ++i) ++trace_counts[blocks(r.trace(g.element(i)).coords, p, f)];
  std::vector<std::pair<std::vector<std::uint32_t>, std::uint64_t>> traces(trace_counts.begin(), trace_counts.end());
  std::vector<std::vector<std::uint32_t>> ess_basis;
  for (const auto& v : ess.a_ess.basis()) ess_basis.push_back(blocks(v, p, f));

  KeyMeasure out;
  out.group_order = g.order();
  out.residual_order = residual_order;
  out.bound = double(p - 1) / double(p * residual_order);
  out.forms_checked = total;

  struct Partial {
    std::uint64_t qualifying = 0;
    std::uint64_t min_count = UINT64_MAX;
    std::uint64_t min_form = 0;
  };
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::uint64_t>(total, 64));
  std::vector<Partial> partial(chunks);
  parallel_for(chunks, [&](std::size_t lo, std::size_t hi) {
    std::vector<std::uint32_t> form(blocks_count);
    for (std::size_t c = lo; c < hi; ++c) {
      Partial& part = partial[c];
      for (std::uint64_t idx = total * c / chunks; idx < total * (c + 1) / chunks; ++idx) {
        std::uint64_t rest = idx;
        for (auto& coef : form) {
          coef = std::uint32_t(rest % tab.q);
          rest /= tab.q;
        }
        bool qualifies = false;
        for (const auto& b : ess_basis)
          if (evaluate(tab, form, b) != 0) {
            qualifies = true;
            break;
          }
        if (!qualifies) continue;
        ++part.qualifying;
        std::uint64_t count = 0;
        for (const auto& [t, mult] : traces)
          if (evaluate(tab, form, t) != 0) count += mult;
        if (count < part.min_count) {
          part.min_count = count;
          part.min_form = idx;
        }
      }
    }
  });
  std::uint64_t best = UINT64_MAX, best_form = 0;
  for (const auto& part : partial) {
    out.forms_qualifying += part.qualifying;
    if (part.min_count < best || (part.min_count == best && part.min_form < best_form)) {
      best = part.min_count;
      best_form = part.min_form;
    }
  }
  if (out.forms_qualifying == 0) return out;
  out.vacuous = false;
  out.min_count = best;
  out.min_measure = double(best) / double(g.order());
  out.worst_form.resize(blocks_count);
  for (auto& coef : out.worst_form) {
    coef = std::uint32_t(best_form % tab.q);
    best_form /= tab.q;
  }
  out.pass = best * p * residual_order >= std::uint64_t(p - 1) * g.order();
  return out;
}

PsiReport measure_change_psi(const GmaStructure& r, const Subspace& l2, const GmaElem& gamma, std::size_t cap) {
  require_odd(r);
  const Ring& ring = r.ring();
  RingElem tr_gamma = r.trace(gamma);
  if (!ring.is_unit(tr_gamma)) raise(Errc::OutOfDomain, "tr(gamma) is not a unit");
  checked_power(r.p(), l2.dim(), cap, "L_2");
  GmaElem j = r.J();
  RingElem tr_jg = r.trace(r.mul(j, gamma));
  GmaElem kappa_j = r.scale(ring.mul(tr_jg, ring.inverse(tr_gamma)), j);

  PsiReport out;
  std::vector<Vec> elems = l2.elements();
  out.l2_size = elems.size();
  std::map<Vec, std::size_t> preimage;
  out.maps_into_l2 = true;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    GmaElem m = flat(elems[i]);
    RingElem s = ring.sub(sqrt_term(r, m), ring.one());
    GmaElem psi = r.add(m, r.scale(s, kappa_j));
    if (!l2.contains(psi.v)) out.maps_into_l2 = false;
    preimage.emplace(psi.v, i);
  }
  out.bijective = out.maps_into_l2 && preimage.size() == elems.size();
  if (!out.bijective) return out;

  GmaElem jg = r.mul(j, gamma);
  auto composite = [&](const Vec& m) {
    const Vec& src = elems[preimage.at(m)];
    return r.trace(r.mul(jg, theta_inv(r, flat(src))));
  };
  RingElem base = composite(Vec(r.dim(), 0));
  std::vector<RingElem> slopes;
  for (const auto& b : l2.basis()) slopes.push_back(ring.sub(composite(b), base));
  Subspace i2 = decompose(r, l2).i1;
  Subspace image(r.p(), ring.dim());
  out.affine = base == tr_jg;
  bool inside = true;
  for (const auto& m : elems) {
    RingElem value = composite(m);
    RingElem expect = base;
    Vec co = *l2.coordinates(m);
    for (std::size_t k = 0; k < co.size(); ++k) expect = ring.add(expect, ring.scale(co[k], slopes[k]));
    if (value != expect) out.affine = false;
    RingElem shift = ring.sub(value, tr_jg);
    image.insert(shift.coords);
    if (!i2.contains(shift.coords)) inside = false;
  }
  out.image_matches = inside && image == i2;
  return out;
}

Subspace section8_expected_lie(const GmaStructure& r) {
  const Ring& ring = r.ring();
  const std::size_t n = ring.dim();
  Subspace out(r.p(), r.dim());
  Vec zb(r.b_dim(), 0), zc(r.c_dim(), 0);
  for (std::size_t j = 1; j < n; ++j) {
    RingElem x = ring.basis(j);
    if (j % 2 == 1) out.insert(r.make(x, zb, zc, ring.neg(x)).v);
    RingElem c = j % 2 == 1 ? ring.neg(x) : x;
    out.insert(r.make(ring.zero(), x.coords, c.coords, ring.zero()).v);
  }
  return out;
}

Section8 example_section8(unsigned p, unsigned k, std::size_t cap) {
  if (p == 2) raise(Errc::CharacteristicTwo, "the example needs p odd");
  if (k == 0) raise(Errc::InvalidArgument, "k must be positive");
  auto ring = std::make_shared<const Ring>(make_truncated_poly_ring(p, k));
  GmaPtr alg = GmaStructure::matrix_algebra(ring);
  const GmaStructure& r = *alg;
  RingElem x = k > 1 ? ring->variable() : ring->zero();
  RingElem x2 = ring->mul(x, x);
  RingElem s_plus = hensel_sqrt(*ring, ring->add(ring->one(), x2));
  RingElem s_minus = hensel_sqrt(*ring, ring->sub(ring->one(), x2));
  GmaElem g = r.diag(ring->add(x, s_plus), ring->sub(s_plus, x));
  GmaElem h = r.make(s_minus, x.coords, ring->neg(x).coords, s_minus);
  GmaElem j = r.J();
  bool identities = r.mul(r.mul(j, g), j) == g && r.mul(r.mul(j, h), j) == r.inverse(h);
  FiniteMatrixGroup gamma = generate_group(alg, {g, h}, cap);
  FiniteMatrixGroup group = extend_group(gamma, j, cap);
  Subspace lie = lie_of_subgroup(gamma).span;
  Subspace expected = section8_expected_lie(r);
  return {ring, alg, g, h, std::move(gamma), std::move(group), identities, std::move(lie), std::move(expected)};
}

std::optional<std::pair<RingElem, RingElem>> ideal_witness(const Ring& ring, const Subspace& s) {
  for (const auto& x : s.basis())
    for (std::size_t i = 0; i < ring.dim(); ++i) {
      RingElem ax = ring.mul(ring.basis(i), RingElem{x});
      if (!s.contains(ax.coords)) return std::make_pair(RingElem{x}, ring.basis(i));
    }
  return std::nullopt;
}

namespace {

GmaElem random_special(const GmaStructure& r, Rng& rng) {
  const Ring& ring = r.ring();
  while (true) {
    GmaElem x = r.random(rng);
    RingElem det = r.det(x);
    if (!ring.is_unit(det)) continue;
    return r.mul(x, r.diag(ring.inverse(det), ring.one()));
  }
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(a), std::uint32_t(b)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (std::uint64_t(words[0]) << 32) | words[1];
}

}  // namespace

std::vector<FormulaResult> formula_battery(const GmaStructure& r, std::size_t trials, std::uint64_t seed,
                                           const ThetaFn& map) {
  require_odd(r);
  const Ring& ring = r.ring();
  RingElem two = ring.from_int(2), four = ring.from_int(4);
  using Check = std::function<bool(Rng&)>;
  std::vector<std::pair<std::string, Check>> checks = {
      {"[Theta(x),Theta(y)] = Theta(xy) - Theta(yx)",
       [&](Rng& rng) {
         GmaElem x = r.random(rng), y = r.random(rng);
         return r.bracket(map(r, x), map(r, y)) == r.sub(map(r, r.mul(x, y)), map(r, r.mul(y, x)));
       }},
      {"tr(x) Theta(y) = Theta(xy) + Theta(x^-1 y)",
       [&](Rng& rng) {
         GmaElem x = random_special(r, rng), y = r.random(rng);
         return r.scale(r.trace(x), map(r, y)) ==
                r.add(map(r, r.mul(x, y)), map(r, r.mul(r.inverse(x), y)));
       }},
      {"2 Theta(xy) = [Theta(x),Theta(y)] + tr(x) Theta(y) + tr(y) Theta(x)",
       [&](Rng& rng) {
         GmaElem x = r.random(rng), y = r.random(rng);
         GmaElem rhs = r.add(r.bracket(map(r, x), map(r, y)),
                             r.add(r.scale(r.trace(x), map(r, y)), r.scale(r.trace(y), map(r, x))));
         return r.scale(two, map(r, r.mul(x, y))) == rhs;
       }},
      {"tr(Theta(x) Theta(y)) = tr(xy) - tr(x) tr(y)/2",
       [&](Rng& rng) {
         GmaElem x = r.random(rng), y = r.random(rng);
         RingElem rhs = ring.sub(r.trace(r.mul(x, y)), half_of(ring, ring.mul(r.trace(x), r.trace(y))));
         return r.trace(r.mul(map(r, x), map(r, y))) == rhs;
       }},
      {"Theta(x^-1) = -Theta(x)",
       [&](Rng& rng) {
         GmaElem x = random_special(r, rng);
         return map(r, r.inverse(x)) == r.neg(map(r, x));
       }},
      {"4 tr(xy) [u,v] = [y,[x,[u,v]]] + [x,[y,[u,v]]] + [[x,v],[y,u]] + [[y,v],[x,u]]",
       [&](Rng& rng) {
         GmaElem x = random_traceless_radical(r, rng), y = random_traceless_radical(r, rng);
         GmaElem u = random_traceless_radical(r, rng), v = random_traceless_radical(r, rng);
         GmaElem uv = r.bracket(u, v);
         GmaElem lhs = r.scale(ring.mul(four, r.trace(r.mul(x, y))), uv);
         GmaElem rhs = r.add(r.add(r.bracket(y, r.bracket(x, uv)), r.bracket(x, r.bracket(y, uv))),
                             r.add(r.bracket(r.bracket(x, v), r.bracket(y, u)),
                                   r.bracket(r.bracket(y, v), r.bracket(x, u))));
         return lhs == rhs;
       }},
  };
  std::vector<FormulaResult> out;
  for (std::size_t c = 0; c < checks.size(); ++c) {
    std::vector<std::uint8_t> bad(trials, 0);
    parallel_for(trials, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t t = lo; t < hi; ++t) {
        Rng rng(mix(seed, c, t));
        bad[t] = checks[c].second(rng) ? 0 : 1;
      }
    });
    out.push_back({checks[c].first, trials, std::size_t(std::count(bad.begin(), bad.end(), 1))});
  }
  return out;
}

std::optional<ThetaImageGap> search_theta_image_gap(GmaPtr algebra, std::size_t trials, std::uint64_t seed,
                                                    std::size_t cap) {
  const GmaStructure& r = *algebra;
  require_odd(r);
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<GmaElem> gens;
    const std::size_t count = 1 + rng() % 2;
    for (std::size_t i = 0; i < count; ++i) gens.push_back(theta_inv(r, random_traceless_radical(r, rng)));
    try {
      FiniteMatrixGroup gamma = generate_group(algebra, gens, cap);
      Subspace l = lie_of_subgroup(gamma).span;
      double lie_size = std::pow(double(r.p()), double(l.dim()));
      if (double(gamma.order()) < lie_size) return ThetaImageGap{gens, gamma.order(), l.dim()};
    } catch (const Error& e) {
      if (e.code() != Errc::TooLarge) throw;
    }
  }
  return std::nullopt;
}

}  // namespace pinkforge
