#include "pinkforge/structure.hpp"

#include <numeric>

#include "pinkforge/errors.hpp"

namespace pinkforge {

std::string_view to_string(StructureTheorem kind) noexcept {
  switch (kind) {
    case StructureTheorem::OrderTwo: return "order-two";
    case StructureTheorem::Cyclic: return "cyclic";
    case StructureTheorem::Klein: return "klein-four";
    case StructureTheorem::Dihedral: return "dihedral";
    case StructureTheorem::LargeImage: return "large-image";
  }
  return "unknown";
}

StructureTheorem theorem_for(const ResidualClass& residual) {
  switch (residual.tag) {
    case ResidualTag::CyclicOrder2: return StructureTheorem::OrderTwo;
    case ResidualTag::CyclicOrderN: return StructureTheorem::Cyclic;
    case ResidualTag::DihedralOrder4: return StructureTheorem::Klein;
    case ResidualTag::DihedralN: return StructureTheorem::Dihedral;
    case ResidualTag::LargeImage:
    case ResidualTag::Exceptional: return StructureTheorem::LargeImage;
  }
  raise(Errc::InvalidArgument, "unknown residual class");
}

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t out = 1;
  while (e--) out *= b;
  return out;
}

unsigned residue_degree(const Ring& ring) {
  if (!ring.is_local()) raise(Errc::OutOfDomain, "structure theorems need a local ring");
  return ring.factors()[0].residue_degree;
}

GmaElem flat(const Vec& v) { return {v}; }

// A-span (or scalars-span) of a subspace of B or C under the module action.
Subspace module_span(const Ring& ring, const Module& m, const Subspace& scalars, const Subspace& s) {
  Subspace out(ring.p(), m.dim);
  for (const auto& c : scalars.basis()) {
    RingElem a{c};
    Matrix act(ring.p(), m.dim, m.dim);
    for (std::size_t i = 0; i < ring.dim(); ++i)
      if (a.coords[i])
        for (std::size_t r = 0; r < m.dim; ++r)
          for (std::size_t k = 0; k < m.dim; ++k)
            act(r, k) = ring.field().add(act(r, k), ring.field().mul(a.coords[i], m.action[i](r, k)));
    for (const auto& v : s.basis()) out.insert(act.apply(v));
  }
  return out;
}

Subspace ring_sum(const Subspace& a, const Subspace& b) { return a.sum(b); }

Subspace trace_square(const GmaStructure& r, const Subspace& nabla) { return pseudo_ring(r, nabla); }

Subspace pairing_span(const GmaStructure& r, const Subspace& b1, const Subspace& c1) {
  Subspace out(r.p(), r.ring_dim());
  for (const auto& b : b1.basis())
    for (const auto& c : c1.basis()) out.insert(r.pairing(b, c).coords);
  return out;
}

Subspace ideal_times(const GmaStructure& r, const Subspace& ideal, const Subspace& l) {
  return pseudo_ring_action(r, ideal, l);
}

std::vector<ConditionCheck> decomposable_conditions(const GmaStructure& r, const Subspace& l, const Decomposition& d) {
  const Ring& ring = r.ring();
  Subspace t = trace_square(r, d.nabla);
  Subspace i1j = d.delta;
  Subspace j_nabla(r.p(), r.dim());
  for (const auto& n : d.nabla.basis()) j_nabla.insert(r.bracket(r.J(), flat(n)).v);
  Subspace i1_sq = product_space(ring, d.i1, d.i1);
  return {
      {"L = I1 J + nabla", d.decomposable && l == lie_from_decomposition(r, d.i1, d.nabla)},
      {"[nabla,nabla] in I1 J", i1j.includes(bracket_span(r, d.nabla, d.nabla))},
      {"I1 [J,nabla] in nabla", d.nabla.includes(ideal_times(r, d.i1, j_nabla))},
      {"tr(nabla^2) I1 in I1", d.i1.includes(product_space(ring, t, d.i1))},
      {"tr(nabla^2) nabla in nabla", d.nabla.includes(ideal_times(r, t, d.nabla))},
      {"I1^3 in I1", d.i1.includes(product_space(ring, i1_sq, d.i1))},
  };
}

bool klein_invariant(const GmaStructure& r, const Subspace& nabla) {
  if (!r.is_matrix_algebra()) return false;
  const PrimeField& F = r.ring().field();
  const std::size_t n = r.ring_dim();
  for (unsigned lam = 1; lam < r.p(); ++lam) {
    Coeff l = Coeff(lam), li = F.inv(Coeff(lam));
    bool ok = true;
    for (const auto& v : nabla.basis()) {
      Vec w(r.dim(), 0);
      for (std::size_t i = 0; i < n; ++i) {
        w[r.b_offset() + i] = F.mul(li, v[r.c_offset() + i]);
        w[r.c_offset() + i] = F.mul(l, v[r.b_offset() + i]);
      }
      if (!nabla.contains(w)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

Subspace subfield_constants(const Ring& ring, unsigned degree) {
  const unsigned f = residue_degree(ring);
  if (degree == 0 || f % degree) raise(Errc::InvalidArgument, "subfield degree must divide the residue degree");
  Ring field = ring.residue_field();
  const std::uint64_t pe = ipow(ring.p(), degree);
  Matrix frob(ring.p(), f, f);
  for (unsigned i = 0; i < f; ++i) {
    RingElem e = field.basis(i);
    RingElem img = field.sub(field.pow(e, pe), e);
    for (unsigned k = 0; k < f; ++k) frob(k, i) = img.coords[k];
  }
  Subspace out(ring.p(), ring.dim());
  for (const auto& v : frob.kernel()) out.insert(ring.lift_constant(RingElem{v}).coords);
  return out;
}

unsigned smallest_subfield_degree(const Ring& ring, std::size_t m) {
  const unsigned f = residue_degree(ring);
  for (unsigned e = 1; e <= f; ++e)
    if (f % e == 0 && std::gcd<std::uint64_t>(m, ipow(ring.p(), e) - 1) > 2) return e;
  return f;
}

Subspace scalar_span(const GmaStructure& r, const Subspace& scalars, const Subspace& l) {
  Subspace out(r.p(), r.dim());
  for (const auto& c : scalars.basis())
    for (const auto& v : l.basis()) out.insert(r.scale(RingElem{c}, flat(v)).v);
  return out;
}

Subspace lie_from_decomposition(const GmaStructure& r, const Subspace& i1, const Subspace& nabla) {
  const Ring& ring = r.ring();
  Subspace out = nabla;
  Vec zb(r.b_dim(), 0), zc(r.c_dim(), 0);
  for (const auto& a : i1.basis()) out.insert(r.make(RingElem{a}, zb, zc, ring.neg(RingElem{a})).v);
  return out;
}

Subspace lie_from_blocks(const GmaStructure& r, const Subspace& i1, const Subspace& b1, const Subspace& c1) {
  const Ring& ring = r.ring();
  Subspace out = lie_from_decomposition(r, i1, Subspace(r.p(), r.dim()));
  Vec zb(r.b_dim(), 0), zc(r.c_dim(), 0);
  for (const auto& b : b1.basis()) out.insert(r.make(ring.zero(), b, zc, ring.zero()).v);
  for (const auto& c : c1.basis()) out.insert(r.make(ring.zero(), zb, c, ring.zero()).v);
  return out;
}

std::vector<ConditionCheck> structure_conditions(StructureTheorem kind, const GmaStructure& r, const Subspace& l,
                                                 unsigned subfield_degree) {
  const Ring& ring = r.ring();
  const Subspace& consts = ring.constants();
  const Subspace full = Subspace::full(r.p(), ring.dim());
  auto f_span = [&](const Subspace& s) { return product_space(ring, consts, s); };
  const Subspace one = consts;
  std::vector<ConditionCheck> out;

  if (kind == StructureTheorem::OrderTwo || kind == StructureTheorem::Klein) {
    Decomposition d = decompose(r, l);
    out = decomposable_conditions(r, l, d);
    Subspace t = trace_square(r, d.nabla);
    Subspace i1_sq = product_space(ring, d.i1, d.i1);
    Subspace base = ring_sum(ring_sum(one, f_span(d.i1)), ring_sum(f_span(i1_sq), f_span(t)));
    if (kind == StructureTheorem::OrderTwo) {
      out.push_back({"F + F I1 + F I1^2 + F tr(nabla^2) = A", base == full});
      out.push_back({"A B1 = B", module_span(ring, r.b_module(), full, d.b1).dim() == r.b_dim()});
      out.push_back({"A C1 = C", module_span(ring, r.c_module(), full, d.c1).dim() == r.c_dim()});
    } else {
      out.push_back({"nabla invariant by (b,c) -> (lambda c, b/lambda)", klein_invariant(r, d.nabla)});
      out.push_back({"F + F I1 + F I1^2 + F tr(nabla^2) + F B1 = A",
                     r.is_matrix_algebra() && ring_sum(base, f_span(d.b1)) == full});
    }
    return out;
  }

  Subspace lq = scalar_span(r, subfield_constants(ring, subfield_degree), l);
  Decomposition d = decompose(r, lq);
  Subspace i1_sq = product_space(ring, d.i1, d.i1);
  Subspace i1_cube = product_space(ring, i1_sq, d.i1);
  bool blocks = d.strongly_decomposable && lq == lie_from_blocks(r, d.i1, d.b1, d.c1);
  if (kind == StructureTheorem::Cyclic) {
    out.push_back({"W(F_q) L = [[I1, B1], [C1, I1]]^0", blocks});
    out.push_back({"B1 C1 in I1", d.i1.includes(pairing_span(r, d.b1, d.c1))});
    out.push_back({"I1^3 in I1", d.i1.includes(i1_cube)});
    out.push_back({"F + F I1 + F I1^2 = A", ring_sum(one, ring_sum(f_span(d.i1), f_span(i1_sq))) == full});
    out.push_back({"F B1 = B and F C1 = C", module_span(ring, r.b_module(), consts, d.b1).dim() == r.b_dim() &&
                                                 module_span(ring, r.c_module(), consts, d.c1).dim() == r.c_dim()});
    return out;
  }
  const bool m2 = r.is_matrix_algebra();
  if (kind == StructureTheorem::Dihedral) {
    out.push_back({"W(F_q) L = [[I1, B1], [B1, I1]]^0", m2 && blocks && d.b1 == d.c1});
    out.push_back({"B1^2 in I1", m2 && d.i1.includes(product_space(ring, d.b1, d.b1))});
    out.push_back({"I1 B1 in B1", m2 && d.b1.includes(product_space(ring, d.i1, d.b1))});
    out.push_back({"I1^3 in I1", d.i1.includes(i1_cube)});
    out.push_back({"F + F I1 + F I1^2 + F B1 = A",
                   m2 && ring_sum(ring_sum(one, f_span(d.i1)), ring_sum(f_span(i1_sq), f_span(d.b1))) == full});
    return out;
  }
  out.push_back({"W(F_q) L = [[I1, I1], [I1, I1]]^0", m2 && blocks && d.b1 == d.i1 && d.c1 == d.i1});
  out.push_back({"I1^2 in I1", d.i1.includes(i1_sq)});
  out.push_back({"F I1 = m", f_span(d.i1) == ring.radical()});
  return out;
}

bool StructureReport::holds() const {
  for (const auto& c : conditions)
    if (!c.holds) return false;
  return true;
}

std::string StructureReport::first_failure() const {
  for (const auto& c : conditions)
    if (!c.holds) return c.condition;
  return {};
}

StructureReport check_structure_theorem(const FiniteMatrixGroup& g, std::optional<unsigned> subfield_degree,
                                        std::size_t cap) {
  const GmaStructure& r = g.algebra();
  const Ring& ring = r.ring();
  ResidualClass residual = classify_projective_image(residual_image(g));
  StructureTheorem kind = theorem_for(residual);
  unsigned degree = 1;
  if (subfield_degree) {
    degree = *subfield_degree;
  } else if (kind == StructureTheorem::Cyclic || kind == StructureTheorem::Dihedral) {
    degree = smallest_subfield_degree(ring, residual.parameter);
  } else if (residual.tag == ResidualTag::Exceptional) {
    degree = residue_degree(ring);
  }
  FiniteMatrixGroup gamma = subgroup_where(g, [&](const GmaElem& x) { return r.in_SR1(x); }, cap);
  Subspace l = lie_of_subgroup(gamma).span;
  StructureReport out{kind, residual, g.order(), gamma.order(), degree, l, {}};
  out.conditions = structure_conditions(kind, r, l, degree);
  return out;
}

std::vector<GmaElem> standard_residual_generators(StructureTheorem kind, const GmaStructure& r, unsigned lambda) {
  const Ring& ring = r.ring();
  Ring field = ring.residue_field();
  const std::uint64_t q = ipow(ring.p(), residue_degree(ring));
  RingElem z = field.one();
  for (std::uint64_t idx = 1; idx < q; ++idx) {
    RingElem x = field.zero();
    std::uint64_t rest = idx;
    for (std::size_t i = 0; i < field.dim(); ++i, rest /= ring.p()) x.coords[i] = Coeff(rest % ring.p());
    std::uint64_t order = 1;
    for (RingElem y = x; y != field.one(); y = field.mul(y, x)) ++order;
    if (order == q - 1) {
      z = x;
      break;
    }
  }
  RingElem zl = ring.lift_constant(z);
  RingElem one = ring.one(), zero = ring.zero();
  auto matrix = [&](const RingElem& a, const RingElem& b, const RingElem& c, const RingElem& d) {
    if (!r.is_matrix_algebra()) raise(Errc::StructureMismatch, "antidiagonal generators need M_2(A)");
    return r.make(a, b.coords, c.coords, d);
  };
  RingElem lam = ring.from_int(lambda);
  switch (kind) {
    case StructureTheorem::OrderTwo: return {r.J()};
    case StructureTheorem::Cyclic: return {r.diag(zl, one)};
    case StructureTheorem::Klein:
      return {r.scalar(zl), r.J(), matrix(zero, one, lam, zero), matrix(zero, one, ring.neg(lam), zero)};
    case StructureTheorem::Dihedral: return {r.diag(zl, one), r.diag(one, zl), matrix(zero, one, one, zero)};
    case StructureTheorem::LargeImage: {
      RingElem g = ring.from_int(0);
      for (unsigned c = 2; c < ring.p(); ++c) {
        RingElem x = ring.from_int(c);
        unsigned order = 1;
        for (RingElem y = x; y != one; y = ring.mul(y, x)) ++order;
        if (order == ring.p() - 1) {
          g = x;
          break;
        }
      }
      std::vector<GmaElem> gens{matrix(one, one, zero, one), matrix(one, zero, one, one)};
      if (ring.p() > 2 && g != zero) gens.push_back(r.diag(g, one));
      return gens;
    }
  }
  raise(Errc::InvalidArgument, "unknown structure theorem");
}

std::string ConverseResult::first_failure() const {
  for (const auto& c : conditions)
    if (!c.holds) return c.condition;
  if (!group) return "group construction";
  if (!normalized) return "s(G-bar) normalizes L";
  if (!round_trip) return "L(Gamma) = L";
  if (!admissible) return "admissible";
  return {};
}

ConverseResult build_group_from_lie(StructureTheorem kind, GmaPtr algebra, const Subspace& l,
                                    const std::vector<GmaElem>& residual_generators, std::size_t cap) {
  const GmaStructure& r = *algebra;
  ConverseResult out;
  const unsigned degree = residue_degree(r.ring());
  out.conditions = structure_conditions(kind, r, l, degree);
  for (const auto& c : out.conditions)
    if (!c.holds) return out;

  FiniteMatrixGroup gamma0 = pink_converse(algebra, l, cap);
  out.normalized = true;
  for (const auto& s : residual_generators) {
    GmaElem inv = r.inverse(s);
    for (const auto& m : l.basis())
      if (!l.contains(r.mul(r.mul(s, flat(m)), inv).v)) out.normalized = false;
  }
  if (!out.normalized) return out;
  FiniteMatrixGroup g = gamma0;
  for (const auto& s : residual_generators) g = extend_group(g, s, cap);
  FiniteMatrixGroup gamma = subgroup_where(g, [&](const GmaElem& x) { return r.in_SR1(x); }, cap);
  Subspace recovered = lie_of_subgroup(gamma).span;
  out.round_trip = recovered == l && gamma.order() == gamma0.order();
  std::vector<RingElem> traces;
  traces.reserve(g.order());
  for (std::size_t i = 0; i < g.order(); ++i) traces.push_back(r.trace(g.element(i)));
  out.admissible = is_admissible(r.ring(), traces);
  out.group.emplace(std::move(g));
  out.gamma.emplace(std::move(gamma));
  out.recovered.emplace(std::move(recovered));
  return out;
}

}  // namespace pinkforge
