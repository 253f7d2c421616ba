#include "pinkforge/gma.hpp"

#include <algorithm>
#include <sstream>

#include "pinkforge/errors.hpp"

namespace pinkforge {

namespace {

Matrix action_of(const Module& m, const Ring& ring, const RingElem& r) {
  Matrix out(ring.p(), m.dim, m.dim);
  const PrimeField& F = ring.field();
  for (std::size_t i = 0; i < ring.dim(); ++i) {
    Coeff ri = r.coords[i];
    if (!ri || m.dim == 0) continue;
    for (std::size_t row = 0; row < m.dim; ++row) F.axpy(out.row(row), ri, m.action[i].row(row));
  }
  return out;
}

Vec vadd(const PrimeField& F, std::span<const Coeff> a, std::span<const Coeff> b) {
  Vec r(a.begin(), a.end());
  F.axpy(r, 1, b);
  return r;
}

}  // namespace

Module regular_module(const Ring& ring) {
  Module m{ring.dim(), {}};
  for (std::size_t i = 0; i < ring.dim(); ++i) {
    Matrix a(ring.p(), ring.dim(), ring.dim());
    for (std::size_t j = 0; j < ring.dim(); ++j) {
      RingElem prod = ring.mul(ring.basis(i), ring.basis(j));
      for (std::size_t k = 0; k < ring.dim(); ++k) a(k, j) = prod.coords[k];
    }
    m.action.push_back(std::move(a));
  }
  return m;
}

Module zero_module(const Ring& ring) {
  return Module{0, std::vector<Matrix>(ring.dim(), Matrix(ring.p(), 0, 0))};
}

Module ideal_module(const Ring& ring, const Subspace& ideal) {
  if (!is_ideal(ring, ideal)) raise(Errc::InvalidArgument, "subspace is not an ideal");
  Module m{ideal.dim(), {}};
  for (std::size_t i = 0; i < ring.dim(); ++i) {
    Matrix a(ring.p(), ideal.dim(), ideal.dim());
    for (std::size_t j = 0; j < ideal.dim(); ++j) {
      Vec prod(ring.dim(), 0);
      ring.mul_acc(ring.basis(i).coords, ideal.basis()[j], prod);
      Vec co = *ideal.coordinates(prod);
      for (std::size_t k = 0; k < ideal.dim(); ++k) a(k, j) = co[k];
    }
    m.action.push_back(std::move(a));
  }
  return m;
}

namespace {

std::vector<std::size_t> free_columns(const Subspace& s) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < s.ambient(); ++j)
    if (!std::binary_search(s.pivots().begin(), s.pivots().end(), j)) out.push_back(j);
  return out;
}

}  // namespace

Module quotient_module(const Ring& ring, const Subspace& ideal) {
  if (!is_ideal(ring, ideal)) raise(Errc::InvalidArgument, "subspace is not an ideal");
  auto cols = free_columns(ideal);
  Module m{cols.size(), {}};
  for (std::size_t i = 0; i < ring.dim(); ++i) {
    Matrix a(ring.p(), cols.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      Vec red = ideal.reduce(ring.mul(ring.basis(i), ring.basis(cols[j])).coords);
      for (std::size_t k = 0; k < cols.size(); ++k) a(k, j) = red[cols[k]];
    }
    m.action.push_back(std::move(a));
  }
  return m;
}

GmaStructure::GmaStructure(std::shared_ptr<const Ring> ring, Module b, Module c, std::vector<RingElem> pairing)
    : ring_(std::move(ring)),
      b_(std::move(b)),
      c_(std::move(c)),
      pairing_(std::move(pairing)),
      n_(ring_->dim()),
      nb_(b_.dim),
      nc_(c_.dim),
      radical_(ring_->p(), 0) {
  if (b_.action.size() != n_ || c_.action.size() != n_)
    raise(Errc::StructureMismatch, "module actions do not match the ring dimension");
  if (pairing_.size() != nb_ * nc_) raise(Errc::StructureMismatch, "pairing table has the wrong size");
  for (const auto& v : pairing_)
    if (v.coords.size() != n_) raise(Errc::StructureMismatch, "pairing value has the wrong length");
}

std::shared_ptr<const GmaStructure> GmaStructure::create(std::shared_ptr<const Ring> ring, Module b, Module c,
                                                         std::vector<RingElem> pairing) {
  if (!ring) raise(Errc::InvalidArgument, "null ring");
  std::shared_ptr<GmaStructure> r(new GmaStructure(std::move(ring), std::move(b), std::move(c), std::move(pairing)));
  r->validate();
  r->build_product();
  r->build_radical();
  return r;
}

std::shared_ptr<const GmaStructure> GmaStructure::matrix_algebra(std::shared_ptr<const Ring> ring) {
  std::vector<RingElem> pairing;
  for (std::size_t j = 0; j < ring->dim(); ++j)
    for (std::size_t k = 0; k < ring->dim(); ++k) pairing.push_back(ring->mul(ring->basis(j), ring->basis(k)));
  Module reg = regular_module(*ring);
  std::shared_ptr<GmaStructure> r(new GmaStructure(ring, reg, reg, std::move(pairing)));
  r->matrix_algebra_ = true;
  r->build_product();
  r->build_radical();
  return r;
}

std::shared_ptr<const GmaStructure> GmaStructure::diagonal(std::shared_ptr<const Ring> ring) {
  Module z = zero_module(*ring);
  return create(ring, z, z, {});
}

std::shared_ptr<const GmaStructure> GmaStructure::twisted(std::shared_ptr<const Ring> ring, const RingElem& u) {
  if (u == ring->one()) return matrix_algebra(ring);
  Subspace ann = annihilator_of(*ring, Subspace::span(ring->p(), ring->dim(), {u.coords}));
  Module m = quotient_module(*ring, ann);
  auto cols = free_columns(ann);
  std::vector<RingElem> pairing;
  for (auto j : cols)
    for (auto k : cols) pairing.push_back(ring->mul(u, ring->mul(ring->basis(j), ring->basis(k))));
  return create(ring, m, m, std::move(pairing));
}

std::shared_ptr<const GmaStructure> GmaStructure::from_ideals(std::shared_ptr<const Ring> ring, const Subspace& b,
                                                              const Subspace& c) {
  Module mb = ideal_module(*ring, b);
  Module mc = ideal_module(*ring, c);
  std::vector<RingElem> pairing;
  for (const auto& x : b.basis())
    for (const auto& y : c.basis()) {
      RingElem out = ring->zero();
      ring->mul_acc(x, y, out.coords);
      pairing.push_back(std::move(out));
    }
  return create(ring, std::move(mb), std::move(mc), std::move(pairing));
}

void GmaStructure::validate() const {
  const Ring& A = *ring_;
  Matrix idb = Matrix::identity(p(), nb_), idc = Matrix::identity(p(), nc_);
  if (nb_ && action_of(b_, A, A.one()) != idb) raise(Errc::InvalidArgument, "1 does not act as the identity on B");
  if (nc_ && action_of(c_, A, A.one()) != idc) raise(Errc::InvalidArgument, "1 does not act as the identity on C");
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      RingElem prod = A.mul(A.basis(i), A.basis(j));
      if (nb_ && action_of(b_, A, prod) != b_.action[i] * b_.action[j])
        raise(Errc::InvalidArgument, "B is not an A-module");
      if (nc_ && action_of(c_, A, prod) != c_.action[i] * c_.action[j])
        raise(Errc::InvalidArgument, "C is not an A-module");
    }
  auto unit = [](std::size_t n, std::size_t i) {
    Vec v(n, 0);
    v[i] = 1;
    return v;
  };
  for (std::size_t j = 0; j < nb_; ++j)
    for (std::size_t k = 0; k < nc_; ++k) {
      Vec bj = unit(nb_, j), ck = unit(nc_, k);
      RingElem m = pairing(bj, ck);
      for (std::size_t i = 0; i < n_; ++i) {
        RingElem r = A.basis(i);
        RingElem rm = A.mul(r, m);
        if (pairing(act_b(r, bj), ck) != rm || pairing(bj, act_c(r, ck)) != rm)
          raise(Errc::InvalidArgument, "pairing is not A-bilinear");
      }
      for (std::size_t l = 0; l < nb_; ++l)
        if (act_b(m, unit(nb_, l)) != act_b(pairing(unit(nb_, l), ck), bj))
          raise(Errc::InvalidArgument, "pairing violates m(b,c)b' = m(b',c)b");
      for (std::size_t l = 0; l < nc_; ++l)
        if (act_c(m, unit(nc_, l)) != act_c(pairing(bj, unit(nc_, l)), ck))
          raise(Errc::InvalidArgument, "pairing violates m(b,c)c' = m(b,c')c");
    }
}

void GmaStructure::build_product() {
  const Ring& A = *ring_;
  const std::size_t total = dim();
  const std::size_t ob = b_offset(), oc = c_offset(), od = d_offset();
  std::vector<std::vector<Term>> by_left(total);
  auto put = [&](std::size_t left, std::size_t right, std::size_t out, Coeff c) {
    if (c) by_left[left].push_back({std::uint32_t(right), std::uint32_t(out), c});
  };
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      RingElem prod = A.mul(A.basis(i), A.basis(j));
      for (std::size_t k = 0; k < n_; ++k) {
        put(i, j, k, prod.coords[k]);
        put(od + i, od + j, od + k, prod.coords[k]);
      }
    }
  for (std::size_t j = 0; j < nb_; ++j)
    for (std::size_t k = 0; k < nc_; ++k) {
      const RingElem& m = pairing_[j * nc_ + k];
      for (std::size_t l = 0; l < n_; ++l) {
        put(ob + j, oc + k, l, m.coords[l]);
        put(oc + k, ob + j, od + l, m.coords[l]);
      }
    }
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < nb_; ++j)
      for (std::size_t k = 0; k < nb_; ++k) {
        Coeff c = b_.action[i](k, j);
        put(i, ob + j, ob + k, c);
        put(ob + j, od + i, ob + k, c);
      }
    for (std::size_t j = 0; j < nc_; ++j)
      for (std::size_t k = 0; k < nc_; ++k) {
        Coeff c = c_.action[i](k, j);
        put(oc + j, i, oc + k, c);
        put(od + i, oc + j, oc + k, c);
      }
  }
  term_start_.assign(total + 1, 0);
  terms_.clear();
  for (std::size_t i = 0; i < total; ++i) {
    terms_.insert(terms_.end(), by_left[i].begin(), by_left[i].end());
    term_start_[i + 1] = std::uint32_t(terms_.size());
  }
}

void GmaStructure::build_radical() {
  const Ring& A = *ring_;
  radical_ = Subspace(p(), dim());
  for (const auto& r : A.radical().basis()) {
    radical_.insert(make(RingElem{r}, Vec(nb_, 0), Vec(nc_, 0), A.zero()).v);
    radical_.insert(make(A.zero(), Vec(nb_, 0), Vec(nc_, 0), RingElem{r}).v);
  }
  cases_.clear();
  for (std::size_t fi = 0; fi < A.factors().size(); ++fi) {
    bool matrix_case = false;
    for (const auto& m : pairing_)
      if (!is_zero(A.residue(m, fi).coords)) matrix_case = true;
    cases_.push_back(matrix_case ? FactorCase::Matrix : FactorCase::Reduced);
    RingElem e = A.idempotent(fi);
    std::vector<RingElem> scalars;
    if (matrix_case) {
      for (const auto& r : A.radical().basis()) {
        RingElem s = A.mul(e, RingElem{r});
        if (!is_zero(s.coords)) scalars.push_back(s);
      }
    } else {
      scalars.push_back(e);
    }
    for (const auto& s : scalars) {
      for (std::size_t j = 0; j < nb_; ++j) {
        Vec bj(nb_, 0);
        bj[j] = 1;
        radical_.insert(make(A.zero(), act_b(s, bj), Vec(nc_, 0), A.zero()).v);
      }
      for (std::size_t j = 0; j < nc_; ++j) {
        Vec cj(nc_, 0);
        cj[j] = 1;
        radical_.insert(make(A.zero(), Vec(nb_, 0), act_c(s, cj), A.zero()).v);
      }
    }
  }
}

bool GmaStructure::is_reduced() const noexcept {
  return std::all_of(cases_.begin(), cases_.end(), [](FactorCase c) { return c == FactorCase::Reduced; });
}

void GmaStructure::check_length(const GmaElem& x) const {
  if (x.v.size() != dim()) raise(Errc::StructureMismatch, "element length differs from the algebra dimension");
}

GmaElem GmaStructure::identity() const { return scalar(ring_->one()); }

GmaElem GmaStructure::J() const { return diag(ring_->one(), ring_->neg(ring_->one())); }

GmaElem GmaStructure::make(const RingElem& a, std::span<const Coeff> b, std::span<const Coeff> c,
                           const RingElem& d) const {
  if (a.coords.size() != n_ || d.coords.size() != n_ || b.size() != nb_ || c.size() != nc_)
    raise(Errc::StructureMismatch, "component lengths do not match the algebra");
  GmaElem x = zero();
  std::copy(a.coords.begin(), a.coords.end(), x.v.begin());
  std::copy(b.begin(), b.end(), x.v.begin() + b_offset());
  std::copy(c.begin(), c.end(), x.v.begin() + c_offset());
  std::copy(d.coords.begin(), d.coords.end(), x.v.begin() + d_offset());
  return x;
}

GmaElem GmaStructure::diag(const RingElem& a, const RingElem& d) const {
  return make(a, Vec(nb_, 0), Vec(nc_, 0), d);
}

RingElem GmaStructure::a(const GmaElem& x) const {
  check_length(x);
  return {Vec(x.v.begin(), x.v.begin() + n_)};
}

RingElem GmaStructure::d(const GmaElem& x) const {
  check_length(x);
  return {Vec(x.v.begin() + d_offset(), x.v.end())};
}

Vec GmaStructure::b(const GmaElem& x) const {
  check_length(x);
  return Vec(x.v.begin() + b_offset(), x.v.begin() + c_offset());
}

Vec GmaStructure::c(const GmaElem& x) const {
  check_length(x);
  return Vec(x.v.begin() + c_offset(), x.v.begin() + d_offset());
}

GmaElem GmaStructure::add(const GmaElem& x, const GmaElem& y) const {
  check_length(x);
  check_length(y);
  return {vadd(ring_->field(), x.v, y.v)};
}

GmaElem GmaStructure::sub(const GmaElem& x, const GmaElem& y) const {
  check_length(x);
  check_length(y);
  GmaElem r = x;
  ring_->field().axpy(r.v, Coeff(p() - 1), y.v);
  return r;
}

GmaElem GmaStructure::neg(const GmaElem& x) const { return scale(Coeff(p() - 1), x); }

GmaElem GmaStructure::scale(Coeff c, const GmaElem& x) const {
  check_length(x);
  GmaElem r = x;
  ring_->field().scale(r.v, c % p());
  return r;
}

GmaElem GmaStructure::scale(const RingElem& r, const GmaElem& x) const {
  return mul(scalar(r), x);
}

void GmaStructure::mul_into(std::span<const Coeff> x, std::span<const Coeff> y, std::span<Coeff> out) const {
  const std::size_t total = dim();
  thread_local std::vector<std::uint64_t> acc;
  acc.assign(total, 0);
  for (std::size_t i = 0; i < total; ++i) {
    const std::uint64_t xi = x[i];
    if (!xi) continue;
    for (std::uint32_t t = term_start_[i]; t < term_start_[i + 1]; ++t) {
      const Term& term = terms_[t];
      const std::uint64_t yj = y[term.right];
      if (yj) acc[term.out] += xi * yj * term.c;
    }
  }
  const unsigned pp = p();
  for (std::size_t k = 0; k < total; ++k) out[k] = Coeff(acc[k] % pp);
}

GmaElem GmaStructure::mul(const GmaElem& x, const GmaElem& y) const {
  check_length(x);
  check_length(y);
  GmaElem r = zero();
  mul_into(x.v, y.v, r.v);
  return r;
}

GmaElem GmaStructure::bracket(const GmaElem& x, const GmaElem& y) const { return sub(mul(x, y), mul(y, x)); }

GmaElem GmaStructure::inverse(const GmaElem& x) const {
  RingElem dt = det(x);
  if (!ring_->is_unit(dt)) raise(Errc::NotAUnit, "determinant is not a unit: " + to_string(x));
  const PrimeField& F = ring_->field();
  Vec nb = b(x), nc = c(x);
  for (auto& v : nb) v = F.neg(v);
  for (auto& v : nc) v = F.neg(v);
  return scale(ring_->inverse(dt), make(d(x), nb, nc, a(x)));
}

GmaElem GmaStructure::pow(const GmaElem& x, std::uint64_t e) const {
  GmaElem result = identity(), base = x;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

RingElem GmaStructure::trace(const GmaElem& x) const { return ring_->add(a(x), d(x)); }

RingElem GmaStructure::det(const GmaElem& x) const {
  return ring_->sub(ring_->mul(a(x), d(x)), pairing(b(x), c(x)));
}

RingElem GmaStructure::pairing(std::span<const Coeff> b, std::span<const Coeff> c) const {
  if (b.size() != nb_ || c.size() != nc_) raise(Errc::StructureMismatch, "pairing arguments have wrong length");
  RingElem out = ring_->zero();
  const PrimeField& F = ring_->field();
  for (std::size_t j = 0; j < nb_; ++j) {
    if (!b[j]) continue;
    for (std::size_t k = 0; k < nc_; ++k)
      if (c[k]) F.axpy(out.coords, F.mul(b[j], c[k]), pairing_[j * nc_ + k].coords);
  }
  return out;
}

Vec GmaStructure::act_b(const RingElem& r, std::span<const Coeff> b) const {
  return action_of(b_, *ring_, r).apply(b);
}

Vec GmaStructure::act_c(const RingElem& r, std::span<const Coeff> c) const {
  return action_of(c_, *ring_, r).apply(c);
}

bool GmaStructure::in_SR1(const GmaElem& x) const {
  return det(x) == ring_->one() && in_radical(sub(x, identity()));
}

bool GmaStructure::is_faithful() const {
  // left kernel of m: B -> Hom(C, A); right kernel: C -> Hom(B, A)
  Matrix left(p(), std::max<std::size_t>(1, nc_ * n_), nb_);
  Matrix right(p(), std::max<std::size_t>(1, nb_ * n_), nc_);
  for (std::size_t j = 0; j < nb_; ++j)
    for (std::size_t k = 0; k < nc_; ++k)
      for (std::size_t l = 0; l < n_; ++l) {
        left(k * n_ + l, j) = pairing_[j * nc_ + k].coords[l];
        right(j * n_ + l, k) = pairing_[j * nc_ + k].coords[l];
      }
  return (nb_ == 0 || left.rank() == nb_) && (nc_ == 0 || right.rank() == nc_);
}

Subspace GmaStructure::pairing_ideal() const {
  return ideal_generated(*ring_, span_of(*ring_, pairing_));
}

GmaElem GmaStructure::random(Rng& rng) const {
  GmaElem x = zero();
  for (auto& c : x.v) c = ring_->field().random(rng);
  return x;
}

std::string GmaStructure::to_string(const GmaElem& x) const {
  if (x.v.size() != dim()) return "<malformed>";
  auto vec = [](const Vec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << unsigned(v[i]);
    os << ')';
    return os.str();
  };
  std::ostringstream os;
  os << "[[" << ring_->to_string(a(x)) << ", "
     << (matrix_algebra_ ? ring_->to_string(RingElem{b(x)}) : vec(b(x))) << "], ["
     << (matrix_algebra_ ? ring_->to_string(RingElem{c(x)}) : vec(c(x))) << ", " << ring_->to_string(d(x))
     << "]]";
  return os.str();
}

bool is_cayley_hamilton(const GmaStructure& r, Rng& rng, std::size_t samples) {
  auto holds = [&](const GmaElem& x) {
    GmaElem lhs = r.sub(r.mul(x, x), r.scale(r.trace(x), x));
    return r.add(lhs, r.scalar(r.det(x))) == r.zero();
  };
  for (std::size_t i = 0; i < r.dim(); ++i) {
    GmaElem e = r.zero();
    e.v[i] = 1;
    if (!holds(e)) return false;
  }
  for (std::size_t s = 0; s < samples; ++s)
    if (!holds(r.random(rng))) return false;
  return true;
}

MatrixForm::MatrixForm(GmaPtr source) : source_(std::move(source)) {
  const Ring& A = source_->ring();
  if (!A.is_local()) raise(Errc::OutOfDomain, "matrix form needs a local ring");
  for (std::size_t j = 0; j < source_->b_dim() && b0_.empty(); ++j)
    for (std::size_t k = 0; k < source_->c_dim(); ++k) {
      Vec bj(source_->b_dim(), 0), ck(source_->c_dim(), 0);
      bj[j] = 1;
      ck[k] = 1;
      RingElem m = source_->pairing(bj, ck);
      if (A.is_unit(m)) {
        b0_ = bj;
        c0_ = ck;
        u_inv_ = A.inverse(m);
        break;
      }
    }
  if (b0_.empty()) raise(Errc::OutOfDomain, "m(B, C) is a proper ideal");
  target_ = GmaStructure::matrix_algebra(source_->ring_ptr());
}

GmaElem MatrixForm::apply(const GmaElem& x) const {
  const Ring& A = source_->ring();
  RingElem beta = A.mul(u_inv_, source_->pairing(source_->b(x), c0_));
  RingElem gamma = source_->pairing(b0_, source_->c(x));
  return target_->make(source_->a(x), beta.coords, gamma.coords, source_->d(x));
}

GmaElem random_traceless_radical(const GmaStructure& r, Rng& rng) {
  GmaElem x{r.radical().random_element(rng)};
  return r.make(r.a(x), r.b(x), r.c(x), r.ring().neg(r.a(x)));
}

}  // namespace pinkforge
