#include "pinkforge/localring.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "pinkforge/errors.hpp"

namespace pinkforge {

namespace {

struct ConwayEntry {
  unsigned p;
  unsigned f;
  std::array<Coeff, 6> coeffs;  // low to high, monic
};

constexpr ConwayEntry kConway[] = {
    {2, 2, {1, 1, 1}},       {2, 3, {1, 1, 0, 1}},    {2, 4, {1, 1, 0, 0, 1}},
    {2, 5, {1, 0, 1, 0, 0, 1}}, {3, 2, {2, 2, 1}},    {3, 3, {1, 2, 0, 1}},
    {3, 4, {2, 0, 0, 2, 1}}, {5, 2, {2, 4, 1}},       {5, 3, {3, 3, 0, 1}},
    {7, 2, {3, 6, 1}},       {7, 3, {4, 0, 6, 1}},    {11, 2, {2, 7, 1}},
    {13, 2, {2, 12, 1}},
};

std::pair<unsigned, unsigned> split_prime_power(std::uint64_t q) {
  if (q < 2) raise(Errc::InvalidArgument, "residue field size must be a prime power");
  unsigned p = 2;
  while (q % p) ++p;
  unsigned f = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++f;
  }
  if (r != 1) raise(Errc::InvalidArgument, "residue field size must be a prime power");
  if (p >= 256) raise(Errc::InvalidArgument, "characteristic must be below 256");
  return {p, f};
}

// Multiplication in F_p[x]/(poly), coefficient vectors of length f.
Vec polymul_mod(const PrimeField& F, const Vec& a, const Vec& b, const Vec& poly) {
  std::size_t f = poly.size() - 1;
  Vec prod(2 * f, 0);
  for (std::size_t i = 0; i < f; ++i)
    for (std::size_t j = 0; j < f; ++j) prod[i + j] = F.add(prod[i + j], F.mul(a[i], b[j]));
  for (std::size_t d = 2 * f - 1; d-- > f;) {
    Coeff c = prod[d];
    if (!c) continue;
    for (std::size_t k = 0; k <= f; ++k) prod[d - f + k] = F.sub(prod[d - f + k], F.mul(c, poly[k]));
  }
  prod.resize(f);
  return prod;
}

Vec polypow_mod(const PrimeField& F, Vec base, std::uint64_t e, const Vec& poly) {
  Vec result(poly.size() - 1, 0);
  result[0] = 1;
  while (e) {
    if (e & 1) result = polymul_mod(F, result, base, poly);
    base = polymul_mod(F, base, base, poly);
    e >>= 1;
  }
  return result;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::vector<unsigned>> graded_monomials(unsigned variables, unsigned truncation) {
  std::vector<std::vector<unsigned>> out;
  if (variables == 0) {
    out.emplace_back();
    return out;
  }
  for (unsigned d = 0; d < truncation; ++d) {
    std::vector<unsigned> e(variables, 0);
    // exponent vectors of total degree d in lexicographically decreasing order
    std::vector<std::vector<unsigned>> level;
    auto rec = [&](auto& self, unsigned pos, unsigned remaining) -> void {
      if (pos + 1 == variables) {
        e[pos] = remaining;
        level.push_back(e);
        return;
      }
      for (unsigned k = remaining + 1; k-- > 0;) {
        e[pos] = k;
        self(self, pos + 1, remaining - k);
      }
    };
    rec(rec, 0, d);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

unsigned total_degree(const std::vector<unsigned>& e) {
  unsigned s = 0;
  for (unsigned x : e) s += x;
  return s;
}

}  // namespace

bool is_primitive_polynomial(unsigned p, const Vec& monic) {
  PrimeField F(p);
  if (monic.size() < 2 || monic.back() != 1) return false;
  std::size_t f = monic.size() - 1;
  std::uint64_t q = 1;
  for (std::size_t i = 0; i < f; ++i) q *= p;
  Vec x(f, 0);
  if (f == 1)
    x[0] = F.neg(monic[0]);
  else
    x[1] = 1;
  Vec one(f, 0);
  one[0] = 1;
  if (polypow_mod(F, x, q - 1, monic) != one) return false;
  for (auto r : prime_divisors(q - 1))
    if (polypow_mod(F, x, (q - 1) / r, monic) == one) return false;
  return true;
}

Vec residue_field_polynomial(unsigned p, unsigned f) {
  if (f == 0) raise(Errc::InvalidArgument, "residue degree must be positive");
  if (f == 1) {
    // x - g for the least primitive root g, so that alpha is a generator
    for (unsigned g = 1; g < p; ++g)
      if (is_primitive_polynomial(p, Vec{Coeff((p - g) % p), 1})) return {Coeff((p - g) % p), 1};
    return {Coeff(p - 1), 1};
  }
  for (const auto& e : kConway)
    if (e.p == p && e.f == f) return Vec(e.coeffs.begin(), e.coeffs.begin() + f + 1);
  Vec cand(f + 1, 0);
  cand[f] = 1;
  while (true) {
    if (is_primitive_polynomial(p, cand)) return cand;
    std::size_t i = 0;
    while (i < f && ++cand[i] == p) cand[i++] = 0;
    if (i == f) raise(Errc::InvalidArgument, "no primitive polynomial found");
  }
}

std::uint64_t LocalFactor::residue_size(unsigned p) const {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < residue_degree; ++i) q *= p;
  return q;
}

unsigned Ring::nilpotency_index() const noexcept {
  unsigned n = 1;
  for (const auto& f : factors_) n = std::max(n, f.nilpotency());
  return n;
}

Ring make_truncated_multivariate_ring(std::uint64_t q, unsigned variables, unsigned truncation) {
  auto [p, f] = split_prime_power(q);
  if (truncation == 0) raise(Errc::InvalidArgument, "truncation degree must be positive");
  if (q > 65536) raise(Errc::TooLarge, "residue field too large");
  Ring ring(p);
  LocalFactor fac;
  fac.residue_degree = f;
  fac.residue_poly = residue_field_polynomial(p, f);
  fac.variables = variables;
  fac.truncation = truncation;
  fac.monomials = graded_monomials(variables, truncation);
  fac.dim = fac.monomials.size() * f;
  if (fac.dim > 4096) raise(Errc::TooLarge, "ring dimension too large");

  const PrimeField& F = ring.field_;
  // alpha^e in the alpha-basis for e < 2f - 1
  std::vector<Vec> alpha_pow(2 * f, Vec(f, 0));
  Vec xpoly(f, 0);
  if (f == 1)
    xpoly[0] = F.neg(fac.residue_poly[0]);
  else
    xpoly[1] = 1;
  alpha_pow[0][0] = 1;
  for (std::size_t e = 1; e < alpha_pow.size(); ++e)
    alpha_pow[e] = polymul_mod(F, alpha_pow[e - 1], xpoly, fac.residue_poly);

  std::map<std::vector<unsigned>, std::size_t> index;
  for (std::size_t m = 0; m < fac.monomials.size(); ++m) index[fac.monomials[m]] = m;

  ring.dim_ = fac.dim;
  ring.term_start_.assign(fac.dim + 1, 0);
  std::vector<std::vector<Ring::Term>> by_left(fac.dim);
  for (std::size_t m1 = 0; m1 < fac.monomials.size(); ++m1)
    for (std::size_t m2 = 0; m2 < fac.monomials.size(); ++m2) {
      std::vector<unsigned> e = fac.monomials[m1];
      for (unsigned v = 0; v < variables; ++v) e[v] += fac.monomials[m2][v];
      if (variables > 0 && total_degree(e) >= truncation) continue;
      std::size_t m3 = index.at(e);
      for (unsigned i = 0; i < f; ++i)
        for (unsigned j = 0; j < f; ++j)
          for (unsigned l = 0; l < f; ++l) {
            Coeff c = alpha_pow[i + j][l];
            if (c)
              by_left[m1 * f + i].push_back(
                  {std::uint32_t(m2 * f + j), std::uint32_t(m3 * f + l), c});
          }
    }
  for (std::size_t i = 0; i < fac.dim; ++i) {
    ring.term_start_[i + 1] = ring.term_start_[i] + std::uint32_t(by_left[i].size());
    ring.terms_.insert(ring.terms_.end(), by_left[i].begin(), by_left[i].end());
  }
  ring.factors_.push_back(std::move(fac));
  ring.finalize();
  return ring;
}

Ring make_truncated_poly_ring(std::uint64_t q, unsigned k) { return make_truncated_multivariate_ring(q, 1, k); }

Ring make_field(std::uint64_t q) { return make_truncated_multivariate_ring(q, 0, 1); }

Ring make_product_ring(const std::vector<Ring>& factors) {
  if (factors.empty()) raise(Errc::InvalidArgument, "product of no rings");
  Ring ring(factors.front().p());
  std::size_t offset = 0;
  ring.term_start_.assign(1, 0);
  for (const auto& r : factors) {
    if (r.p() != ring.p()) raise(Errc::StructureMismatch, "factors have different characteristics");
    for (std::size_t i = 0; i < r.dim(); ++i) {
      for (std::uint32_t t = r.term_start_[i]; t < r.term_start_[i + 1]; ++t) {
        auto term = r.terms_[t];
        term.right += std::uint32_t(offset);
        term.out += std::uint32_t(offset);
        ring.terms_.push_back(term);
      }
      ring.term_start_.push_back(std::uint32_t(ring.terms_.size()));
    }
    for (auto fac : r.factors_) {
      fac.offset += offset;
      ring.factors_.push_back(std::move(fac));
    }
    offset += r.dim();
  }
  ring.dim_ = offset;
  ring.finalize();
  return ring;
}

void Ring::finalize() {
  one_ = zero();
  radical_ = Subspace(p(), dim_);
  constants_ = Subspace(p(), dim_);
  factor_of_.assign(dim_, 0);
  for (std::size_t fi = 0; fi < factors_.size(); ++fi) {
    const auto& fac = factors_[fi];
    one_.coords[fac.offset] = 1;
    for (std::size_t i = 0; i < fac.dim; ++i) {
      factor_of_[fac.offset + i] = fi;
      Vec e(dim_, 0);
      e[fac.offset + i] = 1;
      if (i < fac.residue_degree)
        constants_.insert(e);
      else
        radical_.insert(e);
    }
  }
}

std::size_t Ring::monomial_degree(std::size_t index) const {
  const auto& fac = factors_.at(factor_of_.at(index));
  return total_degree(fac.monomials[(index - fac.offset) / fac.residue_degree]);
}

Subspace Ring::radical_power(unsigned j) const {
  Subspace s(p(), dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    if (monomial_degree(i) >= j) s.insert(basis(i).coords);
  return s;
}

RingElem Ring::from_int(long long v) const { return scale(field_.from_int(v), one_); }

RingElem Ring::basis(std::size_t i) const {
  if (i >= dim_) raise(Errc::OutOfDomain, "basis index out of range");
  RingElem e = zero();
  e.coords[i] = 1;
  return e;
}

RingElem Ring::monomial(std::size_t factor, std::span<const unsigned> exponents, Coeff c) const {
  const auto& fac = factors_.at(factor);
  if (exponents.size() != fac.variables) raise(Errc::InvalidArgument, "wrong number of exponents");
  RingElem e = zero();
  std::vector<unsigned> key(exponents.begin(), exponents.end());
  if (fac.variables > 0 && total_degree(key) >= fac.truncation) return e;
  auto it = std::find(fac.monomials.begin(), fac.monomials.end(), key);
  e.coords[fac.offset + std::size_t(it - fac.monomials.begin()) * fac.residue_degree] = field_.from_int(c);
  return e;
}

RingElem Ring::variable(std::size_t factor, unsigned which) const {
  const auto& fac = factors_.at(factor);
  if (which >= fac.variables) raise(Errc::OutOfDomain, "no such variable");
  std::vector<unsigned> e(fac.variables, 0);
  e[which] = 1;
  return monomial(factor, e);
}

RingElem Ring::constant_basis(std::size_t factor, unsigned i) const {
  const auto& fac = factors_.at(factor);
  if (i >= fac.residue_degree) raise(Errc::OutOfDomain, "constant index out of range");
  return basis(fac.offset + i);
}

RingElem Ring::idempotent(std::size_t factor) const { return basis(factors_.at(factor).offset); }

RingElem Ring::add(const RingElem& a, const RingElem& b) const {
  RingElem r = a;
  for (std::size_t i = 0; i < dim_; ++i) r.coords[i] = field_.add(a.coords[i], b.coords[i]);
  return r;
}

RingElem Ring::sub(const RingElem& a, const RingElem& b) const {
  RingElem r = a;
  for (std::size_t i = 0; i < dim_; ++i) r.coords[i] = field_.sub(a.coords[i], b.coords[i]);
  return r;
}

RingElem Ring::neg(const RingElem& a) const {
  RingElem r = a;
  for (auto& c : r.coords) c = field_.neg(c);
  return r;
}

RingElem Ring::scale(Coeff c, const RingElem& a) const {
  RingElem r = a;
  field_.scale(r.coords, c);
  return r;
}

void Ring::mul_acc(std::span<const Coeff> a, std::span<const Coeff> b, std::span<Coeff> out) const {
  const unsigned p = field_.p();
  for (std::size_t i = 0; i < dim_; ++i) {
    unsigned ai = a[i];
    if (!ai) continue;
    for (std::uint32_t t = term_start_[i]; t < term_start_[i + 1]; ++t) {
      const Term& term = terms_[t];
      unsigned bj = b[term.right];
      if (bj) out[term.out] = Coeff((out[term.out] + ai * bj % p * term.c) % p);
    }
  }
}

RingElem Ring::mul(const RingElem& a, const RingElem& b) const {
  if (a.coords.size() != dim_ || b.coords.size() != dim_)
    raise(Errc::StructureMismatch, "ring element length differs from ring dimension");
  RingElem r = zero();
  mul_acc(a.coords, b.coords, r.coords);
  return r;
}

RingElem Ring::pow(const RingElem& a, std::uint64_t e) const {
  RingElem result = one_, base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

bool Ring::is_unit(const RingElem& a) const {
  for (const auto& fac : factors_) {
    bool nonzero = false;
    for (unsigned i = 0; i < fac.residue_degree; ++i) nonzero |= a.coords[fac.offset + i] != 0;
    if (!nonzero) return false;
  }
  return true;
}

RingElem Ring::inverse(const RingElem& a) const {
  if (!is_unit(a)) raise(Errc::NotAUnit, "element is not a unit: " + to_string(a));
  RingElem y = zero();
  for (const auto& fac : factors_) {
    RingElem c = zero();
    for (unsigned i = 0; i < fac.residue_degree; ++i) c.coords[fac.offset + i] = a.coords[fac.offset + i];
    // c lies in a copy of F_q, where c^(q-2) inverts it; the other factors contribute 0
    RingElem ci = pow(c, fac.residue_size(p()) - 2);
    if (fac.residue_size(p()) == 2) ci = idempotent(std::size_t(&fac - factors_.data()));
    y = add(y, mul(ci, idempotent(std::size_t(&fac - factors_.data()))));
  }
  RingElem two = from_int(2);
  for (unsigned reach = 1; reach < nilpotency_index(); reach *= 2) y = mul(y, sub(two, mul(a, y)));
  return y;
}

RingElem Ring::residue(const RingElem& a, std::size_t factor) const {
  const auto& fac = factors_.at(factor);
  return {Vec(a.coords.begin() + fac.offset, a.coords.begin() + fac.offset + fac.residue_degree)};
}

Ring Ring::residue_field(std::size_t factor) const {
  return make_field(factors_.at(factor).residue_size(p()));
}

RingElem Ring::lift_constant(const RingElem& residue_elem, std::size_t factor) const {
  const auto& fac = factors_.at(factor);
  if (residue_elem.coords.size() != fac.residue_degree)
    raise(Errc::StructureMismatch, "residue element has the wrong length");
  RingElem r = zero();
  std::copy(residue_elem.coords.begin(), residue_elem.coords.end(), r.coords.begin() + fac.offset);
  return r;
}

RingElem Ring::project(const RingElem& a, std::size_t factor) const {
  const auto& fac = factors_.at(factor);
  return {Vec(a.coords.begin() + fac.offset, a.coords.begin() + fac.offset + fac.dim)};
}

Ring Ring::factor_ring(std::size_t factor) const {
  const auto& fac = factors_.at(factor);
  return make_truncated_multivariate_ring(fac.residue_size(p()), fac.variables, fac.truncation);
}

RingElem Ring::random(Rng& rng) const {
  RingElem r = zero();
  for (auto& c : r.coords) c = field_.random(rng);
  return r;
}

std::string Ring::to_string(const RingElem& a) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < dim_ && i < a.coords.size(); ++i) {
    if (!a.coords[i]) continue;
    const auto& fac = factors_[factor_of_[i]];
    std::size_t local = i - fac.offset;
    unsigned ai = unsigned(local % fac.residue_degree);
    const auto& mono = fac.monomials[local / fac.residue_degree];
    if (!first) os << " + ";
    first = false;
    os << unsigned(a.coords[i]);
    if (factors_.size() > 1) os << "*e" << factor_of_[i];
    if (ai) os << "*a^" << ai;
    for (std::size_t v = 0; v < mono.size(); ++v) {
      if (!mono[v]) continue;
      os << "*X";
      if (fac.variables > 1) os << v + 1;
      if (mono[v] > 1) os << '^' << mono[v];
    }
  }
  return first ? "0" : os.str();
}

std::string Ring::descriptor_json() const {
  nlohmann::json j;
  j["p"] = p();
  j["dim"] = dim_;
  nlohmann::json facs = nlohmann::json::array();
  for (const auto& fac : factors_)
    facs.push_back({{"q", fac.residue_size(p())},
                    {"q_poly", fac.residue_poly},
                    {"variables", fac.variables},
                    {"k", fac.truncation},
                    {"dim", fac.dim}});
  j["factors"] = facs;
  if (is_local()) {
    j["q_poly"] = factors_[0].residue_poly;
    j["k"] = factors_[0].truncation;
  } else {
    j["q_poly"] = nullptr;
    j["k"] = nullptr;
  }
  return j.dump();
}

bool Ring::same_as(const Ring& other) const noexcept {
  if (this == &other) return true;
  if (p() != other.p() || dim_ != other.dim_ || factors_.size() != other.factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& a = factors_[i];
    const auto& b = other.factors_[i];
    if (a.residue_poly != b.residue_poly || a.variables != b.variables || a.truncation != b.truncation)
      return false;
  }
  return true;
}

RingElem hensel_sqrt(const Ring& ring, const RingElem& x) {
  if (ring.p() == 2) raise(Errc::CharacteristicTwo, "square roots by Newton iteration need p odd");
  if (!ring.in_radical(ring.sub(x, ring.one())))
    raise(Errc::OutOfDomain, "argument is not congruent to 1 modulo the radical: " + ring.to_string(x));
  RingElem half = ring.scale(ring.field().inv(2), ring.one());
  RingElem y = ring.one();
  for (unsigned reach = 1; reach < ring.nilpotency_index(); reach *= 2)
    y = ring.mul(half, ring.add(y, ring.mul(x, ring.inverse(y))));
  return y;
}

bool is_square_unit(const Ring& ring, const RingElem& x) {
  if (!ring.is_unit(x)) return false;
  if (ring.p() == 2) return true;
  for (std::size_t i = 0; i < ring.factors().size(); ++i) {
    Ring F = ring.residue_field(i);
    RingElem r = ring.residue(x, i);
    if (F.pow(r, (ring.factors()[i].residue_size(ring.p()) - 1) / 2) != F.one()) return false;
  }
  return true;
}

RingElem teichmuller(const Ring& ring, const RingElem& residue_elem, std::size_t factor) {
  return ring.lift_constant(residue_elem, factor);
}

Matrix truncation_matrix(const Ring& from, const Ring& to) {
  if (!from.is_local() || !to.is_local()) raise(Errc::OutOfDomain, "truncation needs local rings");
  const auto& a = from.factors()[0];
  const auto& b = to.factors()[0];
  if (from.p() != to.p() || a.residue_poly != b.residue_poly || a.variables != b.variables ||
      b.truncation > a.truncation)
    raise(Errc::StructureMismatch, "target is not a truncation of the source");
  Matrix m(from.p(), to.dim(), from.dim());
  for (std::size_t i = 0; i < to.dim(); ++i) m(i, i) = 1;
  return m;
}

RingElem apply_truncation(const Matrix& map, const RingElem& a) { return {map.apply(a.coords)}; }

Subspace span_of(const Ring& ring, const std::vector<RingElem>& elems) {
  Subspace s(ring.p(), ring.dim());
  for (const auto& e : elems) s.insert(e.coords);
  return s;
}

Subspace product_space(const Ring& ring, const Subspace& u, const Subspace& v) {
  Subspace s(ring.p(), ring.dim());
  for (const auto& a : u.basis())
    for (const auto& b : v.basis()) {
      Vec out(ring.dim(), 0);
      ring.mul_acc(a, b, out);
      s.insert(out);
    }
  return s;
}

Subspace ideal_generated(const Ring& ring, const Subspace& s) {
  return product_space(ring, Subspace::full(ring.p(), ring.dim()), s);
}

bool is_ideal(const Ring& ring, const Subspace& s) { return s.includes(ideal_generated(ring, s)); }

Subspace annihilator_of(const Ring& ring, const Subspace& s) {
  const std::size_t n = ring.dim();
  Matrix m(ring.p(), std::max<std::size_t>(1, s.dim() * n), n);
  for (std::size_t k = 0; k < s.dim(); ++k)
    for (std::size_t j = 0; j < n; ++j) {
      Vec out(n, 0);
      ring.mul_acc(ring.basis(j).coords, s.basis()[k], out);
      for (std::size_t i = 0; i < n; ++i) m(k * n + i, j) = out[i];
    }
  return Subspace::span(ring.p(), n, m.kernel());
}

Subspace multiplicative_closure(const Ring& ring, const Subspace& s) {
  Subspace cur = s;
  while (true) {
    Subspace next = cur.sum(product_space(ring, cur, cur));
    if (next.dim() == cur.dim()) return cur;
    cur = std::move(next);
  }
}

}  // namespace pinkforge
