#include "pinkforge/modforms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "pinkforge/errors.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define PINKFORGE_HAVE_PCLMUL 1
#endif

namespace pinkforge {

namespace {

std::size_t word_count(std::size_t deg) { return (deg + 64) / 64; }

void check_prime(unsigned p) {
  if (p < 2 || p > 251 || !is_prime(p)) raise(Errc::InvalidArgument, "coefficient field needs a prime p < 256");
}

void same_field(const FpSeries& a, const FpSeries& b) {
  if (a.p() != b.p()) raise(Errc::StructureMismatch, "series over different primes");
}

}  // namespace

FpSeries::FpSeries(unsigned p, std::size_t deg) : p_(p), deg_(deg) {
  check_prime(p);
  if (p == 2)
    bits_.assign(word_count(deg), 0);
  else
    digits_.assign(deg + 1, 0);
}

FpSeries FpSeries::from_coeffs(unsigned p, const std::vector<unsigned>& coeffs) {
  if (coeffs.empty()) raise(Errc::InvalidArgument, "a series needs at least one coefficient");
  FpSeries f(p, coeffs.size() - 1);
  for (std::size_t n = 0; n < coeffs.size(); ++n) f.set(n, coeffs[n] % p);
  return f;
}

FpSeries FpSeries::one(unsigned p, std::size_t deg) { return monomial(p, deg, 0, 1); }

FpSeries FpSeries::monomial(unsigned p, std::size_t deg, std::size_t n, unsigned c) {
  FpSeries f(p, deg);
  if (n <= deg) f.set(n, c % p);
  return f;
}

unsigned FpSeries::coeff(std::size_t n) const {
  if (n > deg_) raise(Errc::DegreeExhausted, "coefficient beyond the known degree");
  if (p_ == 2) return unsigned(bits_[n / 64] >> (n % 64)) & 1u;
  return digits_[n];
}

void FpSeries::set(std::size_t n, unsigned value) {
  if (n > deg_) raise(Errc::DegreeExhausted, "coefficient beyond the known degree");
  value %= p_;
  if (p_ == 2) {
    std::uint64_t mask = std::uint64_t(1) << (n % 64);
    bits_[n / 64] = value ? bits_[n / 64] | mask : bits_[n / 64] & ~mask;
  } else {
    digits_[n] = Coeff(value);
  }
}

bool FpSeries::is_zero() const noexcept {
  if (p_ == 2) return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
  return std::all_of(digits_.begin(), digits_.end(), [](Coeff c) { return c == 0; });
}

std::size_t FpSeries::support_size() const noexcept {
  std::size_t n = 0;
  if (p_ == 2)
    for (auto w : bits_) n += std::size_t(std::popcount(w));
  else
    for (auto c : digits_) n += c != 0;
  return n;
}

std::vector<std::size_t> FpSeries::support() const {
  std::vector<std::size_t> out;
  if (p_ == 2) {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      for (std::uint64_t w = bits_[i]; w; w &= w - 1) out.push_back(i * 64 + std::size_t(std::countr_zero(w)));
  } else {
    for (std::size_t n = 0; n <= deg_; ++n)
      if (digits_[n]) out.push_back(n);
  }
  return out;
}

void FpSeries::clear_tail() noexcept {
  if (p_ != 2) return;
  std::size_t used = (deg_ + 1) % 64;
  if (used) bits_.back() &= (std::uint64_t(1) << used) - 1;
}

FpSeries FpSeries::truncate(std::size_t deg) const {
  if (deg > deg_) raise(Errc::DegreeExhausted, "cannot extend a truncated series");
  FpSeries out(p_, deg);
  if (p_ == 2) {
    std::copy_n(bits_.begin(), out.bits_.size(), out.bits_.begin());
    out.clear_tail();
  } else {
    std::copy_n(digits_.begin(), deg + 1, out.digits_.begin());
  }
  return out;
}

bool operator==(const FpSeries& a, const FpSeries& b) {
  return a.p_ == b.p_ && a.deg_ == b.deg_ && a.bits_ == b.bits_ && a.digits_ == b.digits_;
}

FpSeries series_add(const FpSeries& a, const FpSeries& b) {
  same_field(a, b);
  const std::size_t d = std::min(a.deg(), b.deg());
  FpSeries out = a.truncate(d);
  if (a.p() == 2) {
    for (std::size_t i = 0; i < out.words().size(); ++i) out.words()[i] ^= b.words()[i];
    if (!out.words().empty() && (d + 1) % 64) out.words().back() &= (std::uint64_t(1) << ((d + 1) % 64)) - 1;
  } else {
    PrimeField F(a.p());
    for (std::size_t n = 0; n <= d; ++n) out.digits()[n] = F.add(out.digits()[n], b.digits()[n]);
  }
  return out;
}

FpSeries series_scale(unsigned c, const FpSeries& a) {
  FpSeries out = a;
  c %= a.p();
  if (a.p() == 2) {
    if (c == 0) std::fill(out.words().begin(), out.words().end(), 0);
  } else {
    PrimeField F(a.p());
    for (auto& x : out.digits()) x = F.mul(x, Coeff(c));
  }
  return out;
}

FpSeries series_sub(const FpSeries& a, const FpSeries& b) { return series_add(a, series_scale(b.p() - 1, b)); }

namespace {

using Word = std::uint64_t;

void clmul_soft(Word a, Word b, Word& lo, Word& hi) {
  lo = hi = 0;
  for (; b; b &= b - 1) {
    const int s = std::countr_zero(b);
    lo ^= a << s;
    if (s) hi ^= a >> (64 - s);
  }
}

void base_soft(const Word* a, const Word* b, std::size_t n, Word* r) {
  std::fill(r, r + 2 * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      Word lo, hi;
      clmul_soft(a[i], b[j], lo, hi);
      r[i + j] ^= lo;
      r[i + j + 1] ^= hi;
    }
  }
}

#ifdef PINKFORGE_HAVE_PCLMUL
__attribute__((target("pclmul,sse2"))) void base_hw(const Word* a, const Word* b, std::size_t n, Word* r) {
  std::fill(r, r + 2 * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!a[i]) continue;
    __m128i x = _mm_set_epi64x(0, (long long)a[i]);
    for (std::size_t j = 0; j < n; ++j) {
      __m128i z = _mm_clmulepi64_si128(x, _mm_set_epi64x(0, (long long)b[j]), 0);
      r[i + j] ^= Word(_mm_cvtsi128_si64(z));
      r[i + j + 1] ^= Word(_mm_cvtsi128_si64(_mm_unpackhi_epi64(z, z)));
    }
  }
}

bool have_pclmul() {
  static const bool ok = __builtin_cpu_supports("pclmul");
  return ok;
}
#endif

void base_mul(const Word* a, const Word* b, std::size_t n, Word* r) {
#ifdef PINKFORGE_HAVE_PCLMUL
  if (have_pclmul()) return base_hw(a, b, n, r);
#endif
  base_soft(a, b, n, r);
}

// r[0, 2n) = a * b over GF(2)[x], words little-endian.
void karatsuba(const Word* a, const Word* b, std::size_t n, Word* r) {
  if (n <= 24) return base_mul(a, b, n, r);
  const std::size_t h = n / 2, hh = n - h;
  std::vector<Word> sa(hh), sb(hh), mid(2 * hh);
  for (std::size_t i = 0; i < hh; ++i) {
    sa[i] = a[h + i] ^ (i < h ? a[i] : 0);
    sb[i] = b[h + i] ^ (i < h ? b[i] : 0);
  }
  karatsuba(a, b, h, r);
  karatsuba(a + h, b + h, hh, r + 2 * h);
  karatsuba(sa.data(), sb.data(), hh, mid.data());
  for (std::size_t i = 0; i < 2 * h; ++i) mid[i] ^= r[i];
  for (std::size_t i = 0; i < 2 * hh; ++i) mid[i] ^= r[2 * h + i];
  for (std::size_t i = 0; i < 2 * hh; ++i) r[h + i] ^= mid[i];
}

// out ^= src shifted up by s bits, limited to out's length.
void xor_shifted(std::vector<Word>& out, const std::vector<Word>& src, std::size_t s) {
  const std::size_t ow = s / 64, bit = s % 64;
  const std::size_t n = out.size();
  for (std::size_t j = 0; j + ow < n && j < src.size(); ++j) {
    out[j + ow] ^= src[j] << bit;
    if (bit && j + ow + 1 < n) out[j + ow + 1] ^= src[j] >> (64 - bit);
  }
}

FpSeries mul_gf2(const FpSeries& a, const FpSeries& b, std::size_t d) {
  FpSeries x = a.truncate(d), y = b.truncate(d);
  FpSeries out(2, d);
  const std::size_t w = out.words().size();
  std::size_t px = x.support_size(), py = y.support_size();
  if (px > py) {
    std::swap(x, y);
    std::swap(px, py);
  }
  const double sparse_cost = double(px) * double(w);
  const double dense_cost = 4.0 * std::pow(double(w), 1.585) + 1e4;
  if (sparse_cost <= dense_cost) {
    for (auto s : x.support()) xor_shifted(out.words(), y.words(), s);
  } else {
    std::vector<Word> r(2 * w);
    karatsuba(x.words().data(), y.words().data(), w, r.data());
    std::copy_n(r.begin(), w, out.words().begin());
  }
  return out.truncate(d);
}

FpSeries mul_odd(const FpSeries& a, const FpSeries& b, std::size_t d) {
  const unsigned p = a.p();
  const FpSeries* x = &a;
  const FpSeries* y = &b;
  if (x->support_size() > y->support_size()) std::swap(x, y);
  std::vector<std::uint64_t> acc(d + 1, 0);
  const auto& yd = y->digits();
  for (auto i : x->support()) {
    if (i > d) break;
    const std::uint64_t c = x->digits()[i];
    for (std::size_t j = 0; i + j <= d; ++j) acc[i + j] += c * yd[j];
  }
  FpSeries out(p, d);
  for (std::size_t n = 0; n <= d; ++n) out.digits()[n] = Coeff(acc[n] % p);
  return out;
}

}  // namespace

FpSeries series_mul(const FpSeries& a, const FpSeries& b) {
  same_field(a, b);
  const std::size_t d = std::min(a.deg(), b.deg());
  return a.p() == 2 ? mul_gf2(a, b, d) : mul_odd(a, b, d);
}

FpSeries dilate(const FpSeries& f, std::size_t m) {
  if (m == 0) raise(Errc::InvalidArgument, "dilation factor must be positive");
  FpSeries out(f.p(), f.deg());
  for (auto n : f.support()) {
    if (n > f.deg() / m) break;
    out.set(n * m, f.coeff(n));
  }
  return out;
}

FpSeries shift(const FpSeries& f, std::size_t s) {
  FpSeries out(f.p(), f.deg());
  for (auto n : f.support()) {
    if (n + s > f.deg()) break;
    out.set(n + s, f.coeff(n));
  }
  return out;
}

FpSeries series_pow(const FpSeries& f, std::uint64_t n) {
  if (n == 0) return FpSeries::one(f.p(), f.deg());
  std::uint64_t frob = 1;
  while (n % f.p() == 0) {
    n /= f.p();
    frob *= f.p();
  }
  FpSeries r = f;
  for (int bit = 62 - std::countl_zero(n); bit >= 0; --bit) {
    r = f.p() == 2 ? dilate(r, 2) : series_mul(r, r);
    if ((n >> bit) & 1) r = series_mul(r, f);
  }
  if (frob == 1) return r;
  if (frob > f.deg()) return FpSeries::monomial(f.p(), f.deg(), 0, r.coeff(0));
  return dilate(r, std::size_t(frob));
}

FpSeries eta_product(unsigned p, std::size_t deg) {
  FpSeries out(p, deg);
  for (long long k = 0;; ++k) {
    bool any = false;
    for (long long s : {k, -k}) {
      if (k == 0 && s < 0) continue;
      unsigned long long e = (unsigned long long)(s * (3 * s - 1) / 2);
      if (e > deg) continue;
      any = true;
      out.set(e, (k % 2 == 0) ? 1 : p - 1);
    }
    if (!any && k > 0) break;
  }
  return out;
}

FpSeries delta_expansion(unsigned p, std::size_t deg) {
  if (deg == 0) return FpSeries(p, 0);
  FpSeries eta24 = series_pow(eta_product(p, deg - 1), 24);
  FpSeries out(p, deg);
  for (auto n : eta24.support()) out.set(n + 1, eta24.coeff(n));
  return out;
}

FpSeries hecke_U(unsigned l, const FpSeries& f) {
  if (l == 0) raise(Errc::InvalidArgument, "index must be positive");
  FpSeries out(f.p(), f.deg() / l);
  for (std::size_t n = 0; n <= out.deg(); ++n) out.set(n, f.coeff(n * l));
  return out;
}

FpSeries hecke_T(unsigned l, unsigned k_eff, const FpSeries& f) {
  if (!is_prime(l)) raise(Errc::InvalidArgument, "Hecke operators are indexed by primes");
  const unsigned p = f.p();
  unsigned c = 0;
  if (l % p != 0) {
    PrimeField F(p);
    const unsigned e = unsigned((std::uint64_t(k_eff) + p - 2) % (p - 1));
    c = F.pow(Coeff(l % p), e);
  }
  FpSeries out = hecke_U(l, f);
  if (c == 0) return out;
  PrimeField F(p);
  for (std::size_t n = 0; n <= out.deg(); n += l)
    if (unsigned v = f.coeff(n / l)) out.set(n, F.add(Coeff(out.coeff(n)), F.mul(Coeff(c), Coeff(v))));
  return out;
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t x) {
  std::vector<std::uint32_t> out;
  if (x < 2) return out;
  if (x > 0xffffffffULL) raise(Errc::TooLarge, "sieve bound too large");
  std::vector<bool> composite(x + 1, false);
  for (std::uint64_t i = 2; i <= x; ++i) {
    if (composite[i]) continue;
    out.push_back(std::uint32_t(i));
    for (std::uint64_t j = i * i; j <= x; j += i) composite[j] = true;
  }
  return out;
}

DensityReport density_sweep(const FpSeries& f, std::uint64_t x, std::uint64_t np) {
  if (f.deg() < x) raise(Errc::DegreeExhausted, "series degree is below the sweep bound");
  if (np == 0) raise(Errc::InvalidArgument, "level times p must be positive");
  DensityReport out;
  out.x = x;
  std::vector<std::uint64_t> marks{x / 8, x / 4, x / 2, x};
  std::size_t next = 0;
  auto flush = [&](std::uint64_t upto) {
    while (next < marks.size() && marks[next] <= upto) {
      DensityCheckpoint c{marks[next], out.counted, out.total_primes, 0.0};
      c.estimate = c.total ? double(c.counted) / double(c.total) : 0.0;
      out.checkpoints.push_back(c);
      ++next;
    }
  };
  for (auto l : primes_up_to(x)) {
    flush(l - 1);
    if (np % l == 0) continue;
    ++out.total_primes;
    if (f.coeff(l) != 0) ++out.counted;
  }
  flush(x);
  out.estimate = out.total_primes ? double(out.counted) / double(out.total_primes) : 0.0;
  return out;
}

CyclotomicResult cyclotomic_test(const FpSeries& f, std::uint64_t m, std::uint64_t x, std::uint64_t np) {
  if (m == 0) raise(Errc::InvalidArgument, "modulus must be positive");
  if (f.deg() < x) raise(Errc::DegreeExhausted, "series degree is below the sweep bound");
  CyclotomicResult out;
  out.table.assign(m, -1);
  std::vector<std::uint32_t> first(m, 0);
  out.cyclotomic = true;
  for (auto l : primes_up_to(x)) {
    if (m % l == 0 || (np && np % l == 0)) continue;
    const std::size_t cls = l % m;
    const int a = int(f.coeff(l));
    if (out.table[cls] < 0) {
      out.table[cls] = a;
      first[cls] = l;
    } else if (out.table[cls] != a) {
      out.cyclotomic = false;
      out.violation = std::make_pair(first[cls], l);
      return out;
    }
  }
  return out;
}

namespace {

Matrix columns_of(const std::vector<FpSeries>& basis, std::size_t d, unsigned p) {
  Matrix m(p, d + 1, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (auto n : basis[j].support()) {
      if (n > d) break;
      m(n, j) = Coeff(basis[j].coeff(n));
    }
  return m;
}

Vec coeffs_of(const FpSeries& f, std::size_t d) {
  Vec v(d + 1, 0);
  for (auto n : f.support()) {
    if (n > d) break;
    v[n] = Coeff(f.coeff(n));
  }
  return v;
}

}  // namespace

HeckeSpan hecke_span(const FpSeries& f, const std::vector<unsigned>& primes, unsigned k_eff,
                     std::size_t min_degree, std::size_t max_dim) {
  if (primes.empty()) raise(Errc::InvalidArgument, "no Hecke primes given");
  const unsigned p = f.p();
  std::vector<FpSeries> basis;
  if (!f.is_zero()) basis.push_back(f);
  while (true) {
    if (basis.size() > max_dim) raise(Errc::TooLarge, "Hecke span exceeds the dimension bound");
    std::vector<std::vector<FpSeries>> images(basis.size());
    std::size_t d = f.deg();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      d = std::min(d, basis[i].deg());
      for (auto l : primes) {
        images[i].push_back(hecke_T(l, k_eff, basis[i]));
        d = std::min(d, images[i].back().deg());
      }
    }
    if (d < min_degree) raise(Errc::DegreeExhausted, "degree budget exhausted at " + std::to_string(d));
    Matrix cols = columns_of(basis, d, p);
    if (cols.rank() != basis.size()) raise(Errc::DegreeExhausted, "basis is dependent at the comparison degree");
    Subspace span(p, d + 1);
    for (const auto& b : basis) span.insert(coeffs_of(b, d));
    std::optional<FpSeries> fresh;
    for (std::size_t i = 0; i < basis.size() && !fresh; ++i)
      for (const auto& img : images[i])
        if (!span.contains(coeffs_of(img, d))) {
          fresh = img;
          break;
        }
    if (fresh) {
      basis.push_back(*fresh);
      continue;
    }
    HeckeSpan out{basis, primes, {}, d};
    for (std::size_t k = 0; k < primes.size(); ++k) {
      Matrix m(p, basis.size(), basis.size());
      for (std::size_t j = 0; j < basis.size(); ++j) {
        auto x = cols.solve(coeffs_of(images[j][k], d));
        for (std::size_t i = 0; i < basis.size(); ++i) m(i, j) = (*x)[i];
      }
      out.matrices.push_back(std::move(m));
    }
    return out;
  }
}

std::optional<std::size_t> nilpotency_check(const HeckeSpan& span, unsigned l, unsigned lambda) {
  auto it = std::find(span.primes.begin(), span.primes.end(), l);
  if (it == span.primes.end()) raise(Errc::InvalidArgument, "prime not in the span's operator list");
  const Matrix& t = span.matrices[std::size_t(it - span.primes.begin())];
  const std::size_t n = t.rows();
  Matrix shifted = t;
  PrimeField F(t.p());
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) = F.sub(shifted(i, i), F.from_int(lambda));
  if (n == 0) return std::size_t{1};
  Matrix power = shifted;
  for (std::size_t k = 1; k <= n; ++k) {
    if (power.is_zero()) return k;
    power = power * shifted;
  }
  return std::nullopt;
}

void write_series(std::ostream& out, const FpSeries& f) {
  out << f.p() << ' ' << f.deg() << '\n';
  if (f.p() == 2) {
    const std::size_t bytes = (f.deg() + 8) / 8;
    for (std::size_t i = 0; i < bytes; ++i) out.put(char((f.words()[i / 8] >> (8 * (i % 8))) & 0xff));
  } else {
    out.write(reinterpret_cast<const char*>(f.digits().data()), std::streamsize(f.digits().size()));
  }
}

FpSeries read_series(std::istream& in) {
  unsigned p = 0;
  std::size_t deg = 0;
  if (!(in >> p >> deg) || in.get() != '\n') raise(Errc::InvalidArgument, "malformed series header");
  FpSeries f(p, deg);
  if (p == 2) {
    const std::size_t bytes = (deg + 8) / 8;
    for (std::size_t i = 0; i < bytes; ++i) {
      int c = in.get();
      if (c == EOF) raise(Errc::InvalidArgument, "truncated series payload");
      f.words()[i / 8] |= std::uint64_t(std::uint8_t(c)) << (8 * (i % 8));
    }
  } else {
    in.read(reinterpret_cast<char*>(f.digits().data()), std::streamsize(deg + 1));
    if (in.gcount() != std::streamsize(deg + 1)) raise(Errc::InvalidArgument, "truncated series payload");
    for (auto c : f.digits())
      if (c >= p) raise(Errc::InvalidArgument, "coefficient out of range");
  }
  return f;
}

}  // namespace pinkforge
