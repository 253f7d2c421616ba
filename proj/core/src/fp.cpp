#include "pinkforge/fp.hpp"

#include <algorithm>

#include "pinkforge/errors.hpp"

namespace pinkforge {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(unsigned p) : p_(p) {
  if (p >= 256 || !is_prime(p)) raise(Errc::InvalidArgument, "characteristic must be a prime below 256");
  inverse_.assign(p, 0);
  for (unsigned a = 1; a < p; ++a)
    for (unsigned b = 1; b < p; ++b)
      if ((a * b) % p == 1) {
        inverse_[a] = Coeff(b);
        break;
      }
}

Coeff PrimeField::inv(Coeff a) const {
  if (a % p_ == 0) raise(Errc::NotAUnit, "zero has no inverse in F_p");
  return inverse_[a];
}

Coeff PrimeField::pow(Coeff a, std::uint64_t e) const noexcept {
  unsigned result = 1 % p_, base = a % p_;
  while (e) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return Coeff(result);
}

Coeff PrimeField::from_int(long long v) const noexcept {
  long long r = v % static_cast<long long>(p_);
  return Coeff(r < 0 ? r + p_ : r);
}

void PrimeField::axpy(std::span<Coeff> a, Coeff c, std::span<const Coeff> b) const noexcept {
  if (c == 0) return;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (b[i]) a[i] = Coeff((a[i] + unsigned(c) * b[i]) % p_);
}

void PrimeField::scale(std::span<Coeff> a, Coeff c) const noexcept {
  for (auto& x : a) x = mul(x, c);
}

bool is_zero(std::span<const Coeff> v) noexcept {
  return std::all_of(v.begin(), v.end(), [](Coeff c) { return c == 0; });
}

Subspace::Subspace(unsigned p, std::size_t ambient) : field_(p), ambient_(ambient) {}

Subspace Subspace::span(unsigned p, std::size_t ambient, const std::vector<Vec>& generators) {
  Subspace s(p, ambient);
  for (const auto& g : generators) s.insert(g);
  return s;
}

Subspace Subspace::full(unsigned p, std::size_t ambient) {
  Subspace s(p, ambient);
  for (std::size_t i = 0; i < ambient; ++i) {
    s.rows_.emplace_back(ambient, 0);
    s.rows_.back()[i] = 1;
    s.pivots_.push_back(i);
  }
  return s;
}

Vec Subspace::reduce(std::span<const Coeff> v) const {
  if (v.size() != ambient_) raise(Errc::StructureMismatch, "vector length differs from ambient dimension");
  Vec r(v.begin(), v.end());
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Coeff c = r[pivots_[i]];
    if (c) field_.axpy(r, field_.neg(c), rows_[i]);
  }
  return r;
}

bool Subspace::insert(std::span<const Coeff> v) {
  Vec r = reduce(v);
  auto it = std::find_if(r.begin(), r.end(), [](Coeff c) { return c != 0; });
  if (it == r.end()) return false;
  std::size_t pivot = std::size_t(it - r.begin());
  field_.scale(r, field_.inv(*it));
  for (auto& row : rows_) {
    Coeff c = row[pivot];
    if (c) field_.axpy(row, field_.neg(c), r);
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
  auto idx = pos - pivots_.begin();
  pivots_.insert(pos, pivot);
  rows_.insert(rows_.begin() + idx, std::move(r));
  return true;
}

bool Subspace::contains(std::span<const Coeff> v) const { return is_zero(reduce(v)); }

std::optional<Vec> Subspace::coordinates(std::span<const Coeff> v) const {
  if (!contains(v)) return std::nullopt;
  Vec out(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) out[i] = v[pivots_[i]];
  return out;
}

bool Subspace::includes(const Subspace& other) const {
  return std::all_of(other.rows_.begin(), other.rows_.end(), [&](const Vec& r) { return contains(r); });
}

Subspace Subspace::sum(const Subspace& other) const {
  if (other.ambient_ != ambient_ || other.p() != p())
    raise(Errc::StructureMismatch, "subspaces live in different spaces");
  Subspace s = *this;
  for (const auto& r : other.rows_) s.insert(r);
  return s;
}

Subspace Subspace::annihilator() const {
  Subspace out(p(), ambient_);
  std::size_t k = 0;
  for (std::size_t j = 0; j < ambient_; ++j) {
    if (k < pivots_.size() && pivots_[k] == j) {
      ++k;
      continue;
    }
    Vec w(ambient_, 0);
    w[j] = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i) w[pivots_[i]] = field_.neg(rows_[i][j]);
    out.insert(w);
  }
  return out;
}

Subspace Subspace::intersect(const Subspace& other) const {
  return annihilator().sum(other.annihilator()).annihilator();
}

Subspace Subspace::project(std::size_t offset, std::size_t len) const {
  Subspace out(p(), len);
  for (const auto& r : rows_) out.insert(std::span<const Coeff>(r).subspan(offset, len));
  return out;
}

Vec Subspace::random_element(Rng& rng) const {
  Vec v(ambient_, 0);
  for (const auto& r : rows_) field_.axpy(v, field_.random(rng), r);
  return v;
}

std::vector<Vec> Subspace::elements() const {
  std::vector<Vec> out;
  std::vector<Coeff> digits(rows_.size(), 0);
  while (true) {
    Vec v(ambient_, 0);
    for (std::size_t i = 0; i < rows_.size(); ++i) field_.axpy(v, digits[i], rows_[i]);
    out.push_back(std::move(v));
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == p()) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  return out;
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.p() == b.p() && a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
}

Matrix::Matrix(unsigned p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(unsigned p, std::size_t n) {
  Matrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) raise(Errc::StructureMismatch, "matrix dimensions do not compose");
  PrimeField f(p_);
  Matrix out(p_, rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) f.axpy(out.row(i), (*this)(i, k), other.row(k));
  return out;
}

Matrix Matrix::operator-(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) raise(Errc::StructureMismatch, "matrix shapes differ");
  PrimeField f(p_);
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = f.sub(data_[i], other.data_[i]);
  return out;
}

Vec Matrix::apply(std::span<const Coeff> v) const {
  if (v.size() != cols_) raise(Errc::StructureMismatch, "vector length differs from column count");
  Vec out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    unsigned acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc = (acc + unsigned((*this)(i, j)) * v[j]) % p_;
    out[i] = Coeff(acc);
  }
  return out;
}

bool Matrix::is_zero() const noexcept { return pinkforge::is_zero(data_); }

namespace {

// Row-reduces m in place and returns the pivot column of each nonzero row.
std::vector<std::size_t> row_reduce(Matrix& m) {
  PrimeField f(m.p());
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && m(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
    f.scale(m.row(r), f.inv(m(r, c)));
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && m(i, c)) f.axpy(m.row(i), f.neg(m(i, c)), m.row(r));
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t Matrix::rank() const {
  Matrix m = *this;
  return row_reduce(m).size();
}

std::vector<Vec> Matrix::kernel() const {
  Matrix m = *this;
  auto pivots = row_reduce(m);
  PrimeField f(p_);
  std::vector<Vec> out;
  std::size_t k = 0;
  for (std::size_t j = 0; j < cols_; ++j) {
    if (k < pivots.size() && pivots[k] == j) {
      ++k;
      continue;
    }
    Vec v(cols_, 0);
    v[j] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(m(i, j));
    out.push_back(std::move(v));
  }
  return out;
}

std::optional<Vec> Matrix::solve(std::span<const Coeff> b) const {
  if (b.size() != rows_) raise(Errc::StructureMismatch, "right-hand side length differs from row count");
  Matrix aug(p_, rows_, cols_ + 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
    aug(i, cols_) = b[i];
  }
  auto pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
  Vec x(cols_, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, cols_);
  return x;
}

}  // namespace pinkforge
