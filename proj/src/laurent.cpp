#include "cuntzwave/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "cuntzwave/error.hpp"

namespace cuntzwave {

namespace {

std::string dims(Index r, Index c) {
  std::ostringstream os;
  os << r << "x" << c;
  return os.str();
}

void require_same_shape(const LaurentMatrix& a, const LaurentMatrix& b,
                        const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorCode::DimensionMismatch,
         std::string(op) + ": shapes " + dims(a.rows(), a.cols()) + " and " +
             dims(b.rows(), b.cols()) + " differ");
  }
}

}  // namespace

LaurentMatrix::LaurentMatrix(Index rows, Index cols) : rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0) {
    fail(ErrorCode::InvalidArgument, "LaurentMatrix: dimensions must be positive");
  }
}

LaurentMatrix LaurentMatrix::constant(const CMatrix& value) {
  return monomial(value, 0);
}

LaurentMatrix LaurentMatrix::monomial(const CMatrix& value, int exponent) {
  LaurentMatrix out(value.rows(), value.cols());
  out.add_term(exponent, value);
  return out;
}

LaurentMatrix LaurentMatrix::scalar(
    std::initializer_list<std::pair<int, cd>> terms) {
  LaurentMatrix out(1, 1);
  for (const auto& [k, c] : terms) out.add_term(k, CMatrix::Constant(1, 1, c));
  return out;
}

LaurentMatrix LaurentMatrix::identity(Index n) {
  return constant(CMatrix::Identity(n, n));
}

std::optional<int> LaurentMatrix::min_exponent() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

std::optional<int> LaurentMatrix::max_exponent() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first;
}

void LaurentMatrix::add_term(int exponent, const CMatrix& value) {
  if (value.rows() != rows_ || value.cols() != cols_) {
    fail(ErrorCode::DimensionMismatch,
         "add_term: coefficient is " + dims(value.rows(), value.cols()) +
             ", expected " + dims(rows_, cols_));
  }
  auto it = terms_.find(exponent);
  if (it == terms_.end()) {
    if (!value.isZero(0.0)) terms_.emplace(exponent, value);
    return;
  }
  it->second += value;
  if (it->second.isZero(0.0)) terms_.erase(it);
}

CMatrix LaurentMatrix::coeff(int exponent) const {
  auto it = terms_.find(exponent);
  if (it == terms_.end()) return CMatrix::Zero(rows_, cols_);
  return it->second;
}

CMatrix LaurentMatrix::operator()(cd z) const {
  if (z == cd(0.0) && !terms_.empty() && terms_.begin()->first < 0) {
    fail(ErrorCode::EvalAtZeroWithPole,
         "laurent evaluation at z = 0 with a negative exponent");
  }
  CMatrix out = CMatrix::Zero(rows_, cols_);
  for (const auto& [k, c] : terms_) {
    out += ipow(z, k) * c;
  }
  return out;
}

LaurentMatrix LaurentMatrix::operator-() const { return scaled(-1.0); }

LaurentMatrix& LaurentMatrix::operator+=(const LaurentMatrix& other) {
  require_same_shape(*this, other, "add");
  for (const auto& [k, c] : other.terms_) add_term(k, c);
  return *this;
}

LaurentMatrix& LaurentMatrix::operator-=(const LaurentMatrix& other) {
  require_same_shape(*this, other, "subtract");
  for (const auto& [k, c] : other.terms_) add_term(k, -c);
  return *this;
}

LaurentMatrix LaurentMatrix::scaled(cd factor) const {
  LaurentMatrix out(rows_, cols_);
  for (const auto& [k, c] : terms_) out.add_term(k, factor * c);
  return out;
}

LaurentMatrix LaurentMatrix::paraconjugate() const {
  LaurentMatrix out(cols_, rows_);
  for (const auto& [k, c] : terms_) out.add_term(k, c.adjoint());
  return out;
}

LaurentMatrix LaurentMatrix::compose_power(int N) const {
  if (N < 1) fail(ErrorCode::InvalidArgument, "compose_power: N must be >= 1");
  LaurentMatrix out(rows_, cols_);
  for (const auto& [k, c] : terms_) out.terms_.emplace(k * N, c);
  return out;
}

LaurentMatrix LaurentMatrix::rotate(int N, long long j) const {
  if (N < 1) fail(ErrorCode::InvalidArgument, "rotate: N must be >= 1");
  LaurentMatrix out(rows_, cols_);
  for (const auto& [k, c] : terms_) out.add_term(k, unit_root(N, j * k) * c);
  return out;
}

LaurentMatrix LaurentMatrix::shifted(int shift) const {
  LaurentMatrix out(rows_, cols_);
  for (const auto& [k, c] : terms_) out.terms_.emplace(k + shift, c);
  return out;
}

LaurentMatrix LaurentMatrix::truncated(int lo, int hi) const {
  LaurentMatrix out(rows_, cols_);
  for (auto it = terms_.lower_bound(lo); it != terms_.end() && it->first <= hi;
       ++it) {
    out.terms_.emplace(it->first, it->second);
  }
  return out;
}

LaurentMatrix LaurentMatrix::chop(double tol) const {
  LaurentMatrix out(rows_, cols_);
  for (const auto& [k, c] : terms_) {
    CMatrix m = c;
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) {
        if (std::abs(m(i, j).real()) <= tol) m(i, j).real(0.0);
        if (std::abs(m(i, j).imag()) <= tol) m(i, j).imag(0.0);
      }
    out.add_term(k, m);
  }
  return out;
}

LaurentMatrix LaurentMatrix::entry(Index i, Index j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) {
    fail(ErrorCode::IndexOutOfRange, "entry: index out of range");
  }
  LaurentMatrix out(1, 1);
  for (const auto& [k, c] : terms_) out.add_term(k, c.block(i, j, 1, 1));
  return out;
}

LaurentMatrix LaurentMatrix::column(Index j) const {
  if (j < 0 || j >= cols_) fail(ErrorCode::IndexOutOfRange, "column: index out of range");
  LaurentMatrix out(rows_, 1);
  for (const auto& [k, c] : terms_) out.add_term(k, c.col(j));
  return out;
}

LaurentMatrix LaurentMatrix::row(Index i) const {
  if (i < 0 || i >= rows_) fail(ErrorCode::IndexOutOfRange, "row: index out of range");
  LaurentMatrix out(1, cols_);
  for (const auto& [k, c] : terms_) out.add_term(k, c.row(i));
  return out;
}

LaurentMatrix LaurentMatrix::transpose() const {
  LaurentMatrix out(cols_, rows_);
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, c.transpose());
  return out;
}

double LaurentMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& [k, c] : terms_) m = std::max(m, cuntzwave::max_abs(c));
  return m;
}

LaurentMatrix operator+(LaurentMatrix a, const LaurentMatrix& b) {
  a += b;
  return a;
}

LaurentMatrix operator-(LaurentMatrix a, const LaurentMatrix& b) {
  a -= b;
  return a;
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.cols() == b.rows()) {
    LaurentMatrix out(a.rows(), b.cols());
    for (const auto& [ka, ca] : a.terms())
      for (const auto& [kb, cb] : b.terms()) out.add_term(ka + kb, ca * cb);
    return out;
  }
  if (a.rows() == 1 && a.cols() == 1) {
    LaurentMatrix out(b.rows(), b.cols());
    for (const auto& [ka, ca] : a.terms())
      for (const auto& [kb, cb] : b.terms()) out.add_term(ka + kb, ca(0, 0) * cb);
    return out;
  }
  if (b.rows() == 1 && b.cols() == 1) return b * a;
  fail(ErrorCode::DimensionMismatch,
       "multiply: " + dims(a.rows(), a.cols()) + " times " +
           dims(b.rows(), b.cols()));
}

LaurentMatrix operator*(const CMatrix& a, const LaurentMatrix& b) {
  return LaurentMatrix::constant(a) * b;
}

LaurentMatrix operator*(const LaurentMatrix& a, const CMatrix& b) {
  return a * LaurentMatrix::constant(b);
}

double max_difference(const LaurentMatrix& a, const LaurentMatrix& b) {
  require_same_shape(a, b, "max_difference");
  double m = 0.0;
  for (const auto& [k, c] : a.terms()) m = std::max(m, max_abs(c - b.coeff(k)));
  for (const auto& [k, c] : b.terms()) {
    if (!a.terms().contains(k)) m = std::max(m, max_abs(c));
  }
  return m;
}

bool identical(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  if (a.terms().size() != b.terms().size()) return false;
  auto ib = b.terms().begin();
  for (const auto& [k, c] : a.terms()) {
    if (ib->first != k || !(ib->second.array() == c.array()).all()) return false;
    ++ib;
  }
  return true;
}

LaurentMatrix diagonal(std::initializer_list<LaurentMatrix> entries) {
  const Index n = static_cast<Index>(entries.size());
  LaurentMatrix out(n, n);
  Index i = 0;
  for (const auto& d : entries) {
    if (d.rows() != 1 || d.cols() != 1) {
      fail(ErrorCode::DimensionMismatch, "diagonal: entries must be scalar");
    }
    for (const auto& [k, c] : d.terms()) {
      CMatrix m = CMatrix::Zero(n, n);
      m(i, i) = c(0, 0);
      out.add_term(k, m);
    }
    ++i;
  }
  return out;
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace cuntzwave
