#include "ptsim/cmatrix.hpp"

#include <cmath>

#include "ptsim/error.hpp"

namespace ptsim {

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  dim_ = rows.size();
  data_.resize(dim_ * dim_);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != dim_) raise(ErrorCode::InvalidArgument, "matrix literal is not square");
    std::size_t j = 0;
    for (const auto& v : row) data_[i * dim_ + j++] = v;
    ++i;
  }
}

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

CMatrix CMatrix::transpose() const {
  CMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

CMatrix CMatrix::conjugate() const {
  CMatrix m(dim_);
  for (std::size_t i = 0; i < dim_ * dim_; ++i) m.data_[i] = std::conj(data_[i]);
  return m;
}

Complex CMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::frobenius_norm() const {
  double acc = 0.0;
  for (const Complex& v : data_) acc += std::norm(v);
  return std::sqrt(acc);
}

double CMatrix::one_norm() const {
  double best = 0.0;
  for (std::size_t j = 0; j < dim_; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) col += std::abs((*this)(i, j));
    best = std::max(best, col);
  }
  return best;
}

double CMatrix::max_abs() const {
  double best = 0.0;
  for (const Complex& v : data_) best = std::max(best, std::abs(v));
  return best;
}

bool CMatrix::is_finite() const {
  for (const Complex& v : data_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex scale) {
  for (Complex& v : data_) v *= scale;
  return *this;
}

std::vector<Complex> CMatrix::apply(const std::vector<Complex>& v) const {
  if (v.size() != dim_) raise(ErrorCode::InvalidArgument, "matrix/vector dimension mismatch");
  std::vector<Complex> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < dim_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

void CMatrix::set_block(std::size_t row0, std::size_t col0, const CMatrix& src) {
  for (std::size_t i = 0; i < src.dim(); ++i)
    for (std::size_t j = 0; j < src.dim(); ++j) (*this)(row0 + i, col0 + j) = src(i, j);
}

CMatrix CMatrix::block(std::size_t row0, std::size_t col0, std::size_t size) const {
  CMatrix out(size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) out(i, j) = (*this)(row0 + i, col0 + j);
  return out;
}

CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
  const std::size_t n = lhs.dim();
  if (n != rhs.dim()) raise(ErrorCode::InvalidArgument, "matrix dimension mismatch");
  CMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex(0.0)) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

CMatrix operator*(Complex scale, CMatrix m) { return m *= scale; }
CMatrix operator*(CMatrix m, Complex scale) { return m *= scale; }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  CMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l)
          out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
  return out;
}

double vector_norm(const std::vector<Complex>& v) {
  double acc = 0.0;
  for (const Complex& x : v) acc += std::norm(x);
  return std::sqrt(acc);
}

Complex vector_dot(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) raise(ErrorCode::InvalidArgument, "vector dimension mismatch");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

}  // namespace ptsim
