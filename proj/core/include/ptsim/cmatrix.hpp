#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace ptsim {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major storage. Sized for the problems
/// this library cares about (n <= 16); no attempt at large-n performance.
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(std::size_t dim);
  static CMatrix zero(std::size_t dim) { return CMatrix(dim); }

  std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

  const std::vector<Complex>& data() const { return data_; }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conjugate() const;

  Complex trace() const;
  double frobenius_norm() const;
  /// Maximum absolute column sum (the induced 1-norm).
  double one_norm() const;
  double max_abs() const;
  bool is_finite() const;

  CMatrix& operator+=(const CMatrix& rhs);
  CMatrix& operator-=(const CMatrix& rhs);
  CMatrix& operator*=(Complex scale);

  /// Matrix-vector product.
  std::vector<Complex> apply(const std::vector<Complex>& v) const;

  /// Copies src into this matrix with its (0,0) entry at (row0, col0).
  void set_block(std::size_t row0, std::size_t col0, const CMatrix& src);
  CMatrix block(std::size_t row0, std::size_t col0, std::size_t size) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator+(CMatrix lhs, const CMatrix& rhs);
CMatrix operator-(CMatrix lhs, const CMatrix& rhs);
CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);
CMatrix operator*(Complex scale, CMatrix m);
CMatrix operator*(CMatrix m, Complex scale);

CMatrix kron(const CMatrix& a, const CMatrix& b);

double vector_norm(const std::vector<Complex>& v);
/// <a|b>, conjugate-linear in the first argument.
Complex vector_dot(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace ptsim
