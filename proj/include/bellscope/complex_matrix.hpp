#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace bellscope {

using cdouble = std::complex<double>;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
  ComplexMatrix(std::size_t dim, std::vector<cdouble> row_major);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> entries);
  /// |v><v|
  static ComplexMatrix outer(std::span<const cdouble> v);

  std::size_t dim() const { return dim_; }
  cdouble& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const cdouble& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  std::span<const cdouble> data() const { return data_; }
  std::span<cdouble> row(std::size_t i) { return {data_.data() + i * dim_, dim_}; }
  std::span<const cdouble> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  cdouble trace() const;
  ComplexMatrix kron(const ComplexMatrix& rhs) const;
  /// Largest entry modulus.
  double max_abs() const;

  bool is_hermitian(double tol) const;
  bool is_projection(double tol) const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cdouble s);
  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cdouble s) { return a *= s; }
  friend ComplexMatrix operator*(cdouble s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t dim_ = 0;
  std::vector<cdouble> data_;
};

/// Tr(a b) without forming the product.
cdouble trace_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Pauli matrix sigma_k for k = 1, 2, 3.
ComplexMatrix pauli(int k);

/// Eigenvalues of a Hermitian matrix in ascending order.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h);
/// Orthonormal eigenvectors of a Hermitian matrix whose eigenvalues have
/// modulus below `threshold`.
std::vector<std::vector<cdouble>> hermitian_kernel(const ComplexMatrix& h, double threshold);

/// Largest singular value by power iteration on m^dagger m.
double spectral_norm(const ComplexMatrix& m, double tol = 1e-10);

}  // namespace bellscope
