#include "bellscope/complex_matrix.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "bellscope/error.hpp"
#include "bellscope/kernels/kernels.hpp"

namespace bellscope {

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cdouble> row_major) : dim_(dim), data_(std::move(row_major)) {
  if (data_.size() != dim_ * dim_) throw Error(ErrorCode::dimension_mismatch, "matrix data is not dim x dim");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
  ComplexMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cdouble> v) {
  ComplexMatrix m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

cdouble ComplexMatrix::trace() const {
  cdouble t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix ComplexMatrix::kron(const ComplexMatrix& rhs) const {
  const std::size_t d = dim_ * rhs.dim_;
  ComplexMatrix m(d);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < rhs.dim_; ++k)
        for (std::size_t l = 0; l < rhs.dim_; ++l) m(i * rhs.dim_ + k, j * rhs.dim_ + l) = (*this)(i, j) * rhs(k, l);
  return m;
}

double ComplexMatrix::max_abs() const {
  double best = 0.0;
  for (const auto& z : data_) best = std::max(best, std::abs(z));
  return best;
}

bool ComplexMatrix::is_hermitian(double tol) const { return (*this - adjoint()).max_abs() <= tol; }

bool ComplexMatrix::is_projection(double tol) const {
  return is_hermitian(tol) && ((*this) * (*this) - *this).max_abs() <= tol;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (dim_ != rhs.dim_) throw Error(ErrorCode::dimension_mismatch, "matrix sizes differ");
  kernels::caxpy(1.0, rhs.data_, data_);
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (dim_ != rhs.dim_) throw Error(ErrorCode::dimension_mismatch, "matrix sizes differ");
  kernels::caxpy(-1.0, rhs.data_, data_);
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cdouble s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::dimension_mismatch, "matrix sizes differ");
  ComplexMatrix c(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    auto out = c.row(i);
    for (std::size_t k = 0; k < a.dim(); ++k) {
      const cdouble aik = a(i, k);
      if (aik == cdouble(0.0)) continue;
      kernels::caxpy(aik, b.row(k), out);
    }
  }
  return c;
}

cdouble trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::dimension_mismatch, "matrix sizes differ");
  // Tr(ab) = sum_ij a_ij b_ji
  const ComplexMatrix bt = b.transpose();
  return kernels::cdot(a.data(), bt.data());
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix pauli(int k) {
  using namespace std::complex_literals;
  switch (k) {
    case 1: return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0});
    case 2: return ComplexMatrix(2, {0.0, -1.0i, 1.0i, 0.0});
    case 3: return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0});
  }
  throw Error(ErrorCode::out_of_range, "Pauli index must be 1, 2 or 3");
}

namespace {

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd e(static_cast<Eigen::Index>(m.dim()), static_cast<Eigen::Index>(m.dim()));
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
  return e;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(h), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<std::vector<cdouble>> hermitian_kernel(const ComplexMatrix& h, double threshold) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(h));
  std::vector<std::vector<cdouble>> basis;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    if (std::abs(solver.eigenvalues()(k)) >= threshold) continue;
    const auto col = solver.eigenvectors().col(k);
    basis.emplace_back(col.data(), col.data() + col.size());
  }
  return basis;
}

double spectral_norm(const ComplexMatrix& m, double tol) {
  const std::size_t d = m.dim();
  if (d == 0) return 0.0;
  const ComplexMatrix gram = m.adjoint() * m;
  std::vector<cdouble> x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = cdouble(1.0 + 0.1 * static_cast<double>(i), 0.05 * static_cast<double>(i));
  auto normalize = [](std::vector<cdouble>& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    s = std::sqrt(s);
    if (s > 0)
      for (auto& z : v) z /= s;
    return s;
  };
  normalize(x);
  double estimate = 0.0;
  for (int iter = 0; iter < 100000; ++iter) {
    std::vector<cdouble> y(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) y[i] = kernels::cdot(gram.row(i), x);
    const double lambda = normalize(y);
    x = std::move(y);
    if (lambda == 0.0) return 0.0;
    if (std::abs(lambda - estimate) <= tol * std::max(1.0, lambda)) {
      estimate = lambda;
      break;
    }
    estimate = lambda;
  }
  return std::sqrt(estimate);
}

}  // namespace bellscope
