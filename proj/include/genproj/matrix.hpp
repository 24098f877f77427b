#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace genproj {

using Complex = std::complex<double>;

/// Residual comparison tolerance. A residual measured at scale `s` passes
/// when it does not exceed `abs + rel * s`.
struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-12;

  double threshold(double scale) const { return abs + rel * scale; }
};

/// Dense complex matrix, row-major. Every entry is finite: data handed to a
/// constructor is checked and NaN/Inf is rejected with NonFiniteError.
class Matrix {
public:
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const Complex> values);
  static Matrix diagonal(std::initializer_list<Complex> values);
  static Matrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const Complex> data() const { return data_; }

  /// Columns [first, first + count) as a rows x count matrix.
  Matrix columns(std::size_t first, std::size_t count) const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(Complex s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Complex s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

/// Conjugate transpose.
Matrix adjoint(const Matrix& a);

/// Matrix product; throws ShapeError when a.cols() != b.rows().
Matrix mul(const Matrix& a, const Matrix& b);

/// a^n for square a, with a^0 the identity. Uses repeated squaring for n > 4.
Matrix power(const Matrix& a, unsigned n);

Complex trace(const Matrix& a);

double frobenius_norm(const Matrix& a);

/// Largest singular value, from the top eigenvalue of a* a.
double operator_norm(const Matrix& a);

/// || a* a - q a^n ||_F. The operator equation a* a = a^n holds iff this
/// vanishes for q = 1.
double equation_residual(const Matrix& a, unsigned n, double q);

/// Throws ShapeError unless `a` is square. `what` names the caller.
void require_square(const Matrix& a, const char* what);

} // namespace genproj
