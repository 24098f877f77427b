#include "genproj/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "genproj/errors.hpp"
#include "genproj/spectral.hpp"

namespace genproj {

namespace {

void check_finite(std::span<const Complex> data) {
  for (std::size_t k = 0; k < data.size(); ++k) {
    if (!std::isfinite(data[k].real()) || !std::isfinite(data[k].imag())) {
      throw NonFiniteError("matrix entry " + std::to_string(k) + " is not finite");
    }
  }
}

void check_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()) + " differ");
  }
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) {
    throw ShapeError("matrix dimensions must be positive");
  }
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows == 0 || cols == 0) {
    throw ShapeError("matrix dimensions must be positive");
  }
  if (data_.size() != rows * cols) {
    throw ShapeError("matrix data has " + std::to_string(data_.size()) + " entries, expected " +
                     std::to_string(rows * cols));
  }
  check_finite(data_);
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1.0;
  }
  return m;
}

Matrix Matrix::diagonal(std::span<const Complex> values) {
  check_finite(values);
  Matrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    m(i, i) = values[i];
  }
  return m;
}

Matrix Matrix::diagonal(std::initializer_list<Complex> values) {
  return diagonal(std::span<const Complex>(values.begin(), values.size()));
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Complex> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) {
      throw ShapeError("from_rows: ragged rows");
    }
    data.insert(data.end(), row.begin(), row.end());
  }
  return Matrix(r, c, std::move(data));
}

Matrix Matrix::columns(std::size_t first, std::size_t count) const {
  if (first + count > cols_) {
    throw ShapeError("columns: range exceeds matrix width");
  }
  Matrix out(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < count; ++j) {
      out(i, j) = (*this)(i, first + j);
    }
  }
  return out;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  check_same_shape(*this, other, "add");
  for (std::size_t k = 0; k < data_.size(); ++k) {
    data_[k] += other.data_[k];
  }
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  check_same_shape(*this, other, "subtract");
  for (std::size_t k = 0; k < data_.size(); ++k) {
    data_[k] -= other.data_[k];
  }
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  for (auto& x : data_) {
    x *= s;
  }
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Complex s, Matrix a) { return a *= s; }
Matrix operator*(const Matrix& a, const Matrix& b) { return mul(a, b); }

Matrix adjoint(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      out(j, i) = std::conj(a(i, j));
    }
  }
  return out;
}

Matrix mul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("mul: inner dimensions " + std::to_string(a.cols()) + " and " +
                     std::to_string(b.rows()) + " differ");
  }
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) {
        continue;
      }
      for (std::size_t j = 0; j < b.cols(); ++j) {
        out(i, j) += aik * b(k, j);
      }
    }
  }
  return out;
}

void require_square(const Matrix& a, const char* what) {
  if (!a.is_square()) {
    throw ShapeError(std::string(what) + ": matrix is " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + ", expected square");
  }
}

Matrix power(const Matrix& a, unsigned n) {
  require_square(a, "power");
  if (n == 0) {
    return Matrix::identity(a.rows());
  }
  if (n <= 4) {
    Matrix out = a;
    for (unsigned k = 1; k < n; ++k) {
      out = mul(out, a);
    }
    return out;
  }
  Matrix result = Matrix::identity(a.rows());
  Matrix base = a;
  bool first = true;
  while (n > 0) {
    if (n & 1u) {
      result = first ? base : mul(result, base);
      first = false;
    }
    n >>= 1u;
    if (n > 0) {
      base = mul(base, base);
    }
  }
  return result;
}

Complex trace(const Matrix& a) {
  require_square(a, "trace");
  Complex t{};
  for (std::size_t i = 0; i < a.rows(); ++i) {
    t += a(i, i);
  }
  return t;
}

double frobenius_norm(const Matrix& a) {
  // Scaled accumulation keeps tiny and huge entries from under/overflowing.
  double scale = 0.0;
  double ssq = 1.0;
  for (const Complex& z : a.data()) {
    for (double v : {z.real(), z.imag()}) {
      if (v == 0.0) {
        continue;
      }
      const double av = std::abs(v);
      if (scale < av) {
        ssq = 1.0 + ssq * (scale / av) * (scale / av);
        scale = av;
      } else {
        ssq += (av / scale) * (av / scale);
      }
    }
  }
  return scale * std::sqrt(ssq);
}

double operator_norm(const Matrix& a) {
  const Matrix gram = mul(adjoint(a), a);
  const EigenSystem es = eig_hermitian(gram, Tolerance{});
  const double top = es.eigenvalues.back().real();
  return std::sqrt(std::max(top, 0.0));
}

double equation_residual(const Matrix& a, unsigned n, double q) {
  require_square(a, "equation_residual");
  if (n < 2) {
    throw InvalidArgument("equation_residual: n must be at least 2");
  }
  if (q == 0.0) {
    throw InvalidArgument("equation_residual: q must be nonzero");
  }
  Matrix r = mul(adjoint(a), a);
  r -= Complex(q) * power(a, n);
  return frobenius_norm(r);
}

} // namespace genproj
