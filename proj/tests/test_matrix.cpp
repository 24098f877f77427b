#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "genproj/errors.hpp"
#include "genproj/generalized_projection.hpp"
#include "genproj/matrix.hpp"
#include "genproj/randgen.hpp"
#include "oracles.hpp"

using namespace genproj;

namespace {

Matrix random_rect(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  Rng rng(Seed{seed});
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = rng.complex_gaussian();
    }
  }
  return m;
}

const Complex kI{0.0, 1.0};

} // namespace

TEST_CASE("construction rejects bad shapes and non-finite data") {
  CHECK_THROWS_AS(Matrix(0, 2), ShapeError);
  CHECK_THROWS_AS(Matrix(2, 2, std::vector<Complex>(3)), ShapeError);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(Matrix(1, 2, {Complex(1.0), Complex(nan, 0.0)}), NonFiniteError);
  CHECK_THROWS_AS(Matrix(1, 1, {Complex(0.0, inf)}), NonFiniteError);
  const Matrix z(2, 3);
  CHECK(z.rows() == 2);
  CHECK(z.cols() == 3);
  CHECK(frobenius_norm(z) == 0.0);
}

TEST_CASE("tolerance threshold is abs plus rel times scale") {
  const Tolerance tol{1e-10, 1e-12};
  CHECK(tol.threshold(0.0) == 1e-10);
  CHECK(tol.threshold(100.0) == doctest::Approx(1e-10 + 1e-10));
  CHECK(tol.threshold(5.0) >= tol.abs);
}

TEST_CASE("adjoint examples") {
  CHECK(adjoint(Matrix::identity(2)) == Matrix::identity(2));
  const Matrix a = Matrix::from_rows({{0.0, kI}, {0.0, 0.0}});
  const Matrix expected = Matrix::from_rows({{0.0, 0.0}, {-kI, 0.0}});
  CHECK(adjoint(a) == expected);
  const Matrix m = random_rect(3, 4, 11);
  CHECK(adjoint(m).rows() == 4);
  CHECK(adjoint(adjoint(m)) == m);
  CHECK(adjoint(m) == oracle::naive_adjoint(m));
}

TEST_CASE("mul examples and shape errors") {
  const Matrix m = random_rect(3, 3, 5);
  CHECK(oracle::dist(mul(Matrix::identity(3), m), m) == 0.0);
  const Matrix nil = Matrix::from_rows({{0.0, 1.0}, {0.0, 0.0}});
  CHECK(mul(nil, nil) == Matrix(2, 2));
  const Matrix a = random_rect(2, 2, 1);
  const Matrix b = random_rect(2, 2, 2);
  CHECK(oracle::dist(mul(adjoint(b), adjoint(a)), adjoint(mul(a, b))) <= 1e-13);
  CHECK_THROWS_AS(mul(random_rect(2, 3, 1), random_rect(2, 3, 2)), ShapeError);
  const Matrix r = random_rect(3, 5, 9);
  const Matrix s = random_rect(5, 2, 10);
  CHECK(oracle::dist(mul(r, s), oracle::naive_mul(r, s)) <= 1e-13);
}

TEST_CASE("power examples") {
  CHECK(oracle::dist(power(Matrix::diagonal({2.0, 3.0}), 3), Matrix::diagonal({8.0, 27.0})) <=
        1e-13);
  const Matrix m = random_rect(3, 3, 4);
  CHECK(power(m, 0) == Matrix::identity(3));
  const Complex w = oracle::omega(1, 3);
  CHECK(oracle::dist(power(Matrix::diagonal({w, w * w, 1.0}), 3), Matrix::identity(3)) <= 1e-13);
  CHECK_THROWS_AS(power(random_rect(2, 3, 1), 2), ShapeError);
}

TEST_CASE("frobenius norm examples") {
  CHECK(frobenius_norm(Matrix(3, 3)) == 0.0);
  for (std::size_t n = 1; n <= 6; ++n) {
    CHECK(frobenius_norm(Matrix::identity(n)) == doctest::Approx(std::sqrt(double(n))));
  }
  CHECK(frobenius_norm(Matrix::from_rows({{3.0, 4.0 * kI}})) == doctest::Approx(5.0));
  // Scaled accumulation survives entries whose squares overflow.
  CHECK(frobenius_norm(Matrix::from_rows({{3e200, 4e200}})) == doctest::Approx(5e200));
}

TEST_CASE("operator norm examples") {
  for (std::size_t n = 1; n <= 5; ++n) {
    CHECK(std::abs(operator_norm(Matrix::identity(n)) - 1.0) <= 1e-12);
  }
  const Complex w = oracle::omega(1, 3);
  CHECK(std::abs(operator_norm(Matrix::diagonal({w, w * w, 0.0})) - 1.0) <= 1e-12);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Matrix m = random_rect(2, 2, 100 + s);
    CHECK(std::abs(operator_norm(m) - oracle::operator_norm2(m)) <= 1e-10);
  }
}

TEST_CASE("equation residual examples") {
  const GenProjForm f = random_projection_family(4, 2, Seed{3}, true);
  const Matrix p = f.projections[0];
  for (unsigned n = 2; n <= 8; ++n) {
    CHECK(equation_residual(p, n, 1.0) <= 1e-13 * 10);
  }
  // e^{ie pi} I_2: residual ||I - e^{2ie pi} I||_F, computed here from e.
  const Complex z = std::polar(1.0, std::numbers::e * std::numbers::pi);
  const Matrix u = Matrix::diagonal({z, z});
  const double expected = std::sqrt(2.0) * std::abs(1.0 - z * z);
  CHECK(equation_residual(u, 2, 1.0) > 1.0);
  CHECK(equation_residual(u, 2, 1.0) == doctest::Approx(expected).epsilon(1e-12));
  const Matrix k = random_skew_hermitian(4, Seed{8});
  CHECK(equation_residual(k, 2, -1.0) <= 1e-12 * (1.0 + frobenius_norm(k) * frobenius_norm(k)));
  CHECK_THROWS_AS(equation_residual(k, 1, 1.0), InvalidArgument);
  CHECK_THROWS_AS(equation_residual(k, 2, 0.0), InvalidArgument);
  CHECK_THROWS_AS(equation_residual(random_rect(2, 3, 1), 2, 1.0), ShapeError);
}

TEST_CASE("property: product-adjoint law up to dimension 16") {
  for (std::size_t d = 1; d <= 16; ++d) {
    const Matrix a = random_rect(d, d, 1000 + d);
    const Matrix b = random_rect(d, d, 2000 + d);
    const double scale = 1.0 + frobenius_norm(a) * frobenius_norm(b);
    CHECK(frobenius_norm(adjoint(mul(a, b)) - mul(adjoint(b), adjoint(a))) <= 1e-12 * scale);
  }
}

TEST_CASE("property: power additivity") {
  for (std::size_t d = 1; d <= 8; ++d) {
    Matrix a = random_rect(d, d, 3000 + d);
    a *= Complex(1.0 / operator_norm(a)); // keep powers O(1)
    for (unsigned m = 0; m <= 6; ++m) {
      for (unsigned k = 0; k <= 6; ++k) {
        const Matrix lhs = power(a, m + k);
        const Matrix rhs = mul(power(a, m), power(a, k));
        CHECK(frobenius_norm(lhs - rhs) <= 1e-11 * (1.0 + frobenius_norm(lhs)));
      }
    }
  }
}

TEST_CASE("property: norm consistency") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const std::size_t rows = 1 + s % 6;
    const std::size_t cols = 1 + (s / 6) % 6;
    const Matrix a = random_rect(rows, cols, 4000 + s);
    const double op = operator_norm(a);
    const double fro = frobenius_norm(a);
    CHECK(op <= fro * (1.0 + 1e-12));
    CHECK(fro <= std::sqrt(double(std::min(rows, cols))) * op * (1.0 + 1e-12));
    CHECK(fro == doctest::Approx(oracle::naive_frobenius(a)).epsilon(1e-14));
  }
}

TEST_CASE("property: orthogonal projections solve every n") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const std::size_t d = 1 + s % 8;
    const GenProjForm f = random_projection_family(d, 2, Seed{500 + s}, true);
    for (const Matrix& p : {f.projections[0], f.projections[1], f.kernel}) {
      for (unsigned n = 2; n <= 8; ++n) {
        CHECK(equation_residual(p, n, 1.0) <= 1e-12);
      }
    }
  }
}

TEST_CASE("columns and arithmetic") {
  const Matrix m = random_rect(3, 4, 77);
  const Matrix c = m.columns(1, 2);
  CHECK(c.cols() == 2);
  CHECK(c(2, 1) == m(2, 2));
  CHECK_THROWS(m.columns(3, 2));
  CHECK(oracle::dist(m + m, Complex(2.0) * m) == 0.0);
  CHECK(frobenius_norm(m - m) == 0.0);
  CHECK(trace(Matrix::diagonal({1.0, kI, 2.0})) == Complex(3.0, 1.0));
}
