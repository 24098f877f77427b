#include <doctest.h>

#include <cmath>
#include <numbers>

#include "genproj/errors.hpp"
#include "genproj/generalized_projection.hpp"
#include "genproj/randgen.hpp"
#include "genproj/spectral.hpp"
#include "oracles.hpp"

using namespace genproj;

namespace {

const Tolerance kTol{};
const Complex kI{0.0, 1.0};

std::vector<Complex> reals(std::initializer_list<double> xs) {
  return {xs.begin(), xs.end()};
}

double unitarity(const Matrix& v) {
  return frobenius_norm(mul(adjoint(v), v) - Matrix::identity(v.cols()));
}

double eigen_residual(const Matrix& a, const EigenSystem& es) {
  return frobenius_norm(mul(a, es.vectors) - mul(es.vectors, Matrix::diagonal(es.eigenvalues)));
}

Matrix sum_of_projectors(const SpectralDecomposition& sd, std::size_t d) {
  Matrix s(d, d);
  for (const SpectralCluster& c : sd.clusters) {
    s += c.projector;
  }
  return s;
}

} // namespace

TEST_CASE("eig_hermitian examples") {
  const EigenSystem es = eig_hermitian(Matrix::diagonal({5.0, -1.0, 2.0}), kTol);
  CHECK(oracle::multiset_distance(es.eigenvalues, reals({-1.0, 2.0, 5.0})) == 0.0);
  CHECK(es.eigenvalues[0].real() == -1.0);
  CHECK(es.eigenvalues[2].real() == 5.0);
  // V is a permutation: every entry has modulus 0 or 1.
  for (const Complex& z : es.vectors.data()) {
    CHECK((std::abs(z) == doctest::Approx(0.0) || std::abs(z) == doctest::Approx(1.0)));
  }
  const EigenSystem px = eig_hermitian(Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}), kTol);
  CHECK(std::abs(px.eigenvalues[0] - Complex(-1.0)) <= 1e-14);
  CHECK(std::abs(px.eigenvalues[1] - Complex(1.0)) <= 1e-14);

  const std::vector<Complex> d = reals({-2.5, 0.25, 1.0, 3.0});
  const Matrix u = haar_unitary(4, Seed{12});
  const Matrix h = mul(mul(u, Matrix::diagonal(d)), adjoint(u));
  const Matrix hh = Complex(0.5) * (h + adjoint(h));
  CHECK(oracle::multiset_distance(eig_hermitian(hh, kTol).eigenvalues, d) <= 1e-10);
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
  CHECK_THROWS_AS(eig_hermitian(Matrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}), kTol),
                  NotHermitianError);
  CHECK_THROWS_AS(eig_hermitian(Matrix(2, 3), kTol), ShapeError);
}

TEST_CASE("property: EigenSystem invariants on random Hermitian matrices") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const std::size_t d = 1 + s % 16;
    const Matrix h = random_hermitian(d, Seed{s});
    const EigenSystem es = eig_hermitian(h, kTol);
    CHECK(unitarity(es.vectors) <= 1e-12 * d);
    CHECK(eigen_residual(h, es) <= kTol.threshold(1.0 + frobenius_norm(h)));
    for (std::size_t i = 1; i < d; ++i) {
      CHECK(es.eigenvalues[i - 1].real() <= es.eigenvalues[i].real());
    }
    double sum = 0.0;
    for (const Complex& l : es.eigenvalues) {
      CHECK(l.imag() == 0.0);
      sum += l.real();
    }
    const double tr = trace(h).real();
    CHECK(std::abs(sum - tr) <= 1e-10 * (1.0 + std::abs(tr)));
  }
}

TEST_CASE("property: eigenvalue product equals the determinant oracle") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Matrix h2 = random_hermitian(2, Seed{100 + s});
    const auto e2 = eig_hermitian(h2, kTol).eigenvalues;
    CHECK(std::abs(e2[0].real() * e2[1].real() - oracle::det2(h2).real()) <= 1e-9);
    const Matrix h3 = random_hermitian(3, Seed{200 + s});
    const auto e3 = eig_hermitian(h3, kTol).eigenvalues;
    CHECK(std::abs(e3[0].real() * e3[1].real() * e3[2].real() - oracle::det3(h3).real()) <= 1e-9);
  }
}

TEST_CASE("property: closed-form characteristic polynomial oracle, dims 2 and 3") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Matrix h2 = random_hermitian(2, Seed{300 + s});
    const auto got2 = eig_hermitian(h2, kTol).eigenvalues;
    const auto want2 = oracle::hermitian2_eigs(h2);
    CHECK(std::abs(got2[0].real() - want2[0]) <= 1e-9);
    CHECK(std::abs(got2[1].real() - want2[1]) <= 1e-9);
    const Matrix h3 = random_hermitian(3, Seed{400 + s});
    const auto got3 = eig_hermitian(h3, kTol).eigenvalues;
    const auto want3 = oracle::hermitian3_eigs(h3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(std::abs(got3[i].real() - want3[i]) <= 1e-9);
    }
  }
}

TEST_CASE("diagonalize_normal examples") {
  const Complex w = oracle::omega(1, 3);
  const EigenSystem es = diagonalize_normal(Matrix::diagonal({w, w * w, 1.0}), kTol);
  CHECK(oracle::multiset_distance(es.eigenvalues, {1.0, w, w * w}) <= 1e-14);
  const EigenSystem rot = diagonalize_normal(Matrix::from_rows({{0.0, -1.0}, {1.0, 0.0}}), kTol);
  CHECK(oracle::multiset_distance(rot.eigenvalues, {kI, -kI}) <= 1e-14);
  // Lexicographic (re, im) ordering.
  CHECK(rot.eigenvalues[0].imag() < rot.eigenvalues[1].imag());

  CHECK_THROWS_AS(diagonalize_normal(Matrix::from_rows({{0.0, 1.0}, {0.0, 0.0}}), kTol),
                  NotNormalError);
}

TEST_CASE("property: random normal spectra are recovered as multisets") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const std::size_t d = 1 + s % 16;
    Rng rng(Seed{900 + s});
    std::vector<Complex> z(d);
    for (auto& v : z) {
      v = rng.complex_gaussian();
    }
    // Shared real parts stress the second (skew) pass.
    if (d >= 3) {
      z[1] = Complex(z[0].real(), z[0].imag() + 1.0);
    }
    const Matrix a = random_normal(z, Seed{1900 + s});
    const EigenSystem es = diagonalize_normal(a, kTol);
    CHECK(oracle::multiset_distance(es.eigenvalues, z) <= 1e-9);
    CHECK(unitarity(es.vectors) <= 1e-11);
    const Matrix rebuilt = mul(mul(es.vectors, Matrix::diagonal(es.eigenvalues)), adjoint(es.vectors));
    CHECK(frobenius_norm(rebuilt - a) <= kTol.threshold(1.0 + frobenius_norm(a)));
  }
}

TEST_CASE("spectral_projectors examples") {
  const SpectralDecomposition id = spectral_projectors(Matrix::identity(4), 1e-7, kTol);
  REQUIRE(id.clusters.size() == 1);
  CHECK(id.clusters[0].multiplicity == 4);
  CHECK(oracle::dist(id.clusters[0].projector, Matrix::identity(4)) <= 1e-14);

  const Complex w = oracle::omega(1, 3);
  const SpectralDecomposition sd =
      spectral_projectors(Matrix::diagonal({1.0, 1.0, w, w * w}), 1e-7, kTol);
  REQUIRE(sd.clusters.size() == 3);
  // Sorted by (re, im): w^2 = (-1/2, -), w = (-1/2, +), 1.
  CHECK(std::abs(sd.clusters[0].value - w * w) <= 1e-14);
  CHECK(std::abs(sd.clusters[1].value - w) <= 1e-14);
  CHECK(std::abs(sd.clusters[2].value - 1.0) <= 1e-14);
  CHECK(oracle::dist(sd.clusters[2].projector, Matrix::diagonal({1.0, 1.0, 0.0, 0.0})) <= 1e-14);
  CHECK(oracle::dist(sd.clusters[1].projector, Matrix::diagonal({0.0, 0.0, 1.0, 0.0})) <= 1e-14);
  CHECK(oracle::dist(sd.clusters[0].projector, Matrix::diagonal({0.0, 0.0, 0.0, 1.0})) <= 1e-14);

  const Matrix a = random_normal({1.0, 1.0, 0.0}, Seed{31});
  const SpectralDecomposition two = spectral_projectors(a, default_cluster_radius(a), kTol);
  REQUIRE(two.clusters.size() == 2);
  CHECK(two.clusters[0].multiplicity == 1);
  CHECK(two.clusters[1].multiplicity == 2);
  CHECK(std::abs(trace(two.clusters[1].projector) - 2.0) <= 1e-10);
  CHECK(oracle::dist(sum_of_projectors(two, 3), Matrix::identity(3)) <= 1e-10);
}

TEST_CASE("spectral_projectors flags ambiguous clusters") {
  // Two eigenvalues 2.5 radii apart: separate clusters, but closer than 3 radii.
  const double r = 1e-3;
  CHECK_THROWS_AS(spectral_projectors(Matrix::diagonal({0.0, 2.5 * r}), r, kTol),
                  ClusterAmbiguityError);
  // A chain within the radius merges transitively.
  const auto sd = spectral_projectors(Matrix::diagonal({0.0, 0.9 * r, 1.8 * r, 1.0}), r, kTol);
  REQUIRE(sd.clusters.size() == 2);
  CHECK(sd.clusters[0].multiplicity == 3);
}

TEST_CASE("property: SpectralDecomposition invariants and round trip") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const std::size_t d = 1 + s % 16;
    Rng rng(Seed{7000 + s});
    std::vector<Complex> z(d);
    for (std::size_t i = 0; i < d; ++i) {
      // Values drawn from a small palette so clusters have multiplicity.
      z[i] = oracle::omega(static_cast<unsigned>(rng.below(5)), 5) * (1.0 + double(rng.below(2)));
    }
    const Matrix a = random_normal(z, Seed{8000 + s});
    const SpectralDecomposition sd = spectral_projectors(a, default_cluster_radius(a), kTol);
    Matrix rebuilt(d, d);
    std::size_t mult = 0;
    for (std::size_t j = 0; j < sd.clusters.size(); ++j) {
      const Matrix& q = sd.clusters[j].projector;
      CHECK(frobenius_norm(mul(q, q) - q) <= 1e-10);
      CHECK(frobenius_norm(q - adjoint(q)) <= 1e-10);
      for (std::size_t k = j + 1; k < sd.clusters.size(); ++k) {
        CHECK(frobenius_norm(mul(q, sd.clusters[k].projector)) <= 1e-10);
      }
      rebuilt += sd.clusters[j].value * q;
      mult += sd.clusters[j].multiplicity;
    }
    CHECK(mult == d);
    CHECK(oracle::dist(sum_of_projectors(sd, d), Matrix::identity(d)) <= 1e-10);
    CHECK(frobenius_norm(rebuilt - a) <= kTol.threshold(1.0 + frobenius_norm(a)));
  }
}

TEST_CASE("classify examples") {
  const ClassReport p = classify(Matrix::diagonal({1.0, 1.0, 0.0}), kTol);
  for (const char* name : {"hermitian", "normal", "quasinormal", "hyponormal", "projection"}) {
    CHECK(p.verdicts.at(name));
  }
  CHECK_FALSE(p.verdicts.at("unitary"));

  const ClassReport shift = classify(Matrix::from_rows({{0.0, 0.0}, {1.0, 0.0}}), kTol);
  for (const char* name : {"hermitian", "normal", "quasinormal", "hyponormal"}) {
    CHECK_FALSE(shift.verdicts.at(name));
  }
  CHECK(shift.hyponormal_min_eig == doctest::Approx(-1.0).epsilon(1e-14));

  const ClassReport u = classify(unitary_counterexample(3), kTol);
  for (const char* name : {"unitary", "normal", "quasinormal", "hyponormal"}) {
    CHECK(u.verdicts.at(name));
  }
  CHECK_FALSE(u.verdicts.at("hermitian"));
  CHECK(u.unitary <= 1e-13);
}

TEST_CASE("property: classify verdicts agree with residuals") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const std::size_t d = 1 + s % 6;
    Matrix a(d, d);
    switch (s % 3) {
    case 0:
      a = random_hermitian(d, Seed{s});
      break;
    case 1:
      a = random_skew_hermitian(d, Seed{s});
      break;
    default: {
      Rng rng(Seed{s});
      a = gaussian_matrix(d, rng);
    }
    }
    const ClassReport r = classify(a, kTol);
    const double n = frobenius_norm(a);
    CHECK(r.verdicts.at("hermitian") == (r.hermitian <= kTol.threshold(n)));
    CHECK(r.verdicts.at("skew") == (r.skew <= kTol.threshold(n)));
    CHECK(r.verdicts.at("normal") == (r.normal <= kTol.threshold(n * n)));
    CHECK(r.verdicts.at("hyponormal") == (r.hyponormal_min_eig >= -kTol.threshold(n * n)));
    CHECK(r.hermitian == doctest::Approx(frobenius_norm(a - adjoint(a))));
  }
}

TEST_CASE("property: hyponormal verdict collapses to normality") {
  // Near-normal inputs, some of which the hyponormal verdict accepts.
  std::size_t accepted = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const std::size_t d = 2 + s % 5;
    Rng rng(Seed{s});
    std::vector<Complex> z(d);
    for (auto& v : z) {
      v = rng.complex_gaussian();
    }
    const Matrix a = perturb(random_normal(z, Seed{s + 1}), 1e-12 * double(s % 4), Seed{s + 2});
    const ClassReport r = classify(a, kTol);
    if (!r.verdicts.at("hyponormal")) {
      continue;
    }
    ++accepted;
    const double eps = kTol.threshold(frobenius_norm(a) * frobenius_norm(a));
    CHECK(r.normal <= double(d) * eps);
  }
  CHECK(accepted > 50);
}

TEST_CASE("property: hyponormal_min_eig of the adjoint") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const std::size_t d = 2 + s % 5;
    Rng rng(Seed{50 + s});
    const Matrix a = gaussian_matrix(d, rng);
    const Matrix comm = mul(adjoint(a), a) - mul(a, adjoint(a));
    const auto eigs = eig_hermitian(Complex(0.5) * (comm + adjoint(comm)), kTol).eigenvalues;
    const double top = eigs.back().real();
    CHECK(classify(adjoint(a), kTol).hyponormal_min_eig == doctest::Approx(-top).epsilon(1e-10));
    CHECK(classify(a, kTol).hyponormal_min_eig == doctest::Approx(eigs.front().real()).epsilon(1e-10));
  }
}
