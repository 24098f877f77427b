#include "genproj/generalized_projection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "genproj/errors.hpp"
#include "genproj/spectral.hpp"

namespace genproj {

namespace {

// Columns of the eigenvector matrix of `gram` whose eigenvalue is below threshold.
Matrix numerical_kernel_basis(const Matrix& gram, const Tolerance& tol, std::size_t& dim) {
  const EigenSystem es = eig_hermitian(gram, tol);
  const double cutoff = tol.threshold(frobenius_norm(gram));
  dim = 0;
  while (dim < es.eigenvalues.size() && es.eigenvalues[dim].real() <= cutoff) {
    ++dim;
  }
  return dim == 0 ? Matrix(gram.rows(), 1) : es.vectors.columns(0, dim);
}

Matrix kernel_projector(const Matrix& gram, const Tolerance& tol, std::size_t& dim) {
  const Matrix basis = numerical_kernel_basis(gram, tol, dim);
  if (dim == 0) {
    return Matrix(gram.rows(), gram.rows());
  }
  return mul(basis, adjoint(basis));
}

Matrix hermitian_part(const Matrix& m) { return Complex(0.5) * (m + adjoint(m)); }

} // namespace

Complex root_of_unity(unsigned k, unsigned n) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k % n) / static_cast<double>(n);
  return std::polar(1.0, angle);
}

double spectrum_distance(const Matrix& a, unsigned n, const Tolerance& tol) {
  const EigenSystem es = diagonalize_normal(a, tol);
  double worst = 0.0;
  for (const Complex& lambda : es.eigenvalues) {
    double best = std::abs(lambda);
    for (unsigned k = 1; k <= n; ++k) {
      best = std::min(best, std::abs(lambda - root_of_unity(k, n)));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

GenProjReport is_generalized_projection(const Matrix& a, unsigned n, const Tolerance& tol) {
  require_square(a, "is_generalized_projection");
  if (n < 2) {
    throw InvalidArgument("is_generalized_projection: n must be at least 2");
  }
  GenProjReport r;
  r.n = n;
  const double norm = frobenius_norm(a);
  r.equation_residual = equation_residual(a, n, 1.0);
  r.threshold = tol.threshold(1.0 + std::pow(norm, static_cast<double>(n)));
  r.verdict = r.equation_residual <= r.threshold;
  if (!r.verdict) {
    return r;
  }
  r.power_adjoint_residual = check_power_adjoint(a, n);
  r.normality_residual = normality_residual(a);
  r.operator_norm = operator_norm(a);
  r.kernel_match = check_kernel_equality(a, tol);
  if (n >= 3) {
    try {
      r.spectrum_distance = spectrum_distance(a, n, tol);
    } catch (const NotNormalError&) {
      // Left empty: the residual passed but the matrix is not normal at this
      // tolerance, which the normality residual already reports.
    }
  }
  return r;
}

GenProjForm decompose(const Matrix& a, unsigned n, const Tolerance& tol) {
  return decompose(a, n, tol, default_cluster_radius(a));
}

GenProjForm decompose(const Matrix& a, unsigned n, const Tolerance& tol, double cluster_radius) {
  require_square(a, "decompose");
  if (n < 3) {
    throw InvalidArgument("decompose: n must be at least 3");
  }
  const GenProjReport report = is_generalized_projection(a, n, tol);
  if (!report.verdict) {
    throw NotASolutionError("decompose: equation residual " +
                            std::to_string(report.equation_residual) + " exceeds threshold " +
                            std::to_string(report.threshold));
  }
  const std::size_t d = a.rows();
  GenProjForm form;
  form.n = n;
  form.projections.assign(n, Matrix(d, d));
  form.kernel = Matrix(d, d);

  const SpectralDecomposition sd = spectral_projectors(a, cluster_radius, tol);
  for (const SpectralCluster& cluster : sd.clusters) {
    // Slot 0 is the kernel, slot k the root e^{2k pi i/n}.
    unsigned slot = 0;
    double best = std::abs(cluster.value);
    for (unsigned k = 1; k <= n; ++k) {
      const double dist = std::abs(cluster.value - root_of_unity(k, n));
      if (dist < best) {
        best = dist;
        slot = k;
      }
    }
    if (best > 10.0 * cluster_radius) {
      throw AssignmentAmbiguityError("decompose: eigenvalue (" +
                                     std::to_string(cluster.value.real()) + ", " +
                                     std::to_string(cluster.value.imag()) +
                                     ") is not near 0 or any root of unity");
    }
    Matrix& target = slot == 0 ? form.kernel : form.projections[slot - 1];
    target += cluster.projector;
  }
  return form;
}

std::optional<std::string> validate_form(const GenProjForm& form, const Tolerance& tol) {
  if (form.n < 2 || form.projections.size() != form.n) {
    return "form has " + std::to_string(form.projections.size()) + " projections for n = " +
           std::to_string(form.n);
  }
  const std::size_t d = form.kernel.rows();
  // Index 0 is the kernel projector, index k is P_k.
  std::vector<const Matrix*> slots{&form.kernel};
  for (const Matrix& p : form.projections) {
    slots.push_back(&p);
  }
  for (const Matrix* p : slots) {
    if (p->rows() != d || p->cols() != d) {
      return std::string("projections have mismatched shapes");
    }
  }
  const double threshold = tol.threshold(static_cast<double>(d));
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const Matrix& p = *slots[k];
    if (frobenius_norm(p - adjoint(p)) > threshold || frobenius_norm(mul(p, p) - p) > threshold) {
      return "P_" + std::to_string(k) + " is not an orthogonal projection";
    }
  }
  Matrix total(d, d);
  for (std::size_t j = 0; j < slots.size(); ++j) {
    total += *slots[j];
    for (std::size_t k = j + 1; k < slots.size(); ++k) {
      if (frobenius_norm(mul(*slots[j], *slots[k])) > threshold) {
        return "P_" + std::to_string(j) + " P_" + std::to_string(k) + " is not zero";
      }
    }
  }
  if (frobenius_norm(total - Matrix::identity(d)) > threshold) {
    return std::string("projections do not sum to the identity");
  }
  return std::nullopt;
}

Matrix reconstruct(const GenProjForm& form, const Tolerance& tol) {
  if (auto failure = validate_form(form, tol)) {
    throw InvalidProjectionFamilyError("reconstruct: " + *failure);
  }
  const std::size_t d = form.kernel.rows();
  Matrix a(d, d);
  for (unsigned k = 1; k <= form.n; ++k) {
    a += root_of_unity(k, form.n) * form.projections[k - 1];
  }
  return a;
}

double check_power_adjoint(const Matrix& a, unsigned n) {
  require_square(a, "check_power_adjoint");
  if (n < 2) {
    throw InvalidArgument("check_power_adjoint: n must be at least 2");
  }
  return frobenius_norm(power(a, n - 1) - adjoint(a));
}

bool check_kernel_equality(const Matrix& a, const Tolerance& tol) {
  require_square(a, "check_kernel_equality");
  const Matrix a_adj = adjoint(a);
  // ker A = ker A*A, both read off the eigenvectors of A*A; ker A* off AA*.
  std::size_t dim_a = 0;
  std::size_t dim_adj = 0;
  const Matrix ker_a = kernel_projector(hermitian_part(mul(a_adj, a)), tol, dim_a);
  const Matrix ker_adj = kernel_projector(hermitian_part(mul(a, a_adj)), tol, dim_adj);
  if (dim_a != dim_adj) {
    return false;
  }
  if (dim_a == 0) {
    return true;
  }
  // For equal dimensions, ||P - Q||_2 is the sine of the largest principal angle.
  return operator_norm(ker_a - ker_adj) <= tol.threshold(1.0);
}

Matrix unitary_counterexample(std::size_t dim) {
  if (dim == 0) {
    throw InvalidArgument("unitary_counterexample: dim must be positive");
  }
  const Complex z = std::polar(1.0, std::numbers::e * std::numbers::pi);
  return z * Matrix::identity(dim);
}

} // namespace genproj
