#pragma once

#include <optional>
#include <string>
#include <vector>

#include "genproj/matrix.hpp"

namespace genproj {

/// Canonical form A = sum_{k=1}^n e^{2k pi i / n} P_k of a solution of
/// A* A = A^n. `projections[k - 1]` holds P_k; every slot is present, zero
/// projections included. `kernel` is P_0, the projector onto ker A.
struct GenProjForm {
  unsigned n = 0;
  std::vector<Matrix> projections;
  Matrix kernel{1, 1};
};

/// Membership test for A* A = A^n plus the structural consequences of
/// membership. Everything optional is computed only when `verdict` holds.
struct GenProjReport {
  unsigned n = 0;
  double equation_residual = 0.0;
  double threshold = 0.0;
  std::optional<double> power_adjoint_residual; // ||A^{n-1} - A*||_F
  std::optional<double> normality_residual;
  std::optional<double> spectrum_distance; // n >= 3 only
  std::optional<double> operator_norm;
  std::optional<bool> kernel_match;
  bool verdict = false;
};

/// e^{2 k pi i / n}.
Complex root_of_unity(unsigned k, unsigned n);

/// Verdict threshold is tol.threshold(1 + ||A||_F^n), since the residual
/// grows like the n-th power of the matrix scale.
GenProjReport is_generalized_projection(const Matrix& a, unsigned n, const Tolerance& tol);

/// Largest distance from an eigenvalue of the normal matrix `a` to the set
/// {0} and the n-th roots of unity.
double spectrum_distance(const Matrix& a, unsigned n, const Tolerance& tol);

/// Splits a solution (n >= 3) into its projection family. Clusters of the
/// spectrum go to the nearest admissible point; points with no eigenvalue get
/// zero projections.
///
/// Throws NotASolutionError if `a` fails is_generalized_projection, and
/// AssignmentAmbiguityError if some cluster sits farther than
/// 10 * cluster_radius from every admissible point.
GenProjForm decompose(const Matrix& a, unsigned n, const Tolerance& tol);
GenProjForm decompose(const Matrix& a, unsigned n, const Tolerance& tol, double cluster_radius);

/// sum_k e^{2k pi i/n} P_k. The family is validated first (each slot an
/// orthogonal projection, pairwise products zero, slots summing to I, all at
/// tol.threshold(dim)); InvalidProjectionFamilyError names the first failure.
Matrix reconstruct(const GenProjForm& form, const Tolerance& tol = {});

/// Empty when the form is a valid orthogonal family, else the first failure.
std::optional<std::string> validate_form(const GenProjForm& form, const Tolerance& tol);

/// ||A^{n-1} - A*||_F.
double check_power_adjoint(const Matrix& a, unsigned n);

/// True iff ker A = ker A*A and ker A* agree numerically. Kernels are the
/// eigenvectors of A*A (resp. AA*) with eigenvalue at most
/// tol.threshold(||Gram||_F); they must have equal dimension and principal
/// angles within tol.threshold(1).
bool check_kernel_equality(const Matrix& a, const Tolerance& tol);

/// e^{i e pi} I_dim: unitary, yet never a solution for any n >= 2.
Matrix unitary_counterexample(std::size_t dim);

} // namespace genproj
