#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "genproj/matrix.hpp"

namespace genproj {

/// Eigenvalues paired with a unitary matrix whose columns are the eigenvectors.
struct EigenSystem {
  std::vector<Complex> eigenvalues;
  Matrix vectors;
};

struct SpectralCluster {
  Complex value;
  Matrix projector;
  std::size_t multiplicity;
};

/// Orthogonal spectral projectors of a normal matrix, one per eigenvalue cluster,
/// ordered lexicographically by (real, imag) of the cluster value.
struct SpectralDecomposition {
  std::vector<SpectralCluster> clusters;
};

/// Residuals of the operator-class identities, with verdicts under a Tolerance.
struct ClassReport {
  double hermitian = 0.0;   // ||A - A*||
  double skew = 0.0;        // ||A + A*||
  double normal = 0.0;      // ||A*A - AA*||
  double unitary = 0.0;     // ||A*A - I||
  double quasinormal = 0.0; // ||AA*A - A*AA||
  double projection = 0.0;  // max(||A^2 - A||, ||A - A*||)
  double hyponormal_min_eig = 0.0;
  std::map<std::string, bool> verdicts;
};

/// Full Jacobi sweeps before giving up.
inline constexpr int kJacobiSweepCap = 50;

/// Cyclic complex Jacobi eigensolver. Eigenvalues come back ascending (with
/// zero imaginary part). Throws NotHermitianError when ||h - h*||_F exceeds
/// tol.threshold(||h||_F), and NonConvergenceError if the off-diagonal mass is
/// still above that threshold after kJacobiSweepCap sweeps.
EigenSystem eig_hermitian(const Matrix& h, const Tolerance& tol);

/// ||A*A - AA*||_F.
double normality_residual(const Matrix& a);

/// 1e-7 * (1 + ||a||_F).
double default_cluster_radius(const Matrix& a);

/// Unitary diagonalization of a normal matrix.
///
/// The Hermitian part (A + A*)/2 is diagonalized first; inside each of its
/// eigenvalue clusters the compressed skew part (A - A*)/(2i) is diagonalized
/// again, which splits eigenvalues that share a real part. Eigenvalues are the
/// Rayleigh quotients v* A v of the final vectors, sorted by (real, imag).
///
/// Throws NotNormalError when ||A*A - AA*||_F > tol.threshold(||A||_F^2).
EigenSystem diagonalize_normal(const Matrix& a, const Tolerance& tol);

/// Groups the eigenvalues of a normal matrix by transitive closure of
/// |l_i - l_j| <= cluster_radius and returns one projector V_c V_c* per group.
/// Throws ClusterAmbiguityError when two cluster values lie within
/// 3 * cluster_radius of each other.
SpectralDecomposition spectral_projectors(const Matrix& a, double cluster_radius,
                                          const Tolerance& tol);

/// Never throws on finite square input.
ClassReport classify(const Matrix& a, const Tolerance& tol);

} // namespace genproj
