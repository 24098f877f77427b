#pragma once

#include <cstddef>
#include <functional>

#include "genproj/matrix.hpp"
#include "genproj/randgen.hpp"

namespace genproj {

struct SearchConfig {
  std::size_t dim = 3;
  unsigned n = 2;
  double q = 1.0;
  std::size_t restarts = 10;
  std::size_t max_iters = 4000;
  double step = 0.1;
  double shrink = 0.5;
  double grad_tol = 1e-13;
  /// Levenberg-Marquardt steps run after descent stalls; 0 disables.
  std::size_t polish_iters = 60;
  /// When false every restart starts from a complex Gaussian.
  bool structured_starts = true;
  Seed seed{};
};

struct SearchResult {
  Matrix best_matrix{1, 1};
  double best_residual = 0.0;
  std::size_t best_restart = 0;
  std::size_t iterations_used = 0;
  bool converged = false;
};

/// Called with each accepted iterate and its objective value.
using IterateObserver = std::function<void(const Matrix&, double)>;

/// ||A*A - q A^n||_F^2.
double objective(const Matrix& a, unsigned n, double q);

/// Gradient G of `objective` over the real and imaginary parts of the
/// entries, normalized so that
///   objective(a + eps D) = objective(a) + 2 eps Re<G, D> + O(eps^2)
/// with <X, Y> = tr(X* Y). With R = A*A - q A^n,
///   G = A R* + A R - q sum_{j=0}^{n-1} (A*)^j R (A*)^{n-1-j}.
Matrix gradient(const Matrix& a, unsigned n, double q);

/// Projected gradient descent on the unit Frobenius sphere with random
/// restarts. With structured starts, restart 0 starts from a random
/// Hermitian matrix, restart 1 from a random skew-Hermitian one, restart 2
/// from a diagonal of n-th roots of unity; the rest from complex Gaussians.
/// Restart r draws from derive_seed(seed, r). Each step moves along the
/// tangential part of -G, renormalizes, and backtracks (step *= shrink) until
/// the objective decreases. The trial step is the Barzilai-Borwein length of
/// the previous move when one exists.
///
/// Once the residual is below 1e-4, descent is followed by up to
/// polish_iters Levenberg-Marquardt steps: near ill-conditioned zeros descent
/// alone stalls orders of magnitude above rounding level. Ties between
/// restarts go to the lower index.
SearchResult minimize(const SearchConfig& config, const IterateObserver& observer = {});

/// Unit-norm starting point used by restart `index`.
Matrix restart_point(const SearchConfig& config, std::size_t index);

} // namespace genproj
