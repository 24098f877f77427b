#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "genproj/generalized_projection.hpp"
#include "genproj/matrix.hpp"

namespace genproj {

/// 64-bit seed for every generator.
struct Seed {
  std::uint64_t value = 0;
  friend bool operator==(Seed, Seed) = default;
};

/// SplitMix64 finalizer. Child streams are derived with
/// derive_seed(parent, index) = splitmix64(parent ^ splitmix64(index + 1)),
/// so trial i of a campaign sees the same stream whatever the thread count.
std::uint64_t splitmix64(std::uint64_t x);
Seed derive_seed(Seed parent, std::uint64_t index);

/// Reproducible random source: std::mt19937_64 seeded with
/// splitmix64(seed). Uniforms take the top 53 bits of one draw; Gaussians use
/// the Box-Muller transform with both outputs consumed in order. Nothing
/// routes through std::*_distribution, whose output is implementation-defined.
class Rng {
public:
  explicit Rng(Seed seed);

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform integer on [0, bound), bound > 0, by rejection.
  std::uint64_t below(std::uint64_t bound);
  /// Standard real Gaussian.
  double gaussian();
  /// Standard complex Gaussian: E|z|^2 = 1.
  Complex complex_gaussian();

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// dim x dim matrix of i.i.d. standard complex Gaussians.
Matrix gaussian_matrix(std::size_t dim, Rng& rng);

/// Haar-distributed unitary: Gram-Schmidt (applied twice) on a complex
/// Gaussian matrix, which fixes the R diagonal positive.
Matrix haar_unitary(std::size_t dim, Seed seed);

/// Orthogonal projection family built from disjoint column blocks of one Haar
/// unitary. Ranks of (P_1, ..., P_n, P_0) are uniform over compositions of dim
/// into n + 1 parts; zero parts only when allow_zero_ranks. Throws
/// InvalidArgument when !allow_zero_ranks and dim < n + 1.
GenProjForm random_projection_family(std::size_t dim, unsigned n, Seed seed,
                                     bool allow_zero_ranks);

/// Same construction with prescribed ranks for P_1..P_n and the kernel.
GenProjForm projection_family_with_ranks(const std::vector<std::size_t>& ranks,
                                         std::size_t kernel_rank, Seed seed);

/// Uniform composition of `total` into `parts` parts (stars and bars).
std::vector<std::size_t> random_composition(std::size_t total, std::size_t parts,
                                            bool allow_zero, Rng& rng);

Matrix random_hermitian(std::size_t dim, Seed seed);
Matrix random_skew_hermitian(std::size_t dim, Seed seed);
/// U diag(spectrum) U* with Haar U.
Matrix random_normal(const std::vector<Complex>& spectrum, Seed seed);

/// a + epsilon * G / ||G||_F for a complex Gaussian G.
Matrix perturb(const Matrix& a, double epsilon, Seed seed);

} // namespace genproj
