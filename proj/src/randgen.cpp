#include "genproj/randgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "genproj/errors.hpp"

namespace genproj {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Seed derive_seed(Seed parent, std::uint64_t index) {
  return Seed{splitmix64(parent.value ^ splitmix64(index + 1))};
}

Rng::Rng(Seed seed) : engine_(splitmix64(seed.value)) {}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) {
    throw InvalidArgument("Rng::below: bound must be positive");
  }
  // Largest multiple of bound representable; reject draws above it.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform(); // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex(re, im) * (1.0 / std::numbers::sqrt2);
}

Matrix gaussian_matrix(std::size_t dim, Rng& rng) {
  Matrix g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      g(i, j) = rng.complex_gaussian();
    }
  }
  return g;
}

Matrix haar_unitary(std::size_t dim, Seed seed) {
  Rng rng(seed);
  Matrix q = gaussian_matrix(dim, rng);
  for (std::size_t j = 0; j < dim; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        Complex r{};
        for (std::size_t k = 0; k < dim; ++k) {
          r += std::conj(q(k, i)) * q(k, j);
        }
        for (std::size_t k = 0; k < dim; ++k) {
          q(k, j) -= r * q(k, i);
        }
      }
    }
    double norm = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      norm += std::norm(q(k, j));
    }
    norm = std::sqrt(norm);
    for (std::size_t k = 0; k < dim; ++k) {
      q(k, j) /= norm;
    }
  }
  return q;
}

std::vector<std::size_t> random_composition(std::size_t total, std::size_t parts,
                                            bool allow_zero, Rng& rng) {
  if (parts == 0) {
    throw InvalidArgument("random_composition: need at least one part");
  }
  if (!allow_zero && total < parts) {
    throw InvalidArgument("random_composition: cannot split " + std::to_string(total) +
                          " into " + std::to_string(parts) + " positive parts");
  }
  // Stars and bars: pick parts - 1 bar positions out of `slots` uniformly.
  const std::size_t slots = allow_zero ? total + parts - 1 : total - 1;
  std::vector<std::size_t> pool(slots);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t i = 0; i + 1 < parts; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(slots - i));
    std::swap(pool[i], pool[j]);
  }
  std::vector<std::size_t> bars(pool.begin(), pool.begin() + static_cast<long>(parts - 1));
  std::sort(bars.begin(), bars.end());

  std::vector<std::size_t> sizes;
  sizes.reserve(parts);
  if (allow_zero) {
    // Bars at positions b_0 < b_1 < ...; stars fill the remaining slots.
    std::size_t prev = 0;
    for (std::size_t b : bars) {
      sizes.push_back(b - prev);
      prev = b + 1;
    }
    sizes.push_back(slots - prev);
  } else {
    // Cut after star (b + 1) for each chosen gap b.
    std::size_t prev = 0;
    for (std::size_t b : bars) {
      sizes.push_back(b + 1 - prev);
      prev = b + 1;
    }
    sizes.push_back(total - prev);
  }
  return sizes;
}

GenProjForm projection_family_with_ranks(const std::vector<std::size_t>& ranks,
                                         std::size_t kernel_rank, Seed seed) {
  if (ranks.size() < 2) {
    throw InvalidArgument("projection_family_with_ranks: need n >= 2 ranks");
  }
  const std::size_t dim = std::accumulate(ranks.begin(), ranks.end(), kernel_rank);
  if (dim == 0) {
    throw InvalidArgument("projection_family_with_ranks: total rank must be positive");
  }
  const Matrix u = haar_unitary(dim, seed);
  auto block_projector = [&](std::size_t first, std::size_t count) {
    if (count == 0) {
      return Matrix(dim, dim);
    }
    const Matrix block = u.columns(first, count);
    return mul(block, adjoint(block));
  };

  GenProjForm form;
  form.n = static_cast<unsigned>(ranks.size());
  std::size_t offset = 0;
  for (std::size_t r : ranks) {
    form.projections.push_back(block_projector(offset, r));
    offset += r;
  }
  form.kernel = block_projector(offset, kernel_rank);
  return form;
}

GenProjForm random_projection_family(std::size_t dim, unsigned n, Seed seed,
                                     bool allow_zero_ranks) {
  if (dim == 0 || n < 2) {
    throw InvalidArgument("random_projection_family: need dim >= 1 and n >= 2");
  }
  Rng rng(seed);
  std::vector<std::size_t> ranks = random_composition(dim, n + 1, allow_zero_ranks, rng);
  const std::size_t kernel_rank = ranks.back();
  ranks.pop_back();
  return projection_family_with_ranks(ranks, kernel_rank, derive_seed(seed, 1));
}

Matrix random_hermitian(std::size_t dim, Seed seed) {
  Rng rng(seed);
  const Matrix g = gaussian_matrix(dim, rng);
  return Complex(0.5) * (g + adjoint(g));
}

Matrix random_skew_hermitian(std::size_t dim, Seed seed) {
  Rng rng(seed);
  const Matrix g = gaussian_matrix(dim, rng);
  return Complex(0.5) * (g - adjoint(g));
}

Matrix random_normal(const std::vector<Complex>& spectrum, Seed seed) {
  if (spectrum.empty()) {
    throw InvalidArgument("random_normal: spectrum must be nonempty");
  }
  const Matrix u = haar_unitary(spectrum.size(), seed);
  return mul(mul(u, Matrix::diagonal(spectrum)), adjoint(u));
}

Matrix perturb(const Matrix& a, double epsilon, Seed seed) {
  if (!(epsilon >= 0.0)) {
    throw InvalidArgument("perturb: epsilon must be non-negative");
  }
  if (epsilon == 0.0) {
    return a;
  }
  Rng rng(seed);
  Matrix g(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      g(i, j) = rng.complex_gaussian();
    }
  }
  return a + Complex(epsilon / frobenius_norm(g)) * g;
}

} // namespace genproj
