#include "genproj/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "genproj/errors.hpp"

namespace genproj {

namespace {

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) {
        sum += std::norm(a(i, j));
      }
    }
  }
  return std::sqrt(sum);
}

// One Jacobi rotation zeroing a(p, q) of a Hermitian working matrix, applied
// as a <- G* a G and v <- v G with G = [[c, s e^{iphi}], [-s e^{-iphi}, c]].
void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const Complex z = a(p, q);
  const double az = std::abs(z);
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * az);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex phase = z / az;
  const Complex sp = s * phase;
  const Complex sc = s * std::conj(phase);
  const std::size_t d = a.rows();

  for (std::size_t k = 0; k < d; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - sc * akq;
    a(k, q) = sp * akp + c * akq;
  }
  for (std::size_t k = 0; k < d; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - sp * aqk;
    a(q, k) = sc * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * az;
  a(q, q) = aqq + t * az;

  for (std::size_t k = 0; k < d; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp - sc * vkq;
    v(k, q) = sp * vkp + c * vkq;
  }
}

Matrix permute_columns(const Matrix& v, const std::vector<std::size_t>& order) {
  Matrix out(v.rows(), v.cols());
  for (std::size_t j = 0; j < order.size(); ++j) {
    for (std::size_t i = 0; i < v.rows(); ++i) {
      out(i, j) = v(i, order[j]);
    }
  }
  return out;
}

bool lex_less(Complex x, Complex y) {
  if (x.real() != y.real()) {
    return x.real() < y.real();
  }
  return x.imag() < y.imag();
}

// Index groups under transitive closure of |x_i - x_j| <= radius.
std::vector<std::vector<std::size_t>> cluster_indices(const std::vector<Complex>& values,
                                                      double radius) {
  const std::size_t d = values.size();
  std::vector<std::size_t> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      if (std::abs(values[i] - values[j]) <= radius) {
        const std::size_t ri = find(i);
        const std::size_t rj = find(j);
        if (ri != rj) {
          parent[std::max(ri, rj)] = std::min(ri, rj);
        }
      }
    }
  }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> slot(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::size_t r = find(i);
    if (slot[r] == d) {
      slot[r] = groups.size();
      groups.emplace_back();
    }
    groups[slot[r]].push_back(i);
  }
  return groups;
}

Matrix select_columns(const Matrix& v, const std::vector<std::size_t>& cols) {
  Matrix out(v.rows(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < v.rows(); ++i) {
      out(i, j) = v(i, cols[j]);
    }
  }
  return out;
}

} // namespace

EigenSystem eig_hermitian(const Matrix& h, const Tolerance& tol) {
  require_square(h, "eig_hermitian");
  const std::size_t d = h.rows();
  const double scale = frobenius_norm(h);
  const double threshold = tol.threshold(scale);
  const Matrix h_adj = adjoint(h);
  if (frobenius_norm(h - h_adj) > threshold) {
    throw NotHermitianError("eig_hermitian: matrix is not Hermitian within tolerance");
  }

  Matrix a = Complex(0.5) * (h + h_adj);
  Matrix v = Matrix::identity(d);
  // Sweeps continue past `threshold` down to rounding level; the threshold
  // only decides whether a capped run counts as converged.
  const double floor = std::numeric_limits<double>::epsilon() * scale;

  for (int sweep = 0; sweep < kJacobiSweepCap; ++sweep) {
    const double off = off_diagonal_norm(a);
    if (off == 0.0 || off <= floor) {
      break;
    }
    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t q = p + 1; q < d; ++q) {
        const double az = std::abs(a(p, q));
        if (az == 0.0) {
          continue;
        }
        const double app = std::abs(a(p, p).real());
        const double aqq = std::abs(a(q, q).real());
        if (sweep > 3 && app + 100.0 * az == app && aqq + 100.0 * az == aqq) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
    }
  }
  if (off_diagonal_norm(a) > threshold) {
    throw NonConvergenceError("eig_hermitian: no convergence after " +
                              std::to_string(kJacobiSweepCap) + " sweeps");
  }

  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });
  EigenSystem out{std::vector<Complex>(d), permute_columns(v, order)};
  for (std::size_t j = 0; j < d; ++j) {
    out.eigenvalues[j] = Complex(a(order[j], order[j]).real(), 0.0);
  }
  return out;
}

double normality_residual(const Matrix& a) {
  const Matrix a_adj = adjoint(a);
  return frobenius_norm(mul(a_adj, a) - mul(a, a_adj));
}

double default_cluster_radius(const Matrix& a) { return 1e-7 * (1.0 + frobenius_norm(a)); }

EigenSystem diagonalize_normal(const Matrix& a, const Tolerance& tol) {
  require_square(a, "diagonalize_normal");
  const double norm = frobenius_norm(a);
  if (normality_residual(a) > tol.threshold(norm * norm)) {
    throw NotNormalError("diagonalize_normal: matrix is not normal within tolerance");
  }
  const std::size_t d = a.rows();
  const Matrix a_adj = adjoint(a);
  const Matrix herm = Complex(0.5) * (a + a_adj);
  const Matrix skew = Complex(0.0, -0.5) * (a - a_adj);

  const EigenSystem first = eig_hermitian(herm, tol);
  Matrix v = first.vectors;

  // Consecutive runs of the ascending Hermitian-part spectrum within the
  // cluster radius share an eigenspace; refine them with the skew part.
  const double radius = default_cluster_radius(a);
  std::size_t start = 0;
  while (start < d) {
    std::size_t stop = start + 1;
    while (stop < d &&
           first.eigenvalues[stop].real() - first.eigenvalues[stop - 1].real() <= radius) {
      ++stop;
    }
    const std::size_t size = stop - start;
    if (size > 1) {
      const Matrix block = v.columns(start, size);
      const Matrix compressed = mul(mul(adjoint(block), skew), block);
      const EigenSystem inner = eig_hermitian(compressed, tol);
      const Matrix rotated = mul(block, inner.vectors);
      for (std::size_t j = 0; j < size; ++j) {
        for (std::size_t i = 0; i < d; ++i) {
          v(i, start + j) = rotated(i, j);
        }
      }
    }
    start = stop;
  }

  const Matrix av = mul(a, v);
  std::vector<Complex> values(d);
  for (std::size_t j = 0; j < d; ++j) {
    Complex rq{};
    for (std::size_t i = 0; i < d; ++i) {
      rq += std::conj(v(i, j)) * av(i, j);
    }
    values[j] = rq;
  }
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return lex_less(values[x], values[y]); });
  EigenSystem out{std::vector<Complex>(d), permute_columns(v, order)};
  for (std::size_t j = 0; j < d; ++j) {
    out.eigenvalues[j] = values[order[j]];
  }
  return out;
}

SpectralDecomposition spectral_projectors(const Matrix& a, double cluster_radius,
                                          const Tolerance& tol) {
  const EigenSystem es = diagonalize_normal(a, tol);
  const auto groups = cluster_indices(es.eigenvalues, cluster_radius);

  SpectralDecomposition out;
  for (const auto& group : groups) {
    Complex mean{};
    for (std::size_t idx : group) {
      mean += es.eigenvalues[idx];
    }
    mean /= static_cast<double>(group.size());
    const Matrix basis = select_columns(es.vectors, group);
    out.clusters.push_back({mean, mul(basis, adjoint(basis)), group.size()});
  }
  std::sort(out.clusters.begin(), out.clusters.end(),
            [](const SpectralCluster& x, const SpectralCluster& y) {
              return lex_less(x.value, y.value);
            });
  for (std::size_t i = 0; i < out.clusters.size(); ++i) {
    for (std::size_t j = i + 1; j < out.clusters.size(); ++j) {
      if (std::abs(out.clusters[i].value - out.clusters[j].value) < 3.0 * cluster_radius) {
        throw ClusterAmbiguityError("spectral_projectors: clusters closer than 3x radius");
      }
    }
  }
  return out;
}

ClassReport classify(const Matrix& a, const Tolerance& tol) {
  require_square(a, "classify");
  const std::size_t d = a.rows();
  const double norm = frobenius_norm(a);
  const Matrix a_adj = adjoint(a);
  const Matrix ata = mul(a_adj, a);
  const Matrix aat = mul(a, a_adj);
  const Matrix raw = ata - aat;
  // Hermitian up to rounding; symmetrize so the eigensolver never rejects it.
  const Matrix commutator = Complex(0.5) * (raw + adjoint(raw));

  ClassReport r;
  r.hermitian = frobenius_norm(a - a_adj);
  r.skew = frobenius_norm(a + a_adj);
  r.normal = frobenius_norm(commutator);
  r.unitary = frobenius_norm(ata - Matrix::identity(d));
  r.quasinormal = frobenius_norm(mul(a, ata) - mul(ata, a));
  r.projection = std::max(frobenius_norm(mul(a, a) - a), r.hermitian);
  r.hyponormal_min_eig = eig_hermitian(commutator, tol).eigenvalues.front().real();

  const double sq = norm * norm;
  r.verdicts["hermitian"] = r.hermitian <= tol.threshold(norm);
  r.verdicts["skew"] = r.skew <= tol.threshold(norm);
  r.verdicts["normal"] = r.normal <= tol.threshold(sq);
  r.verdicts["unitary"] = r.unitary <= tol.threshold(std::max(sq, 1.0));
  r.verdicts["quasinormal"] = r.quasinormal <= tol.threshold(sq * norm);
  r.verdicts["projection"] = r.projection <= tol.threshold(std::max(sq, norm));
  r.verdicts["hyponormal"] = r.hyponormal_min_eig >= -tol.threshold(sq);
  return r;
}

} // namespace genproj
