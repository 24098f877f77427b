#include "genproj/search.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "genproj/errors.hpp"
#include "genproj/generalized_projection.hpp"

namespace genproj {

namespace {

// Re tr(X* Y): the real inner product on C^{d x d} viewed as R^{2 d^2}.
double real_inner(const Matrix& x, const Matrix& y) {
  double s = 0.0;
  const auto xd = x.data();
  const auto yd = y.data();
  for (std::size_t k = 0; k < xd.size(); ++k) {
    s += xd[k].real() * yd[k].real() + xd[k].imag() * yd[k].imag();
  }
  return s;
}

Matrix residual_matrix(const Matrix& a, unsigned n, double q) {
  Matrix r = mul(adjoint(a), a);
  r -= Complex(q) * power(a, n);
  return r;
}

Matrix normalized(Matrix a) {
  const double norm = frobenius_norm(a);
  return a *= Complex(1.0 / norm);
}

void check_args(const Matrix& a, unsigned n, double q, const char* what) {
  require_square(a, what);
  if (n < 2) {
    throw InvalidArgument(std::string(what) + ": n must be at least 2");
  }
  if (q == 0.0) {
    throw InvalidArgument(std::string(what) + ": q must be nonzero");
  }
}

// Cholesky solve of the dense SPD system m x = b (row-major, size k).
bool cholesky_solve(std::vector<double> m, std::vector<double>& b, std::size_t k) {
  for (std::size_t j = 0; j < k; ++j) {
    double d = m[j * k + j];
    for (std::size_t p = 0; p < j; ++p) {
      d -= m[j * k + p] * m[j * k + p];
    }
    if (!(d > 0.0)) {
      return false;
    }
    d = std::sqrt(d);
    m[j * k + j] = d;
    for (std::size_t i = j + 1; i < k; ++i) {
      double v = m[i * k + j];
      for (std::size_t p = 0; p < j; ++p) {
        v -= m[i * k + p] * m[j * k + p];
      }
      m[i * k + j] = v / d;
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    double v = b[i];
    for (std::size_t p = 0; p < i; ++p) {
      v -= m[i * k + p] * b[p];
    }
    b[i] = v / m[i * k + i];
  }
  for (std::size_t i = k; i-- > 0;) {
    double v = b[i];
    for (std::size_t p = i + 1; p < k; ++p) {
      v -= m[p * k + i] * b[p];
    }
    b[i] = v / m[i * k + i];
  }
  return true;
}

// Damped Gauss-Newton on R(A) = A*A - q A^n over R^{2 d^2}, renormalizing
// after each accepted step. Returns the number of steps taken.
std::size_t polish(Matrix& a, double& f, const SearchConfig& config) {
  const std::size_t d = a.rows();
  const std::size_t k = 2 * d * d;
  const unsigned n = config.n;
  const double q = config.q;
  double mu = -1.0;
  std::size_t steps = 0;
  std::vector<double> jac(k * k);
  std::vector<double> jtj(k * k);
  std::vector<double> rhs(k);
  for (; steps < config.polish_iters && f > 0.0; ++steps) {
    std::vector<Matrix> powers{Matrix::identity(d)};
    for (unsigned j = 1; j < n; ++j) {
      powers.push_back(mul(powers.back(), a));
    }
    const Matrix a_adj = adjoint(a);
    // Column c of J is vec(dR[E_c]); E_c is a unit real or imaginary entry.
    for (std::size_t c = 0; c < k; ++c) {
      Matrix e(d, d);
      e(c / 2 / d, c / 2 % d) = c % 2 == 0 ? Complex(1.0) : Complex(0.0, 1.0);
      Matrix dr = mul(adjoint(e), a) + mul(a_adj, e);
      for (unsigned j = 0; j < n; ++j) {
        dr -= Complex(q) * mul(mul(powers[j], e), powers[n - 1 - j]);
      }
      const auto v = dr.data();
      for (std::size_t i = 0; i < d * d; ++i) {
        jac[(2 * i) * k + c] = v[i].real();
        jac[(2 * i + 1) * k + c] = v[i].imag();
      }
    }
    const auto r = residual_matrix(a, n, q);
    const auto rv = r.data();
    for (std::size_t c = 0; c < k; ++c) {
      double s = 0.0;
      for (std::size_t i = 0; i < d * d; ++i) {
        s += jac[(2 * i) * k + c] * rv[i].real() + jac[(2 * i + 1) * k + c] * rv[i].imag();
      }
      rhs[c] = -s;
    }
    double diag_max = 0.0;
    for (std::size_t x = 0; x < k; ++x) {
      for (std::size_t y = x; y < k; ++y) {
        double s = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
          s += jac[i * k + x] * jac[i * k + y];
        }
        jtj[x * k + y] = s;
        jtj[y * k + x] = s;
      }
      diag_max = std::max(diag_max, jtj[x * k + x]);
    }
    if (mu < 0.0) {
      mu = 1e-6 * diag_max;
    }
    bool accepted = false;
    while (!accepted && mu <= 1e6 * diag_max) {
      std::vector<double> m = jtj;
      for (std::size_t x = 0; x < k; ++x) {
        m[x * k + x] += mu;
      }
      std::vector<double> step = rhs;
      if (cholesky_solve(std::move(m), step, k)) {
        Matrix candidate = a;
        for (std::size_t i = 0; i < d * d; ++i) {
          candidate(i / d, i % d) += Complex(step[2 * i], step[2 * i + 1]);
        }
        candidate = normalized(std::move(candidate));
        const double fc = objective(candidate, n, q);
        if (fc < f) {
          a = std::move(candidate);
          f = fc;
          mu /= 4.0;
          accepted = true;
          break;
        }
      }
      mu *= 8.0;
    }
    if (!accepted) {
      break;
    }
  }
  return steps;
}

} // namespace

double objective(const Matrix& a, unsigned n, double q) {
  check_args(a, n, q, "objective");
  const double r = frobenius_norm(residual_matrix(a, n, q));
  return r * r;
}

Matrix gradient(const Matrix& a, unsigned n, double q) {
  check_args(a, n, q, "gradient");
  const Matrix r = residual_matrix(a, n, q);
  const Matrix r_adj = adjoint(r);
  const Matrix a_adj = adjoint(a);

  std::vector<Matrix> adj_powers{Matrix::identity(a.rows())};
  for (unsigned j = 1; j < n; ++j) {
    adj_powers.push_back(mul(adj_powers.back(), a_adj));
  }
  Matrix sum(a.rows(), a.cols());
  for (unsigned j = 0; j < n; ++j) {
    sum += mul(mul(adj_powers[j], r), adj_powers[n - 1 - j]);
  }
  Matrix g = mul(a, r_adj) + mul(a, r);
  g -= Complex(q) * sum;
  return g;
}

Matrix restart_point(const SearchConfig& config, std::size_t index) {
  const Seed seed = derive_seed(config.seed, index);
  switch (config.structured_starts ? index : 3) {
  case 0:
    return normalized(random_hermitian(config.dim, seed));
  case 1:
    return normalized(random_skew_hermitian(config.dim, seed));
  case 2: {
    std::vector<Complex> roots(config.dim);
    for (std::size_t i = 0; i < config.dim; ++i) {
      roots[i] = root_of_unity(static_cast<unsigned>(i + 1), config.n);
    }
    return normalized(Matrix::diagonal(roots));
  }
  default: {
    Rng rng(seed);
    return normalized(gaussian_matrix(config.dim, rng));
  }
  }
}

SearchResult minimize(const SearchConfig& config, const IterateObserver& observer) {
  if (config.restarts < 1 || !(config.step > 0.0) || !(config.shrink > 0.0) ||
      !(config.shrink < 1.0) || config.dim < 1) {
    throw InvalidArgument("minimize: invalid search configuration");
  }
  constexpr int kMaxBacktracks = 80;
  constexpr double kPolishBelow = 1e-8; // objective, i.e. residual 1e-4

  SearchResult best;
  double best_f = std::numeric_limits<double>::infinity();
  for (std::size_t restart = 0; restart < config.restarts; ++restart) {
    Matrix a = restart_point(config, restart);
    double f = objective(a, config.n, config.q);
    if (observer) {
      observer(a, f);
    }
    bool converged = false;
    std::size_t iters = 0;
    double trial = config.step;
    Matrix prev_a = a;
    Matrix prev_g(a.rows(), a.cols());
    bool have_prev = false;

    for (; iters < config.max_iters; ++iters) {
      Matrix g = gradient(a, config.n, config.q);
      g -= Complex(real_inner(a, g)) * a; // tangent to the unit sphere at a
      if (frobenius_norm(g) <= config.grad_tol) {
        converged = true;
        break;
      }
      if (have_prev) {
        const Matrix s = a - prev_a;
        const Matrix y = g - prev_g;
        const double sy = std::abs(real_inner(s, y));
        if (sy > 0.0) {
          trial = real_inner(s, s) / sy;
        }
      }
      bool accepted = false;
      for (int k = 0; k < kMaxBacktracks; ++k) {
        Matrix candidate = a;
        candidate -= Complex(trial) * g;
        candidate = normalized(std::move(candidate));
        const double fc = objective(candidate, config.n, config.q);
        if (fc < f) {
          prev_a = std::move(a);
          prev_g = std::move(g);
          have_prev = true;
          a = std::move(candidate);
          f = fc;
          accepted = true;
          break;
        }
        trial *= config.shrink;
      }
      if (!accepted) {
        // No representable decrease along -g: stationary at rounding level.
        converged = f == 0.0;
        break;
      }
      if (observer) {
        observer(a, f);
      }
    }
    // Polish only near a zero; elsewhere descent has already found the basin floor.
    if (config.polish_iters > 0 && f > 0.0 && f <= kPolishBelow) {
      iters += polish(a, f, config);
      if (observer) {
        observer(a, f);
      }
      Matrix g = gradient(a, config.n, config.q);
      g -= Complex(real_inner(a, g)) * a;
      converged = converged || f == 0.0 || frobenius_norm(g) <= config.grad_tol;
    }
    best.iterations_used += iters;
    if (f < best_f) {
      best_f = f;
      best.best_matrix = a;
      best.best_restart = restart;
      best.converged = converged;
    }
  }
  best.best_residual = equation_residual(best.best_matrix, config.n, config.q);
  return best;
}

} // namespace genproj
