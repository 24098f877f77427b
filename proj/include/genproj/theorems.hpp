#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "genproj/matrix.hpp"
#include "genproj/randgen.hpp"

namespace genproj {

/// Executable statements about A*A = A^n and its relatives, in the order
/// they are usually presented. Labels are frozen report identifiers.
enum class Statement {
  MainN2,       // T-main-n2: A*A = A^2 forces A = A*
  MainN3,       // T-main-n3: A*A = A^n, n >= 3, forces the root-of-unity form
  Reversed,     // C-reversed: AA* = A^2 forces A = A*
  Coupled,      // P-coupled: C*C = BC and B*B = CB force B = C*
  Intertwined,  // P-intertwined: A*A^2 = A*AA* forces A = A*
  Cubic,        // P-cubic: A*A = A*^2 A^2 = A^3 forces A = P0 + w P1 + w^2 P2
  ImagSpectrum, // L-imag: hyponormal with imaginary spectrum forces A* = -A
  Skew,         // P-skew: A*A = -A^2 forces A* = -A
  QDichotomy,   // P-qdichotomy: A*A = q A^2 with A != 0 forces q = +-1
};

inline constexpr std::array<Statement, 9> kAllStatements{
    Statement::MainN2,      Statement::MainN3, Statement::Reversed,
    Statement::Coupled,     Statement::Intertwined, Statement::Cubic,
    Statement::ImagSpectrum, Statement::Skew,  Statement::QDichotomy};

std::string_view statement_label(Statement s);
std::optional<Statement> parse_statement(std::string_view label);

/// Outcome of checking one statement over one or more inputs.
///
/// A trial is hypothesis-satisfying when its hypothesis residual is within
/// the caller's Tolerance; it is a violation when, in addition, its
/// conclusion residual exceeds conclusion_tolerance(tol). The verdict holds
/// iff at least one trial satisfied the hypothesis and none violated.
struct CheckReport {
  std::string statement_id;
  std::size_t trials = 0;
  std::size_t hypothesis_failures = 0;
  std::size_t violations = 0;
  double hypothesis_residual_max = 0.0; // over hypothesis-satisfying trials
  double conclusion_residual_max = 0.0; // over hypothesis-satisfying trials
  bool verdict = false;
  Seed seed{};
  std::size_t dim = 0;
  std::string notes;
};

struct Campaign {
  std::vector<std::string> statement_ids;
  std::size_t trials_per_statement = 0;
  std::vector<std::size_t> dims;
  Seed seed{};
  std::vector<CheckReport> reports; // statement-major, then dims in order
};

/// Conclusions are judged at ten times the absolute and a thousand times the
/// relative hypothesis tolerance (1e-9 * (1 + scale) by default): the
/// statements are exact but carry no modulus of continuity.
Tolerance conclusion_tolerance(const Tolerance& tol);

/// [[0, b], [c, 0]].
Matrix block_offdiag(const Matrix& b, const Matrix& c);

CheckReport verify_main(const Matrix& a, unsigned n, const Tolerance& tol);
CheckReport verify_coupled(const Matrix& b, const Matrix& c, const Tolerance& tol);
CheckReport verify_reversed_product(const Matrix& a, const Tolerance& tol);
CheckReport verify_intertwined(const Matrix& a, const Tolerance& tol);

/// P0 + w P1 + w^2 P2 with w = e^{2 pi i / 3}. Throws
/// InvalidProjectionFamilyError unless the inputs are pairwise orthogonal
/// orthogonal projections, or if the result misses either cubic identity.
Matrix construct_cubic(const Matrix& p0, const Matrix& p1, const Matrix& p2);
CheckReport verify_cubic(const Matrix& a, const Tolerance& tol);

CheckReport verify_imag_spectrum_lemma(const Matrix& a, const Tolerance& tol);
CheckReport verify_skew_equation(const Matrix& a, const Tolerance& tol);

/// The default q grid {-2, -1, -0.5, 0.5, 1, 2}.
std::vector<double> default_q_grid();

/// Empirical lower bound for min ||A*A - q A^2||_F over ||A||_F = 1, frozen
/// from a 10000-restart search run (see tests/fixtures/qfloor.json for the
/// command). Empty when no floor was recorded for (dim, q).
std::optional<double> separation_floor(std::size_t dim, double q);

struct QScanEntry {
  double q = 0.0;
  double best_residual = 0.0;
  bool converged = false;
};

/// Best unit-norm residual ||A*A - q A^2||_F per q, from `minimize` with
/// `restarts` restarts; the search for grid entry i uses derive_seed(seed, i).
std::vector<QScanEntry> q_scan(std::size_t dim, const std::vector<double>& q_grid,
                               std::size_t restarts, Seed seed);

/// Judges a finished scan; see verify_q_dichotomy.
CheckReport judge_q_dichotomy(const std::vector<QScanEntry>& scan, std::size_t dim,
                              std::size_t restarts, Seed seed, const Tolerance& tol,
                              std::optional<double> floor_override = std::nullopt);

/// For each q in the grid, runs `minimize` with n = 2 and `trials` restarts.
/// The verdict holds iff the best residual is within tol at q = +-1 and at or
/// above the separation floor at every other q. The infeasible side is
/// evidence from a finite search, not a proof, and the notes say so.
CheckReport verify_q_dichotomy(std::size_t dim, const std::vector<double>& q_grid,
                               std::size_t trials, Seed seed, const Tolerance& tol,
                               std::optional<double> floor_override = std::nullopt);

struct CampaignConfig {
  std::vector<Statement> statements{kAllStatements.begin(), kAllStatements.end()};
  std::size_t trials = 200;
  std::vector<std::size_t> dims{2, 4, 8};
  Seed seed{42};
  Tolerance tol{};
  unsigned threads = 1;
};

/// One report per (statement, dim). Trial t of statement s at dimension d
/// draws from a seed derived from (seed, s, d, t), so results do not depend
/// on the thread count.
Campaign run_campaign(const CampaignConfig& config);

/// Campaign report for a single (statement, dim) cell.
CheckReport run_statement(Statement s, std::size_t dim, std::size_t trials, Seed seed,
                          const Tolerance& tol, unsigned threads = 1);

} // namespace genproj
