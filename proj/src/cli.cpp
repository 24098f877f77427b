#include "genproj/cli.hpp"

#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "genproj/errors.hpp"
#include "genproj/json_io.hpp"
#include "genproj/randgen.hpp"
#include "genproj/spectral.hpp"
#include "genproj/theorems.hpp"

namespace genproj {

namespace {

struct CommandConfig {
  std::string command;
  std::string input;
  std::string output;
  unsigned n = 0;
  unsigned n_max = 0;
  std::vector<double> q;
  double tol_abs = Tolerance{}.abs;
  double tol_rel = Tolerance{}.rel;
  std::size_t trials = 200;
  std::vector<std::size_t> dims;
  std::uint64_t seed = 42;
  std::string statements = "all";
  std::string format = "json";
  std::size_t restarts = 50;
  std::string kind;
  unsigned threads = 1;

  Tolerance tol() const { return Tolerance{tol_abs, tol_rel}; }
};

class Emitter {
public:
  Emitter(const CommandConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  void emit(const Json& report, const std::string& text) const {
    const std::string body = cfg_.format == "text" ? text : report.dump(2) + "\n";
    if (cfg_.output.empty()) {
      out_ << body;
    } else {
      write_text_file(cfg_.output, body);
    }
  }

private:
  const CommandConfig& cfg_;
  std::ostream& out_;
};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

std::string opt_fmt(const std::optional<double>& v) { return v ? fmt(*v) : "n/a"; }

std::string report_text(const GenProjReport& r) {
  std::ostringstream s;
  s << "n=" << r.n << " verdict=" << (r.verdict ? "true" : "false")
    << " residual=" << fmt(r.equation_residual) << " threshold=" << fmt(r.threshold)
    << " power_adjoint=" << opt_fmt(r.power_adjoint_residual)
    << " spectrum_distance=" << opt_fmt(r.spectrum_distance)
    << " operator_norm=" << opt_fmt(r.operator_norm) << "\n";
  return s.str();
}

std::string check_text(const CheckReport& r) {
  std::ostringstream s;
  s << r.statement_id << " dim=" << r.dim << " verdict=" << (r.verdict ? "true" : "false")
    << " trials=" << r.trials << " rejected=" << r.hypothesis_failures
    << " violations=" << r.violations << " conclusion_max=" << fmt(r.conclusion_residual_max)
    << " [" << r.notes << "]\n";
  return s.str();
}

int cmd_check(const CommandConfig& cfg, const Emitter& emit) {
  const Matrix a = matrix_from_json(read_json_file(cfg.input));
  if (cfg.n != 0) {
    const GenProjReport r = is_generalized_projection(a, cfg.n, cfg.tol());
    emit.emit(to_json(r), report_text(r));
    return r.verdict ? kExitOk : kExitVerdictFalse;
  }
  const auto reports = scan_n(a, cfg.n_max, cfg.tol());
  Json scans = Json::array();
  std::string text;
  bool any = false;
  for (const GenProjReport& r : reports) {
    scans.push_back(to_json(r));
    text += report_text(r);
    any = any || r.verdict;
  }
  emit.emit(Json{{"n_max", cfg.n_max}, {"scan", std::move(scans)}}, text);
  return any ? kExitOk : kExitVerdictFalse;
}

int cmd_decompose(const CommandConfig& cfg, const Emitter& emit, std::ostream& err) {
  const Matrix a = matrix_from_json(read_json_file(cfg.input));
  try {
    const GenProjForm form = decompose(a, cfg.n, cfg.tol());
    std::ostringstream text;
    text << "n=" << form.n << " kernel_rank=" << std::llround(trace(form.kernel).real());
    for (unsigned k = 1; k <= form.n; ++k) {
      text << " rank(P_" << k << ")=" << std::llround(trace(form.projections[k - 1]).real());
    }
    text << "\n";
    emit.emit(to_json(form), text.str());
    return kExitOk;
  } catch (const NotASolutionError& e) {
    err << e.what() << "\n";
    return kExitVerdictFalse;
  }
}

int cmd_reconstruct(const CommandConfig& cfg, const Emitter& emit, std::ostream& err) {
  const GenProjForm form = form_from_json(read_json_file(cfg.input));
  try {
    const Matrix a = reconstruct(form, cfg.tol());
    emit.emit(to_json(a), to_json(a).dump() + "\n");
    return kExitOk;
  } catch (const InvalidProjectionFamilyError& e) {
    err << e.what() << "\n";
    return kExitVerdictFalse;
  }
}

int cmd_classify(const CommandConfig& cfg, const Emitter& emit) {
  const Matrix a = matrix_from_json(read_json_file(cfg.input));
  const ClassReport r = classify(a, cfg.tol());
  std::ostringstream text;
  for (const auto& [name, verdict] : r.verdicts) {
    text << name << "=" << (verdict ? "true" : "false") << "\n";
  }
  text << "hyponormal_min_eig=" << fmt(r.hyponormal_min_eig) << "\n";
  emit.emit(to_json(r), text.str());
  return kExitOk;
}

std::vector<Statement> parse_statements(const std::string& list) {
  if (list == "all") {
    return {kAllStatements.begin(), kAllStatements.end()};
  }
  std::vector<Statement> out;
  std::stringstream ss(list);
  std::string label;
  while (std::getline(ss, label, ',')) {
    const auto s = parse_statement(label);
    if (!s) {
      throw InvalidArgument("unknown statement \"" + label + "\"");
    }
    out.push_back(*s);
  }
  if (out.empty()) {
    throw InvalidArgument("--statements is empty");
  }
  return out;
}

int cmd_verify(const CommandConfig& cfg, const Emitter& emit) {
  CampaignConfig cc;
  cc.statements = parse_statements(cfg.statements);
  cc.trials = cfg.trials;
  if (!cfg.dims.empty()) {
    cc.dims = cfg.dims;
  }
  cc.seed = Seed{cfg.seed};
  cc.tol = cfg.tol();
  cc.threads = cfg.threads;
  const Campaign campaign = run_campaign(cc);
  std::string text;
  bool all = true;
  for (const CheckReport& r : campaign.reports) {
    text += check_text(r);
    all = all && r.verdict;
  }
  emit.emit(to_json(campaign), text);
  return all ? kExitOk : kExitVerdictFalse;
}

int cmd_qscan(const CommandConfig& cfg, const Emitter& emit) {
  const std::vector<double> grid = cfg.q.empty() ? default_q_grid() : cfg.q;
  const std::vector<std::size_t> dims = cfg.dims.empty() ? std::vector<std::size_t>{3} : cfg.dims;
  Json scans = Json::array();
  std::ostringstream text;
  text.precision(10);
  bool ok = true;
  for (std::size_t dim : dims) {
    const Seed seed = derive_seed(Seed{cfg.seed}, dim);
    const auto entries = q_scan(dim, grid, cfg.restarts, seed);
    Json jentries = Json::array();
    bool feasible_in_grid = false;
    bool floors_known = true;
    for (const QScanEntry& e : entries) {
      jentries.push_back(
          Json{{"q", e.q}, {"best_residual", e.best_residual}, {"converged", e.converged}});
      text << "dim=" << dim << " q=" << e.q << " best_residual=" << e.best_residual << "\n";
      const bool feasible = std::abs(std::abs(e.q) - 1.0) <= 1e-12;
      feasible_in_grid = feasible_in_grid || feasible;
      floors_known = floors_known && (feasible || separation_floor(dim, e.q).has_value());
    }
    Json scan{{"dim", dim}, {"restarts", cfg.restarts}, {"seed", seed.value},
              {"entries", std::move(jentries)}, {"report", nullptr}};
    // Judge only scans the frozen floors can speak for.
    if (feasible_in_grid && floors_known) {
      const CheckReport r = judge_q_dichotomy(entries, dim, cfg.restarts, seed, cfg.tol());
      scan["report"] = to_json(r);
      text << check_text(r);
      ok = ok && r.verdict;
    }
    scans.push_back(std::move(scan));
  }
  emit.emit(Json{{"n", 2}, {"scans", std::move(scans)}}, text.str());
  return ok ? kExitOk : kExitVerdictFalse;
}

int cmd_gen(const CommandConfig& cfg, const Emitter& emit) {
  if (cfg.dims.size() != 1) {
    throw InvalidArgument("gen needs exactly one dimension in --dims");
  }
  const std::size_t dim = cfg.dims.front();
  const Seed seed{cfg.seed};
  const unsigned n = cfg.n == 0 ? 3 : cfg.n;
  if (cfg.kind == "family") {
    const GenProjForm f = random_projection_family(dim, n, seed, true);
    emit.emit(to_json(f), to_json(f).dump() + "\n");
    return kExitOk;
  }
  Matrix m(dim, dim);
  if (cfg.kind == "haar") {
    m = haar_unitary(dim, seed);
  } else if (cfg.kind == "hermitian") {
    m = random_hermitian(dim, seed);
  } else if (cfg.kind == "skew") {
    m = random_skew_hermitian(dim, seed);
  } else if (cfg.kind == "counterexample") {
    m = unitary_counterexample(dim);
  } else if (cfg.kind == "solution") {
    m = reconstruct(random_projection_family(dim, n, seed, true));
  } else if (cfg.kind == "projection") {
    m = random_projection_family(dim, 2, seed, true).projections[0];
  } else {
    throw InvalidArgument("unknown --kind \"" + cfg.kind + "\"");
  }
  emit.emit(to_json(m), to_json(m).dump() + "\n");
  return kExitOk;
}

void add_tolerance(CLI::App* sub, CommandConfig& cfg) {
  sub->add_option("--tol-abs", cfg.tol_abs, "Absolute residual floor")->check(CLI::NonNegativeNumber);
  sub->add_option("--tol-rel", cfg.tol_rel, "Scale-relative residual factor")
      ->check(CLI::NonNegativeNumber);
}

void add_output(CLI::App* sub, CommandConfig& cfg) {
  sub->add_option("--output", cfg.output, "Write the report here instead of stdout");
  sub->add_option("--format", cfg.format, "Report format")
      ->check(CLI::IsMember({"json", "text"}));
}

} // namespace

std::vector<GenProjReport> scan_n(const Matrix& a, unsigned n_max, const Tolerance& tol) {
  if (n_max < 2) {
    throw InvalidArgument("scan_n: n_max must be at least 2");
  }
  std::vector<GenProjReport> out;
  for (unsigned n = 2; n <= n_max; ++n) {
    out.push_back(is_generalized_projection(a, n, tol));
  }
  return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CommandConfig cfg;
  if (const char* env = std::getenv("GENPROJ_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "GENPROJ_SEED is not an unsigned integer: " << env << "\n";
      return kExitUsage;
    }
  }

  CLI::App app{"Decide, decompose and stress-test solutions of A*A = A^n", "genproj"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "Test A*A = A^n for one n, or scan n = 2..n-max");
  check->add_option("--input", cfg.input, "Matrix JSON")->required();
  auto* check_n = check->add_option("--n", cfg.n, "Exponent")->check(CLI::Range(2u, 64u));
  auto* check_nmax = check->add_option("--n-max", cfg.n_max, "Scan n = 2..n-max")
                         ->check(CLI::Range(2u, 64u));
  check_n->excludes(check_nmax);
  add_tolerance(check, cfg);
  add_output(check, cfg);

  auto* dec = app.add_subcommand("decompose", "Split a solution into its projection family");
  dec->add_option("--input", cfg.input, "Matrix JSON")->required();
  dec->add_option("--n", cfg.n, "Exponent (n >= 3)")->required()->check(CLI::Range(3u, 64u));
  add_tolerance(dec, cfg);
  add_output(dec, cfg);

  auto* rec = app.add_subcommand("reconstruct", "Assemble sum_k e^{2k pi i/n} P_k");
  rec->add_option("--input", cfg.input, "Projection form JSON")->required();
  add_tolerance(rec, cfg);
  add_output(rec, cfg);

  auto* cls = app.add_subcommand("classify", "Operator-class residuals and verdicts");
  cls->add_option("--input", cfg.input, "Matrix JSON")->required();
  add_tolerance(cls, cfg);
  add_output(cls, cfg);

  auto* ver = app.add_subcommand("verify", "Run the seeded statement campaign");
  ver->add_option("--statements", cfg.statements, "Comma-separated labels, or all");
  ver->add_option("--trials", cfg.trials, "Trials per statement and dimension")
      ->check(CLI::PositiveNumber);
  ver->add_option("--dims", cfg.dims, "Dimensions, comma-separated")->delimiter(',');
  ver->add_option("--seed", cfg.seed, "Campaign seed (default: GENPROJ_SEED or 42)");
  ver->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  add_tolerance(ver, cfg);
  add_output(ver, cfg);

  auto* qs = app.add_subcommand("qscan", "Minimize ||A*A - q A^2||_F over unit-norm A");
  qs->add_option("--q", cfg.q, "q values, comma-separated (use --q=-2,...)")->delimiter(',');
  qs->add_option("--dims", cfg.dims, "Dimensions, comma-separated")->delimiter(',');
  qs->add_option("--restarts", cfg.restarts, "Restarts per q")->check(CLI::PositiveNumber);
  qs->add_option("--seed", cfg.seed, "Seed (default: GENPROJ_SEED or 42)");
  add_tolerance(qs, cfg);
  add_output(qs, cfg);

  auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
  gen->add_option("--kind", cfg.kind, "haar|hermitian|skew|counterexample|solution|projection|family")
      ->required();
  gen->add_option("--dims", cfg.dims, "Dimension")->delimiter(',')->required();
  gen->add_option("--n", cfg.n, "Exponent for solution/family (default 3)")
      ->check(CLI::Range(2u, 64u));
  gen->add_option("--seed", cfg.seed, "Seed (default: GENPROJ_SEED or 42)");
  add_output(gen, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << "Run with --help for usage.\n";
    return kExitUsage;
  }

  const Emitter emit(cfg, out);
  try {
    if (check->parsed()) {
      if (cfg.n == 0 && cfg.n_max == 0) {
        throw InvalidArgument("check needs --n or --n-max");
      }
      return cmd_check(cfg, emit);
    }
    if (dec->parsed()) {
      return cmd_decompose(cfg, emit, err);
    }
    if (rec->parsed()) {
      return cmd_reconstruct(cfg, emit, err);
    }
    if (cls->parsed()) {
      return cmd_classify(cfg, emit);
    }
    if (ver->parsed()) {
      return cmd_verify(cfg, emit);
    }
    if (qs->parsed()) {
      return cmd_qscan(cfg, emit);
    }
    return cmd_gen(cfg, emit);
  } catch (const NonConvergenceError& e) {
    err << "non-convergence: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

} // namespace genproj
