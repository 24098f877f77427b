#include "genproj/json_io.hpp"

#include <fstream>
#include <sstream>

#include "genproj/errors.hpp"

namespace genproj {

namespace {

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw InvalidArgument(std::string("JSON: missing field \"") + name + "\"");
  }
  return j.at(name);
}

} // namespace

Json to_json(const Matrix& m) {
  Json data = Json::array();
  for (const Complex& z : m.data()) {
    data.push_back(Json::array({z.real(), z.imag()}));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const Json& j) {
  try {
    const auto rows = field(j, "rows").get<std::size_t>();
    const auto cols = field(j, "cols").get<std::size_t>();
    const Json& data = field(j, "data");
    if (!data.is_array()) {
      throw InvalidArgument("JSON: matrix data must be an array");
    }
    if (data.size() != rows * cols) {
      throw InvalidArgument("JSON: matrix data has " + std::to_string(data.size()) +
                            " entries, expected " + std::to_string(rows * cols));
    }
    std::vector<Complex> values;
    values.reserve(data.size());
    for (const Json& entry : data) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number()) {
        throw InvalidArgument("JSON: matrix entries must be [re, im] pairs");
      }
      values.emplace_back(entry[0].get<double>(), entry[1].get<double>());
    }
    return Matrix(rows, cols, std::move(values));
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("JSON: malformed matrix: ") + e.what());
  }
}

Json to_json(const GenProjForm& f) {
  Json projections = Json::array();
  for (const Matrix& p : f.projections) {
    projections.push_back(to_json(p));
  }
  return Json{{"n", f.n}, {"projections", std::move(projections)}, {"kernel", to_json(f.kernel)}};
}

GenProjForm form_from_json(const Json& j) {
  try {
    GenProjForm f;
    f.n = field(j, "n").get<unsigned>();
    for (const Json& p : field(j, "projections")) {
      f.projections.push_back(matrix_from_json(p));
    }
    f.kernel = matrix_from_json(field(j, "kernel"));
    return f;
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("JSON: malformed projection form: ") + e.what());
  }
}

Json to_json(const GenProjReport& r) {
  return Json{{"n", r.n},
              {"verdict", r.verdict},
              {"equation_residual", r.equation_residual},
              {"threshold", r.threshold},
              {"power_adjoint_residual", optional_number(r.power_adjoint_residual)},
              {"normality_residual", optional_number(r.normality_residual)},
              {"spectrum_distance", optional_number(r.spectrum_distance)},
              {"operator_norm", optional_number(r.operator_norm)},
              {"kernel_match", r.kernel_match ? Json(*r.kernel_match) : Json(nullptr)}};
}

Json to_json(const ClassReport& r) {
  return Json{{"residuals",
               {{"hermitian", r.hermitian},
                {"skew", r.skew},
                {"normal", r.normal},
                {"unitary", r.unitary},
                {"quasinormal", r.quasinormal},
                {"projection", r.projection}}},
              {"hyponormal_min_eig", r.hyponormal_min_eig},
              {"verdicts", r.verdicts}};
}

Json to_json(const SearchResult& r) {
  return Json{{"best_matrix", to_json(r.best_matrix)},
              {"best_residual", r.best_residual},
              {"best_restart", r.best_restart},
              {"iterations_used", r.iterations_used},
              {"converged", r.converged}};
}

Json to_json(const CheckReport& r) {
  return Json{{"statement_id", r.statement_id},
              {"trials", r.trials},
              {"hypothesis_failures", r.hypothesis_failures},
              {"violations", r.violations},
              {"hypothesis_residual_max", r.hypothesis_residual_max},
              {"conclusion_residual_max", r.conclusion_residual_max},
              {"verdict", r.verdict},
              {"seed", r.seed.value},
              {"dim", r.dim},
              {"notes", r.notes}};
}

CheckReport check_report_from_json(const Json& j) {
  try {
    CheckReport r;
    r.statement_id = field(j, "statement_id").get<std::string>();
    r.trials = field(j, "trials").get<std::size_t>();
    r.hypothesis_failures = field(j, "hypothesis_failures").get<std::size_t>();
    r.violations = field(j, "violations").get<std::size_t>();
    r.hypothesis_residual_max = field(j, "hypothesis_residual_max").get<double>();
    r.conclusion_residual_max = field(j, "conclusion_residual_max").get<double>();
    r.verdict = field(j, "verdict").get<bool>();
    r.seed = Seed{field(j, "seed").get<std::uint64_t>()};
    r.dim = field(j, "dim").get<std::size_t>();
    r.notes = field(j, "notes").get<std::string>();
    return r;
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("JSON: malformed check report: ") + e.what());
  }
}

Json to_json(const Campaign& c) {
  Json reports = Json::array();
  Json verdicts = Json::object();
  for (const CheckReport& r : c.reports) {
    reports.push_back(to_json(r));
    const bool prior = verdicts.contains(r.statement_id) ? verdicts[r.statement_id].get<bool>() : true;
    verdicts[r.statement_id] = prior && r.verdict;
  }
  return Json{{"statement_ids", c.statement_ids},
              {"trials_per_statement", c.trials_per_statement},
              {"dims", c.dims},
              {"seed", c.seed.value},
              {"statement_verdicts", std::move(verdicts)},
              {"reports", std::move(reports)}};
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::exception& e) {
    throw InvalidArgument("JSON: cannot parse " + path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  out << text;
  if (!out) {
    throw IoError("failed writing " + path.string());
  }
}

} // namespace genproj
