#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "genproj/cli.hpp"
#include "genproj/errors.hpp"
#include "genproj/json_io.hpp"
#include "genproj/randgen.hpp"
#include "oracles.hpp"

using namespace genproj;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "genproj");
  std::vector<const char*> argv;
  for (const std::string& a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const Json& content) {
  const auto path = std::filesystem::temp_directory_path() / ("genproj_test_cli_" + name);
  write_text_file(path, content.dump());
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const Tolerance kTol{};

} // namespace

TEST_CASE("check exit codes") {
  const std::string proj = temp_file("proj.json", to_json(random_projection_family(3, 2, Seed{1}, true).projections[0]));
  const std::string cex = temp_file("cex.json", to_json(unitary_counterexample(2)));

  const Run ok = run({"check", "--input", proj, "--n", "2"});
  CHECK(ok.code == kExitOk);
  const Json report = Json::parse(ok.out);
  CHECK(report.at("verdict") == true);
  CHECK(report.at("n") == 2);

  const Run no = run({"check", "--input", cex, "--n", "2"});
  CHECK(no.code == kExitVerdictFalse);
  CHECK(Json::parse(no.out).at("verdict") == false);

  CHECK(run({"check", "--input", proj}).code == kExitUsage);
  CHECK(run({"check", "--input", proj, "--n", "2", "--n-max", "4"}).code == kExitUsage);
  CHECK(run({"check", "--input", proj, "--n", "1"}).code == kExitUsage);
  CHECK(run({"check", "--input", "/nonexistent/a.json", "--n", "2"}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"verify", "--statements", "T-nothing"}).code == kExitUsage);
  CHECK(run({"gen", "--kind", "haar", "--dims", "2,3"}).code == kExitUsage);
  const Run help = run({"--help"});
  CHECK(help.code == kExitOk);
  CHECK(help.out.find("qscan") != std::string::npos);
}

TEST_CASE("scan_n examples") {
  const Matrix p = random_projection_family(4, 2, Seed{2}, true).projections[0];
  for (const GenProjReport& r : scan_n(p, 8, kTol)) {
    CHECK(r.verdict);
  }
  const Complex w = oracle::omega(1, 3);
  const auto roots = scan_n(Matrix::diagonal({w, w * w, 1.0}), 8, kTol);
  REQUIRE(roots.size() == 7);
  for (const GenProjReport& r : roots) {
    CHECK(r.verdict == (r.n == 3 || r.n == 6));
  }
  Rng rng(Seed{3});
  for (const GenProjReport& r : scan_n(gaussian_matrix(4, rng), 8, kTol)) {
    CHECK_FALSE(r.verdict);
  }
  CHECK_THROWS_AS(scan_n(p, 1, kTol), InvalidArgument);

  const std::string path = temp_file("roots.json", to_json(Matrix::diagonal({w, w * w, 1.0})));
  const Run scan = run({"check", "--input", path, "--n-max", "6"});
  CHECK(scan.code == kExitOk);
  CHECK(Json::parse(scan.out).at("scan").size() == 5);
}

TEST_CASE("decompose and reconstruct through files") {
  const GenProjForm f = random_projection_family(5, 3, Seed{4}, true);
  const std::string a = temp_file("sol.json", to_json(reconstruct(f)));
  const Run dec = run({"decompose", "--input", a, "--n", "3"});
  REQUIRE(dec.code == kExitOk);
  const GenProjForm back = form_from_json(Json::parse(dec.out));
  for (unsigned k = 0; k < 3; ++k) {
    CHECK(oracle::dist(back.projections[k], f.projections[k]) <= 1e-9);
  }
  const std::string fpath = temp_file("form.json", to_json(back));
  const Run rec = run({"reconstruct", "--input", fpath});
  REQUIRE(rec.code == kExitOk);
  CHECK(oracle::dist(matrix_from_json(Json::parse(rec.out)), reconstruct(f)) <= 1e-9);

  const std::string cex = temp_file("cex3.json", to_json(unitary_counterexample(2)));
  CHECK(run({"decompose", "--input", cex, "--n", "3"}).code == kExitVerdictFalse);
  GenProjForm broken = f;
  broken.projections[0] += Matrix::identity(5);
  CHECK(run({"reconstruct", "--input", temp_file("broken.json", to_json(broken))}).code ==
        kExitVerdictFalse);
}

TEST_CASE("classify and gen") {
  const Run gen = run({"gen", "--kind", "skew", "--dims", "3", "--seed", "5"});
  REQUIRE(gen.code == kExitOk);
  const Matrix k = matrix_from_json(Json::parse(gen.out));
  CHECK(k == random_skew_hermitian(3, Seed{5}));
  const Run cls = run({"classify", "--input", temp_file("skew.json", to_json(k))});
  REQUIRE(cls.code == kExitOk);
  const Json v = Json::parse(cls.out).at("verdicts");
  CHECK(v.at("skew") == true);
  CHECK(v.at("hermitian") == false);
  CHECK(v.at("normal") == true);

  const Run fam = run({"gen", "--kind", "family", "--dims", "4", "--n", "4", "--seed", "1"});
  REQUIRE(fam.code == kExitOk);
  CHECK(form_from_json(Json::parse(fam.out)).n == 4);
  CHECK(run({"gen", "--kind", "unknown", "--dims", "2"}).code == kExitUsage);
  const Run text = run({"classify", "--input", temp_file("skew2.json", to_json(k)), "--format", "text"});
  CHECK(text.out.find("skew=true") != std::string::npos);
}

TEST_CASE("verify is byte-deterministic and writes --output") {
  const std::vector<std::string> args{"verify", "--statements", "P-skew,P-coupled", "--trials", "20",
                                      "--dims", "2,3", "--seed", "7"};
  const Run a = run(args);
  const Run b = run(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  const Json j = Json::parse(a.out);
  CHECK(j.at("reports").size() == 4);
  CHECK(j.at("seed") == 7);

  const auto path = (std::filesystem::temp_directory_path() / "genproj_test_cli_verify.json").string();
  std::vector<std::string> with_output = args;
  with_output.push_back("--output");
  with_output.push_back(path);
  const Run c = run(with_output);
  CHECK(c.code == kExitOk);
  CHECK(c.out.empty());
  CHECK(slurp(path) == a.out);
  std::vector<std::string> threaded = args;
  threaded.push_back("--threads");
  threaded.push_back("2");
  CHECK(run(threaded).out == a.out);
}

TEST_CASE("GENPROJ_SEED sets the default seed") {
  const std::vector<std::string> args{"gen", "--kind", "hermitian", "--dims", "3"};
  const Run def = run(args);
  CHECK(matrix_from_json(Json::parse(def.out)) == random_hermitian(3, Seed{42}));
  ::setenv("GENPROJ_SEED", "9", 1);
  const Run env = run(args);
  CHECK(matrix_from_json(Json::parse(env.out)) == random_hermitian(3, Seed{9}));
  std::vector<std::string> explicit_seed = args;
  explicit_seed.push_back("--seed");
  explicit_seed.push_back("11");
  CHECK(matrix_from_json(Json::parse(run(explicit_seed).out)) == random_hermitian(3, Seed{11}));
  ::setenv("GENPROJ_SEED", "not-a-number", 1);
  CHECK(run(args).code == kExitUsage);
  ::unsetenv("GENPROJ_SEED");
}

TEST_CASE("qscan judges only grids with known floors") {
  const Run r = run({"qscan", "--dims", "3", "--restarts", "5", "--q=-1,1,2"});
  REQUIRE(r.code == kExitOk);
  const Json j = Json::parse(r.out);
  REQUIRE(j.at("scans").size() == 1);
  const Json& scan = j.at("scans")[0];
  CHECK(scan.at("seed") == derive_seed(Seed{42}, 3).value);
  CHECK(scan.at("report").at("verdict") == true);
  CHECK(scan.at("entries").size() == 3);
  const Run unjudged = run({"qscan", "--dims", "5", "--restarts", "2", "--q=1,2"});
  CHECK(unjudged.code == kExitOk);
  CHECK(Json::parse(unjudged.out).at("scans")[0].at("report").is_null());
}
