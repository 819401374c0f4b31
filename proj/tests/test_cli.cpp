#include <doctest.h>

#include <fstream>
#include <sstream>

#include "neocalc/cli.hpp"
#include "neocalc/report.hpp"
#include "support.hpp"

using neocalc::report::Json;

namespace {

struct InProcess {
  int code;
  std::string out;
  std::string err;
};

InProcess run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = neocalc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string h_csv() {
  return support::write_file("cli_h.csv", support::column_csv(support::alternating_h(1000)));
}

}  // namespace

TEST_CASE("seq-analyze reports the alternating sequence") {
  const auto r = run({"seq-analyze", "--in", h_csv(), "--r", "1", "--r", "2", "--tail-fraction", "0.2"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["schema_version"] == "neocalc/1");
  CHECK(j["results"]["measure_of_convergence"] == 1.0);
  CHECK(j["results"]["requested_sets"][0]["set"] == Json::array({1.0, 1.0}));
  CHECK(j["results"]["requested_sets"][1]["set"] == Json::array({0.0, 2.0}));
  CHECK(j["warnings"].empty());
}

TEST_CASE("seq-member flags rejected published claims") {
  const auto r = run({"seq-member", "--in", h_csv(), "--a", "0", "--a", "-1", "--a", "1", "--r", "1", "--r", "2",
                      "--oracle"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  const auto& pts = j["results"]["points"];
  CHECK(pts[0]["r_limits"][0]["is_r_limit"] == false);
  CHECK(pts[0]["r_limits"][0]["direct"]["holds"] == false);
  CHECK(pts[1]["r_limits"][1]["is_r_limit"] == false);
  CHECK(pts[2]["r_limits"][1]["is_r_limit"] == true);
  CHECK(j["warnings"].size() == 2);
  CHECK(j["warnings"][0]["code"] == "h-limit-claim");
}

TEST_CASE("fn-analyze on abs at 0") {
  const auto r = run({"fn-analyze", "--builtin", "abs", "--x", "0", "--mode", "centered", "--r", "1", "--r", "0"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["results"]["strong_sets"][0]["set"] == Json::array({0.0, 0.0}));
  CHECK(j["results"]["strong_sets"][1]["set"].is_null());
  CHECK(j["results"]["defect"] == 1.0);
  CHECK(j["warnings"].size() == 1);
}

TEST_CASE("fn-profile writes rows and plot data") {
  const std::string plot = (support::tmp_dir() / "tent.tsv").string();
  const auto r = run({"fn-profile", "--builtin", "skew_tent:0.5,0", "--grid", "0:1:101", "--r", "0", "--plot-data", plot});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  const auto& rows = j["results"]["rows"];
  REQUIRE(rows.size() == 101);
  for (const auto& row : rows) CHECK(row["set"].is_null() == (row["x"].get<double>() == 0.5));
  std::ifstream in(plot);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 102);
}

TEST_CASE("fn-analyze accepts sampled data") {
  std::ostringstream csv;
  csv.precision(17);
  csv << "x,y\n";
  for (int i = 0; i <= 400; ++i) {
    const double x = -1.0 + i * 0.005;
    csv << x << "," << std::fabs(x) << "\n";
  }
  const std::string path = support::write_file("cli_abs_samples.csv", csv.str());
  const auto r = run({"fn-analyze", "--in", path, "--x", "0", "--r", "1"});
  REQUIRE(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["diagnostics"]["mesh_limited"] == true);
  CHECK(j["results"]["defect"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("gallery-list enumerates spec strings") {
  const auto r = run({"gallery-list"});
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["results"]["functions"].size() == 6);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"seq-analyze"}).code == 2);
  CHECK(run({"seq-analyze", "--in", "/nonexistent/seq.csv"}).code == 2);
  CHECK(run({"fn-analyze", "--builtin", "abs", "--x", "0", "--r", "-1"}).code == 2);
  CHECK(run({"fn-analyze", "--builtin", "abs", "--in", "x.csv", "--x", "0"}).code == 2);
  CHECK(run({"fn-analyze", "--x", "0"}).code == 2);
  CHECK(run({"fn-analyze", "--builtin", "skew_tent:0.5,0", "--x", "2"}).code == 2);
  CHECK(run({"fn-analyze", "--builtin", "abs", "--x", "0", "--mode", "up"}).code == 2);
  CHECK(run({"fn-analyze", "--builtin", "skew_tent:2,0", "--x", "0"}).code == 2);
  CHECK(run({"fn-analyze", "--builtin", "nope", "--x", "0"}).code == 3);
  CHECK(run({"fn-profile", "--builtin", "abs", "--grid", "0:1"}).code == 3);
  CHECK(run({"fn-profile", "--builtin", "abs", "--grid", "0:1:1"}).code == 2);
  const std::string bad = support::write_file("cli_bad.csv", "value\n1\ntwo\n");
  CHECK(run({"seq-analyze", "--in", bad}).code == 3);
  const std::string tiny = support::write_file("cli_tiny.csv", "value\n1\n2\n");
  CHECK(run({"seq-analyze", "--in", tiny}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("evaluation budget comes from the environment") {
  const auto low = support::run_cli({"fn-analyze", "--builtin", "square", "--x", "1"}, "NEOCALC_EVAL_BUDGET=20");
  REQUIRE(low.exit_code == 0);
  const Json j = Json::parse(low.out);
  CHECK(j["diagnostics"]["eval_budget"] == 20);
  CHECK(j["diagnostics"]["budget_exhausted"] == true);
  CHECK(support::run_cli({"gallery-list"}, "NEOCALC_EVAL_BUDGET=0").exit_code == 0);
  CHECK(support::run_cli({"fn-analyze", "--builtin", "abs", "--x", "1"}, "NEOCALC_EVAL_BUDGET=lots").exit_code == 2);
}

TEST_CASE("--out writes the report to a file") {
  const std::string path = (support::tmp_dir() / "out.json").string();
  const auto r = run({"gallery-list", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(Json::parse(ss.str())["command"] == "gallery-list");
}
