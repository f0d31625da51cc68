#include <filesystem>
#include <fstream>
#include <sstream>

#include "bmean/cli.hpp"
#include "doctest.h"
#include "json.hpp"

using bmean::cli::run_command;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

const std::vector<std::string> kTrig = {"--f", "sin(x)", "--g", "cos(x)", "--h", "sinh(x)",
                                        "--k", "cosh(x)", "--domain", "-1.3", "1.3"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

TEST_CASE("eval prints the mean") {
  const Run r = run({"eval", "--f", "x", "--g", "1", "--domain", "0", "10", "--x", "1", "--y", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "2\n");
  const Run q = run({"eval", "--w", "ln(x)", "--domain", "0.1", "100", "--x", "1", "--y", "4"});
  CHECK(q.code == 0);
  CHECK(std::stod(q.out) == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("classify tags and exit codes") {
  const Run cq = run(with({"classify"}, kTrig));
  CHECK(cq.code == 0);
  CHECK(cq.out.rfind("tag: CommonQuasiarithmetic", 0) == 0);

  const Run ne = run({"classify", "--f", "x", "--g", "1", "--h", "x^2", "--k", "x", "--domain", "0.5", "4"});
  CHECK(ne.code == 0);
  CHECK(ne.out.rfind("tag: NotEqual", 0) == 0);

  const Run js = run(with({"classify", "--format", "json"}, kTrig));
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j["tag"] == "CommonQuasiarithmetic");
  CHECK(j["witness"].is_null());
  CHECK(j["gamma"]["constants"]["value"].get<double>() == doctest::Approx(1.0));
  CHECK(j["evidence"]["vi"]["passed"] == true);
  CHECK(j["quadratic_forms"]["b"]["constants"]["a"].get<double>() == doctest::Approx(-1.0));
}

TEST_CASE("classify with impossible tolerances is inconclusive") {
  // A loose equality tolerance makes the Lehmer pair look equal while
  // neither mechanism can confirm it.
  const Run r = run({"classify", "--f", "x", "--g", "1", "--h", "x^2", "--k", "x", "--domain", "0.5",
                     "4", "--equality-tol", "10"});
  CHECK(r.code == 3);
  CHECK(r.out.rfind("tag: Inconclusive", 0) == 0);
}

TEST_CASE("csv output") {
  const Run r = run(with({"classify", "--format", "csv", "--grid", "5"}, kTrig));
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,y,meanA,meanB,diff");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 25);

  const Run f = run({"family", "--alpha", "1", "--w", "x", "--domain", "-2", "2", "--format", "csv",
                     "--table-nodes", "11"});
  CHECK(f.out.rfind("x,value\n", 0) == 0);
}

TEST_CASE("files written by --out and --csv-dir") {
  const auto dir = std::filesystem::temp_directory_path() / "bmean_cli_test";
  std::filesystem::remove_all(dir);
  const std::string json_path = (dir / "report.json").string();
  std::filesystem::create_directories(dir);
  const Run r = run({"reduce", "--f", "x", "--g", "1", "--h", "sin(x)", "--k", "cos(x)", "--domain",
                     "-1.3", "1.3", "--out", json_path, "--csv-dir", (dir / "tables").string()});
  CHECK(r.code == 0);
  for (const char* name : {"p", "q", "phi", "psi"}) {
    std::ifstream t(dir / "tables" / (std::string(name) + ".csv"));
    std::string header;
    std::getline(t, header);
    CHECK(header == "x,value");
  }
  std::ifstream j(json_path);
  const auto report = nlohmann::json::parse(j);
  CHECK(report["report"] == "reduce");
  CHECK(report["substitution_residual"].get<double>() <= 1e-9);
  std::filesystem::remove_all(dir);
}

TEST_CASE("config file with flag overrides") {
  const auto path = std::filesystem::temp_directory_path() / "bmean_cli_test.toml";
  {
    std::ofstream cfg(path);
    cfg << "# generator pair\n"
        << "f = \"sin(x)\"\n"
        << "g = \"cos(x)\"\n"
        << "domain = [-1.5, 1.5]\n"
        << "[eval]\n"
        << "x = 0.3\n"
        << "y = 0.7\n";
  }
  const Run r = run({"eval", "--config", path.string()});
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) == doctest::Approx(0.5).epsilon(1e-13));
  const Run o = run({"eval", "--config", path.string(), "--f", "x", "--g", "1", "--y", "0.5"});
  CHECK(std::stod(o.out) == doctest::Approx(0.4).epsilon(1e-13));

  {
    std::ofstream cfg(path);
    cfg << "f = \"x\"\nbogus = 1\n";
  }
  CHECK(run({"validate", "--config", path.string()}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("usage and validation errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"eval", "--f", "x", "--g", "1", "--domain", "0", "10", "--x", "1"}).code == 2);
  CHECK(run({"eval", "--f", "x", "--g", "1", "--domain", "10", "0", "--x", "1", "--y", "2"}).code == 2);
  CHECK(run({"classify", "--f", "x", "--g", "1", "--domain", "0", "1", "--grid", "3"}).code == 2);
  CHECK(run({"classify", "--f", "x", "--g", "1", "--domain", "0", "1", "--fit-tol", "-1"}).code == 2);
  CHECK(run({"validate", "--f", "x", "--g", "1", "--domain", "0", "1", "--format", "xml"}).code == 2);

  const Run parse = run({"validate", "--f", "2*x + + 3", "--g", "1", "--domain", "0", "1"});
  CHECK(parse.code == 2);
  CHECK(parse.err.find("position 6") != std::string::npos);
  CHECK(parse.err.find("expression grammar") != std::string::npos);

  const Run bad = run({"validate", "--f", "x^2", "--g", "1", "--domain", "-1", "1"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("ok: false") != std::string::npos);

  CHECK(run({"eval", "--f", "x^2", "--g", "1", "--domain", "-1", "1", "--x", "0.1", "--y", "0.2"}).code == 1);
  CHECK(run({"eval", "--f", "ln(x)", "--g", "1", "--domain", "-1", "1", "--x", "0.1", "--y", "0.2"}).code == 1);
  CHECK(run({"eval", "--f", "x", "--g", "1", "--domain", "0", "1", "--x", "0.0001", "--y", "0.2"}).code == 1);
  CHECK(run({"family", "--alpha", "-4", "--w", "x", "--domain", "-1", "1"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("json output is byte-identical across runs") {
  const auto args = with({"verify", "--format", "json"}, kTrig);
  const Run a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.size() > 100);
}
