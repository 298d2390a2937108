#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out, err;
};

fs::path workdir() {
  fs::path p(NETPUT_CLI_WORKDIR);
  fs::create_directories(p);
  return p;
}

std::string write_file(const std::string& name, const std::string& body) {
  fs::path p = workdir() / name;
  std::ofstream(p) << body;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Run run(const std::string& args, const std::string& env = "") {
  fs::path err = workdir() / "stderr.txt";
  std::string cmd = env + (env.empty() ? "" : " ") + std::string(NETPUT_EFF) + " " + args + " 2>" + err.string();
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err);
  return r;
}

using Row = std::map<std::string, std::string>;

std::vector<Row> parse_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<std::string> header;
  std::vector<Row> rows;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    if (header.empty()) {
      header = cells;
      continue;
    }
    Row r;
    for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i) r[header[i]] = cells[i];
    rows.push_back(r);
  }
  return rows;
}

double num(const std::string& s) {
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  return std::strtod(s.c_str(), nullptr);
}

const char* kFdhData = "id,x1,y1\nA,2,2\nB,4,5\nC,4,2\n";
const char* kVrsData = "id,x1,y1\nA,2,2\nB,4,5\nC,4,2\nD,5,5\n";

}  // namespace

TEST_CASE("eval on a free disposal hull") {
  auto data = write_file("fdh.csv", kFdhData);
  auto r = run("eval " + data + " --inputs 1 --outputs 1 --tech fdh --p 1 --p -inf --p inf");
  REQUIRE(r.code == 0);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 9);
  CHECK(rows[0]["id"] == "A");
  CHECK(rows[0]["p"] == "1");
  CHECK(num(rows[0]["score"]) == 0.0);
  CHECK(rows[0]["status"] == "efficient");
  // unit C with g = (4, 2): candidates (1/2 + 0)/2 and (0 + 3/2)/2
  CHECK(rows[6]["id"] == "C");
  CHECK(num(rows[6]["score"]) == doctest::Approx(0.75));
  CHECK(num(rows[6]["delta_y1"]) == doctest::Approx(1.5));
  CHECK(num(rows[6]["proj_y1"]) == doctest::Approx(5.0));
  CHECK(rows[7]["p"] == "-inf");
  CHECK(num(rows[8]["score"]) == doctest::Approx(1.5));
}

TEST_CASE("the -inf column is the directional distance") {
  auto data = write_file("vrs.csv", kVrsData);
  auto e = run("eval " + data + " --inputs 1 --outputs 1 --p=-inf");
  auto c = run("classify " + data + " --inputs 1 --outputs 1");
  REQUIRE(e.code == 0);
  REQUIRE(c.code == 0);
  auto er = parse_csv(e.out), cr = parse_csv(c.out);
  REQUIRE(er.size() == cr.size());
  for (std::size_t i = 0; i < er.size(); ++i) CHECK(er[i]["score"] == cr[i]["score_directional"]);
}

TEST_CASE("dual reports") {
  auto data = write_file("vrs.csv", kVrsData);
  auto r = run("dual " + data + " --inputs 1 --outputs 1 --p -inf --p inf --p 0.5 --tol 1e-6");
  REQUIRE(r.code == 0);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 12);
  for (auto& row : rows) {
    CHECK(row["status"] == "ok");
    CHECK(num(row["dual_gap"]) <= 1e-6);
    CHECK(row["gap_ok"] == "true");
    if (row["p"] == "inf") {
      CHECK(row["normalization"] == "dot_g");
      CHECK(num(row["residual"]) <= 1e-7);
    }
  }

  auto fdh = write_file("fdh.csv", kFdhData);
  auto f = run("dual " + fdh + " --inputs 1 --outputs 1 --tech fdh --p 0 --p 1");
  CHECK(f.code == 0);
  auto frows = parse_csv(f.out);
  REQUIRE(frows.size() == 6);
  CHECK(frows[0]["status"] == "convexity-required");
  CHECK(frows[0]["criterion"] == "minimization");
  CHECK(frows[1]["status"] == "ok");
}

TEST_CASE("classification") {
  auto data = write_file("vrs.csv", kVrsData);
  auto r = run("classify " + data + " --inputs 1 --outputs 1");
  REQUIRE(r.code == 0);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0]["status"] == "efficient");
  CHECK(rows[1]["status"] == "efficient");
  CHECK(rows[2]["status"] == "inefficient");
  CHECK(num(rows[2]["score_directional"]) > 0.0);
  CHECK(num(rows[2]["score_fare_lovell"]) > 0.0);
  // D = (-5, 5) can save input but not add output
  CHECK(rows[3]["status"] == "weakly-efficient");
  CHECK(rows[3]["witness"] == "y1");
  CHECK(num(rows[3]["score_directional"]) == doctest::Approx(0.0));
  CHECK(num(rows[3]["score_fare_lovell"]) == doctest::Approx(0.1));
  for (auto& row : rows) CHECK(row["consistent"] == "true");
}

TEST_CASE("csv scores round-trip bitwise") {
  auto data = write_file("vrs.csv", kVrsData);
  std::string args = "eval " + data + " --inputs 1 --outputs 1 --p -inf --p -0.5 --p 0 --p 0.5 --p 1 --p 2 --p inf";
  auto csv = run(args + " --format csv");
  auto js = run(args + " --format json");
  REQUIRE(csv.code == 0);
  REQUIRE(js.code == 0);
  auto rows = parse_csv(csv.out);
  auto arr = nlohmann::json::parse(js.out);
  REQUIRE(rows.size() == arr.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double a = num(rows[i]["score"]);
    double b = arr[i]["score"].is_string() ? num(arr[i]["score"].get<std::string>()) : arr[i]["score"].get<double>();
    CHECK(std::memcmp(&a, &b, sizeof a) == 0);
  }
}

TEST_CASE("json output uses strings for infinite scores") {
  auto data = write_file("outside.csv", "id,x1,y1\nA,2,2\nB,0,0\n");
  auto r = run("eval " + data + " --inputs 1 --outputs 1 --direction unit --format json");
  REQUIRE(r.code == 0);
  auto arr = nlohmann::json::parse(r.out);
  REQUIRE(arr.size() == 2);
  CHECK(arr[1]["score"].is_number());
  auto h = write_file("box.txt", "1 0 <= 0\n1 1 <= 0\n0 1 <= 2\n");
  auto o = write_file("far.csv", "id,x1,y1\nA,1,2\n");
  auto q = run("eval " + o + " --inputs 1 --outputs 1 --tech hrep --hrep " + h + " --direction unit --format json");
  REQUIRE(q.code == 0);
  auto arr2 = nlohmann::json::parse(q.out);
  CHECK(arr2[0]["score"] == "-inf");
  CHECK(arr2[0]["status"] == "infeasible");
}

TEST_CASE("halfspace technology and custom directions") {
  auto h = write_file("example.txt", "# x1 <= 0\n1 0 <= 0\n1 1 <= 0\n0 1 <= 2\n");
  auto data = write_file("one.csv", "id,x1,y1\nz,3,2\nw,3,1\n");
  auto r = run("eval " + data + " --inputs 1 --outputs 1 --tech hrep:" + h + " --direction unit --p 1 --p -inf");
  REQUIRE(r.code == 0);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(num(rows[0]["score"]) == doctest::Approx(0.5));
  CHECK(num(rows[1]["score"]) == doctest::Approx(0.0));
  CHECK(num(rows[3]["score"]) == doctest::Approx(1.0));

  auto g = write_file("dir.txt", "1, 0\n");
  auto c = run("eval " + data + " --inputs 1 --outputs 1 --tech hrep --hrep " + h + " --direction custom:" + g +
               " --p=-inf");
  REQUIRE(c.code == 0);
  auto crow = parse_csv(c.out);
  CHECK(num(crow[0]["score"]) == doctest::Approx(1.0));
  CHECK(num(crow[1]["score"]) == doctest::Approx(2.0));
}

TEST_CASE("observed direction warns about zero components") {
  auto data = write_file("zero.csv", "id,x1,y1\nA,2,2\nB,2,0\n");
  auto r = run("eval " + data + " --inputs 1 --outputs 1");
  CHECK(r.code == 0);
  CHECK(r.err.find("warning: unit B") != std::string::npos);
}

TEST_CASE("unsupported rows set exit code 2") {
  auto data = write_file("four.csv", "id,x1,x2,y1,y2\nA,1,2,3,4\nB,2,1,4,3\nC,3,3,3,3\n");
  auto r = run("eval " + data + " --inputs 2 --outputs 2 --p 1 --p 2");
  CHECK(r.code == 2);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0]["status"] != "unsupported");
  CHECK(rows[5]["status"] == "unsupported");
  CHECK(rows[5]["score"].empty());
}

TEST_CASE("input errors") {
  auto bad = write_file("bad.csv", "id,x1,y1\nA,2,2\nB,4,x\n");
  auto r = run("eval " + bad + " --inputs 1 --outputs 1");
  CHECK(r.code == 1);
  CHECK(r.err.find("parse error") != std::string::npos);
  CHECK(r.err.find("bad.csv:3") != std::string::npos);

  auto dup = write_file("dup.csv", "id,x1,y1\nA,2,2\nA,4,5\n");
  CHECK(run("eval " + dup + " --inputs 1 --outputs 1").err.find("duplicate id") != std::string::npos);

  auto neg = write_file("neg.csv", "id,x1,y1\nA,-2,2\n");
  CHECK(run("eval " + neg + " --inputs 1 --outputs 1").code == 1);

  auto good = write_file("fdh.csv", kFdhData);
  auto m = run("eval " + good + " --inputs 2 --outputs 1");
  CHECK(m.code == 1);
  CHECK(m.err.find("config error") != std::string::npos);

  CHECK(run("eval " + good + " --inputs 1 --outputs 1 --p banana").code == 1);
  CHECK(run("eval " + good + " --inputs 1 --outputs 1 --tol 0").code == 1);
  CHECK(run("eval " + good + " --inputs 1 --outputs 1 --tech hrep").code == 1);
  CHECK(run("eval " + good + " --inputs 1 --outputs 1", "NETPUT_EFF_THREADS=zero").code == 1);
  auto h = write_file("short.txt", "1 <= 0\n");
  CHECK(run("eval " + good + " --inputs 1 --outputs 1 --tech hrep --hrep " + h).err.find("config error") !=
        std::string::npos);
}

TEST_CASE("thread count does not change the report") {
  auto data = write_file("vrs.csv", kVrsData);
  std::string args = "eval " + data + " --inputs 1 --outputs 1 --p -1 --p 0.5 --p 1";
  auto one = run(args, "NETPUT_EFF_THREADS=1");
  auto many = run(args, "NETPUT_EFF_THREADS=4");
  REQUIRE(one.code == 0);
  CHECK(one.out == many.out);
}

TEST_CASE("report file output") {
  auto data = write_file("fdh.csv", kFdhData);
  fs::path out = workdir() / "report.json";
  fs::remove(out);
  auto r = run("eval " + data + " --inputs 1 --outputs 1 --tech fdh --format json --out " + out.string());
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(nlohmann::json::parse(slurp(out)).size() == 3);
}

TEST_CASE("oracle subcommand is hidden but usable") {
  auto help = run("--help");
  CHECK(help.out.find("oracle") == std::string::npos);
  CHECK(help.out.find("classify") != std::string::npos);
  auto data = write_file("fdh.csv", kFdhData);
  auto r = run("oracle " + data + " --inputs 1 --outputs 1 --tech fdh --p 0.5 --p 1 --resolution 101");
  CHECK(r.code == 0);
  for (auto& row : parse_csv(r.out)) CHECK(row["agrees"] == "true");
}
