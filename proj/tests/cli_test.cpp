#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

// End-to-end tests run the installed binary through a shell, capture both
// streams, and inspect the CSV output byte for byte.

namespace {

namespace fs = std::filesystem;

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("gt-cli-test-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path scratch_file(const std::string& name) {
  static int counter = 0;
  return scratch_dir() / (std::to_string(counter++) + "-" + name);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args) {
  const fs::path out_path = scratch_file("stdout");
  const fs::path err_path = scratch_file("stderr");
  const std::string cmd = std::string("\"") + GT_CLI_PATH + "\" " + args + " > \"" +
                          out_path.string() + "\" 2> \"" + err_path.string() + "\"";
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

// Finds the CSV data row whose first field parses to `p` (within 1e-9).
std::vector<std::string> sweep_row_at(const std::vector<std::string>& lines, double p) {
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> fields = fields_of(lines[i]);
    if (!fields.empty() && std::fabs(std::stod(fields[0]) - p) < 1e-9) return fields;
  }
  return {};
}

}  // namespace

TEST_CASE("sweep writes the default grid with the exact header") {
  const fs::path csv = scratch_file("sweep.csv");
  const CliResult r = run_cli("sweep --out \"" + csv.string() + "\"");
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "sweep: 100 rows -> "));

  const std::vector<std::string> lines = lines_of(slurp(csv));
  REQUIRE(lines.size() == 101);  // header + one row per grid point
  CHECK(lines[0] == "p,m_zero,A_zero,R_zero,m_avg,A_avg,R_avg");
  for (std::size_t i = 1; i < lines.size(); ++i)
    CHECK(fields_of(lines[i]).size() == 7);

  const std::vector<std::string> at_01 = sweep_row_at(lines, 0.1);
  REQUIRE(at_01.size() == 7);
  CHECK(at_01[1] == "8");  // zero-error block size at p = 0.1
  CHECK(at_01[4] == "7");  // average-case block size at p = 0.1

  const std::vector<std::string> at_05 = sweep_row_at(lines, 0.5);
  REQUIRE(at_05.size() == 7);
  CHECK(at_05[1] == "1");
  CHECK(std::stod(at_05[2]) == doctest::Approx(1.0).epsilon(1e-12));  // A_zero
  CHECK(std::stod(at_05[3]) == doctest::Approx(1.0).epsilon(1e-12));  // R_zero
  CHECK(at_05[4] == "1");
  CHECK(std::stod(at_05[5]) == doctest::Approx(1.0).epsilon(1e-12));  // A_avg
}

TEST_CASE("sweep output is identical across runs and between stdout and file") {
  const CliResult direct = run_cli("sweep");
  REQUIRE(direct.code == 0);

  const fs::path first = scratch_file("sweep-a.csv");
  const fs::path second = scratch_file("sweep-b.csv");
  REQUIRE(run_cli("sweep --out \"" + first.string() + "\"").code == 0);
  REQUIRE(run_cli("sweep --out \"" + second.string() + "\"").code == 0);

  const std::string file_bytes = slurp(first);
  CHECK(direct.out == file_bytes);
  CHECK(file_bytes == slurp(second));
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(run_cli("").code == 2);                   // a subcommand is required
  CHECK(run_cli("sweep --bogus").code == 2);      // unknown flag
  CHECK(run_cli("simulate --p 0.1").code == 2);   // --n is required
  CHECK(run_cli("simulate --n 10 --p 0.1 --mode sideways").code == 2);
  CHECK(run_cli("simulate --n 10 --p 0.1 --k 2").code == 2);  // p and k conflict
  CHECK(run_cli("simulate --n 10").code == 2);                // neither p nor k
  CHECK(run_cli("simulate --n 18 --p 0.1 --mode worst").code == 2);
  CHECK(run_cli("simulate --n 100 --p 0 --trials 2").code == 2);  // no optimal m at p=0
  CHECK(run_cli("simulate --n 100 --p 0 --m 7 --mode capped --trials 2").code == 2);
  CHECK(run_cli("simulate --n 18 --k 2 --m 3 --mode worst --trials 2").code == 2);
  CHECK(run_cli("sweep --p-min 0.4 --p-max 0.3").code == 2);
}

TEST_CASE("an unwritable output path exits with status 3") {
  const CliResult r = run_cli("sweep --out /nonexistent-dir-zzz/out.csv");
  CHECK(r.code == 3);
  CHECK(contains(r.err, "cannot open"));
  CHECK(run_cli("simulate --n 20 --p 0.1 --trials 2 --out /nonexistent-dir-zzz/out.csv").code == 3);
}

TEST_CASE("worst mode reproduces the exact worst-case test count") {
  const fs::path csv = scratch_file("worst.csv");
  const CliResult r = run_cli("simulate --n 18 --k 2 --m 4 --mode worst --trials 3 --out \"" +
                              csv.string() + "\"");
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "model=adversarial"));
  CHECK(contains(r.out, "worst_case_tests=10"));

  const std::vector<std::string> lines = lines_of(slurp(csv));
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "trial,seed,tests,success");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> fields = fields_of(lines[i]);
    REQUIRE(fields.size() == 4);
    CHECK(fields[0] == std::to_string(i - 1));
    CHECK(fields[2] == "10");
    CHECK(fields[3] == "1");
  }
}

TEST_CASE("a zero rate with an explicit block size costs one test per pass") {
  // No defectives: 14 passes of 7 clear 98 items, then 2 individual tests.
  const CliResult r = run_cli("simulate --n 100 --p 0 --m 7 --trials 5");
  REQUIRE(r.code == 0);
  const std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "trial,seed,tests,success");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> fields = fields_of(lines[i]);
    REQUIRE(fields.size() == 4);
    CHECK(fields[2] == "16");
    CHECK(fields[3] == "1");
  }
  CHECK(contains(r.err, "error_rate=0"));  // summary goes to stderr when CSV is on stdout
}

TEST_CASE("capped runs spend exactly the derived budget") {
  const fs::path csv = scratch_file("capped.csv");
  const CliResult r = run_cli(
      "simulate --n 1000 --p 0.1 --mode capped --trials 8 --delta 0.05 --out \"" +
      csv.string() + "\"");
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "m=7 (auto)"));
  CHECK(contains(r.out, "budget=497"));

  const std::vector<std::string> lines = lines_of(slurp(csv));
  REQUIRE(lines.size() == 9);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> fields = fields_of(lines[i]);
    REQUIRE(fields.size() == 4);
    CHECK(fields[2] == "497");
  }
}

TEST_CASE("simulation output is reproducible by seed") {
  const std::string base = "simulate --n 500 --p 0.1 --trials 20 --m 7 --seed ";
  const fs::path first = scratch_file("sim-a.csv");
  const fs::path second = scratch_file("sim-b.csv");
  const fs::path third = scratch_file("sim-c.csv");
  REQUIRE(run_cli(base + "777 --out \"" + first.string() + "\"").code == 0);
  REQUIRE(run_cli(base + "777 --out \"" + second.string() + "\"").code == 0);
  REQUIRE(run_cli(base + "778 --out \"" + third.string() + "\"").code == 0);

  const std::string first_bytes = slurp(first);
  CHECK(first_bytes == slurp(second));
  CHECK(first_bytes != slurp(third));
}

TEST_CASE("verify --level quick passes") {
  const CliResult r = run_cli("verify --level quick");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "[ ok ]"));
  CHECK(contains(r.out, "verification: PASS"));
}

TEST_CASE("--help exits with status 0") {
  const CliResult top = run_cli("--help");
  CHECK(top.code == 0);
  CHECK(contains(top.out, "sweep"));
  CHECK(contains(top.out, "simulate"));
  CHECK(contains(top.out, "verify"));
  CHECK(run_cli("simulate --help").code == 0);
}
