// End-to-end checks of the command line tool. argv[1] must be the path to
// the wtg binary.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

#define REQUIRE(cond, msg)                                                   \
  do {                                                                       \
    if (!(cond)) {                                                           \
      std::cerr << "[FAIL] " << __FILE__ << ":" << __LINE__ << " " << (msg)  \
                << "\n";                                                     \
      ++g_failures;                                                          \
    }                                                                        \
  } while (0)

int run(const std::string& cmd) { return std::system((cmd + " > /dev/null 2>&1").c_str()); }

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Stratified "samples" whose order statistics equal the uniform quantiles
// exactly: n = m points at t + (k - 1/2)/n reproduce Unif[t, t+1] on the
// midpoint grid without estimation noise.
void write_translation_fixture(const fs::path& path, int n_times, int n_per_time) {
  std::ofstream out(path);
  out << "time,value\n";
  for (int i = 0; i < n_times; ++i) {
    const double t = static_cast<double>(i) / (n_times - 1);
    for (int k = 1; k <= n_per_time; ++k) {
      const double x = t + (2.0 * k - 1.0) / (2.0 * n_per_time);
      out << t << ',' << x << '\n';
    }
  }
}

void check_translation_gradient(const std::string& wtg) {
  const fs::path dir("cli_test_translation");
  fs::create_directories(dir);
  write_translation_fixture(dir / "samples.csv", 21, 200);

  const std::string cmd = wtg + " gradient --samples " + (dir / "samples.csv").string() +
                          " --support -0.5,2.5 --grid-m 200 --bandwidth 0.11" +
                          " --delta 0.02 --eval-times 0.3,0.5,0.7 --out " + dir.string();
  REQUIRE(run(cmd) == 0, "gradient run failed");

  std::ifstream in(dir / "gradient.csv");
  REQUIRE(in.good(), "gradient.csv missing");
  std::string line;
  std::getline(in, line);
  REQUIRE(line == "t,u,x,tau,endpoint_flag", "unexpected gradient.csv header");
  int rows = 0;
  double worst = 0.0;
  while (std::getline(in, line)) {
    double t = 0.0, u = 0.0, x = 0.0, tau = 0.0;
    int flag = 0;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%d", &t, &u, &x, &tau, &flag) == 5,
            "unparseable gradient row");
    worst = std::max(worst, std::abs(tau - 1.0));
    REQUIRE(flag == 0, "interior time flagged as endpoint");
    ++rows;
  }
  REQUIRE(rows == 3 * 200, "row count mismatch");
  REQUIRE(worst <= 1e-4, "physical gradient deviates from 1 by " + std::to_string(worst));
}

void check_parse_error_exit(const std::string& wtg) {
  const fs::path dir("cli_test_parse");
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "bad.csv");
    out << "time,value\n1,2\n1,oops\n";
  }
  const std::string cmd = wtg + " estimate-flow --samples " + (dir / "bad.csv").string() +
                          " --bandwidth 0.5 --out " + dir.string();
  REQUIRE(run(cmd) != 0, "parse error must exit nonzero");
}

void check_cv_single_candidate(const std::string& wtg) {
  const fs::path dir("cli_test_cv");
  fs::create_directories(dir);
  write_translation_fixture(dir / "samples.csv", 15, 50);
  const std::string cmd = wtg + " cv-bandwidth --samples " + (dir / "samples.csv").string() +
                          " --support -0.5,2.5 --grid-m 50 --cv-candidates 0.3 --out " +
                          dir.string();
  REQUIRE(run(cmd) == 0, "cv-bandwidth run failed");
  std::ifstream in(dir / "cv.csv");
  std::string line;
  std::getline(in, line);
  REQUIRE(line == "candidate,objective,degenerate_points", "unexpected cv.csv header");
  REQUIRE(static_cast<bool>(std::getline(in, line)), "cv.csv has no data row");
  double cand = 0.0, obj = -1.0;
  int degenerate = -1;
  REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%d", &cand, &obj, &degenerate) == 3,
          "unparseable cv row");
  REQUIRE(cand == 0.3, "candidate echoed incorrectly");
  REQUIRE(obj >= 0.0, "objective missing");
  REQUIRE(!std::getline(in, line), "extra rows for a single candidate");
}

void check_ingest_histogram(const std::string& wtg) {
  const fs::path dir("cli_test_hist");
  fs::create_directories(dir);
  {
    std::ofstream out(dir / "hist.csv");
    out << "time,bin_lo,bin_hi,count\n";
    for (int year = 0; year < 3; ++year) {
      for (int b = 0; b < 10; ++b) {
        out << year << ',' << b / 10.0 << ',' << (b + 1) / 10.0 << ','
            << 10 + b % 3 << '\n';
      }
    }
  }
  const std::string cmd = wtg + " ingest-histogram --histogram " +
                          (dir / "hist.csv").string() + " --grid-m 100 --out " +
                          dir.string();
  REQUIRE(run(cmd) == 0, "ingest-histogram run failed");
  const std::string quantiles = slurp(dir / "quantiles.csv");
  REQUIRE(quantiles.rfind("t,u,quantile\n", 0) == 0, "quantiles.csv header");
  const std::string manifest = slurp(dir / "manifest.json");
  REQUIRE(manifest.find("\"config_hash\"") != std::string::npos, "manifest lacks hash");
  REQUIRE(manifest.find("ingest-histogram") != std::string::npos,
          "manifest lacks subcommand");
}

void check_config_file(const std::string& wtg) {
  const fs::path dir("cli_test_config");
  fs::create_directories(dir);
  write_translation_fixture(dir / "samples.csv", 15, 60);
  {
    std::ofstream out(dir / "run.ini");
    out << "[gradient]\n"
        << "support=\"-0.5,2.5\"\n"
        << "grid-m=60\n"
        << "bandwidth=0.16\n"
        << "delta=0.02\n";
  }
  const std::string base = wtg + " --config " + (dir / "run.ini").string() +
                           " gradient --samples " + (dir / "samples.csv").string() +
                           " --eval-times 0.5";
  REQUIRE(run(base + " --out " + (dir / "from_file").string()) == 0,
          "config-file run failed");
  std::ifstream in(dir / "from_file" / "gradient.csv");
  std::string line;
  int rows = -1;  // header
  while (std::getline(in, line)) ++rows;
  REQUIRE(rows == 60, "config grid-m not applied");

  // Command line flags override file values.
  REQUIRE(run(base + " --grid-m 12 --out " + (dir / "overridden").string()) == 0,
          "override run failed");
  std::ifstream in2(dir / "overridden" / "gradient.csv");
  rows = -1;
  while (std::getline(in2, line)) ++rows;
  REQUIRE(rows == 12, "flag did not override config file");
}

void check_rank_dynamics(const std::string& wtg) {
  const fs::path dir("cli_test_rank");
  fs::create_directories(dir);
  write_translation_fixture(dir / "samples.csv", 21, 100);
  {
    std::ofstream out(dir / "traj.csv");
    out << "time,value\n";
    for (double t : {0.3, 0.4, 0.5, 0.6, 0.7}) out << t << ',' << 1.0 << '\n';
  }
  const std::string cmd = wtg + " rank-dynamics --samples " + (dir / "samples.csv").string() +
                          " --trajectory " + (dir / "traj.csv").string() +
                          " --support -0.5,2.5 --grid-m 100 --bandwidth 0.11" +
                          " --delta 0.02 --out " + dir.string();
  REQUIRE(run(cmd) == 0, "rank-dynamics run failed");
  std::ifstream in(dir / "rank.csv");
  std::string line;
  std::getline(in, line);
  REQUIRE(line == "t,value,dvalue_dt,tau,trend", "unexpected rank.csv header");
  int falling = 0, rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    if (line.find("falling") != std::string::npos) ++falling;
  }
  REQUIRE(rows == 5, "expected 5 trajectory rows");
  REQUIRE(falling == 5, "constant trajectory under the translation flow must fall");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: wtg_cli_tests <path-to-wtg>\n";
    return 2;
  }
  const std::string wtg = argv[1];
  check_translation_gradient(wtg);
  check_parse_error_exit(wtg);
  check_cv_single_candidate(wtg);
  check_ingest_histogram(wtg);
  check_config_file(wtg);
  check_rank_dynamics(wtg);
  if (g_failures > 0) {
    std::cerr << g_failures << " CLI check(s) failed\n";
    return 1;
  }
  std::cout << "all CLI checks passed\n";
  return 0;
}
