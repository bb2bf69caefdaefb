// End-to-end tests driving the installed binary: output formats, exit
// codes, and byte-level determinism of the CSV artifacts.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

const std::string kCli = SIGCOND_CLI_PATH;
const std::string kTestData = SIGCOND_TEST_DATA_DIR;
const std::string kData = SIGCOND_DATA_DIR;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

RunResult run(const std::string& args) {
  std::string command = kCli + " " + args + " 2>/tmp/sigcond_cli_stderr.txt";
  std::array<char, 4096> buffer;
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t n;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.output.append(buffer.data(), n);
  }
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("detect prints the community as sorted original ids") {
  RunResult r = run("detect " + kTestData + "/clique_disc.txt --seeds 0 --method pgd --sigma 0");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "0 1 2 3 4\n");
}

TEST_CASE("detect with auto sigma on the tailed clique") {
  RunResult r = run("detect " + kTestData + "/clique_tails.txt --seeds 0 --method em --auto-sigma");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "0 1 2 3 4\n");
}

TEST_CASE("detect exit codes") {
  CHECK(run("detect /no/such/file.txt --seeds 0").exit_code == 1);
  CHECK(run("detect " + kTestData + "/clique_disc.txt --seeds 99").exit_code == 2);
  CHECK(run("detect " + kTestData + "/clique_disc.txt --seeds 0 --bogus-flag").exit_code == 2);
  CHECK(run("detect " + kTestData + "/clique_disc.txt").exit_code == 2);  // no seeds
  CHECK(run("detect " + kTestData + "/clique_disc.txt --seeds 0 --method nope").exit_code == 2);
}

TEST_CASE("detect flags a degree-zero seed as degenerate") {
  // Node 2 appears only in a self-loop: kept in the graph, degree 0.
  std::ofstream out("/tmp/sigcond_cli_loop.txt");
  out << "0 1\n2 2\n";
  out.close();
  CHECK(run("detect /tmp/sigcond_cli_loop.txt --seeds 2").exit_code == 3);
}

TEST_CASE("help exits zero and lists subcommands") {
  RunResult r = run("--help");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("detect") != std::string::npos);
  CHECK(r.output.find("eval") != std::string::npos);
  CHECK(r.output.find("sweep-sigma") != std::string::npos);
  CHECK(r.output.find("oracle") != std::string::npos);
  CHECK(r.output.find("check") != std::string::npos);
}

TEST_CASE("eval emits byte-identical CSVs across reruns and worker counts") {
  std::string base = "eval " + kData + "/karate.txt " + kData +
                     "/karate_communities.txt --method pgd --sigma 0 "
                     "--samples 50 --rng-seed 1 ";
  CHECK(run(base + "--workers 1 --out /tmp/sc_rows_a.csv --summary /tmp/sc_sum_a.csv").exit_code == 0);
  CHECK(run(base + "--workers 1 --out /tmp/sc_rows_b.csv --summary /tmp/sc_sum_b.csv").exit_code == 0);
  CHECK(run(base + "--workers 3 --out /tmp/sc_rows_c.csv --summary /tmp/sc_sum_c.csv").exit_code == 0);
  std::string a = slurp("/tmp/sc_rows_a.csv");
  CHECK(!a.empty());
  CHECK(a == slurp("/tmp/sc_rows_b.csv"));
  CHECK(a == slurp("/tmp/sc_rows_c.csv"));
  CHECK(slurp("/tmp/sc_sum_a.csv") == slurp("/tmp/sc_sum_b.csv"));
  CHECK(slurp("/tmp/sc_sum_a.csv") == slurp("/tmp/sc_sum_c.csv"));
}

TEST_CASE("eval rejects an empty truth file") {
  std::ofstream out("/tmp/sigcond_cli_empty_truth.txt");
  out << "# no communities\n";
  out.close();
  RunResult r = run("eval " + kData + "/karate.txt /tmp/sigcond_cli_empty_truth.txt");
  CHECK(r.exit_code == 2);
}

TEST_CASE("sweep-sigma emits one row per grid point") {
  RunResult r = run("sweep-sigma " + kTestData + "/clique_tails.txt /tmp/sc_tails_truth.txt"
                    " --grid 0:0.1:1 --method pgd --samples 10 --rng-seed 1");
  // Need the truth file first; rerun after writing it.
  std::ofstream out("/tmp/sc_tails_truth.txt");
  out << "0 1 2 3 4\n";
  out.close();
  r = run("sweep-sigma " + kTestData + "/clique_tails.txt /tmp/sc_tails_truth.txt"
          " --grid 0:0.1:1 --method pgd --samples 10 --rng-seed 1");
  CHECK(r.exit_code == 0);
  int lines = 0;
  std::istringstream in(r.output);
  std::string line;
  bool has_nan = false;
  while (std::getline(in, line)) {
    ++lines;
    if (line.find("nan") != std::string::npos) has_nan = true;
  }
  CHECK(lines == 12);  // header + 11 grid rows
  CHECK(!has_nan);
}

TEST_CASE("sweep-sigma shows the F1 jump at the structural threshold") {
  std::ofstream out("/tmp/sc_tails_truth.txt");
  out << "0 1 2 3 4\n";
  out.close();
  RunResult r = run("sweep-sigma " + kTestData + "/clique_tails.txt /tmp/sc_tails_truth.txt"
                    " --grid 0.05:0.1:0.25 --method em --samples 20 --rng-seed 3");
  REQUIRE(r.exit_code == 0);
  // Rows: 0.05 (below 3/23: expands past the clique) and 0.15, 0.25
  // (above: exactly the clique, mean F1 = 1).
  std::istringstream in(r.output);
  std::string header, row005, row015, row025;
  std::getline(in, header);
  std::getline(in, row005);
  std::getline(in, row015);
  std::getline(in, row025);
  auto mean_f1 = [](const std::string& row) {
    std::istringstream fields(row);
    std::string sigma, f1;
    std::getline(fields, sigma, ',');
    std::getline(fields, f1, ',');
    return std::stod(f1);
  };
  CHECK(mean_f1(row005) < 1.0);
  CHECK(mean_f1(row015) == 1.0);
  CHECK(mean_f1(row025) == 1.0);
}

TEST_CASE("oracle prints the optimum at 15 significant digits") {
  RunResult r = run("oracle " + kTestData + "/two_triangles.txt --seeds 0 --sigma 0.5");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("community: 0 1 2 3 4 5\n") != std::string::npos);
  CHECK(r.output.find("phi_sigma: -0.5\n") != std::string::npos);
}

TEST_CASE("oracle scope validation") {
  RunResult r = run("oracle " + kTestData + "/two_triangles.txt --seeds 0 --scope 0,1");
  CHECK(r.exit_code == 0);
  // 25 nodes, 24 free: over the 20-node enumeration bound.
  std::ofstream out("/tmp/sc_star.txt");
  for (int leaf = 1; leaf <= 24; ++leaf) out << 0 << " " << leaf << "\n";
  out.close();
  CHECK(run("oracle /tmp/sc_star.txt --seeds 0").exit_code == 2);
}

TEST_CASE("check reports verdicts and exit codes") {
  RunResult good = run("check " + kTestData + "/clique_disc.txt --community " +
                       kTestData + "/clique_disc_comm.txt --seeds 0 --sigma 0 --mode exhaustive");
  CHECK(good.exit_code == 0);
  CHECK(good.output.find("dense-isolated: yes") != std::string::npos);
  CHECK(good.output.find("recovery: exact (2 iterations em") != std::string::npos);

  RunResult bad = run("check " + kTestData + "/clique_pendant.txt --community " +
                      kTestData + "/pendant_comm.txt --seeds 1 --sigma 0");
  CHECK(bad.exit_code == 0);
  CHECK(bad.output.find("dense-isolated: no (isolation violated at node 5") !=
        std::string::npos);

  // Disconnected community: the layer decomposition fails validation.
  std::ofstream out("/tmp/sc_disc_comm.txt");
  out << "0 1 2 5\n";
  out.close();
  RunResult disconnected = run("check " + kTestData + "/clique_disc.txt --community "
                               "/tmp/sc_disc_comm.txt --seeds 0 --sigma 0");
  CHECK(disconnected.exit_code == 2);
}

TEST_CASE("config file supplies defaults that flags override") {
  std::ofstream out("/tmp/sc_config.ini");
  out << "[detect]\nsigma=0.2\nmethod=pgd\n";
  out.close();
  RunResult r = run("detect " + kTestData + "/clique_tails.txt --seeds 0 "
                    "--config /tmp/sc_config.ini");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "0 1 2 3 4\n");  // sigma 0.2 from the file
  RunResult overridden = run("detect " + kTestData + "/clique_tails.txt --seeds 0 "
                             "--config /tmp/sc_config.ini --sigma 0");
  CHECK(overridden.exit_code == 0);
  CHECK(overridden.output != "0 1 2 3 4\n");  // flag wins: sigma 0 expands
}

TEST_CASE("lfr format loads through the dedicated flag") {
  std::ofstream net("/tmp/sc_lfr_net.dat");
  net << "1\t2\n2\t3\n3\t1\n1\t3\n4\t5\n5\t6\n6\t4\n3\t4\n";
  net.close();
  std::ofstream comm("/tmp/sc_lfr_comm.dat");
  comm << "1\t1\n2\t1\n3\t1\n4\t2\n5\t2\n6\t2\n";
  comm.close();
  RunResult r = run("eval /tmp/sc_lfr_net.dat /tmp/sc_lfr_comm.dat --format lfr "
                    "--method em --sigma 0 --samples 10 --rng-seed 1 --workers 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("em,sc_lfr_net") != std::string::npos);
}
