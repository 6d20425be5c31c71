// End-to-end checks of the command-line binary: output values, exit codes,
// byte-level determinism, CSV emission, config files.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace {

struct CmdResult {
  int status = -1;
  std::string output;  // stdout + stderr
};

CmdResult run_cmd(const std::string& args) {
  const std::string full = std::string(GOSSIPNET_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(full.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
  const int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

// value of the first line that starts with "<key> = "
double parse_value(const std::string& output, const std::string& key) {
  std::istringstream in(output);
  std::string line;
  const std::string prefix = key + " = ";
  while (std::getline(in, line))
    if (line.rfind(prefix, 0) == 0) return std::stod(line.substr(prefix.size()));
  FAIL(("missing '" + prefix + "...' line in output:\n" + output));
  return 0.0;
}

const std::string kSingleNode =
    "--n 1 --lambda-e 2 --lambda-u 5 --lambda-r 1 --lambda 0.1";

}  // namespace

TEST_CASE("solve reports the single-node closed forms") {
  const CmdResult r = run_cmd("solve " + kSingleNode + " --policy reliability");
  CHECK(r.status == 0);
  CHECK(parse_value(r.output, "F") ==
        doctest::Approx(20.0 / 54.0).epsilon(1e-9));
  CHECK(parse_value(r.output, "x1") ==
        doctest::Approx(28.0 / 54.0).epsilon(1e-9));

  const CmdResult f = run_cmd("solve " + kSingleNode + " --policy freshness");
  CHECK(f.status == 0);
  CHECK(parse_value(f.output, "F") ==
        doctest::Approx(5.0 / 9.0).epsilon(1e-9));
  CHECK(parse_value(f.output, "x1") ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("solve at a huge gossip rate sits on the closed-form limit") {
  const CmdResult r = run_cmd(
      "solve --n 100 --lambda-e 2 --lambda-u 5 --lambda-r 1 --lambda 10000");
  CHECK(r.status == 0);
  CHECK(std::abs(parse_value(r.output, "F") - 0.370370) <= 5e-3);
}

TEST_CASE("solve --all-k prints one row per subset size") {
  const CmdResult r = run_cmd("solve --n 5 --all-k");
  CHECK(r.status == 0);
  CHECK(r.output.find("k,a_k,b_k,c_k,d_k,e_k") != std::string::npos);
  std::istringstream in(r.output);
  std::string line;
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty() && line.find(',') != std::string::npos &&
        std::isdigit(static_cast<unsigned char>(line[0])))
      ++rows;
  CHECK(rows == 5);
}

TEST_CASE("limit prints the closed form") {
  const CmdResult r = run_cmd("limit --lambda-e 2 --lambda-u 5 --lambda-r 1");
  CHECK(r.status == 0);
  const CmdResult zero = run_cmd("limit --lambda-u 0");
  CHECK(zero.status == 0);
  const CmdResult one = run_cmd("limit --lambda-r 0");
  CHECK(one.status == 0);

  auto last_token = [](const std::string& s) {
    const auto pos = s.find_last_of(' ');
    return std::stod(s.substr(pos + 1));
  };
  CHECK(std::abs(last_token(r.output) - 10.0 / 27.0) <= 1e-6);
  CHECK(last_token(zero.output) == 0.0);
  CHECK(last_token(one.output) == 1.0);

  // no source at all: the limit is undefined
  CHECK(run_cmd("limit --lambda-u 0 --lambda-r 0").status == 2);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cmd("solve --no-such-flag").status == 2);
  CHECK(run_cmd("solve --policy sideways").status == 2);
  CHECK(run_cmd("sweep --param n").status == 2);  // missing --out
  CHECK(run_cmd("sweep --param bogus --out /tmp/x.csv").status == 2);
  CHECK(run_cmd("sweep --param n --grid 5,2 --out /tmp/x.csv").status == 2);
  CHECK(run_cmd("simulate --n 0").status == 2);
  CHECK(run_cmd("").status == 2);  // a subcommand is required
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cmd("--help").status == 0);
  CHECK(run_cmd("solve --help").status == 0);
}

TEST_CASE("simulate is deterministic byte for byte") {
  const std::string cmd =
      "simulate --n 3 --horizon 500 --seed 42 --replications 2";
  const CmdResult a = run_cmd(cmd);
  const CmdResult b = run_cmd(cmd);
  CHECK(a.status == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("f_hat = ") != std::string::npos);
  CHECK(a.output.find("events = ") != std::string::npos);
}

TEST_CASE("simulate with no unreliable source reports exactly zero") {
  const CmdResult r =
      run_cmd("simulate --n 3 --lambda-u 0 --horizon 1000 --seed 5");
  CHECK(r.status == 0);
  CHECK(parse_value(r.output, "f_hat") == 0.0);
}

TEST_CASE("simulate can append a CSV row") {
  const std::string path = "/tmp/gossipnet_simrow.csv";
  std::remove(path.c_str());
  const CmdResult r = run_cmd("simulate --n 2 --horizon 200 --seed 3 --csv " +
                              path);
  CHECK(r.status == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("swept_param,", 0) == 0);
  std::string row;
  CHECK(std::getline(in, row).good());
  CHECK(row.find("reliability") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("sweep writes the CSV and is reproducible") {
  const std::string path = "/tmp/gossipnet_sweep_test.csv";
  std::remove(path.c_str());
  const std::string cmd =
      "sweep --param n --grid 2,4 --policy reliability --out " + path;
  CHECK(run_cmd(cmd).status == 0);

  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream first;
  first << in.rdbuf();
  in.close();

  std::istringstream lines(first.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header ==
        "swept_param,swept_value,n,lambda_e,lambda_u,lambda_r,lambda,policy,"
        "f_solver,x1_solver,f_sim,f_sim_stderr,x1_sim,x1_sim_stderr,horizon,"
        "warmup,seed,replications");

  CHECK(run_cmd(cmd).status == 0);
  std::ifstream again(path);
  std::stringstream second;
  second << again.rdbuf();
  CHECK(first.str() == second.str());
  std::remove(path.c_str());
}

TEST_CASE("sweep to an unwritable path fails at runtime") {
  CHECK(run_cmd("sweep --param n --grid 2 --out /nonexistent-dir/x.csv")
            .status == 1);
}

TEST_CASE("config file supplies flags; explicit flags override it") {
  const std::string path = "/tmp/gossipnet_cfg.ini";
  {
    std::ofstream cfg(path);
    cfg << "[solve]\n"
        << "n=1\n"
        << "lambda-e=2\nlambda-u=5\nlambda-r=1\nlambda=0.1\n";
  }
  const CmdResult from_file = run_cmd("solve --config " + path);
  CHECK(from_file.status == 0);
  CHECK(parse_value(from_file.output, "F") ==
        doctest::Approx(20.0 / 54.0).epsilon(1e-9));

  const CmdResult overridden = run_cmd("solve --config " + path + " --n 2");
  CHECK(overridden.status == 0);
  CHECK(overridden.output.find("n=2") != std::string::npos);
  CHECK(parse_value(overridden.output, "F") !=
        doctest::Approx(20.0 / 54.0).epsilon(1e-9));
  std::remove(path.c_str());
}
