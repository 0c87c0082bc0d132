#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(DPB_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (auto n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool contains(const std::string& s, const std::string& what) { return s.find(what) != std::string::npos; }

}  // namespace

TEST_CASE("masses table") {
  const auto r = run("masses --formula barut --max-n 3 --format text");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "206.5539985"));
  CHECK(contains(r.out, "3495.4179745"));
  CHECK(contains(r.out, "20145.29"));
}

TEST_CASE("default format off a terminal is csv") {
  const auto r = run("masses --formula barut");
  CHECK(r.out.rfind("formula,n,label,ratio,", 0) == 0);
}

TEST_CASE("case B verdict") {
  const auto r = run("terminate --case b --s 0 --m 1 --nu 0 --eta 1 --format text");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "beta = -4.8, not bound"));
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("masses --bogus").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("masses --formula mod99").code == 2);
  CHECK(run("terminate --case b --g 1 --eta 1").code == 2);
  CHECK(run("series --g 1 --sigma 2").code == 2);
  CHECK(run("masses --format xml").code == 2);
  CHECK(run("masses --alpha-inv -5").code == 2);
  CHECK(run("masses --config /nonexistent/constants.toml").code == 2);
}

TEST_CASE("domain errors exit 1") {
  CHECK(run("series --beta -1").code == 1);
  CHECK(run("terminate --case b --eta 0").code == 1);
  CHECK(run("spectrum --potential coulomb --mismatch --e-hi 0.5").code == 1);
  CHECK(run("masses --out /nonexistent-dir/out.csv").code == 1);
}

TEST_CASE("help exits 0 and describes formulas") {
  const auto r = run("masses --help");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "C(3,n) 2^(-n^2) alpha^-n"));
  CHECK(run("--help").code == 0);
}

TEST_CASE("constants come from flags, config file and environment") {
  CHECK(contains(run("masses --formula barut --max-n 1 --alpha-inv 137").out, "206.5"));

  const char* path = "cli_constants.toml";
  {
    std::ofstream out(path);
    out << "alpha_inverse = 100\n";
  }
  CHECK(contains(run(std::string("masses --formula barut --max-n 1 --config ") + path).out, "151,"));
  CHECK(contains(run(std::string("masses --formula barut --max-n 1 --alpha-inv 137 --config ") + path).out,
                 "206.5,"));
  CHECK(contains(run("--alpha-inv 100 masses --formula barut --max-n 1").out, "151,"));
  setenv("DIPOLE_BOUND_CONFIG", path, 1);
  CHECK(contains(run("masses --formula barut --max-n 1").out, "151,"));
  unsetenv("DIPOLE_BOUND_CONFIG");
  std::remove(path);
}

TEST_CASE("output file") {
  const char* path = "cli_out.json";
  const auto r = run(std::string("series --m 1 --beta 1 --eta 1 --nu-max 8 --format json --out ") + path);
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(contains(ss.str(), "\"coefficients\""));
  std::remove(path);
}

TEST_CASE("spectrum subcommand") {
  const auto r = run("spectrum --potential eta-only --eta 2 --m 1 --cutoffs 0.2,0.1,0.05,0.02");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("g,m_q,form,rho_min,n_points,negative_count,lowest_e,converged\n", 0) == 0);
  CHECK(contains(r.out, "false"));
}
