#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "hhcarbon/csv.hpp"
#include "hhcarbon/record.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("hhcarbon_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  const std::string cmd = std::string("\"") + HHCARBON_CLI + "\" " + args + " 2>" + (workdir() / "stderr.txt").string();
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

std::string header_line() {
  std::string h;
  for (const auto& c : hhcarbon::panel_columns()) h += (h.empty() ? "" : ",") + c;
  return h + "\n";
}

const std::string kHeader = header_line();

}  // namespace

TEST_CASE("footprint on a single Food row") {
  const auto in = workdir() / "one.csv", out = workdir() / "one_fp.csv";
  write(in, kHeader + "H1,2005,P01,0,40,1,9,1,1,1,50000,200000,0,3,0,10000,0,0,0,0,0,0,0\n");
  CHECK(run("footprint -i " + q(in) + " -o " + q(out)) == 0);
  auto t = hhcarbon::csv::read_file(out.string());
  REQUIRE(t.rows.size() == 1);
  CHECK(t.header == std::vector<std::string>{"household_id", "year", "energy_gj", "carbon_kg", "efficiency"});
  CHECK(*hhcarbon::csv::parse_double(t.rows[0][2]) == doctest::Approx(17.64).epsilon(1e-14));
  CHECK(*hhcarbon::csv::parse_double(t.rows[0][3]) == doctest::Approx(163.68).epsilon(1e-14));
}

TEST_CASE("footprint rejects bad rows with exit 1 and a sidecar") {
  const auto in = workdir() / "bad.csv", out = workdir() / "bad_fp.csv", err = workdir() / "bad_err.csv";
  write(in, kHeader +
                "H1,2005,P01,0,40,1,9,1,1,1,50000,200000,0,3,0,10000,0,0,0,0,0,0,0\n"
                "H2,2005,P01,0,40,1,9,1,1,1,50000,200000,0,3,0,0,0,0,0,0,0,0,0\n"
                "H3,2004,P01,0,40,1,9,1,1,1,50000,200000,0,3,0,100,0,0,0,0,0,0,0\n");
  CHECK(run("footprint -i " + q(in) + " -o " + q(out) + " --errors " + q(err)) == 1);
  CHECK(hhcarbon::csv::read_file(out.string()).rows.size() == 1);
  auto e = hhcarbon::csv::read_file(err.string());
  REQUIRE(e.rows.size() == 2);
  CHECK(e.rows[0][2].find("EmptyBundle") != std::string::npos);
  CHECK(e.rows[1][2].find("YearOutOfRange") != std::string::npos);
}

TEST_CASE("malformed header is a validation failure naming the problem") {
  const auto in = workdir() / "hdr.csv";
  write(in, "household,year\nH1,2005\n");
  CHECK(run("footprint -i " + q(in) + " -o " + q(workdir() / "hdr_out.csv")) == 1);
  CHECK(slurp(workdir() / "stderr.txt").find("header") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("") == 2);
  CHECK(run("footprint") == 2);
  CHECK(run("dynamics --by planet") == 2);
  CHECK(run("dynamics --by cohort") == 2);
  CHECK(run("effects --published 3:FE-efficiency --grid 10,-5") == 2);
  CHECK(run("nonsense") == 2);
}

TEST_CASE("group-by rural writes two cohort rows") {
  const auto in = workdir() / "coh.csv", out = workdir() / "coh_fp.csv", coh = workdir() / "coh_c.csv";
  write(in, kHeader +
                "H1,2011,P01,0,40,1,9,1,1,1,50000,200000,0,3,0,100,200,300,0,0,0,0,0\n"
                "H2,2011,P01,1,40,1,9,1,1,1,50000,200000,0,3,0,0,0,1000,0,0,0,0,0\n"
                "H3,2013,P02,1,40,1,9,1,1,1,50000,200000,0,3,0,50,0,0,10,0,0,0,0\n");
  CHECK(run("footprint -i " + q(in) + " -o " + q(out) + " --group-by rural --cohort-out " + q(coh)) == 0);
  auto c = hhcarbon::csv::read_file(coh.string());
  CHECK(c.rows.size() == 2);
}

TEST_CASE("validate-published and dynamics succeed") {
  CHECK(run("validate-published > " + q(workdir() / "vp.csv")) == 0);
  CHECK(run("validate-published --tolerance 0 > " + q(workdir() / "vp0.csv")) == 1);
  CHECK(run("dynamics --by sector -o " + q(workdir() / "dyn.csv")) == 0);
  auto t = hhcarbon::csv::read_file((workdir() / "dyn.csv").string());
  CHECK(t.rows.size() == 8 * 15);
}

TEST_CASE("synth, regress and effects chain") {
  const auto panel = workdir() / "panel.csv", rep = workdir() / "fit.json", curve = workdir() / "curve.csv";
  CHECK(run("synth -n 200 --seed 3 -o " + q(panel)) == 0);
  CHECK(run("regress -i " + q(panel) + " --credit-square -o " + q(rep) + " > " + q(workdir() / "table.txt")) == 0);
  auto j = nlohmann::json::parse(slurp(rep));
  CHECK(j["fits"].size() == 6);
  CHECK(j["identity_checks"].size() == 2);
  CHECK(slurp(workdir() / "table.txt").find("Dropped terms:") != std::string::npos);
  CHECK(run("effects --fit " + q(rep) + " --column FE-efficiency -o " + q(curve)) == 0);
  CHECK(hhcarbon::csv::read_file(curve.string()).rows.size() == 50);
  CHECK(run("effects --fit " + q(rep) + " --column FE-nothing -o " + q(curve)) != 0);
  CHECK(run("inequality -i " + q(panel) + " -a energy -q 0.1 --summary " + q(workdir() / "ineq.json")) == 0);
  auto s = nlohmann::json::parse(slurp(workdir() / "ineq.json"));
  CHECK(s["gini"].get<double>() > 0);
  CHECK(s["gini"].get<double>() < 1);
}

TEST_CASE("table override through the environment") {
  const auto tbl = workdir() / "tbl.csv";
  CHECK(run("table -o " + q(tbl)) == 0);
  const auto in = workdir() / "env.csv", out = workdir() / "env_fp.csv";
  write(in, kHeader + "H1,2005,P01,0,40,1,9,1,1,1,50000,200000,0,3,0,10000,0,0,0,0,0,0,0\n");
  CHECK(run("footprint -i " + q(in) + " -o " + q(out)) == 0);
  const std::string base = slurp(out);
  ::setenv("HHCARBON_TABLE", tbl.string().c_str(), 1);
  CHECK(run("footprint -i " + q(in) + " -o " + q(out)) == 0);
  CHECK(slurp(out) == base);
  ::setenv("HHCARBON_TABLE", (workdir() / "missing.csv").string().c_str(), 1);
  CHECK(run("footprint -i " + q(in) + " -o " + q(out)) != 0);
  ::unsetenv("HHCARBON_TABLE");
}
