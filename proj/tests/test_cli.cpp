#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("qeraser_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run run(const std::string& args) {
  const fs::path out = scratch() / "stdout";
  const fs::path err = scratch() / "stderr";
  const std::string cmd = std::string(QE_CLI_PATH) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

std::string preset(const std::string& name) {
  return (fs::path(QE_SOURCE_DIR) / "presets" / (name + ".onl")).string();
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream l(line);
    std::string cell;
    while (std::getline(l, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("parse exit codes") {
  Run r = run("parse " + preset("figure1"));
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(r.err.empty());

  const std::string bad = (fs::path(QE_SOURCE_DIR) / "tests/fixtures/errors/bad_angle_unit.onl").string();
  r = run("parse " + bad);
  CHECK(r.code == 2);
  CHECK(r.err == bad + ":4:18: BadAngleUnit bad angle unit 'grad' (expected deg or rad)\n");

  r = run("parse /nonexistent/file.onl");
  CHECK(r.code == 3);
}

TEST_CASE("usage errors exit 4") {
  CHECK(run("").code == 4);
  CHECK(run("frobnicate").code == 4);
  CHECK(run("sweep " + preset("figure1") + " --steps banana").code == 4);
  CHECK(run("--help").code == 0);
}

TEST_CASE("sweep of the eraser") {
  const Run r = run("sweep " + preset("figure1"));
  REQUIRE(r.code == 0);
  CHECK(r.out.find('\r') == std::string::npos);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 257);
  CHECK(rows[0] == std::vector<std::string>{"phi_rad", "i_1", "i_2"});
  double min1 = 1e9;
  std::size_t at1 = 0;
  double min2 = 1e9;
  std::size_t at2 = 0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const double i1 = std::stod(rows[k][1]);
    const double i2 = std::stod(rows[k][2]);
    if (i1 < min1) min1 = i1, at1 = k;
    if (i2 < min2) min2 = i2, at2 = k;
  }
  CHECK(std::stod(rows[at1][0]) == 0.0);
  CHECK(std::stod(rows[at2][0]) == 0.0);
  CHECK(rows[256][0] == "6.2831853071795862");
}

TEST_CASE("sweep without polarizers is flat") {
  const Run r = run("sweep " + preset("fig2-col1-bottom") + " --steps 16");
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 17);
  CHECK(rows[0] == std::vector<std::string>{"phi_rad", "i_A", "i_B"});
  for (std::size_t k = 2; k < rows.size(); ++k) {
    CHECK(std::abs(std::stod(rows[k][1]) - std::stod(rows[1][1])) < 1e-12);
    CHECK(std::abs(std::stod(rows[k][2]) - std::stod(rows[1][2])) < 1e-12);
  }
}

TEST_CASE("sweep edge cases") {
  Run r = run("sweep " + preset("figure1") + " --phi-from 0 --phi-to 0 --steps 2");
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1] == rows[2]);
  CHECK(run("sweep " + preset("figure1") + " --steps 1").code == 4);

  const fs::path fixed = scratch() / "fixed.onl";
  std::ofstream(fixed) << "source pol=V\nprep diag\nsplit pbs\nphase path=1 phi=10deg\nmerge pbs\n";
  r = run("sweep " + fixed.string());
  CHECK(r.code == 4);
  CHECK(r.err.find("PHI") != std::string::npos);

  const fs::path out = scratch() / "sweep.csv";
  r = run("sweep " + preset("figure1") + " --steps 4 --out " + out.string());
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(csv(slurp(out)).size() == 5);
}

TEST_CASE("scenario command") {
  Run r = run("scenario fig2-col3-top");
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS port B Zero") != std::string::npos);
  CHECK(r.out.find("PASS port A Flat") != std::string::npos);
  r = run("scenario fig2-col4-bottom");
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS port B FringeSwapped") != std::string::npos);
  r = run("scenario fig2-col2-bottom");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(run("scenario no-such-panel").code == 4);
  r = run("scenario --list");
  CHECK(r.code == 0);
  CHECK(csv(r.out).size() == 9);
}

TEST_CASE("presets match the generated scenario netlists") {
  for (const char* name : {"fig2-col1-top", "fig2-col2-middle", "fig2-col3-bottom", "fig2-col4-bottom"}) {
    const Run r = run(std::string("scenario ") + name + " --netlist");
    REQUIRE(r.code == 0);
    CHECK(r.out == slurp(preset(name)));
  }
}

TEST_CASE("monte carlo golden histogram") {
  const Run r = run("mc " + preset("figure1") + " --seed 42 --bins 8 --photons 1000");
  REQUIRE(r.code == 0);
  CHECK(r.out == slurp(fs::path(QE_SOURCE_DIR) / "tests/golden/mc_figure1_seed42_8x1000.csv"));
  CHECK(r.err.find("mt19937_64") != std::string::npos);
  CHECK(run("mc " + preset("figure1") + " --photons 0").code == 4);
  CHECK(run("mc " + preset("figure1") + " --bins 1").code == 4);
}

TEST_CASE("image command") {
  const fs::path out = scratch() / "img.pgm";
  Run r = run("image " + preset("figure1") + " --width 32 --height 16 --tilt-period 8 --out " + out.string());
  REQUIRE(r.code == 0);
  const std::string pgm = slurp(out);
  CHECK(pgm.rfind("P5\n64 16\n255\n", 0) == 0);
  r = run("image " + preset("figure1") + " --port A --width 32 --height 16 --out " + out.string());
  CHECK(slurp(out).rfind("P5\n32 16\n255\n", 0) == 0);
  CHECK(run("image " + preset("figure1") + " --out /nonexistent/dir/x.pgm").code == 3);
  CHECK(run("image " + preset("figure1") + " --width 2").code == 4);
  CHECK(run("image " + preset("figure1") + " --port C").code == 4);
}

TEST_CASE("format command") {
  const Run r = run("format " + preset("figure1"));
  CHECK(r.code == 0);
  CHECK(r.out.rfind("source pol=V wavelength=632.8nm", 0) == 0);
  CHECK(r.out.find('#') == std::string::npos);
}

TEST_CASE("eval command") {
  const Run r = run("eval " + preset("figure1") + " --phi 3.141592653589793");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("i_A=0.5", 0) == 0);
}

TEST_CASE("verify command") {
  Run r = run("verify");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("max normalized dev") != std::string::npos);
  r = run("verify --mutate-pbs-phase");
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
}
