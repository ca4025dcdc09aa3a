#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qeraser/netlist.hpp"
#include "random_circuits.hpp"

using namespace qeraser;
using namespace qeraser::literals;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Circuit parse_ok(std::string_view text) {
  auto r = parse_netlist(text);
  if (auto* errs = std::get_if<std::vector<ParseError>>(&r)) {
    for (const auto& e : *errs) MESSAGE(format_diagnostic("<text>", e));
    FAIL("unexpected parse failure");
  }
  return std::get<Circuit>(r);
}

std::vector<ParseError> parse_errors(std::string_view text) {
  auto r = parse_netlist(text);
  REQUIRE(std::holds_alternative<std::vector<ParseError>>(r));
  return std::get<std::vector<ParseError>>(r);
}

}  // namespace

TEST_CASE("reference eraser netlist") {
  const Circuit c = parse_ok(slurp(std::filesystem::path(QE_SOURCE_DIR) / "presets/figure1.onl"));
  CHECK(c.statement_count() == 9);
  CHECK(c.source.polarization == SourcePolarization::V);
  CHECK(c.source.wavelength == doctest::Approx(632.8e-9));
  CHECK(c.source.linewidth == doctest::Approx(1e6));
  CHECK(c.has_sweep());
  CHECK(c.port_polarized(Port::A));
  CHECK(c.port_polarized(Port::B));
  const auto& hwp = std::get<Hwp>(c.elements[2].spec);
  CHECK(hwp.path == Path::One);
  CHECK(hwp.rotation().degrees() == doctest::Approx(45.0));
  CHECK(hwp.axis().degrees() == doctest::Approx(22.5));
}

TEST_CASE("every preset parses and round-trips") {
  int count = 0;
  for (const auto& entry : std::filesystem::directory_iterator(std::filesystem::path(QE_SOURCE_DIR) / "presets")) {
    if (entry.path().extension() != ".onl") continue;
    CAPTURE(entry.path().string());
    const Circuit c = parse_ok(slurp(entry.path()));
    CHECK(structurally_equal(parse_ok(format_netlist(c)), c));
    ++count;
  }
  CHECK(count >= 10);
}

TEST_CASE("error fixtures") {
  const auto dir = std::filesystem::path(QE_SOURCE_DIR) / "tests/fixtures/errors";
  std::ifstream manifest(dir / "expected.txt");
  REQUIRE(manifest);
  std::string line;
  int checked = 0;
  while (std::getline(manifest, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string file;
    std::string code;
    int ln = 0;
    int col = 0;
    fields >> file >> code >> ln >> col;
    CAPTURE(file);
    const auto errors = parse_errors(slurp(dir / file));
    REQUIRE(errors.size() == 1);
    CHECK(to_string(errors[0].code) == code);
    CHECK(errors[0].line == ln);
    CHECK(errors[0].column == col);
    ++checked;
  }
  CHECK(checked == 12);
}

TEST_CASE("units and values") {
  const Circuit c = parse_ok(
      "source pol=H wavelength=1.55um linewidth=2.5kHz lineshape=gaussian\n"
      "prep qwp axis=0.5rad\nsplit bs\nphase path=2 phi=90deg\npathdiff length=3mm\nmerge bs\n");
  CHECK(c.source.wavelength == doctest::Approx(1.55e-6));
  CHECK(c.source.linewidth == doctest::Approx(2500.0));
  CHECK(c.source.lineshape == Lineshape::Gaussian);
  CHECK(std::get<PrepQwp>(c.elements[0].spec).axis.radians == doctest::Approx(0.5));
  CHECK(std::get<Phase>(c.elements[2].spec).phi->degrees() == doctest::Approx(90.0));
  CHECK(c.path_difference() == doctest::Approx(3e-3));
  CHECK_FALSE(c.has_sweep());
}

TEST_CASE("comments, blank lines and CRLF") {
  const Circuit c = parse_ok("# header\r\n\r\n  source pol=V   # trailing\r\nprep diag\r\nsplit pbs\r\nmerge pbs");
  CHECK(c.statement_count() == 4);
  CHECK(c.source_line == 3);
  CHECK(c.elements[0].line == 4);
}

TEST_CASE("multiple errors are all reported in order") {
  const auto errors = parse_errors("source pol=V\nprep diag\nbogus\nhwp path=1 rot=5\nmerge pbs\nsource pol=H\n");
  REQUIRE(errors.size() == 3);
  CHECK(errors[0].code == ParseErrorCode::UnknownKeyword);
  CHECK(errors[1].code == ParseErrorCode::BadAngleUnit);
  CHECK(errors[2].code == ParseErrorCode::DuplicateSource);
  CHECK(errors[2].line == 6);
}

TEST_CASE("key errors") {
  auto e = parse_errors("source pol=V colour=red\nprep diag\nsplit pbs\nmerge pbs\n");
  CHECK(e[0].code == ParseErrorCode::UnknownKeyword);
  CHECK(e[0].column == 14);
  e = parse_errors("source pol=V pol=H\nprep diag\nsplit pbs\nmerge pbs\n");
  CHECK(e[0].code == ParseErrorCode::UnknownKeyword);
  e = parse_errors("source pol=V\nprep diag\nsplit pbs\nmerge pbs\npol port=A angle=\n");
  REQUIRE(e.size() == 1);
  CHECK(e[0].code == ParseErrorCode::MissingValue);
  e = parse_errors("source pol=V\nprep diag\nsplit pbs\nphase path=1 phi=PHI\nphase path=2 phi=PHI\nmerge pbs\n");
  CHECK(e[0].code == ParseErrorCode::BadReference);
  CHECK(e[0].line == 5);
  e = parse_errors("source pol=V\nprep diag\nsplit pbs\nhwp path=1 rot=1e999deg\nmerge pbs\n");
  CHECK(e[0].code == ParseErrorCode::RangeError);
  e = parse_errors("source pol=V\nprep\nsplit pbs\nmerge pbs\n");
  CHECK(e[0].code == ParseErrorCode::MissingValue);
  e = parse_errors("source pol=V\nprep diag\nsplit pbs\nhwp path=1 rot=1deg axis=2deg\nmerge pbs\n");
  CHECK(e[0].code == ParseErrorCode::UnknownKeyword);
}

TEST_CASE("diagnostic format") {
  const ParseError e{4, 18, ParseErrorCode::BadAngleUnit, "bad angle unit 'grad'"};
  CHECK(format_diagnostic("x.onl", e) == "x.onl:4:18: BadAngleUnit bad angle unit 'grad'");
}

TEST_CASE("canonical format") {
  const Circuit c = parse_ok("source pol=V\nprep diag\nsplit pbs\nhwp path=1 axis=0.25rad\nmerge pbs\n");
  const std::string text = format_netlist(c);
  CHECK(text ==
        "source pol=V wavelength=632.8nm linewidth=1MHz lineshape=lorentzian\n"
        "prep diag\nsplit pbs\nhwp path=1 axis=14.3239deg\nmerge pbs\n");
}

TEST_CASE("round trip on generated circuits") {
  std::mt19937_64 rng(1234);
  for (int k = 0; k < 1000; ++k) {
    const Circuit c = random_circuit(rng);
    const std::string text = format_netlist(c);
    CAPTURE(text);
    const Circuit back = parse_ok(text);
    CHECK(structurally_equal(back, c));
    CHECK(format_netlist(back) == text);
  }
}
