#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "measurecost/io.hpp"

#include <filesystem>
#include <limits>

using namespace measurecost;
namespace fs = std::filesystem;

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(std::log(2.0)) == "0.69314718056");
  CHECK(format_number(-1.5e-20) == "-1.5e-20");
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()).empty());
}

TEST_CASE("CSV layout") {
  const CsvTable t{{"a", "b"}, {{1.0, -0.0}, {0.25, 3e10}}};
  CHECK(t.str() == "a,b\n1,0\n0.25,30000000000\n");
}

TEST_CASE("instrument JSON round trip") {
  const auto instr = random_instrument(3, 2, 2, 14);
  const auto back = parse_instrument(instrument_to_json(instr));
  CHECK(back.system_dim() == 3);
  REQUIRE(back.outcome_count() == 2);
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < 2; ++i) CHECK(max_abs(back.outcome(k)[i] - instr.outcome(k)[i]) == 0.0);
}

TEST_CASE("instrument JSON accepts nested rows") {
  const auto instr = parse_instrument(
      R"({"dim": 2, "outcomes": [[[[[1,0],[0,0]],[[0,0],[0,0]]]], [[[[0,0],[0,0]],[[0,0],[1,0]]]]]})");
  CHECK(is_projective(instr));
  CHECK(max_abs(instr.outcome(1)[0] - matrix_unit(2, 1, 1)) == 0.0);
}

TEST_CASE("state JSON") {
  const auto psi = parse_state(R"({"dim": 2, "psi": [[0.6, 0], [0, 0.8]]})");
  CHECK(psi.matrix()(1, 1).real() == doctest::Approx(0.64));
  CHECK(psi.matrix()(0, 1) == Complex(0, -0.48));
  Rng rng(2);
  const auto rho = random_mixed_state(3, rng);
  CHECK(max_abs(parse_state(state_to_json(rho)).matrix() - rho.matrix()) == 0.0);
}

TEST_CASE("malformed JSON is rejected") {
  CHECK_THROWS_AS(parse_instrument("{"), InputError);
  CHECK_THROWS_AS(parse_instrument(R"({"dim": 2})"), InputError);
  CHECK_THROWS_AS(parse_instrument(R"({"dim": 2, "outcomes": [[[[1,0],[0,0],[0,0]]]]})"), InputError);
  CHECK_THROWS_AS(parse_state(R"({"dim": 2, "psi": [[1, 0], [1, 0]]})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_state(R"({"dim": 2})"), InputError);
  CHECK_THROWS_AS(parse_state(R"({"dim": "two", "psi": []})"), InputError);
  // incomplete instrument surfaces as a domain error, still invalid input
  CHECK_THROWS_AS(parse_instrument(R"({"dim": 1, "outcomes": [[[[0.5, 0]]]]})"), std::invalid_argument);
}

TEST_CASE("report JSON lists every field") {
  const auto z = computational_basis_instrument(2);
  const auto json = report_to_json(energy_report(canonical_device(z), z, plus_state()));
  for (const auto name : kEnergyReportFields) CHECK(json.find("\"" + std::string(name) + "\"") != std::string::npos);
}

TEST_CASE("atomic writes") {
  const fs::path dir = fs::temp_directory_path() / "measurecost_test_io";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path file = dir / "out.csv";
  write_file_atomic(file, "first\n");
  write_file_atomic(file, "second\n");
  CHECK(read_file(file) == "second\n");
  CHECK_FALSE(fs::exists(dir / "out.csv.tmp"));
  CHECK_THROWS_AS(write_file_atomic(dir / "missing" / "x.csv", "x"), IoError);
  CHECK_THROWS_AS(read_file(dir / "nope.json"), IoError);
  fs::remove_all(dir);
}

TEST_CASE("SVG plot") {
  const auto svg = svg_line_plot("t", "x", "y", {{"E_proj", "red", {0, 1}, {0, 2}}, {"E_Lan", "black", {0, 1}, {0, -1}}});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("polyline") != std::string::npos);
  CHECK(svg.find("E_Lan") != std::string::npos);
  CHECK(svg.find("stroke=\"red\"") != std::string::npos);
}
