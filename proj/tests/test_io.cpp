#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "selectra/demo.hpp"
#include "selectra/errors.hpp"
#include "selectra/io.hpp"
#include "selectra/plot.hpp"
#include "test_util.hpp"

using namespace selectra;
using selectra::testing::error_code;

namespace {

namespace fs = std::filesystem;

const fs::path kRoot = SELECTRA_SOURCE_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSeg = R"({
  "complex": {"dim": 1, "vertices": [[0], [1]], "simplices": [[0, 1]]},
  "fields": {"xi": {"kind": "scalar", "values": {"0": 0, "0-1": "-1/2", "1": 0}},
             "eta": {"kind": "scalar", "values": {"0": 1, "0-1": "3/2", "1": "inf"}}}
})";

}  // namespace

TEST_CASE("every corpus file survives a parse/serialize round trip byte for byte") {
  std::size_t seen = 0;
  for (const auto& entry : fs::directory_iterator(kRoot / "data")) {
    if (entry.path().extension() != ".json") continue;
    ++seen;
    CAPTURE(entry.path().string());
    const auto doc = parse_instance(slurp(entry.path()));
    const std::string once = serialize_instance(doc);
    const auto again = parse_instance(once);
    CHECK(serialize_instance(again) == once);
    CHECK(again.complex->num_cells() == doc.complex->num_cells());
    CHECK(again.fields.size() == doc.fields.size());
    CHECK(again.subcomplexes == doc.subcomplexes);
  }
  CHECK(seen >= 8);
}

TEST_CASE("rationals are written in lowest terms and infinities survive") {
  auto doc = parse_instance(kSeg);
  const auto& xi = doc.field("xi", FieldKind::Scalar).scalar();
  CHECK(xi[1] == ExtRational(make_rational(-1, 2)));
  CHECK(doc.field("eta").scalar()[2].is_pos_inf());
  const std::string text = serialize_instance(doc);
  CHECK(text.find("\"-1/2\"") != std::string::npos);
  CHECK(text.find("\"inf\"") != std::string::npos);
  CHECK(text.back() == '\n');
}

TEST_CASE("malformed JSON reports line and column") {
  try {
    parse_instance("{\n  \"complex\": [1, 2,\n}");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    CHECK(std::string(e.what()).find("column") != std::string::npos);
  }
}

TEST_CASE("validation names the offending cell") {
  std::string missing = kSeg;
  missing.replace(missing.find("\"0-1\": \"-1/2\", "), std::string("\"0-1\": \"-1/2\", ").size(), "");
  try {
    parse_instance(missing);
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ValidationError);
    CHECK(std::string(e.what()).find("0-1") != std::string::npos);
  }
  std::string floating = kSeg;
  floating.replace(floating.find("\"-1/2\""), 6, "-0.5");
  CHECK(error_code([&] { parse_instance(floating); }) == ErrorCode::ValidationError);
  std::string unknown = kSeg;
  unknown.replace(unknown.find("\"0-1\": \"-1/2\""), 5, "\"0-2\"");
  CHECK(error_code([&] { parse_instance(unknown); }).has_value());
  CHECK(error_code([&] { parse_instance("{\"fields\": {}}"); }) == ErrorCode::ValidationError);
  CHECK(error_code([&] { read_instance((kRoot / "data" / "no_such_file.json").string()); }) == ErrorCode::ParseError);
}

TEST_CASE("unknown top-level keys are carried through") {
  auto j = nlohmann::json::parse(kSeg);
  j["trace"] = {{"steps", 3}};
  auto doc = parse_instance(j.dump());
  CHECK(doc.extra["trace"]["steps"] == 3);
  CHECK(serialize_instance(parse_instance(serialize_instance(doc))) == serialize_instance(doc));
}

TEST_CASE("write_file_atomic replaces the target in one step") {
  const fs::path dir = fs::temp_directory_path() / "selectra_io_test";
  fs::create_directories(dir);
  const fs::path p = dir / "out.json";
  write_file_atomic(p.string(), "first\n");
  write_file_atomic(p.string(), "second\n");
  CHECK(slurp(p) == "second\n");
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++files;
  CHECK(files == 1);
  fs::remove_all(dir);
}

TEST_CASE("the SVG of the inserted segment selection matches the golden file") {
  const auto doc = read_instance((kRoot / "data" / "seg.json").string());
  PlotData data{doc.complex, doc.field("xi").scalar(), doc.field("eta").scalar(), {}};
  data.curve = insert(*data.lower, *data.upper).map;
  const std::string svg = render_svg(data);
  CHECK(svg == slurp(kRoot / "tests" / "golden" / "seg_insert.svg"));
  CHECK(render_svg(data) == svg);
}

TEST_CASE("CSV has one row per fine cell with exact values") {
  const auto doc = read_instance((kRoot / "data" / "seg.json").string());
  PlotData data{doc.complex, {}, {}, insert(doc.field("xi").scalar(), doc.field("eta").scalar()).map};
  const std::string csv = render_csv(data);
  CHECK(csv.rfind("x1,f1\n", 0) == 0);
  std::size_t rows = 0;
  for (char c : csv) rows += c == '\n';
  CHECK(rows == 1 + data.curve->complex()->num_cells());
  CHECK(error_code([&] { render_csv(PlotData{doc.complex, {}, {}, {}}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("plots refuse bases beyond the plane") {
  const auto doc = read_instance((kRoot / "data" / "tet.json").string());
  CHECK(error_code([&] { render_svg(PlotData{doc.complex, {}, {}, {}}); }) == ErrorCode::UnsupportedDim);
}

TEST_CASE("the demo runs every engine and all of its checks pass") {
  const Report r = run_demo();
  CHECK(r.passed());
  CHECK(r.checks.size() >= 10);
  CHECK(run_demo().to_json() == r.to_json());
}
