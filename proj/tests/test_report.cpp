#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "eofb/error.hpp"
#include "eofb/report.hpp"
#include "test_util.hpp"

using namespace eofb;
using eofb::test::near;
using nlohmann::json;

namespace {

ErrorCode parse_error_code(const std::string& text) {
  try {
    parse_state_text(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("document was accepted: " << text);
  return ErrorCode::ParseError;
}

AnalyzeOptions quick() {
  AnalyzeOptions o;
  o.bounds.search_steps = 16;
  return o;
}

}  // namespace

TEST_CASE("state documents in all three forms describe the same state") {
  const CovMat from_sf =
      parse_state_text(R"({"standard_form": {"a": 1.2, "b": 1.5, "c1": 0.4, "c2": -0.3}})");
  const CovMat expected = CovMat::from_standard_form({1.2, 1.5, 0.4, -0.3});
  CHECK((from_sf.matrix().matrix() - expected.matrix().matrix()).cwiseAbs().maxCoeff() == 0.0);

  json nested;
  json flat = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) {
      row.push_back(expected.matrix()(i, j));
      flat.push_back(expected.matrix()(i, j));
    }
    nested.push_back(row);
  }
  const CovMat m1 = parse_state_document({{"matrix", nested}});
  const CovMat m2 = parse_state_document({{"matrix", flat}});
  CHECK((m1.matrix().matrix() - expected.matrix().matrix()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((m2.matrix().matrix() - expected.matrix().matrix()).cwiseAbs().maxCoeff() == 0.0);

  const Invariants inv = invariants(expected);
  const CovMat from_inv = parse_state_document(
      {{"invariants", {{"I1", inv.i1}, {"I2", inv.i2}, {"I3", inv.i3}, {"I4", inv.i4}}}});
  const StandardForm sf = standard_form(from_inv);
  CHECK(near(sf.a, 1.2, 1e-12));
  CHECK(near(sf.b, 1.5, 1e-12));
  CHECK(near(sf.c1, 0.4, 1e-12));
  CHECK(near(sf.c2, -0.3, 1e-12));
}

TEST_CASE("malformed state documents") {
  CHECK(parse_error_code("not json") == ErrorCode::ParseError);
  CHECK(parse_error_code("{}") == ErrorCode::ParseError);
  CHECK(parse_error_code(R"({"matrix": [1, 2, 3]})") == ErrorCode::ParseError);
  CHECK(parse_error_code(R"({"matrix": [[1,0,0,0],[0,1,0,0],[0,0,1,0]]})") == ErrorCode::ParseError);
  CHECK(parse_error_code(R"({"matrix": [1,0.5,0,0, 0,1,0,0, 0,0,1,0, 0,0,0,1]})") ==
        ErrorCode::ParseError);
  CHECK(parse_error_code(R"({"standard_form": {"a": 1.2, "b": 1.5, "c1": 0.4}})") ==
        ErrorCode::ParseError);
  CHECK(parse_error_code(R"({"standard_form": {"a": 1, "b": 1, "c1": 0, "c2": 0},
                             "invariants": {"I1": 1, "I2": 1, "I3": 0, "I4": 0}})") ==
        ErrorCode::ParseError);
  CHECK(parse_error_code(R"({"standard_form": {"a": "x", "b": 1, "c1": 0, "c2": 0}})") ==
        ErrorCode::ParseError);
}

TEST_CASE("unphysical and degenerate documents") {
  CHECK(parse_error_code(R"({"standard_form": {"a": 1, "b": 1, "c1": 0.4, "c2": -0.4}})") ==
        ErrorCode::NonPhysicalState);
  CHECK(parse_error_code(R"({"invariants": {"I1": 1.44, "I2": 2.25, "I3": -0.2, "I4": 0.48}})") ==
        ErrorCode::DegenerateInvariants);
}

TEST_CASE("analyze the vacuum") {
  const json out = analyze(CovMat(SymMat4::identity()), quick());
  CHECK(out["units"] == "nats");
  CHECK(out["physical"] == true);
  CHECK(out["entangled"] == false);
  CHECK(out["symplectic_eigenvalues"]["mu_minus"].get<double>() == doctest::Approx(1.0));
  const json& b = out["bounds"];
  for (const char* key : {"lower_natural", "lower_sigma", "upper_natural", "eeof", "geof"})
    CHECK(b[key].get<double>() == 0.0);
  CHECK(b["hierarchy_ok"] == true);
  CHECK(b["violations"].empty());
}

TEST_CASE("analyze a symmetric entangled state") {
  const double c = std::sqrt(0.2);
  const CovMat v = CovMat::symmetric(1.2, c, -c);
  const double e = formation_function(1.2 - c);
  const json out = analyze(v, quick());
  CHECK(out["entangled"] == true);
  const json& b = out["bounds"];
  CHECK(near(b["lower_natural"].get<double>(), e, 1e-9));
  CHECK(near(b["lower_sigma"].get<double>(), e, 1e-9));
  CHECK(near(b["upper_natural"].get<double>(), e, 1e-9));
  CHECK(near(b["eeof"].get<double>(), e, 1e-9));
  CHECK(near(b["geof"].get<double>(), e, 1e-6));
  CHECK(out["geof_detail"]["feasible"] == true);

  AnalyzeOptions in_bits = quick();
  in_bits.units = Units::bits;
  const json bits = analyze(v, in_bits);
  CHECK(bits["units"] == "bits");
  CHECK(near(bits["bounds"]["eeof"].get<double>(), e / std::log(2.0), 1e-12));
}

TEST_CASE("analyze without geof") {
  AnalyzeOptions o = quick();
  o.bounds.compute_geof = false;
  const json out = analyze(CovMat::from_standard_form({1.2, 1.5, 0.4, -0.3}), o);
  CHECK(out["bounds"]["geof"].is_null());
  CHECK(out["geof_detail"].is_null());
}

TEST_CASE("range endpoints are inclusive") {
  const Range r{1.0, 4.0, 40};
  CHECK(r.at(0) == 1.0);
  CHECK(r.at(39) == 4.0);
  CHECK(Range{2.0, 2.0, 1}.at(0) == 2.0);
}

TEST_CASE("scan documents") {
  const ScanSpec s = parse_scan_document(
      json::parse(R"({"I1": {"min": 1, "max": 2, "steps": 3}, "I3": -0.1, "I4": 0.3, "geof": false})"));
  CHECK(s.i1.steps == 3);
  CHECK(s.i2.steps == 40);
  CHECK(s.i3 == -0.1);
  CHECK(s.i4 == 0.3);
  CHECK_FALSE(s.compute_geof);
  CHECK_FALSE(parse_scan_document(json::parse(R"({"I4": "rule"})")).i4.has_value());
  CHECK_THROWS_AS(parse_scan_document(json::parse(R"({"I4": "other"})")), Error);
  CHECK_THROWS_AS(parse_scan_document(json::parse(R"({"I1": {"steps": 0}})")), Error);
  CHECK_THROWS_AS(parse_scan_document(json::parse(R"({"I1": 3})")), Error);
}

TEST_CASE("scan with vanishing correlations is all zeros") {
  ScanSpec s;
  s.i1 = {1.0, 3.0, 5};
  s.i2 = {1.0, 3.0, 5};
  s.i3 = 0.0;
  const auto rows = scan(s, quick());
  REQUIRE(rows.size() == 25);
  for (const ScanRow& row : rows) {
    CHECK(row.status == RowStatus::ok);
    CHECK_FALSE(row.entangled);
    CHECK(row.lower_natural.nats == 0.0);
    CHECK(row.sigma.nats == 0.0);
    CHECK(row.eeof.nats == 0.0);
    CHECK(row.geof->nats == 0.0);
  }
}

TEST_CASE("scan rows on the diagonal collapse") {
  ScanSpec s;
  s.i1 = {1.5, 3.5, 5};
  s.i2 = {1.5, 3.5, 5};
  const auto rows = scan(s, quick());
  for (const ScanRow& row : rows) {
    CHECK(row.status == RowStatus::ok);
    CHECK(row.lower_natural.nats <= row.sigma.nats + 1e-9);
    CHECK(row.sigma.nats <= row.geof->nats + 1e-6);
    if (row.upper_natural) CHECK(row.geof->nats <= row.upper_natural->nats + 1e-6);
    if (row.i1 != row.i2) continue;
    CHECK(near(row.lower_natural.nats, row.upper_natural->nats, 1e-9));
    CHECK(near(row.sigma.nats, row.lower_natural.nats, 1e-9));
    CHECK(near(row.eeof.nats, row.lower_natural.nats, 1e-9));
    CHECK(near(row.geof->nats, row.lower_natural.nats, 1e-6));
  }
}

TEST_CASE("scan marks skipped grid points") {
  ScanSpec s;
  s.i1 = {1.0, 1.0, 1};
  s.i2 = {1.0, 1.0, 1};
  s.i3 = -0.2;
  s.i4 = 0.0;
  auto rows = scan(s, quick());
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].status == RowStatus::skip_degenerate);

  s.i4.reset();
  s.i3 = -0.5;
  rows = scan(s, quick());
  CHECK(rows[0].status == RowStatus::skip_unphysical);
  const std::string csv = format_scan_csv(rows);
  CHECK(csv.find("NA") != std::string::npos);
  CHECK(csv.find("skip_unphysical") != std::string::npos);
}

TEST_CASE("scan csv layout") {
  ScanSpec s;
  s.i1 = {1.0, 2.0, 2};
  s.i2 = {1.0, 2.0, 3};
  const auto rows = scan(s, quick());
  const std::string csv = format_scan_csv(rows);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == kScanCsvHeader);
  int count = 0;
  while (std::getline(in, line)) {
    ++count;
    CHECK(std::count(line.begin(), line.end(), ',') == 12);
  }
  CHECK(count == 6);
  CHECK(rows[0].i1 == 1.0);
  CHECK(rows[1].i1 == 1.0);
  CHECK(rows[1].i2 == 1.5);
  CHECK(rows[3].i1 == 2.0);
}

TEST_CASE("scan output does not depend on the thread count") {
  ScanSpec s;
  s.i1 = {1.0, 4.0, 6};
  s.i2 = {1.0, 4.0, 6};
  const std::string one = format_scan_csv(scan(s, quick(), 1));
  const std::string two = format_scan_csv(scan(s, quick(), 2));
  const std::string again = format_scan_csv(scan(s, quick(), 1));
  CHECK(one == two);
  CHECK(one == again);
}
