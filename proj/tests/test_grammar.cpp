#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "catastro/grammar.hpp"
#include "catastro/report.hpp"

using namespace catastro;

TEST_CASE("survival law grammar") {
  CHECK(parse_survival_law("uniform").kind() == SurvivalLaw::Kind::Uniform);

  SurvivalLaw deg = parse_survival_law("degenerate:p=0.25");
  CHECK(deg.kind() == SurvivalLaw::Kind::Degenerate);
  CHECK(deg.p() == doctest::Approx(0.25));

  SurvivalLaw beta = parse_survival_law("beta:a=2,b=3.5");
  CHECK(beta.kind() == SurvivalLaw::Kind::Beta);
  CHECK(beta.a() == doctest::Approx(2.0));
  CHECK(beta.b() == doctest::Approx(3.5));

  SurvivalLaw power = parse_survival_law("power:a=0.5");
  CHECK(power.kind() == SurvivalLaw::Kind::PowerFunction);
  CHECK(power.a() == doctest::Approx(0.5));

  SurvivalLaw te = parse_survival_law("truncexp:gamma=1.5");
  CHECK(te.kind() == SurvivalLaw::Kind::TruncatedExponential);
  CHECK(te.gamma() == doctest::Approx(1.5));
}

TEST_CASE("survival law grammar errors") {
  CHECK_THROWS_AS(parse_survival_law("gaussian:mu=0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_survival_law("degenerate:q=0.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_survival_law("degenerate:p=zero"), std::invalid_argument);
  CHECK_THROWS_AS(parse_survival_law("beta:a=2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_survival_law("uniform:a=1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_survival_law("degenerate:p=1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_survival_law("beta:a=-1,b=1"), std::invalid_argument);
}

TEST_CASE("radius law grammar") {
  RadiusLaw geom = parse_radius_law("geomlife:p=0.5");
  CHECK(geom.kind() == RadiusLaw::Kind::GeometricLifetime);
  CHECK(geom.cdf(0) == doctest::Approx(0.5));
  CHECK(geom.cdf(1) == doctest::Approx(0.75));

  RadiusLaw sup = parse_radius_law("support:0=0.5,1=0.25,2=0.25");
  CHECK(sup.kind() == RadiusLaw::Kind::FiniteSupport);
  CHECK(sup.support_bound() == 2);
  CHECK(sup.cdf(1) == doctest::Approx(0.75));

  // unlisted intermediate values get probability zero
  RadiusLaw sparse = parse_radius_law("support:0=0.5,3=0.5");
  CHECK(sparse.support_bound() == 3);
  CHECK(sparse.cdf(2) == doctest::Approx(0.5));

  RadiusLaw from = parse_radius_law("fromdist:uniform");
  CHECK(from.kind() == RadiusLaw::Kind::FromSurvivalLaw);
  CHECK(from.cdf(0) == doctest::Approx(0.5));

  RadiusLaw from_beta = parse_radius_law("fromdist:beta:a=2,b=3");
  CHECK(from_beta.cdf(0) == doctest::Approx(0.6));
}

TEST_CASE("radius law grammar errors") {
  CHECK_THROWS_AS(parse_radius_law("poisson:mu=2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_radius_law("support:0=0.5,1=0.6"), std::invalid_argument);
  CHECK_THROWS_AS(parse_radius_law("support:x=1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_radius_law("geomlife:p=2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_radius_law("fromdist:gaussian"), std::invalid_argument);
}

TEST_CASE("report formatting round-trips at 12 significant digits") {
  CHECK(format_value(0.5) == "0.5");
  CHECK(format_value(3.7684620580630126) == "3.76846205806");
  CHECK(format_value(1.0 / 0.0 * 1.0) == "inf");
  CHECK(format_value(-1.0 / 0.0 * 1.0) == "-inf");

  // values re-parse to 12 significant digits
  double v = 2.7684620580630126;
  double back = std::stod(format_value(v));
  CHECK(std::abs(back - v) <= 1e-11 * std::abs(v));

  ReportRow row;
  row.lambda = 2.0;
  row.dist = "uniform";
  row.model = "ind";
  row.quantity = "survival";
  row.value = 0.5;
  row.method = "closed-form";

  std::ostringstream csv;
  emit_report(csv, {row}, OutputFormat::Csv);
  CHECK(csv.str() ==
        "lambda,dist,model,quantity,value,abs_error,method,replicas,stderr\n"
        "2,uniform,ind,survival,0.5,,closed-form,,\n");

  std::ostringstream json;
  emit_report(json, {row}, OutputFormat::Json);
  CHECK(json.str().find("\"quantity\": \"survival\"") != std::string::npos);
  CHECK(json.str().find("\"value\": \"0.5\"") != std::string::npos);
}
