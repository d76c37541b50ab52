#include "gensys/report.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "gensys/errors.hpp"
#include "gensys/experiment.hpp"
#include "gensys/scenario.hpp"

using namespace gensys;

namespace {

const std::string kScenarioDir = GENSYS_SCENARIO_DIR;
const std::string kGoldenDir = GENSYS_GOLDEN_DIR;

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(EmitReport, EmptyStepsGiveHeaderOnlyCsv) {
  Report r;
  r.scenario = "empty";
  EXPECT_EQ(emit_report(r, ReportFormat::kCsv),
            "n,utility,delta,tau,bound_lhs,bound_rhs,slack,pass\n");
}

TEST(EmitReport, FiveStepTrajectoryRows) {
  const auto r = run_experiment(parse_scenario(kScenarioDir + "/staircase_uniform.json"));
  const auto lines = lines_of(emit_report(r, ReportFormat::kCsv));
  ASSERT_EQ(lines.size(), 6u);
  EXPECT_EQ(lines[0], kCsvHeader);
  for (std::size_t n = 1; n <= 5; ++n) {
    EXPECT_EQ(lines[n].substr(0, lines[n].find(',')), std::to_string(n));
  }
  // Delta is defined for n < N only.
  EXPECT_EQ(lines[5], "5,1,,,,,,");
}

TEST(EmitReport, CsvMatchesGoldenFile) {
  const auto r = run_experiment(parse_scenario(kScenarioDir + "/staircase_uniform.json"));
  std::ifstream in(kGoldenDir + "/staircase_uniform.csv");
  ASSERT_TRUE(in);
  std::stringstream golden;
  golden << in.rdbuf();
  EXPECT_EQ(emit_report(r, ReportFormat::kCsv), golden.str());
}

TEST(EmitReport, StructuredRoundTripIsLossless) {
  for (const char* f : {"geometric_difficulty.json", "weather_prediction.json", "gl_core.json"}) {
    const auto r = run_experiment(parse_scenario(kScenarioDir + "/" + f));
    const std::string text = emit_report(r, ReportFormat::kStructured);
    const Report back = parse_report(text);
    EXPECT_EQ(back, r) << f;
    EXPECT_EQ(emit_report(back, ReportFormat::kStructured), text) << f;
  }
}

TEST(ParseReport, RejectsOtherDocuments) {
  EXPECT_THROW(parse_report("{\"name\": \"x\"}"), ParseError);
  EXPECT_THROW(parse_report("not json"), ParseError);
}

TEST(WriteReport, UnwritableDestinationIsAnIoError) {
  Report r;
  EXPECT_THROW(write_report(r, ReportFormat::kCsv, "/nonexistent-dir/sub/report.csv"),
               IoError);
}

TEST(ReportFormat, Parsing) {
  EXPECT_EQ(parse_report_format("csv"), ReportFormat::kCsv);
  EXPECT_EQ(parse_report_format("structured"), ReportFormat::kStructured);
  EXPECT_FALSE(parse_report_format("xml").has_value());
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.2), "0.2");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

}  // namespace
