#ifndef GENSYS_REPORT_HPP_
#define GENSYS_REPORT_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gensys {

// A checked relation lhs <= rhs; slack = rhs - lhs.
struct BoundRecord {
  std::string name;
  std::optional<std::size_t> context;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = false;

  friend bool operator==(const BoundRecord&, const BoundRecord&) = default;
};

struct StepRecord {
  std::size_t n = 0;
  std::optional<double> utility;
  std::optional<double> delta;
  std::optional<double> tau;
  std::vector<BoundRecord> bounds;
  std::map<std::string, double> extras;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

// Scenario-level check; `detail` carries a human-readable note.
struct CheckRecord {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool pass = false;
  std::string detail;

  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct CountermodelRecord {
  std::size_t worlds = 0;
  std::vector<std::pair<std::size_t, std::size_t>> relation;
  std::vector<std::vector<unsigned>> valuation;  // true atoms per world
  std::size_t world = 0;

  friend bool operator==(const CountermodelRecord&, const CountermodelRecord&) = default;
};

struct VerdictRecord {
  std::string formula;
  std::string verdict;
  std::optional<std::string> expected;
  std::vector<std::string> proof;
  std::optional<CountermodelRecord> countermodel;

  friend bool operator==(const VerdictRecord&, const VerdictRecord&) = default;
};

struct Report {
  std::string scenario;
  std::string kind;
  std::uint64_t seed = 0;
  std::size_t n_max = 0;
  double epsilon = 0.0;
  double tolerance = 0.0;
  std::vector<StepRecord> steps;  // ordered by n
  std::vector<CheckRecord> checks;
  std::vector<VerdictRecord> verdicts;
  std::map<std::string, double> metrics;
  bool passed = false;

  friend bool operator==(const Report&, const Report&) = default;
};

enum class ReportFormat { kCsv, kStructured };

std::optional<ReportFormat> parse_report_format(std::string_view text);

inline constexpr std::string_view kCsvHeader =
    "n,utility,delta,tau,bound_lhs,bound_rhs,slack,pass";

// csv: one row per step with the columns of kCsvHeader. The bound columns
// show the step's tightest bound (smallest slack) and `pass` is the
// conjunction over all of the step's bounds; cells are empty when a value
// does not apply. structured: JSON mirroring every Report field.
std::string emit_report(const Report& report, ReportFormat format);

// Writes emit_report output; throws IoError when the file cannot be written.
void write_report(const Report& report, ReportFormat format,
                  const std::filesystem::path& path);

// Inverse of the structured emitter. Throws ParseError.
Report parse_report(std::string_view structured);

// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace gensys

#endif  // GENSYS_REPORT_HPP_
