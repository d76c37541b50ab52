// Command-line front end: run scenarios, decide GL formulas, emit reports.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gensys/errors.hpp"
#include "gensys/experiment.hpp"
#include "gensys/gl_prover.hpp"
#include "gensys/kripke.hpp"
#include "gensys/modal_formula.hpp"
#include "gensys/report.hpp"
#include "gensys/scenario.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct CommonOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n_max;
  std::optional<double> epsilon;
  std::optional<double> tolerance;
  std::string format = "structured";
  std::string out;

  gensys::RunOverrides overrides() const {
    return gensys::RunOverrides{seed, n_max, epsilon, tolerance};
  }
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_output) {
  cmd->add_option("--seed", o.seed, "Override the scenario seed");
  cmd->add_option("--n-max", o.n_max, "Override the number of capacity levels");
  cmd->add_option("--epsilon", o.epsilon, "Override the diminishing-returns epsilon");
  cmd->add_option("--tolerance", o.tolerance, "Override the inequality slack");
  if (with_output) {
    cmd->add_option("--format", o.format, "Report format")
        ->check(CLI::IsMember({"csv", "structured"}));
    cmd->add_option("--out", o.out, "Write the report to this path ('-' for stdout)");
  }
}

void print_countermodel(const gensys::CountermodelRecord& m) {
  std::cout << "  countermodel: " << m.worlds << " world(s), refuted at w" << m.world
            << "\n  relation:";
  if (m.relation.empty()) std::cout << " (empty)";
  for (const auto& [a, b] : m.relation) std::cout << " w" << a << "->w" << b;
  std::cout << "\n";
  for (std::size_t w = 0; w < m.valuation.size(); ++w) {
    std::cout << "  w" << w << ":";
    if (m.valuation[w].empty()) std::cout << " (no atoms true)";
    for (unsigned a : m.valuation[w]) std::cout << " p" << a;
    std::cout << "\n";
  }
}

void print_summary(const gensys::Report& r) {
  std::cout << "scenario " << r.scenario << " (" << r.kind << ", seed " << r.seed
            << ")\n";
  for (const auto& [k, v] : r.metrics) {
    std::cout << "  " << k << " = " << gensys::format_double(v) << "\n";
  }
  for (const auto& v : r.verdicts) {
    std::cout << v.formula << " : " << v.verdict << "\n";
    for (const auto& line : v.proof) std::cout << "    " << line << "\n";
    if (v.countermodel) print_countermodel(*v.countermodel);
  }
  for (const auto& c : r.checks) {
    std::cout << (c.pass ? "  PASS " : "  FAIL ") << c.name << ": lhs="
              << gensys::format_double(c.lhs) << " rhs=" << gensys::format_double(c.rhs);
    if (!c.detail.empty()) std::cout << " (" << c.detail << ")";
    std::cout << "\n";
  }
  std::cout << (r.passed ? "PASS" : "FAIL") << "\n";
}

void output_report(const gensys::Report& r, const CommonOptions& o) {
  const auto format = *gensys::parse_report_format(o.format);
  if (o.out == "-") {
    std::cout << gensys::emit_report(r, format);
  } else {
    gensys::write_report(r, format, o.out);
  }
}

int finish(const gensys::Report& r, const CommonOptions& o) {
  if (o.out == "-") {
    output_report(r, o);
  } else {
    if (!o.out.empty()) output_report(r, o);
    print_summary(r);
  }
  return r.passed ? kExitPass : kExitFail;
}

int run_scenario_command(const std::string& path, gensys::ScenarioKind expected,
                         const CommonOptions& o) {
  gensys::Scenario s = gensys::parse_scenario(path);
  if (s.kind != expected) {
    throw gensys::ValidationError(path + " is a " + gensys::to_string(s.kind) +
                                  " scenario, expected " + gensys::to_string(expected));
  }
  gensys::apply_overrides(s, o.overrides());
  return finish(gensys::run_experiment(s), o);
}

int run_logic_command(const std::string& arg, const CommonOptions& o,
                      std::size_t max_nodes) {
  if (std::filesystem::is_regular_file(arg)) {
    return run_scenario_command(arg, gensys::ScenarioKind::kLogic, o);
  }
  const auto phi = gensys::parse_formula(arg);
  gensys::GlLimits limits;
  limits.max_nodes = max_nodes;
  const auto result = gensys::gl_decide(phi, limits);
  std::cout << gensys::to_string(phi) << " : " << gensys::to_string(result.verdict)
            << "\n";
  if (result.verdict == gensys::Verdict::kValid) {
    for (const auto& line : gensys::render_proof(result.proof)) {
      std::cout << "    " << line << "\n";
    }
  } else {
    print_countermodel(gensys::to_record(*result.countermodel));
  }
  return kExitPass;
}

int run_emit_command(const std::string& input, const CommonOptions& o) {
  if (o.out.empty()) throw gensys::ValidationError("emit requires --out");
  std::ifstream in(input, std::ios::binary);
  if (!in) throw gensys::IoError("cannot open " + input);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  gensys::Report report;
  if (text.find("\"report_version\"") != std::string::npos) {
    report = gensys::parse_report(text);
  } else {
    gensys::Scenario s = gensys::parse_scenario_text(text);
    gensys::apply_overrides(s, o.overrides());
    report = gensys::run_experiment(s);
  }
  output_report(report, o);
  return report.passed ? kExitPass : kExitFail;
}

int run_verify_command(const std::string& dir, const CommonOptions& o) {
  const auto entries = gensys::run_batch(dir, o.overrides());
  bool ok = !entries.empty();
  for (const auto& e : entries) {
    std::cout << (e.passed ? "PASS " : "FAIL ") << e.path.filename().string();
    if (!e.error.empty()) std::cout << " error: " << e.error;
    std::cout << "\n";
    ok = ok && e.passed;
  }
  if (entries.empty()) std::cout << "no scenarios found in " << dir << "\n";
  return ok ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Expanding-system utility dynamics, prior truncation bounds and GL decisions"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string target;
  std::size_t max_nodes = 200;

  auto* simulate = app.add_subcommand("simulate", "Run a trajectory scenario");
  simulate->add_option("file", target, "Scenario file")->required();
  add_common(simulate, opts, true);

  auto* predict = app.add_subcommand("predict", "Run a prediction-bounds scenario");
  predict->add_option("file", target, "Scenario file")->required();
  add_common(predict, opts, true);

  auto* logic = app.add_subcommand("logic", "Decide GL formulas from a file or the command line");
  logic->add_option("input", target, "Logic scenario file or a formula")->required();
  logic->add_option("--max-nodes", max_nodes, "Formula size limit");
  add_common(logic, opts, true);

  auto* verify = app.add_subcommand("verify", "Run every scenario in a directory");
  verify->add_option("dir", target, "Scenario directory")->required();
  add_common(verify, opts, false);

  auto* emit = app.add_subcommand("emit", "Write a report for a scenario or structured report");
  emit->add_option("input", target, "Scenario file or structured report")->required();
  add_common(emit, opts, true);
  emit->get_option("--out")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) return run_scenario_command(target, gensys::ScenarioKind::kTrajectory, opts);
    if (*predict) return run_scenario_command(target, gensys::ScenarioKind::kPrediction, opts);
    if (*logic) return run_logic_command(target, opts, max_nodes);
    if (*verify) return run_verify_command(target, opts);
    if (*emit) return run_emit_command(target, opts);
  } catch (const gensys::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
