// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "gensys/experiment.hpp"
#include "gensys/gl_prover.hpp"
#include "gensys/kripke.hpp"
#include "gensys/prediction.hpp"
#include "gensys/system_family.hpp"
#include "support/generators.hpp"

using namespace gensys;
namespace fs = std::filesystem;

namespace {

const fs::path kScenarioDir = GENSYS_SCENARIO_DIR;
const fs::path kGoldenDir = GENSYS_GOLDEN_DIR;
const std::string kCliPath = GENSYS_CLI_PATH;
const fs::path kFailingDir = GENSYS_FAILING_DIR;

// Largest frame the exhaustive oracle explores in the GL cross-validation.
constexpr std::size_t kOracleWorldCap = 5;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Criterion {
 public:
  Criterion(int id, std::string title, double budget_s)
      : id_(id), title_(std::move(title)), budget_s_(budget_s) {}

  Outcome run(const std::function<Outcome()>& body) const {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = body();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget_s_ > 0 && elapsed >= budget_s_) {
      out.pass = false;
      out.detail += " (over time budget)";
    }
    std::printf("%s criterion %d: %s [%.3f s] %s\n", out.pass ? "PASS" : "FAIL", id_,
                title_.c_str(), elapsed, out.detail.c_str());
    std::fflush(stdout);
    return out;
  }

 private:
  int id_;
  std::string title_;
  double budget_s_;
};

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

std::vector<SystemTrajectory> coverage_trajectories() {
  std::vector<SystemTrajectory> out;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    testkit::Rng rng(seed);
    const TaskMeasure mu = testkit::random_task_measure(rng, 50);
    out.push_back(build_trajectory(RandomCoverage{0.05, seed}, 100, mu));
  }
  return out;
}

Outcome telescoping() {
  double worst = 0.0;
  for (const auto& traj : coverage_trajectories()) {
    worst = std::max(worst, telescoping_residual(traj));
  }
  return {worst <= 1e-12, fmt("max residual %.3g over 100 trajectories", worst)};
}

Outcome diminishing_returns() {
  std::size_t violations = 0;
  std::size_t checked = 0;
  for (const auto& traj : coverage_trajectories()) {
    const auto gains = marginal_gains(traj);
    for (double eps : {0.5, 0.1, 0.01}) {
      ++checked;
      if (count_gains_at_least(gains, eps) > diminishing_returns_bound(eps)) ++violations;
    }
  }
  return {violations == 0,
          fmt("%.0f violations in %.0f (trajectory, epsilon) pairs",
              static_cast<double>(violations), static_cast<double>(checked))};
}

Outcome geometric() {
  std::vector<double> masses;
  std::vector<std::uint64_t> difficulty;
  for (int d = 1; d <= 20; ++d) {
    masses.push_back(std::ldexp(1.0, -d));
    difficulty.push_back(static_cast<std::uint64_t>(d));
  }
  const TaskMeasure mu = TaskMeasure::proportional(masses);
  const auto gains =
      marginal_gains(build_trajectory(DifficultyThreshold{difficulty}, 20, mu));
  double worst = 0.0;
  for (std::size_t n = 1; n <= 19; ++n) {
    const double expected =
        std::ldexp(1.0, -static_cast<int>(n + 1)) / (1.0 - std::ldexp(1.0, -20));
    worst = std::max(worst, std::abs(gains[n - 1] - expected));
  }
  return {gains.size() == 19 && worst <= 1e-12, fmt("max deviation %.3g for n = 1..19", worst)};
}

struct PredictionSweep {
  std::vector<PredictionBoundsReport> reports;
  double seconds = 0.0;
};

const PredictionSweep& prediction_sweep() {
  static const PredictionSweep sweep = [] {
    PredictionSweep s;
    const auto start = std::chrono::steady_clock::now();
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto p = testkit::random_prediction_problem(seed);
      s.reports.push_back(
          verify_prediction_bounds(p.hypotheses, p.kernels, p.loss, p.contexts, p.n_max));
    }
    s.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return s;
  }();
  return sweep;
}

// Worst slack among checks named `name`; counts failures.
Outcome family(std::initializer_list<const char*> names, const char* label) {
  std::size_t checked = 0;
  std::size_t failed = 0;
  double worst_slack = INFINITY;
  for (const auto& rep : prediction_sweep().reports) {
    for (const auto& c : rep.checks) {
      if (std::find_if(names.begin(), names.end(),
                       [&](const char* n) { return c.name == n; }) == names.end()) {
        continue;
      }
      ++checked;
      if (!c.pass) ++failed;
      worst_slack = std::min(worst_slack, c.slack);
    }
  }
  std::ostringstream os;
  os << label << ": " << checked << " checks, " << failed << " failed, min slack "
     << worst_slack;
  return {checked > 0 && failed == 0, os.str()};
}

Outcome decomposition() {
  const auto& sweep = prediction_sweep();
  Outcome out = family({kCheckDecomposition, kCheckTvContraction}, "identities");
  out.detail += fmt(", sweep %.2f s", sweep.seconds);
  if (sweep.seconds >= 5.0) {
    out.pass = false;
    out.detail += " (sweep over 5 s)";
  }
  return out;
}

Outcome marginal_gain() {
  Outcome out = family({kCheckMarginalGain, kCheckMarginalGainTwoTau}, "marginal gain");
  // The chain tau_n + tau_{n+1} <= 2 tau_n follows from tail monotonicity.
  for (const auto& rep : prediction_sweep().reports) {
    for (std::size_t k = 0; k + 1 < rep.levels.size(); ++k) {
      if (rep.levels[k + 1].tau_n > rep.levels[k].tau_n) {
        out.pass = false;
        out.detail += " (tail mass increased)";
        return out;
      }
    }
  }
  if (prediction_sweep().seconds >= 30.0) {
    out.pass = false;
    out.detail += " (criteria 4-7 over 30 s)";
  }
  return out;
}

Outcome risk_lipschitz() {
  testkit::Rng rng(2024);
  std::size_t half_violations = 0;
  std::size_t dual_violations = 0;
  double worst_ratio = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t outcomes = testkit::uniform_index(rng, 2, 5);
    const std::size_t actions = testkit::uniform_index(rng, 1, 8);
    std::vector<std::vector<double>> rows(actions, std::vector<double>(outcomes));
    for (auto& row : rows) {
      for (double& v : row) v = testkit::uniform01(rng);
    }
    const LossTable loss(Table::from_rows(rows));
    const auto a = testkit::random_distribution(rng, outcomes);
    const auto b = testkit::random_distribution(rng, outcomes);
    const double gap = std::abs(bayes_risk(a, loss).value - bayes_risk(b, loss).value);
    const double half = tv_half(a, b);
    const double dual = tv_dual(a, b);
    if (gap > half + kInequalitySlack) ++half_violations;
    if (gap > dual + kInequalitySlack) ++dual_violations;
    if (half > 0) worst_ratio = std::max(worst_ratio, gap / half);
  }
  std::ostringstream os;
  os << "1000 pairs; |V-V'| <= tv_half: " << half_violations
     << " violations; |V-V'| <= tv_dual = 2 tv_half: " << dual_violations
     << " violations; max |V-V'|/tv_half " << worst_ratio;
  return {half_violations == 0 && dual_violations == 0, os.str()};
}

Outcome gl_correctness() {
  std::ostringstream os;
  bool pass = true;
  const auto expect = [&](const char* text, Verdict v) {
    const auto phi = parse_formula(text);
    const auto r = gl_decide(phi);
    bool ok = r.verdict == v;
    if (v == Verdict::kInvalid) {
      ok = ok && r.countermodel.has_value() &&
           !model_check(phi, r.countermodel->model, r.countermodel->world);
    } else {
      ok = ok && !r.proof.empty();
    }
    if (!ok) {
      pass = false;
      os << "core formula " << text << " wrong; ";
    }
  };
  expect("[]([]p0 -> p0) -> []p0", Verdict::kValid);
  expect("[](p0 -> p1) -> ([]p0 -> []p1)", Verdict::kValid);
  expect("[]p0 -> p0", Verdict::kInvalid);

  testkit::Rng rng(7);
  std::size_t valid = 0;
  std::size_t disagreements = 0;
  std::size_t capped = 0;
  std::size_t closure_failures = 0;
  std::size_t oversized = 0;
  for (int i = 0; i < 500; ++i) {
    const auto phi = testkit::random_formula(rng);
    const auto r = gl_decide(phi);
    const std::size_t bound = box_subformula_count(phi) + 1;
    if (bound > kOracleWorldCap) ++capped;
    const auto oracle = search_countermodel(phi, std::min(bound, kOracleWorldCap));
    if (r.verdict == Verdict::kValid) {
      ++valid;
      if (oracle.has_value()) ++disagreements;
      // Necessitation.
      if (gl_decide(ModalFormula::box(phi)).verdict != Verdict::kValid) ++closure_failures;
    } else {
      const bool refutes = r.countermodel.has_value() &&
                           !model_check(phi, r.countermodel->model, r.countermodel->world);
      if (!refutes) ++disagreements;
      if (r.countermodel && r.countermodel->model.worlds() > bound) ++oversized;
      if (bound <= kOracleWorldCap && !oracle.has_value()) ++disagreements;
    }
    // Loeb rule: |- []A -> A implies |- A.
    const auto loeb = ModalFormula::implies(ModalFormula::box(phi), phi);
    if (gl_decide(loeb).verdict == Verdict::kValid && r.verdict != Verdict::kValid) {
      ++closure_failures;
    }
  }
  if (disagreements > 0 || closure_failures > 0 || oversized > 0) pass = false;
  os << "500 random formulas, " << valid << " valid; " << disagreements
     << " disagreements; " << closure_failures << " closure failures; " << oversized
     << " countermodels above the subformula bound; oracle capped at " << kOracleWorldCap
     << " worlds for " << capped << " formulas";
  return {pass, os.str()};
}

std::string render_frames(std::size_t n) {
  std::ostringstream os;
  const auto frames = enumerate_frames(n);
  os << "worlds " << n << " frames " << frames.size() << "\n";
  for (const auto& f : frames) {
    os << " ";
    if (f.relation.empty()) os << " {}";
    for (const auto& [a, b] : f.relation) os << " " << a << "<" << b;
    os << "\n";
  }
  return os.str();
}

Outcome frame_counts() {
  const std::size_t c1 = enumerate_frames(1).size();
  const std::size_t c2 = enumerate_frames(2).size();
  const std::size_t c3 = enumerate_frames(3).size();
  std::ifstream in(kGoldenDir / "frames_3.txt");
  std::stringstream golden;
  golden << in.rdbuf();
  const bool golden_ok = in.good() || in.eof();
  const std::string actual = render_frames(1) + render_frames(2) + render_frames(3);
  const bool match = golden_ok && golden.str() == actual;
  std::ostringstream os;
  os << "counts " << c1 << ", " << c2 << ", " << c3 << "; golden file "
     << (match ? "matches" : "differs");
  return {c1 == 1 && c2 == 3 && c3 == 19 && match, os.str()};
}

int run_cli_verify(const fs::path& dir) {
  const std::string cmd = "\"" + kCliPath + "\" verify \"" + dir.string() + "\" > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

Outcome determinism() {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(kScenarioDir)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::size_t differing = 0;
  for (const auto& f : files) {
    const auto s = parse_scenario(f);
    if (emit_report(run_experiment(s), ReportFormat::kStructured) !=
        emit_report(run_experiment(s), ReportFormat::kStructured)) {
      ++differing;
    }
  }
  const int ok_code = run_cli_verify(kScenarioDir);
  const int fail_code = run_cli_verify(kFailingDir);
  std::ostringstream os;
  os << files.size() << " scenarios, " << differing << " non-identical; verify exit "
     << ok_code << " on bundled, " << fail_code << " on failing set";
  return {!files.empty() && differing == 0 && ok_code == 0 && fail_code == 1, os.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<Criterion, std::function<Outcome()>>> criteria = {
      {{1, "telescoping identity", 2.0}, telescoping},
      {{2, "finite diminishing-returns bound", 2.0}, diminishing_returns},
      {{3, "geometric trajectory closed form", 0.0}, geometric},
      {{4, "mixture decomposition", 0.0}, decomposition},
      {{5, "uniform perturbation bound",  0.0},
       [] { return family({kCheckUniformPerturbation}, "tv_half <= tau_n"); }},
      {{6, "risk perturbation bound", 0.0},
       [] { return family({kCheckRiskPerturbation}, "risk gap <= tau_n"); }},
      {{7, "marginal-gain bound", 0.0}, marginal_gain},
      {{8, "risk Lipschitz property", 0.0}, risk_lipschitz},
      {{9, "GL correctness and cross-validation", 60.0}, gl_correctness},
      {{10, "frame enumeration counts", 0.0}, frame_counts},
      {{11, "end-to-end determinism", 0.0}, determinism},
  };
  int failures = 0;
  for (const auto& [criterion, body] : criteria) {
    if (!criterion.run(body).pass) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
