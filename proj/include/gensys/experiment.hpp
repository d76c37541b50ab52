#ifndef GENSYS_EXPERIMENT_HPP_
#define GENSYS_EXPERIMENT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "gensys/report.hpp"
#include "gensys/scenario.hpp"

namespace gensys {

// Runs every check appropriate to the scenario kind. Deterministic given
// the scenario (including its seed). Module errors are rethrown with the
// scenario name attached.
Report run_experiment(const Scenario& scenario);

struct BatchEntry {
  std::filesystem::path path;
  bool passed = false;
  std::string error;  // non-empty when the scenario could not run
  Report report;
};

// Runs every *.json scenario in `dir`, sorted by file name.
std::vector<BatchEntry> run_batch(const std::filesystem::path& dir,
                                  const RunOverrides& overrides = {});

CountermodelRecord to_record(const Countermodel& cm);

}  // namespace gensys

#endif  // GENSYS_EXPERIMENT_HPP_
