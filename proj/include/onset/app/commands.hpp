#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "onset/app/config.hpp"

namespace onset::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

/// Runtime failure of a pipeline stage; maps to exit code 3.
class StageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Output layout, relative to cfg.output_dir:
//   contingencies.csv profiles.csv labels.csv          simulate
//   dataset.csv                                         featurize
//   models/<learner>.json models/training.json          train
//   report/evaluation.{json,md} report/confusion_<learner>.csv
//   report/embedding.csv                                evaluate
//   tune/trace.csv tune/tuned_model.json tune/tuning.{json,md}
//   tune/confusion_tuned.csv                            tune
//   sweep/sweep.{json,md}                               sweep
//   report.{json,md}                                    pipeline (all of the above)
//
// Every command writes a short summary to `log` and returns an exit code;
// errors are reported on `err`.
int cmd_simulate(const RunConfig& cfg, std::ostream& log, std::ostream& err);
int cmd_featurize(const RunConfig& cfg, std::ostream& log, std::ostream& err);
int cmd_train(const RunConfig& cfg, std::ostream& log, std::ostream& err);
int cmd_evaluate(const RunConfig& cfg, std::ostream& log, std::ostream& err);
int cmd_tune(const RunConfig& cfg, std::ostream& log, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& log, std::ostream& err);
int cmd_pipeline(const RunConfig& cfg, std::ostream& log, std::ostream& err);

std::string version_string();

/// Full command line (args[0] is the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace onset::app
