#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cmwitness {

/// Exit codes shared by all commands.
enum ExitCode : int {
  kExitOk = 0,
  kExitRegressionMismatch = 1,
  kExitRejected = 2,
  kExitInternalFailure = 3,
};

struct CorpusEntry {
  std::string name;
  std::string job;  // JSON text
};

/// The examples checked by `regress`, in run order.
const std::vector<CorpusEntry>& regression_corpus();

/// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cmwitness
