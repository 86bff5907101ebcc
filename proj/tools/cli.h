#ifndef ARIMLE_TOOLS_CLI_H_
#define ARIMLE_TOOLS_CLI_H_

#include <filesystem>
#include <iosfwd>

#include "arimle/baselines.h"

namespace arimle::cli {

// Process exit statuses. Stable contract.
enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 2,
  kExitPrecondition = 3,
  kExitIo = 4,
};

// Runs the arimle command line. Normal output goes to `out`, diagnostics to
// `err`; returns the process exit status.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

// Oracle profile file: a JSON array with one {"psi": x, "eta": y} object per
// classifier, in column order.
OracleProfiles ReadOracleProfiles(const std::filesystem::path& path);

}  // namespace arimle::cli

#endif  // ARIMLE_TOOLS_CLI_H_
