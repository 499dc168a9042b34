#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fss {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitIo = 2 };

// Entry point of the fss command line. args excludes the program name.
// Subcommands: ingest, baseline, score, rank, indicators, synth, paradox-demo.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fss
