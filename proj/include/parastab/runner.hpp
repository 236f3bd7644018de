#pragma once

#include "parastab/config.hpp"

namespace parastab {

struct RunOutcome {
    int exit_code = 0;
    json summary;                           // machine-readable result or error
    std::vector<std::string> output_files;  // paths written (manifest last)
};

/// Dispatch a validated config: solve, write CSV/JSON artifacts plus the run
/// manifest (config snapshot, version, wall time, per-file checksums).
/// Solver failures produce exit_code 2 and an error JSON instead of throwing.
RunOutcome run(const RunConfig& cfg, unsigned threads = 1);

}  // namespace parastab
