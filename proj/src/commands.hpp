// The batch commands behind the CLI: each builds a deterministic table from
// a RunConfig and writes it to the configured path.

#pragma once

#include "run_config.hpp"
#include "table.hpp"

namespace wqed {

Table make_spectrum_table(const RunConfig& cfg);
Table make_fluorescence_table(const RunConfig& cfg);
Table make_bound_state_table(const RunConfig& cfg);
Table make_poles_table(const RunConfig& cfg);

void cmd_spectrum(const RunConfig& cfg);
void cmd_fluorescence_map(const RunConfig& cfg);
void cmd_bound_state(const RunConfig& cfg);
void cmd_poles(const RunConfig& cfg);

// Runs the acceptance suite (or, when cfg.scenarios_path is set, the oracle
// comparisons from that scenario file), writes the report table, and returns
// 0 on success / 2 on any verification failure.
int cmd_verify(const RunConfig& cfg);

}  // namespace wqed
