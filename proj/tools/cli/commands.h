#pragma once

#include <ostream>

#include "cli/run_config.h"
#include "trollrole/synthetic.h"

namespace trollrole::cli {

// Each command reads its inputs named by `cfg`, writes artifacts into
// cfg.out_dir and a short summary to `out`. Warnings go to `err`.
void cmd_ingest(const RunConfig& cfg, std::ostream& out, std::ostream& err);
void cmd_embed(const RunConfig& cfg, std::ostream& out, std::ostream& err);
void cmd_run_t1(const RunConfig& cfg, std::ostream& out, std::ostream& err);
void cmd_run_t2(const RunConfig& cfg, std::ostream& out, std::ostream& err);
void cmd_run_reverse(const RunConfig& cfg, std::ostream& out, std::ostream& err);
void cmd_dump_graph(const RunConfig& cfg, std::ostream& out, std::ostream& err);
void cmd_synth(const RunConfig& cfg, const SyntheticConfig& synth,
               std::ostream& out);

}  // namespace trollrole::cli
