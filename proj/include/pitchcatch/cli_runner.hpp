#pragma once

#include <map>
#include <string>
#include <vector>

#include "pitchcatch/types.hpp"

namespace pitchcatch {

/// Command-line options layered on top of the config file.
struct RunOptions {
    std::string config_path;
    std::string out_dir;          ///< --out override (empty = config value)
    std::string preset;           ///< --preset override
    bool plot = false;            ///< --plot (or config "plot")
    double dt_ns = 0.0;           ///< --dt override, 0 = config/default
    std::string sweep_key;        ///< --sweep KEY=v1,v2,...
    std::vector<double> sweep_values;
};

/// Load a config, dispatch the named experiment, write manifest.json,
/// summary.json, CSVs and optional plot.svg into the output directory.
/// Returns the process exit code: 0 ok, 1 config error, 2 numerical failure.
int run_experiment(const RunOptions& opts);

/// Schema and sanity check of a config file; prints a report, no side
/// effects. Returns 0 (valid) or 1 (invalid).
int validate_config(const std::string& config_path);

}  // namespace pitchcatch
