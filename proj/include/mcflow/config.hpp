#pragma once

#include <optional>
#include <string>

#include "mcflow/cases.hpp"

namespace mcf {

/// A run = a case (registry or inline) plus overrides. Parsed from the
/// key = value config format and/or CLI flags.
struct RunConfig {
    std::string case_name;          // registry case; empty for inline cases
    std::optional<CaseSpec> inline_case;
    std::string output_dir = "out";
    double cfl = -1.0;              // < 0: case default
    double end_time = -1.0;         // < 0: case default
    double snapshot_interval = -1.0;
    int resolution_x = 0, resolution_y = 0;  // 0: case default
    int threads = 0;                // 0: library default
    std::optional<FlowModel> model;
    std::optional<ReconstructionMode> recon;
    std::optional<AlphaUpdate> alpha_update;
    std::optional<PhysicsFlags> physics;
    HeatSource source;  // optional volumetric heating, overrides the case's

    /// The fully resolved case with all overrides applied.
    CaseSpec resolve() const;
};

/// Parse the plain-text config format: [section] headers, key = value lines,
/// '#' comments. Unknown keys and malformed lines are rejected with the line
/// number. See README for the key list.
RunConfig parse_config(const std::string& text);

/// Like parse_config, reading from a file.
RunConfig parse_config_file(const std::string& path);

}  // namespace mcf
