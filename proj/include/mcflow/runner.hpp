#pragma once

#include <string>
#include <vector>

#include "mcflow/config.hpp"
#include "mcflow/dissipative.hpp"

namespace mcf {

/// Raw snapshot table: header + rows of doubles, as read from or written to
/// CSV. Numeric columns round-trip bit-exactly (17 significant digits).
struct SnapshotTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Write the snapshot CSV: columns x,rho,u,(v,)p,T,y1,alpha1,rho1,rho2, one
/// row per cell (x-fastest), 17-significant-digit scientific notation.
void write_snapshot(const FieldSet& f, const MaterialPair& mats, const std::string& path,
                    FlowModel model = FlowModel::FiveEq);

/// Companion VTK legacy structured-points file (ASCII) for 2D fields.
void write_snapshot_vtk(const FieldSet& f, const MaterialPair& mats, const std::string& path,
                        FlowModel model = FlowModel::FiveEq);

SnapshotTable load_snapshot_table(const std::string& path);
void write_snapshot_table(const SnapshotTable& t, const std::string& path);

/// Rebuild a field set from a snapshot written on the same grid (restart
/// states agree with the originals to round-off).
FieldSet load_snapshot_fields(const std::string& path, const Grid& grid, const MaterialPair& mats);

struct RunResult {
    int exit_code = 0;
    long steps = 0;
    double final_time = 0.0;
    std::string error;
    std::vector<StepReport> reports;
    FieldSet fields;
};

/// Drive a resolved case to its end time; writes snapshots at the configured
/// cadence, a final snapshot, run_report.json, and error_report.json for
/// cases with an oracle. On solver failure the last good snapshot is kept and
/// exit_code is nonzero.
RunResult run_simulation(const RunConfig& config);

/// In-memory variant used by tests: no files are written unless output_dir is
/// non-empty.
RunResult run_case(const CaseSpec& spec, const std::string& output_dir = "",
                   int nx_override = 0, int ny_override = 0);

}  // namespace mcf
