#include "mcflow/runner.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mcflow/baseline.hpp"
#include "mcflow/eos.hpp"
#include "mcflow/errors.hpp"
#include "mcflow/norms.hpp"
#include "mcflow/oracles.hpp"
#include "mcflow/parallel.hpp"

namespace mcf {

namespace fs = std::filesystem;

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

// Snapshot row values for one cell.
void snapshot_row(const FieldSet& f, const MaterialPair& mats, std::size_t q, bool twod,
                  FlowModel model, std::vector<double>& row) {
    const CellState c = f.cell(q);
    const double rho = c.rho();
    double p, T, rho1, rho2, alpha1;
    if (model == FlowModel::FiveEq) {
        const PrimitiveState w = cons_to_prim(c, mats);
        p = w.p;
        rho1 = w.rho1;
        rho2 = w.rho2;
        alpha1 = c.alpha1;
        // energy-weighted mixture temperature (equals the common T at
        // equilibrium)
        T = (c.m1 * mats[0].cv * w.T1 + c.m2 * mats[1].cv * w.T2) /
            (c.m1 * mats[0].cv + c.m2 * mats[1].cv);
    } else {
        four_eq_temperature_pressure(c, mats, T, p);
        const double mR1 = c.m1 * mats[0].gas_constant();
        const double mR2 = c.m2 * mats[1].gas_constant();
        alpha1 = mR1 / (mR1 + mR2);
        rho1 = alpha1 > 0.0 ? c.m1 / alpha1 : 0.0;
        rho2 = c.m2 / (1.0 - alpha1);
    }
    row.clear();
    row.push_back(rho);
    row.push_back(c.mx / rho);
    if (twod) row.push_back(c.my / rho);
    row.push_back(p);
    row.push_back(T);
    row.push_back(c.m1 / rho);
    row.push_back(alpha1);
    row.push_back(rho1);
    row.push_back(rho2);
}

}  // namespace

void write_snapshot(const FieldSet& f, const MaterialPair& mats, const std::string& path,
                    FlowModel model) {
    std::ofstream out(path);
    if (!out) throw ConfigError("write_snapshot: cannot open '" + path + "'");
    const Grid& g = f.grid;
    const bool twod = g.ndim == 2;
    out << (twod ? "x,rho,u,v,p,T,y1,alpha1,rho1,rho2" : "x,rho,u,p,T,y1,alpha1,rho1,rho2")
        << "\n";
    std::vector<double> row;
    for (int j = g.jbeg(); j < g.jend(); ++j) {
        for (int i = g.ng; i < g.ng + g.nx; ++i) {
            snapshot_row(f, mats, g.idx(i, j), twod, model, row);
            out << fmt17(g.xc(i));
            for (double v : row) out << ',' << fmt17(v);
            out << "\n";
        }
    }
    if (!out) throw ConfigError("write_snapshot: write failed for '" + path + "'");
}

void write_snapshot_vtk(const FieldSet& f, const MaterialPair& mats, const std::string& path,
                        FlowModel model) {
    std::ofstream out(path);
    if (!out) throw ConfigError("write_snapshot_vtk: cannot open '" + path + "'");
    const Grid& g = f.grid;
    const int ny = g.ndim == 2 ? g.ny : 1;
    out << "# vtk DataFile Version 3.0\n";
    out << "mcflow snapshot t=" << fmt17(f.time) << "\n";
    out << "ASCII\n";
    out << "DATASET STRUCTURED_POINTS\n";
    out << "DIMENSIONS " << g.nx << ' ' << ny << " 1\n";
    out << "ORIGIN " << g.xc(g.ng) << ' ' << (g.ndim == 2 ? g.yc(g.jbeg()) : 0.0) << " 0\n";
    out << "SPACING " << g.dx << ' ' << (g.ndim == 2 ? g.dy : 1.0) << " 1\n";
    out << "POINT_DATA " << static_cast<long>(g.nx) * ny << "\n";
    const char* names[] = {"rho", "u", "v", "p", "T", "y1", "alpha1"};
    for (int field = 0; field < 7; ++field) {
        out << "SCALARS " << names[field] << " double 1\nLOOKUP_TABLE default\n";
        std::vector<double> row;
        for (int j = g.jbeg(); j < g.jend(); ++j)
            for (int i = g.ng; i < g.ng + g.nx; ++i) {
                snapshot_row(f, mats, g.idx(i, j), true, model, row);
                // row layout: rho,u,v,p,T,y1,alpha1,rho1,rho2
                out << row[field] << "\n";
            }
    }
    if (!out) throw ConfigError("write_snapshot_vtk: write failed for '" + path + "'");
}

SnapshotTable load_snapshot_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("load_snapshot_table: cannot open '" + path + "'");
    SnapshotTable t;
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("load_snapshot_table: empty file");
    std::stringstream hs(line);
    std::string col;
    while (std::getline(hs, col, ',')) t.columns.push_back(col);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ls(line);
        std::vector<double> row;
        std::string item;
        while (std::getline(ls, item, ',')) row.push_back(std::strtod(item.c_str(), nullptr));
        if (row.size() != t.columns.size())
            throw ConfigError("load_snapshot_table: ragged row in '" + path + "'");
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_snapshot_table(const SnapshotTable& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("write_snapshot_table: cannot open '" + path + "'");
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        out << (c ? "," : "") << t.columns[c];
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << fmt17(row[c]);
        out << "\n";
    }
}

FieldSet load_snapshot_fields(const std::string& path, const Grid& grid,
                              const MaterialPair& mats) {
    const SnapshotTable t = load_snapshot_table(path);
    const bool twod = grid.ndim == 2;
    const std::size_t expect = static_cast<std::size_t>(grid.nx) * (twod ? grid.ny : 1);
    if (t.rows.size() != expect)
        throw ConfigError("load_snapshot_fields: row count does not match the grid");
    FieldSet f(grid);
    // columns: x,rho,u,(v,)p,T,y1,alpha1,rho1,rho2
    const int iu = 2, iv = twod ? 3 : -1, ip = twod ? 4 : 3;
    const int iy1 = ip + 2, ial = ip + 3, ir1 = ip + 4, ir2 = ip + 5;
    std::size_t k = 0;
    for (int j = grid.jbeg(); j < grid.jend(); ++j)
        for (int i = grid.ng; i < grid.ng + grid.nx; ++i, ++k) {
            const auto& row = t.rows[k];
            PrimitiveState w;
            w.rho1 = row[ir1];
            w.rho2 = row[ir2];
            w.u = row[iu];
            w.v = twod ? row[iv] : 0.0;
            w.p = row[ip];
            w.alpha1 = row[ial];
            (void)iy1;
            f.set_cell(grid.idx(i, j), prim_to_cons(w, mats));
        }
    apply_boundary(f);
    return f;
}

namespace {

void write_run_report(const std::string& path, const RunResult& r) {
    nlohmann::json j;
    j["steps"] = r.steps;
    j["final_time"] = r.final_time;
    j["exit_code"] = r.exit_code;
    if (!r.error.empty()) j["error"] = r.error;
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : r.reports) {
        nlohmann::json e;
        e["step"] = s.step;
        e["time"] = s.time;
        e["dt"] = s.dt;
        e["totals"] = {s.totals[0], s.totals[1], s.totals[2], s.totals[3], s.totals[4]};
        e["clip_events"] = s.clip_events;
        e["eig_fallbacks"] = s.eig_fallbacks;
        e["viscous_outer"] = s.viscous_outer;
        e["conduction_outer"] = s.conduction_outer;
        e["diffusion_outer"] = s.diffusion_outer;
        e["viscous_stages"] = s.viscous_stages;
        e["conduction_stages"] = s.conduction_stages;
        e["diffusion_stages"] = s.diffusion_stages;
        e["min_entropy_delta"] = s.min_entropy_delta;
        e["wall_ms"] = s.wall_ms;
        steps.push_back(e);
    }
    j["step_reports"] = steps;
    std::ofstream out(path);
    out << j.dump(1) << "\n";
}

// Oracle-based verification summaries for the registry cases.
void write_error_report(const std::string& path, const CaseSpec& spec, const FieldSet& f,
                        const MaterialPair& mats) {
    nlohmann::json j;
    j["case"] = spec.name;
    const Grid& g = f.grid;

    auto interior_density = [&] {
        std::vector<double> rho;
        rho.reserve(g.nx);
        for (int i = g.ng; i < g.ng + g.nx; ++i)
            rho.push_back(f.m1[g.idx(i, 0)] + f.m2[g.idx(i, 0)]);
        return rho;
    };

    if (spec.name == "pure_transport") {
        // max relative spatial variation of p, u, T
        double pmin = 1e300, pmax = -1e300, umin = 1e300, umax = -1e300, tmin = 1e300,
               tmax = -1e300;
        for (int i = g.ng; i < g.ng + g.nx; ++i) {
            const CellState c = f.cell(g.idx(i, 0));
            const PrimitiveState w = cons_to_prim(c, mats);
            pmin = std::min(pmin, w.p); pmax = std::max(pmax, w.p);
            umin = std::min(umin, w.u); umax = std::max(umax, w.u);
            const double T = (c.m1 * mats[0].cv * w.T1 + c.m2 * mats[1].cv * w.T2) /
                             (c.m1 * mats[0].cv + c.m2 * mats[1].cv);
            tmin = std::min(tmin, T); tmax = std::max(tmax, T);
        }
        j["p_variation"] = (pmax - pmin) / std::abs(0.5 * (pmax + pmin));
        j["u_variation"] = (umax - umin) / std::abs(0.5 * (umax + umin));
        j["T_variation"] = (tmax - tmin) / std::abs(0.5 * (tmax + tmin));
    } else if (spec.name == "pure_diffusion") {
        ErfProfile prof{0.01, 0.02, 20.0, 1.0, 0.5};
        const std::vector<double> oracle = cell_average_1d(
            [&](double x) {
                double r, m1;
                prof.eval(x, f.time, r, m1);
                return r;
            },
            g.x0, g.x0 + g.nx * g.dx, g.nx);
        const ErrorEntry e = error_norms(interior_density(), oracle, g.dx);
        j["density_l1"] = e.l1;
        j["density_linf"] = e.linf;
    } else if (spec.name == "viscous_manufactured") {
        std::vector<double> u(g.nx), oracle(g.nx);
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t q = g.idx(g.ng + i, 0);
            u[i] = f.mx[q] / (f.m1[q] + f.m2[q]);
        }
        oracle = cell_average_1d(
            [&](double x) { return burgers_manufactured(x, 0.05 + f.time, 0.4, 0.01, 0.1); },
            g.x0, g.x0 + g.nx * g.dx, g.nx);
        const ErrorEntry e = error_norms(u, oracle, g.dx);
        j["velocity_l1"] = e.l1;
        j["velocity_linf"] = e.linf;
    } else if (spec.name == "shock_tube") {
        RiemannSide l{1000.0, 0.0, 1.0e9, 4.4}, r{50.0, 0.0, 1.0e5, 1.4};
        std::vector<double> x(g.nx);
        for (int i = 0; i < g.nx; ++i) x[i] = g.xc(g.ng + i);
        const auto sol = exact_riemann_profile(l, r, x, 0.7, f.time);
        std::vector<double> oracle(g.nx);
        for (int i = 0; i < g.nx; ++i) oracle[i] = sol[i].rho;
        const ErrorEntry e = error_norms(interior_density(), oracle, g.dx);
        j["density_l1"] = e.l1;
        j["density_linf"] = e.linf;
    } else {
        return;  // no oracle for this case
    }
    std::ofstream out(path);
    out << j.dump(1) << "\n";
}

}  // namespace

RunResult run_case(const CaseSpec& spec, const std::string& output_dir, int nx_override,
                   int ny_override) {
    RunResult r;
    const bool writing = !output_dir.empty();
    if (writing) fs::create_directories(output_dir);

    FieldSet f = spec.make_fields(nx_override, ny_override);
    if (spec.driver.model == FlowModel::FourEq) four_eq_sync_alpha(f, spec.mats);
    HydroWorkspace ws;
    double next_snap = spec.snapshot_interval > 0.0 ? spec.snapshot_interval : -1.0;
    long snap_id = 0;

    auto snap_path = [&](long id) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "snap_%06ld.csv", id);
        return output_dir + "/" + buf;
    };
    if (writing) write_snapshot(f, spec.mats, snap_path(snap_id++), spec.driver.model);

    try {
        while (f.time < spec.end_time * (1.0 - 1e-12)) {
            double dt = stable_dt(f, spec.mats, spec.cfl, spec.driver.model);
            if (f.time + dt > spec.end_time) dt = spec.end_time - f.time;
            StepReport rep;
            rep.step = r.steps;
            split_driver(f, spec.mats, spec.transport, spec.driver, dt, ws, rep);
            r.reports.push_back(rep);
            ++r.steps;
            if (writing && next_snap > 0.0 && f.time >= next_snap * (1.0 - 1e-12)) {
                write_snapshot(f, spec.mats, snap_path(snap_id++), spec.driver.model);
                while (next_snap <= f.time * (1.0 + 1e-12)) next_snap += spec.snapshot_interval;
            }
        }
    } catch (const std::exception& e) {
        r.exit_code = 1;
        r.error = e.what();
    }
    r.final_time = f.time;
    if (writing) {
        if (r.exit_code == 0) {
            write_snapshot(f, spec.mats, output_dir + "/final.csv", spec.driver.model);
            if (f.grid.ndim == 2)
                write_snapshot_vtk(f, spec.mats, output_dir + "/final.vtk", spec.driver.model);
            write_error_report(output_dir + "/error_report.json", spec, f, spec.mats);
        }
        // earlier snapshots stay on disk as the last good state
        write_run_report(output_dir + "/run_report.json", r);
    }
    r.fields = std::move(f);
    return r;
}

RunResult run_simulation(const RunConfig& config) {
    if (config.threads > 0) set_worker_threads(config.threads);
    const CaseSpec spec = config.resolve();
    return run_case(spec, config.output_dir);
}

}  // namespace mcf
