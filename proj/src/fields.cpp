#include "mcflow/fields.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcflow/parallel.hpp"

namespace mcf {

namespace {

// Source interior offset for a ghost cell at distance t outside the boundary
// (t = 1 is the ghost next to the wall).
int ghost_source(BcType bc, int t) {
    switch (bc) {
        case BcType::Periodic: return 0;  // handled by wrap, not used
        case BcType::ZeroGradient: return 0;
        case BcType::Reflective: return t - 1;
    }
    return 0;
}

}  // namespace

void apply_boundary_scalar(std::vector<double>& q, const Grid& g, const std::array<int, 4>& normal_sign) {
    const int ng = g.ng, nx = g.nx, sx = g.sx();
    // x direction, every row (including ghost rows already filled in y? fill x
    // first, then y over the full rows so corners are consistent)
    for (int j = 0; j < g.sy(); ++j) {
        double* row = q.data() + static_cast<std::size_t>(j) * sx;
        for (int t = 1; t <= ng; ++t) {
            if (g.bc[XLo] == BcType::Periodic) {
                row[ng - t] = row[ng + nx - t];
            } else {
                const int src = ng + ghost_source(g.bc[XLo], t);
                row[ng - t] = row[src] * (g.bc[XLo] == BcType::Reflective ? normal_sign[XLo] : 1);
            }
            if (g.bc[XHi] == BcType::Periodic) {
                row[ng + nx - 1 + t] = row[ng + t - 1];
            } else {
                const int src = ng + nx - 1 - ghost_source(g.bc[XHi], t);
                row[ng + nx - 1 + t] = row[src] * (g.bc[XHi] == BcType::Reflective ? normal_sign[XHi] : 1);
            }
        }
    }
    if (g.ndim == 2) {
        const int ny = g.ny;
        for (int t = 1; t <= ng; ++t) {
            for (int i = 0; i < sx; ++i) {
                if (g.bc[YLo] == BcType::Periodic) {
                    q[g.idx(i, ng - t)] = q[g.idx(i, ng + ny - t)];
                } else {
                    const int src = ng + ghost_source(g.bc[YLo], t);
                    q[g.idx(i, ng - t)] = q[g.idx(i, src)] * (g.bc[YLo] == BcType::Reflective ? normal_sign[YLo] : 1);
                }
                if (g.bc[YHi] == BcType::Periodic) {
                    q[g.idx(i, ng + ny - 1 + t)] = q[g.idx(i, ng + t - 1)];
                } else {
                    const int src = ng + ny - 1 - ghost_source(g.bc[YHi], t);
                    q[g.idx(i, ng + ny - 1 + t)] = q[g.idx(i, src)] * (g.bc[YHi] == BcType::Reflective ? normal_sign[YHi] : 1);
                }
            }
        }
    }
}

void apply_boundary(FieldSet& f) {
    const Grid& g = f.grid;
    const std::array<int, 4> scalar{1, 1, 1, 1};
    const std::array<int, 4> xnormal{-1, -1, 1, 1};
    const std::array<int, 4> ynormal{1, 1, -1, -1};
    apply_boundary_scalar(f.m1, g, scalar);
    apply_boundary_scalar(f.m2, g, scalar);
    apply_boundary_scalar(f.mx, g, xnormal);
    apply_boundary_scalar(f.my, g, ynormal);
    apply_boundary_scalar(f.rhoE, g, scalar);
    apply_boundary_scalar(f.alpha1, g, scalar);
}

void derive_primitives(const FieldSet& f, const MaterialPair& mats, PrimField& prim) {
    const Grid& g = f.grid;
    prim.resize(g.size());
    const int sy = g.sy(), sx = g.sx();
#pragma omp parallel for schedule(static)
    for (int j = 0; j < sy; ++j) {
        for (int i = 0; i < sx; ++i) {
            const std::size_t q = g.idx(i, j);
            const double rho = f.m1[q] + f.m2[q];
            const double a1 = f.alpha1[q];
            prim.u[q] = f.mx[q] / rho;
            prim.v[q] = f.my[q] / rho;
            const double rho_e = f.rhoE[q] - 0.5 * (f.mx[q] * f.mx[q] + f.my[q] * f.my[q]) / rho;
            prim.p[q] = rho_e / (a1 / (mats[0].gamma - 1.0) + (1.0 - a1) / (mats[1].gamma - 1.0));
            prim.rho1[q] = f.m1[q] / a1;
            prim.rho2[q] = f.m2[q] / (1.0 - a1);
        }
    }
}

long apply_state_floors(FieldSet& f) {
    const Grid& g = f.grid;
    long clips = 0;
    for (int j = g.jbeg(); j < g.jend(); ++j) {
        for (int i = g.ng; i < g.ng + g.nx; ++i) {
            const std::size_t q = g.idx(i, j);
            double& a1 = f.alpha1[q];
            if (a1 < kAlphaFloor) { a1 = kAlphaFloor; ++clips; }
            else if (a1 > 1.0 - kAlphaFloor) { a1 = 1.0 - kAlphaFloor; ++clips; }
            // the dominant component stands in for the local density so that
            // flooring is idempotent
            const double floor_m = kPartialDensityFloorFrac * std::max(f.m1[q], f.m2[q]);
            if (f.m1[q] < floor_m) { f.m1[q] = floor_m; ++clips; }
            if (f.m2[q] < floor_m) { f.m2[q] = floor_m; ++clips; }
        }
    }
    return clips;
}

void validate_fields(const FieldSet& f, const MaterialPair& mats, const char* stage) {
    const Grid& g = f.grid;
    for (int j = g.jbeg(); j < g.jend(); ++j) {
        for (int i = g.ng; i < g.ng + g.nx; ++i) {
            const std::size_t q = g.idx(i, j);
            const CellState c = f.cell(q);
            const bool ok = c.m1 > 0.0 && c.m2 > 0.0 && c.alpha1 >= kAlphaFloor * 0.999 &&
                            c.alpha1 <= 1.0 - kAlphaFloor * 0.999 && std::isfinite(c.rhoE);
            double rho_e = 0.0;
            if (ok) rho_e = c.rhoE - 0.5 * (c.mx * c.mx + c.my * c.my) / c.rho();
            if (!ok || !(rho_e > 0.0))
                throw PositivityError(std::string(stage) + ": invalid state at cell (" +
                                      std::to_string(i - g.ng) + "," + std::to_string(j - g.jbeg()) + ")");
        }
    }
    (void)mats;
}

std::array<double, 5> conservation_totals(const FieldSet& f) {
    const Grid& g = f.grid;
    const double V = g.cell_volume();
    const std::size_t n = static_cast<std::size_t>(g.nx) * (g.jend() - g.jbeg());
    std::vector<double> buf(n);
    std::array<double, 5> out{};
    const std::vector<double>* arrays[5] = {&f.m1, &f.m2, &f.mx, &f.my, &f.rhoE};
    for (int a = 0; a < 5; ++a) {
        std::size_t k = 0;
        for (int j = g.jbeg(); j < g.jend(); ++j)
            for (int i = g.ng; i < g.ng + g.nx; ++i) buf[k++] = (*arrays[a])[g.idx(i, j)];
        out[a] = pairwise_sum(buf) * V;
    }
    return out;
}

}  // namespace mcf
