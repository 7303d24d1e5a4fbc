#pragma once

// Shared helpers for the dissipative stages (private to src/).

#include <vector>

#include "mcflow/fields.hpp"
#include "mcflow/parabolic.hpp"

namespace mcf::detail {

inline std::vector<double> extract_interior(const std::vector<double>& full, const Grid& g) {
    std::vector<double> out(static_cast<std::size_t>(g.nx) * (g.jend() - g.jbeg()));
    std::size_t k = 0;
    for (int j = g.jbeg(); j < g.jend(); ++j)
        for (int i = g.ng; i < g.ng + g.nx; ++i) out[k++] = full[g.idx(i, j)];
    return out;
}

inline void insert_interior(const std::vector<double>& interior, const Grid& g,
                            std::vector<double>& full) {
    std::size_t k = 0;
    for (int j = g.jbeg(); j < g.jend(); ++j)
        for (int i = g.ng; i < g.ng + g.nx; ++i) full[g.idx(i, j)] = interior[k++];
}

/// Arithmetic-mean face conductivities from a full-grid cell field (ghost
/// values supply the boundary faces).
inline void face_conductivities(const std::vector<double>& cell, const Grid& g,
                                std::vector<double>& kx, std::vector<double>& ky) {
    const int nx = g.nx, ng = g.ng;
    const int nyi = g.jend() - g.jbeg();
    kx.resize(static_cast<std::size_t>(nx + 1) * nyi);
    for (int jj = 0; jj < nyi; ++jj) {
        const int j = g.jbeg() + jj;
        for (int fi = 0; fi <= nx; ++fi)
            kx[static_cast<std::size_t>(jj) * (nx + 1) + fi] =
                0.5 * (cell[g.idx(ng - 1 + fi, j)] + cell[g.idx(ng + fi, j)]);
    }
    if (g.ndim == 2) {
        ky.resize(static_cast<std::size_t>(nx) * (g.ny + 1));
        for (int fj = 0; fj <= g.ny; ++fj)
            for (int ii = 0; ii < nx; ++ii)
                ky[static_cast<std::size_t>(fj) * nx + ii] =
                    0.5 * (cell[g.idx(ng + ii, ng - 1 + fj)] + cell[g.idx(ng + ii, ng + fj)]);
    } else {
        ky.clear();
    }
}

inline ParabolicBc scalar_bc(BcType b) {
    switch (b) {
        case BcType::Periodic: return ParabolicBc::Periodic;
        case BcType::ZeroGradient: return ParabolicBc::ZeroFlux;
        case BcType::Reflective: return ParabolicBc::ZeroFlux;
    }
    return ParabolicBc::ZeroFlux;
}

/// BC for a velocity component: wall-normal components mirror to zero at
/// reflective walls, tangential ones are free.
inline ParabolicBc velocity_bc(BcType b, bool is_normal) {
    if (b == BcType::Periodic) return ParabolicBc::Periodic;
    if (b == BcType::Reflective && is_normal) return ParabolicBc::Antisymmetric;
    return ParabolicBc::ZeroFlux;
}

/// Cell-centered central derivatives of a full-grid field (valid wherever
/// both neighbours exist).
struct CellGrad {
    const Grid& g;
    const std::vector<double>& q;
    double ddx(std::size_t c) const { return (q[c + 1] - q[c - 1]) / (2.0 * g.dx); }
    double ddy(std::size_t c) const {
        return g.ndim == 2 ? (q[c + g.sx()] - q[c - g.sx()]) / (2.0 * g.dy) : 0.0;
    }
};

}  // namespace mcf::detail
