#pragma once

#include <array>
#include <cstddef>

#include "mcflow/errors.hpp"

namespace mcf {

enum class BcType { Periodic, ZeroGradient, Reflective };

enum Side { XLo = 0, XHi = 1, YLo = 2, YHi = 3 };

/// Uniform Cartesian mesh, 1D or 2D, with a ghost layer on every side.
/// Interior cells are i in [ng, ng+nx), j in [ng, ng+ny) (j = 0, ny = 1 in 1D).
struct Grid {
    int ndim = 1;
    int nx = 0, ny = 1;
    double dx = 0.0, dy = 1.0;
    double x0 = 0.0, y0 = 0.0;
    int ng = 2;
    std::array<BcType, 4> bc{BcType::Periodic, BcType::Periodic, BcType::Periodic, BcType::Periodic};

    int sx() const { return nx + 2 * ng; }
    int sy() const { return ndim == 2 ? ny + 2 * ng : 1; }
    int jbeg() const { return ndim == 2 ? ng : 0; }
    int jend() const { return ndim == 2 ? ng + ny : 1; }
    std::size_t size() const { return static_cast<std::size_t>(sx()) * sy(); }
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * sx() + i; }

    double xc(int i) const { return x0 + (i - ng + 0.5) * dx; }
    double yc(int j) const { return ndim == 2 ? y0 + (j - ng + 0.5) * dy : 0.0; }
    double cell_volume() const { return ndim == 2 ? dx * dy : dx; }

    void validate() const {
        if (ndim != 1 && ndim != 2) throw ConfigError("grid: ndim must be 1 or 2");
        if (nx <= 0 || (ndim == 2 && ny <= 0)) throw ConfigError("grid: cell counts must be positive");
        if (!(dx > 0.0) || (ndim == 2 && !(dy > 0.0))) throw ConfigError("grid: cell sizes must be positive");
        if (ng < 1) throw ConfigError("grid: ghost layer must be at least 1");
        if ((bc[XLo] == BcType::Periodic) != (bc[XHi] == BcType::Periodic))
            throw ConfigError("grid: periodic BC requires both x sides periodic");
        if (ndim == 2 && (bc[YLo] == BcType::Periodic) != (bc[YHi] == BcType::Periodic))
            throw ConfigError("grid: periodic BC requires both y sides periodic");
    }
};

inline Grid make_grid_1d(int nx, double x0, double x1, int ng, BcType lo, BcType hi) {
    Grid g;
    g.ndim = 1;
    g.nx = nx;
    g.ny = 1;
    g.x0 = x0;
    g.dx = (x1 - x0) / nx;
    g.ng = ng;
    g.bc = {lo, hi, lo, hi};
    g.validate();
    return g;
}

inline Grid make_grid_2d(int nx, int ny, double x0, double x1, double y0, double y1, int ng,
                         BcType xlo, BcType xhi, BcType ylo, BcType yhi) {
    Grid g;
    g.ndim = 2;
    g.nx = nx;
    g.ny = ny;
    g.x0 = x0;
    g.y0 = y0;
    g.dx = (x1 - x0) / nx;
    g.dy = (y1 - y0) / ny;
    g.ng = ng;
    g.bc = {xlo, xhi, ylo, yhi};
    g.validate();
    return g;
}

}  // namespace mcf
