#pragma once

#include <array>
#include <vector>

#include "mcflow/eos.hpp"
#include "mcflow/grid.hpp"
#include "mcflow/state.hpp"

namespace mcf {

/// Structure-of-arrays storage of the conserved vector over interior + ghosts.
struct FieldSet {
    Grid grid;
    std::vector<double> m1, m2, mx, my, rhoE, alpha1;
    double time = 0.0;

    FieldSet() = default;
    explicit FieldSet(const Grid& g)
        : grid(g), m1(g.size()), m2(g.size()), mx(g.size()), my(g.size()),
          rhoE(g.size()), alpha1(g.size()) {}

    CellState cell(std::size_t q) const {
        return {m1[q], m2[q], mx[q], my[q], rhoE[q], alpha1[q]};
    }
    void set_cell(std::size_t q, const CellState& c) {
        m1[q] = c.m1; m2[q] = c.m2; mx[q] = c.mx; my[q] = c.my;
        rhoE[q] = c.rhoE; alpha1[q] = c.alpha1;
    }
};

/// Primitive workspace matching a FieldSet's layout.
struct PrimField {
    std::vector<double> rho1, rho2, u, v, p;

    void resize(std::size_t n) {
        rho1.resize(n); rho2.resize(n); u.resize(n); v.resize(n); p.resize(n);
    }
};

/// Fill all ghost layers. Periodic wraps, ZeroGradient copies the nearest
/// interior cell, Reflective copies with the wall-normal momentum negated.
void apply_boundary(FieldSet& f);

/// Ghost fill for a standalone scalar array laid out like the fields.
/// `normal_sign[side]` = -1 mirrors the value at a reflective wall (used for
/// wall-normal velocity components), +1 copies it.
void apply_boundary_scalar(std::vector<double>& q, const Grid& g, const std::array<int, 4>& normal_sign);

/// Derive primitives for every cell (ghosts included). Throws PositivityError
/// annotated with the cell index on failure.
void derive_primitives(const FieldSet& f, const MaterialPair& mats, PrimField& prim);

/// Clip alpha and partial densities to their floors. Returns the number of
/// clipped values.
long apply_state_floors(FieldSet& f);

/// Check CellState invariants (positive partial densities and internal
/// energy, alpha within floors) over the interior; throws annotated with
/// `stage` on the first violation.
void validate_fields(const FieldSet& f, const MaterialPair& mats, const char* stage);

/// Interior totals of the conserved quantities, in fixed order:
/// [sum m1 V, sum m2 V, sum mx V, sum my V, sum rhoE V].
std::array<double, 5> conservation_totals(const FieldSet& f);

}  // namespace mcf
