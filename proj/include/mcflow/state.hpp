#pragma once

#include "mcflow/material.hpp"

namespace mcf {

// State floors. Pure fluids are represented as mixtures with a negligible
// amount of the other component, so alpha and the partial densities need
// floors to keep rho_k = m_k/alpha_k finite.
inline constexpr double kAlphaFloor = 1e-8;
inline constexpr double kPartialDensityFloorFrac = 1e-12;  // times local rho
inline constexpr double kMassFractionFloor = 1e-8;

/// Conserved state of one cell: U = [m1, m2, rho*u, rho*v, rho*E, alpha1].
struct CellState {
    double m1 = 0.0;     // alpha1 rho1, kg/m^3
    double m2 = 0.0;     // alpha2 rho2, kg/m^3
    double mx = 0.0;     // x momentum, kg/(m^2 s)
    double my = 0.0;     // y momentum (0 in 1D)
    double rhoE = 0.0;   // total energy density, J/m^3
    double alpha1 = 0.5;

    double rho() const { return m1 + m2; }
};

/// Primitive view of a cell. T1/T2 are the phase temperatures of the
/// pressure-equilibrium state (equal only after temperature relaxation).
struct PrimitiveState {
    double rho1 = 0.0;
    double rho2 = 0.0;
    double u = 0.0;
    double v = 0.0;
    double p = 0.0;
    double alpha1 = 0.5;
    double T1 = 0.0;
    double T2 = 0.0;

    double rho() const { return alpha1 * rho1 + (1.0 - alpha1) * rho2; }
};

}  // namespace mcf
