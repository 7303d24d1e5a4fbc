#pragma once

#include "mcflow/material.hpp"
#include "mcflow/state.hpp"

namespace mcf {

/// Full pressure-temperature equilibrium state of a mixture cell.
/// Satisfies p = (gamma_k-1) rho_k cv_k T for both phases and
/// m1/rho1 + m2/rho2 = 1.
struct EquilibriumState {
    double T = 0.0;
    double p = 0.0;
    double alpha1 = 0.0;
    double rho1 = 0.0;
    double rho2 = 0.0;
};

/// Phase acoustic moduli A_k = rho_k a_k^2 = gamma_k p and the mixture
/// (Wood) modulus 1/A = alpha1/A1 + alpha2/A2.
struct AcousticBundle {
    double a1 = 0.0, a2 = 0.0;  // phase sound speeds
    double A1 = 0.0, A2 = 0.0;  // phase moduli, Pa
    double A = 0.0;             // mixture modulus, Pa
    double a_wood = 0.0;        // mixture sound speed
};

/// Pressure of the pressure-equilibrium ideal-gas mixture:
/// p = rho_e / (alpha1/(gamma1-1) + alpha2/(gamma2-1)).
double mixture_pressure(double m1, double m2, double rho_e, double alpha1, const MaterialPair& mats);

/// T_k = p / ((gamma_k - 1) rho_k cv_k).
void phase_temperatures(double p, double rho1, double rho2, const MaterialPair& mats, double& T1, double& T2);

/// Conserved -> primitive. Throws PositivityError if the internal energy is
/// not positive.
PrimitiveState cons_to_prim(const CellState& cell, const MaterialPair& mats);

/// Primitive -> conserved. Clips alpha1 into [kAlphaFloor, 1-kAlphaFloor];
/// returns the number of clips performed (0 or 1) through *clips if non-null.
CellState prim_to_cons(const PrimitiveState& prim, const MaterialPair& mats, int* clips = nullptr);

/// Instantaneous temperature relaxation at fixed m_k, momentum and rho*E.
/// T' = (A1 T1 + A2 T2)/(A1 + A2) with A_k = y_k cv_k, after which the
/// pressure-equilibrium state is rebuilt; only alpha1 changes in U.
CellState relax_temperatures(const CellState& cell, const MaterialPair& mats);

/// Rebuild the full PT-equilibrium state from partial densities and mixture
/// specific internal energy: T = e / (y1 cv1 + y2 cv2), p = T sum m_k R_k,
/// alpha_k = m_k R_k / sum m_j R_j.
EquilibriumState equilibrium_reconstruct(double m1, double m2, double e, const MaterialPair& mats);

/// Phase and Wood sound speeds at the given mixture state. Phase speeds a_k
/// are filled only when the phase densities are passed (they are diagnostic;
/// the flux solver needs just A_k and a_wood).
AcousticBundle wood_sound_speed(double alpha1, double p, double rho, const MaterialPair& mats,
                                double rho1 = 0.0, double rho2 = 0.0);

/// Mixture entropy density rho*s = sum m_k cv_k (ln T_k - (gamma_k-1) ln rho_k),
/// additive constants set to zero.
double mixture_entropy(const CellState& cell, const MaterialPair& mats);

}  // namespace mcf
