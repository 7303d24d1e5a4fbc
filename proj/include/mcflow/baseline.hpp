#pragma once

#include "mcflow/dissipative.hpp"

namespace mcf {

// Conservative four-equation one-temperature baseline. The conserved vector
// drops alpha1; the FieldSet alpha slot is kept at the PT-equilibrium value
// alpha_k = m_k R_k / sum m_j R_j purely for output.

/// Single temperature T = e / sum y_k cv_k and pressure p = rho R_mix T.
void four_eq_temperature_pressure(const CellState& c, const MaterialPair& mats, double& T,
                                  double& p);

/// Refresh the diagnostic alpha slot from the one-temperature closure.
void four_eq_sync_alpha(FieldSet& f, const MaterialPair& mats);

void four_eq_viscous_step(FieldSet& f, const MaterialPair& mats, const TransportModel& model,
                          double dt, StepReport& rep);
void four_eq_conduction_step(FieldSet& f, const MaterialPair& mats, const TransportModel& model,
                             double dt, StepReport& rep);
void four_eq_diffusion_step(FieldSet& f, const MaterialPair& mats, const TransportModel& model,
                            double dt, StepReport& rep);

}  // namespace mcf
