#pragma once

#include <string>
#include <vector>

#include "mcflow/fields.hpp"
#include "mcflow/hydro.hpp"
#include "mcflow/transport.hpp"

namespace mcf {

enum class AlphaUpdate { Algebraic, Pde };

/// Which split stages run. The dissipative stages also require non-zero
/// transport coefficients; relaxation can be switched off to run the plain
/// hydrodynamic subsystem without any relaxation.
struct PhysicsFlags {
    bool viscosity = true;
    bool relaxation = true;
    bool conduction = true;
    bool diffusion = true;
};

/// Face-centered diffusion fluxes and cell-centered diffusion velocities.
/// J2 = -J1 identically; Jh_k = h_k J_k.
struct DiffusionFluxes {
    // face-normal species fluxes, kg/(m^2 s); x faces (nx+1) x ny, y faces nx x (ny+1)
    std::vector<double> J1x, J1y;
    std::vector<double> J2x, J2y;  // exactly -J1
    std::vector<double> Jh1x, Jh1y, Jh2x, Jh2y;  // enthalpy fluxes, W/m^2
    // cell-centered diffusion velocities (full-grid layout, ghosts filled)
    std::vector<double> w1x, w1y, w2x, w2y;
};

/// Per-step diagnostics.
struct StepReport {
    long step = 0;
    double time = 0.0;
    double dt = 0.0;
    std::array<double, 5> totals{};  // m1, m2, mx, my, rhoE after the step
    long clip_events = 0;
    long eig_fallbacks = 0;
    int viscous_outer = 0, conduction_outer = 0, diffusion_outer = 0;
    int viscous_stages = 0, conduction_stages = 0, diffusion_stages = 0;
    double min_entropy_delta = 0.0;  // min over cells of d(rho s)/|rho s| in relaxation
    double wall_ms = 0.0;
};

/// Split-driver configuration (model, scheme, stage switches).
struct DriverConfig {
    FlowModel model = FlowModel::FiveEq;
    ReconstructionMode recon = ReconstructionMode::weno5();
    AlphaUpdate alpha_update = AlphaUpdate::Algebraic;
    PhysicsFlags physics;
};

/// Mixture viscosities per cell: mu = sum alpha_k mu_k(T_k), mu_b likewise.
void mixture_viscosity(const FieldSet& f, const PrimField& prim, const MaterialPair& mats,
                       const TransportModel& model, std::vector<double>& mu,
                       std::vector<double>& mu_b);

/// Viscous stage: velocity diffusion via the parabolic solver, conservative
/// stress-power energy update with time-centered velocities, explicit
/// volume-fraction source from the per-phase average-stress dissipation.
void viscous_step(FieldSet& f, const MaterialPair& mats, const TransportModel& model, double dt,
                  StepReport& rep);

/// Temperature relaxation applied cell-wise; tracks the worst relative
/// entropy change in rep.min_entropy_delta.
void relax_temperatures_field(FieldSet& f, const MaterialPair& mats, StepReport& rep);

/// Heat-conduction stage (with the external source): solves
/// (sum m_k cv_k) dT/dt = div(lambda_mix grad T) + I at temperature
/// equilibrium, then rebuilds the PT-equilibrium state.
void heat_conduction_step(FieldSet& f, const MaterialPair& mats, const TransportModel& model,
                          double dt, StepReport& rep);

/// Fick fluxes J1 = -rho D grad y1 (faces), J2 = -J1, diffusion velocities
/// w_k = J_k/(rho y_k) with the mass-fraction floor and |w| clipped at
/// 0.1 a_wood, enthalpy fluxes Jh_k = h_k J_k.
void fick_fluxes(const FieldSet& f, const PrimField& prim, const MaterialPair& mats,
                 const TransportModel& model, DiffusionFluxes& out);

/// Mass-diffusion stage: y1 by the parabolic solver, momentum from the
/// diffusion-velocity stresses, flux-form energy update (enthalpy +
/// stress-work terms), volume fraction by the equilibrium rebuild (default)
/// or the explicit rate equation.
void mass_diffusion_step(FieldSet& f, const MaterialPair& mats, const TransportModel& model,
                         double dt, AlphaUpdate mode, StepReport& rep);

/// One full fractional step in the paper order
/// hydro -> viscous -> relaxation -> conduction -> diffusion,
/// skipping disabled stages; stage errors are annotated with the stage name.
void split_driver(FieldSet& f, const MaterialPair& mats, const TransportModel& model,
                  const DriverConfig& cfg, double dt, HydroWorkspace& ws, StepReport& rep);

}  // namespace mcf
