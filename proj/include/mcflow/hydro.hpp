#pragma once

#include <vector>

#include "mcflow/fields.hpp"
#include "mcflow/hllc.hpp"
#include "mcflow/reconstruct.hpp"

namespace mcf {

enum class FlowModel { FiveEq, FourEq };

/// Residual dU/dt over the grid (interior cells filled).
struct Residual {
    std::vector<double> m1, m2, mx, my, rhoE, alpha1;
    void resize(std::size_t n) {
        m1.assign(n, 0.0); m2.assign(n, 0.0); mx.assign(n, 0.0);
        my.assign(n, 0.0); rhoE.assign(n, 0.0); alpha1.assign(n, 0.0);
    }
};

/// Scratch buffers reused across steps.
struct HydroWorkspace {
    PrimField prim;
    std::vector<double> fxm1, fxm2, fxmn, fxmt, fxE, fxal, ufx;  // x-face fluxes
    std::vector<double> fym1, fym2, fymn, fymt, fyE, fyal, ufy;  // y-face fluxes
    FieldSet stage;  // Heun intermediate
    Residual r0, r1;
    long clip_events = 0;
    long eig_fallbacks = 0;
};

/// Reconstruct the left/right face states at the face between cell q0 and
/// q0+stride. `xdir` selects which velocity component is face-normal. Clip and
/// eigensystem-fallback events are accumulated into the counters.
void face_states(const FieldSet& f, const PrimField& prim, const MaterialPair& mats,
                 ReconstructionMode mode, std::size_t q0, long stride, bool xdir, FlowModel model,
                 FaceState& L, FaceState& R, long& clips, long& fallbacks);

/// CFL time step: cfl * min over cells of dx/(|u|+a) (dy analog in 2D,
/// combined by min).
double stable_dt(const FieldSet& f, const MaterialPair& mats, double cfl,
                 FlowModel model = FlowModel::FiveEq);

/// Hydrodynamic residual: -(1/V) sum of HLLC face fluxes plus the
/// non-conservative (A/A1) alpha1 div(u) source evaluated with the
/// Riemann-face velocities. Ghosts must be fresh.
void hydro_rhs(const FieldSet& f, const MaterialPair& mats, ReconstructionMode mode,
               HydroWorkspace& ws, Residual& res, FlowModel model = FlowModel::FiveEq);

/// Two-stage Heun update, state floors applied after each stage.
/// Returns the number of floor clips.
long heun_advance(FieldSet& f, const MaterialPair& mats, ReconstructionMode mode, double dt,
                  HydroWorkspace& ws, FlowModel model = FlowModel::FiveEq);

}  // namespace mcf
