#pragma once

#include "mcflow/material.hpp"

namespace mcf {

/// Face state handed to the Riemann solver: un is the face-normal velocity,
/// ut the transverse one.
struct FaceState {
    double m1 = 0.0, m2 = 0.0;
    double un = 0.0, ut = 0.0;
    double p = 0.0;
    double alpha1 = 0.5;

    double rho() const { return m1 + m2; }
};

/// HLLC flux across one face for [m1, m2, mom_n, mom_t, rhoE] plus the
/// contact-advected alpha1 flux. s_star is the contact wave speed estimate and
/// u_face the sampled interface velocity used by the non-conservative source.
struct FaceFlux {
    double f[5] = {0, 0, 0, 0, 0};
    double f_alpha = 0.0;
    double s_star = 0.0;
    double u_face = 0.0;
};

/// Five-equation HLLC with Davis wave-speed estimates; phase sound speeds are
/// the Wood speeds of each side. Throws on non-finite inputs.
FaceFlux hllc_flux(const FaceState& l, const FaceState& r, const MaterialPair& mats);

/// Four-equation (single-temperature) HLLC; alpha flux member is unused.
FaceFlux hllc_flux_four_eq(const FaceState& l, const FaceState& r, const MaterialPair& mats);

/// Mixture sound speed of the one-temperature four-equation closure,
/// a^2 = gamma_mix p / rho with gamma_mix = sum y_k cv_k gamma_k / sum y_k cv_k.
double four_eq_sound_speed(double m1, double m2, double p, const MaterialPair& mats);

}  // namespace mcf
