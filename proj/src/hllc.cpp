#include "mcflow/hllc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcflow/eos.hpp"
#include "mcflow/errors.hpp"

namespace mcf {

namespace {

struct SideVals {
    double rho, un, ut, p, E, a;  // E = rhoE
    double m1, m2, alpha1;
};

SideVals unpack_five(const FaceState& s, const MaterialPair& mats) {
    SideVals v;
    v.m1 = s.m1;
    v.m2 = s.m2;
    v.alpha1 = s.alpha1;
    v.rho = s.m1 + s.m2;
    v.un = s.un;
    v.ut = s.ut;
    v.p = s.p;
    const double rho_e =
        s.p * (s.alpha1 / (mats[0].gamma - 1.0) + (1.0 - s.alpha1) / (mats[1].gamma - 1.0));
    v.E = rho_e + 0.5 * v.rho * (s.un * s.un + s.ut * s.ut);
    v.a = wood_sound_speed(s.alpha1, s.p, v.rho, mats).a_wood;
    return v;
}

SideVals unpack_four(const FaceState& s, const MaterialPair& mats) {
    SideVals v;
    v.m1 = s.m1;
    v.m2 = s.m2;
    v.alpha1 = 0.0;
    v.rho = s.m1 + s.m2;
    v.un = s.un;
    v.ut = s.ut;
    v.p = s.p;
    const double cvmix = (s.m1 * mats[0].cv + s.m2 * mats[1].cv) / v.rho;
    const double Rmix = (s.m1 * mats[0].gas_constant() + s.m2 * mats[1].gas_constant()) / v.rho;
    const double rho_e = s.p * cvmix / Rmix;  // rho e = p cv_mix / R_mix
    v.E = rho_e + 0.5 * v.rho * (s.un * s.un + s.ut * s.ut);
    v.a = four_eq_sound_speed(s.m1, s.m2, s.p, mats);
    return v;
}

void physical_flux(const SideVals& v, double f[5]) {
    f[0] = v.m1 * v.un;
    f[1] = v.m2 * v.un;
    f[2] = v.rho * v.un * v.un + v.p;
    f[3] = v.rho * v.un * v.ut;
    f[4] = (v.E + v.p) * v.un;
}

FaceFlux hllc_core(const SideVals& L, const SideVals& R, bool with_alpha) {
    FaceFlux out;
    const double sl = std::min(L.un - L.a, R.un - R.a);
    const double sr = std::max(L.un + L.a, R.un + R.a);
    const double num = R.p - L.p + L.rho * L.un * (sl - L.un) - R.rho * R.un * (sr - R.un);
    const double den = L.rho * (sl - L.un) - R.rho * (sr - R.un);
    const double sm = num / den;
    out.s_star = sm;

    if (sl >= 0.0) {
        physical_flux(L, out.f);
        out.u_face = L.un;
        if (with_alpha) out.f_alpha = L.un * L.alpha1;
        return out;
    }
    if (sr <= 0.0) {
        physical_flux(R, out.f);
        out.u_face = R.un;
        if (with_alpha) out.f_alpha = R.un * R.alpha1;
        return out;
    }

    const SideVals& K = (sm >= 0.0) ? L : R;
    const double sk = (sm >= 0.0) ? sl : sr;
    double fk[5];
    physical_flux(K, fk);
    const double fac = K.rho * (sk - K.un) / (sk - sm);
    double ustar[5];
    ustar[0] = fac * (K.m1 / K.rho);
    ustar[1] = fac * (K.m2 / K.rho);
    ustar[2] = fac * sm;
    ustar[3] = fac * K.ut;
    ustar[4] = fac * (K.E / K.rho + (sm - K.un) * (sm + K.p / (K.rho * (sk - K.un))));
    const double uk[5] = {K.m1, K.m2, K.rho * K.un, K.rho * K.ut, K.E};
    for (int c = 0; c < 5; ++c) out.f[c] = fk[c] + sk * (ustar[c] - uk[c]);
    out.u_face = sm;
    if (with_alpha) out.f_alpha = sm * K.alpha1;
    return out;
}

void check_finite(const FaceState& s, const char* side) {
    if (!(std::isfinite(s.m1) && std::isfinite(s.m2) && std::isfinite(s.un) &&
          std::isfinite(s.ut) && std::isfinite(s.p)))
        throw SolverError(std::string("hllc_flux: non-finite ") + side + " state");
}

}  // namespace

FaceFlux hllc_flux(const FaceState& l, const FaceState& r, const MaterialPair& mats) {
    check_finite(l, "left");
    check_finite(r, "right");
    return hllc_core(unpack_five(l, mats), unpack_five(r, mats), true);
}

FaceFlux hllc_flux_four_eq(const FaceState& l, const FaceState& r, const MaterialPair& mats) {
    check_finite(l, "left");
    check_finite(r, "right");
    return hllc_core(unpack_four(l, mats), unpack_four(r, mats), false);
}

double four_eq_sound_speed(double m1, double m2, double p, const MaterialPair& mats) {
    const double rho = m1 + m2;
    const double c1 = m1 * mats[0].cv, c2 = m2 * mats[1].cv;
    const double gmix = (c1 * mats[0].gamma + c2 * mats[1].gamma) / (c1 + c2);
    return std::sqrt(gmix * p / rho);
}

}  // namespace mcf
