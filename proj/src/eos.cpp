#include "mcflow/eos.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mcflow/errors.hpp"

namespace mcf {

double mixture_pressure(double m1, double m2, double rho_e, double alpha1, const MaterialPair& mats) {
    (void)m1;
    (void)m2;
    const double denom = alpha1 / (mats[0].gamma - 1.0) + (1.0 - alpha1) / (mats[1].gamma - 1.0);
    const double p = rho_e / denom;
    if (!(p > 0.0))
        throw PositivityError("mixture_pressure: non-positive pressure (rho_e=" + std::to_string(rho_e) + ")");
    return p;
}

void phase_temperatures(double p, double rho1, double rho2, const MaterialPair& mats, double& T1, double& T2) {
    T1 = p / ((mats[0].gamma - 1.0) * rho1 * mats[0].cv);
    T2 = p / ((mats[1].gamma - 1.0) * rho2 * mats[1].cv);
}

PrimitiveState cons_to_prim(const CellState& cell, const MaterialPair& mats) {
    PrimitiveState w;
    const double rho = cell.rho();
    w.alpha1 = cell.alpha1;
    w.u = cell.mx / rho;
    w.v = cell.my / rho;
    const double rho_e = cell.rhoE - 0.5 * (cell.mx * cell.mx + cell.my * cell.my) / rho;
    if (!(rho_e > 0.0))
        throw PositivityError("cons_to_prim: non-positive internal energy " + std::to_string(rho_e));
    w.p = mixture_pressure(cell.m1, cell.m2, rho_e, cell.alpha1, mats);
    w.rho1 = cell.m1 / cell.alpha1;
    w.rho2 = cell.m2 / (1.0 - cell.alpha1);
    phase_temperatures(w.p, w.rho1, w.rho2, mats, w.T1, w.T2);
    return w;
}

CellState prim_to_cons(const PrimitiveState& prim, const MaterialPair& mats, int* clips) {
    CellState c;
    double a1 = prim.alpha1;
    if (a1 < kAlphaFloor || a1 > 1.0 - kAlphaFloor) {
        a1 = std::clamp(a1, kAlphaFloor, 1.0 - kAlphaFloor);
        if (clips) ++*clips;
    }
    c.alpha1 = a1;
    c.m1 = a1 * prim.rho1;
    c.m2 = (1.0 - a1) * prim.rho2;
    const double rho = c.m1 + c.m2;
    c.mx = rho * prim.u;
    c.my = rho * prim.v;
    // phase internal energies e_k = p/((gamma_k-1) rho_k)
    const double rho_e = a1 * prim.p / (mats[0].gamma - 1.0) + (1.0 - a1) * prim.p / (mats[1].gamma - 1.0);
    c.rhoE = rho_e + 0.5 * rho * (prim.u * prim.u + prim.v * prim.v);
    return c;
}

CellState relax_temperatures(const CellState& cell, const MaterialPair& mats) {
    const double R1 = mats[0].gas_constant();
    const double R2 = mats[1].gas_constant();
    CellState out = cell;
    // At the common temperature T' the pressure-equilibrium + saturation
    // conditions fix alpha_k = m_k R_k / sum m_j R_j; m_k, momentum and rho*E
    // are untouched.
    out.alpha1 = cell.m1 * R1 / (cell.m1 * R1 + cell.m2 * R2);
    out.alpha1 = std::clamp(out.alpha1, kAlphaFloor, 1.0 - kAlphaFloor);
    return out;
}

EquilibriumState equilibriumReconstructImpl(double m1, double m2, double e, const MaterialPair& mats) {
    EquilibriumState s;
    const double rho = m1 + m2;
    const double cv_mix = (m1 * mats[0].cv + m2 * mats[1].cv) / rho;
    s.T = e / cv_mix;
    const double mR1 = m1 * mats[0].gas_constant();
    const double mR2 = m2 * mats[1].gas_constant();
    s.p = (mR1 + mR2) * s.T;
    s.alpha1 = std::clamp(mR1 / (mR1 + mR2), kAlphaFloor, 1.0 - kAlphaFloor);
    s.rho1 = m1 / s.alpha1;
    s.rho2 = m2 / (1.0 - s.alpha1);
    return s;
}

EquilibriumState equilibrium_reconstruct(double m1, double m2, double e, const MaterialPair& mats) {
    if (!(m1 > 0.0) || !(m2 > 0.0))
        throw PositivityError("equilibrium_reconstruct: non-positive partial density");
    if (!(e > 0.0))
        throw PositivityError("equilibrium_reconstruct: non-positive internal energy");
    return equilibriumReconstructImpl(m1, m2, e, mats);
}

AcousticBundle wood_sound_speed(double alpha1, double p, double rho, const MaterialPair& mats,
                                double rho1, double rho2) {
    AcousticBundle b;
    b.A1 = mats[0].gamma * p;
    b.A2 = mats[1].gamma * p;
    b.A = 1.0 / (alpha1 / b.A1 + (1.0 - alpha1) / b.A2);
    b.a_wood = std::sqrt(b.A / rho);
    if (rho1 > 0.0) b.a1 = std::sqrt(b.A1 / rho1);
    if (rho2 > 0.0) b.a2 = std::sqrt(b.A2 / rho2);
    return b;
}

double mixture_entropy(const CellState& cell, const MaterialPair& mats) {
    const PrimitiveState w = cons_to_prim(cell, mats);
    const double s1 = mats[0].cv * (std::log(w.T1) - (mats[0].gamma - 1.0) * std::log(w.rho1));
    const double s2 = mats[1].cv * (std::log(w.T2) - (mats[1].gamma - 1.0) * std::log(w.rho2));
    return cell.m1 * s1 + cell.m2 * s2;
}

}  // namespace mcf
