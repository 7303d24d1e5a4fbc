#include "mcflow/hydro.hpp"

#include <algorithm>
#include <cmath>

#include "mcflow/eos.hpp"
#include "mcflow/errors.hpp"

namespace mcf {

namespace {

void derive_primitives_4eq(const FieldSet& f, const MaterialPair& mats, PrimField& prim) {
    const Grid& g = f.grid;
    prim.resize(g.size());
    const int sy = g.sy(), sx = g.sx();
#pragma omp parallel for schedule(static)
    for (int j = 0; j < sy; ++j) {
        for (int i = 0; i < sx; ++i) {
            const std::size_t q = g.idx(i, j);
            const double rho = f.m1[q] + f.m2[q];
            prim.u[q] = f.mx[q] / rho;
            prim.v[q] = f.my[q] / rho;
            const double rho_e = f.rhoE[q] - 0.5 * (f.mx[q] * f.mx[q] + f.my[q] * f.my[q]) / rho;
            const double cvm = f.m1[q] * mats[0].cv + f.m2[q] * mats[1].cv;
            const double Rm = f.m1[q] * mats[0].gas_constant() + f.m2[q] * mats[1].gas_constant();
            prim.p[q] = rho_e * Rm / cvm;
            prim.rho1[q] = f.m1[q];
            prim.rho2[q] = f.m2[q];
        }
    }
}

// Clip a reconstructed face state to the floors. Returns false when the state
// is unusable (non-positive pressure or density) and the caller should fall
// back to the donor cell value.
bool sanitize_face(FaceState& s, long& clips) {
    if (!(s.p > 0.0)) return false;
    const double rho = s.m1 + s.m2;
    if (!(rho > 0.0)) return false;
    if (s.alpha1 < kAlphaFloor) { s.alpha1 = kAlphaFloor; ++clips; }
    else if (s.alpha1 > 1.0 - kAlphaFloor) { s.alpha1 = 1.0 - kAlphaFloor; ++clips; }
    const double mfloor = kPartialDensityFloorFrac * rho;
    if (s.m1 < mfloor) { s.m1 = mfloor; ++clips; }
    if (s.m2 < mfloor) { s.m2 = mfloor; ++clips; }
    return true;
}

FaceState cell_face_state(const FieldSet& f, const PrimField& prim, std::size_t q, bool xdir,
                          FlowModel model) {
    FaceState s;
    s.m1 = f.m1[q];
    s.m2 = f.m2[q];
    s.un = xdir ? prim.u[q] : prim.v[q];
    s.ut = xdir ? prim.v[q] : prim.u[q];
    s.p = prim.p[q];
    s.alpha1 = model == FlowModel::FiveEq ? f.alpha1[q] : 0.5;
    return s;
}

// MUSCL: limited linear reconstruction of [rho1, rho2, un, ut, p, alpha1]
// (five-eq) or [m1, m2, un, ut, p] (four-eq).
void muscl_states(const FieldSet& f, const PrimField& prim, std::size_t q0, long stride, bool xdir,
                  Limiter lim, FlowModel model, FaceState& L, FaceState& R, long& clips) {
    const std::size_t qm = q0 - stride, q1 = q0 + stride, q2 = q0 + 2 * stride;
    auto rec = [&](const double* a, double& left, double& right) {
        const double sl = limited_slope(a[q0] - a[qm], a[q1] - a[q0], lim);
        const double sr = limited_slope(a[q1] - a[q0], a[q2] - a[q1], lim);
        left = a[q0] + 0.5 * sl;
        right = a[q1] - 0.5 * sr;
    };
    const double* un = xdir ? prim.u.data() : prim.v.data();
    const double* ut = xdir ? prim.v.data() : prim.u.data();
    double unL, unR, utL, utR, pL, pR;
    rec(un, unL, unR);
    rec(ut, utL, utR);
    rec(prim.p.data(), pL, pR);
    if (model == FlowModel::FiveEq) {
        double r1L, r1R, r2L, r2R, aL, aR;
        rec(prim.rho1.data(), r1L, r1R);
        rec(prim.rho2.data(), r2L, r2R);
        rec(f.alpha1.data(), aL, aR);
        aL = std::clamp(aL, kAlphaFloor, 1.0 - kAlphaFloor);
        aR = std::clamp(aR, kAlphaFloor, 1.0 - kAlphaFloor);
        L = {aL * r1L, (1.0 - aL) * r2L, unL, utL, pL, aL};
        R = {aR * r1R, (1.0 - aR) * r2R, unR, utR, pR, aR};
    } else {
        double m1L, m1R, m2L, m2R;
        rec(f.m1.data(), m1L, m1R);
        rec(f.m2.data(), m2L, m2R);
        L = {m1L, m2L, unL, utL, pL, 0.5};
        R = {m1R, m2R, unR, utR, pR, 0.5};
    }
    if (!sanitize_face(L, clips)) { L = cell_face_state(f, prim, q0, xdir, model); ++clips; }
    if (!sanitize_face(R, clips)) { R = cell_face_state(f, prim, q1, xdir, model); ++clips; }
}

// WENO5 on the local characteristic variables of the face-linearized system.
// The face eigensystem (Wood-speed acoustics plus a contact family carrying
// ut, alpha and the phase densities) is frozen at the arithmetic average of
// the adjacent cells. Carrying rho_k rather than m_k in the contact family
// keeps m_k = alpha_k rho_k consistent across reconstructed faces: at an
// isolated contact the rho_k channels are constant, so the pressure,
// velocity and phase temperatures come out spatially uniform to round-off.
void weno_states(const FieldSet& f, const PrimField& prim, const MaterialPair& mats,
                 std::size_t q0, long stride, bool xdir, FlowModel model, FaceState& L,
                 FaceState& R, long& clips, long& fallbacks) {
    const std::size_t q1 = q0 + stride;
    const double* un = xdir ? prim.u.data() : prim.v.data();
    const double* ut = xdir ? prim.v.data() : prim.u.data();
    const bool five = model == FlowModel::FiveEq;

    const double m1b = 0.5 * (f.m1[q0] + f.m1[q1]);
    const double m2b = 0.5 * (f.m2[q0] + f.m2[q1]);
    const double rhob = m1b + m2b;
    const double pb = 0.5 * (prim.p[q0] + prim.p[q1]);
    const double alb = std::clamp(0.5 * (f.alpha1[q0] + f.alpha1[q1]), kAlphaFloor, 1.0 - kAlphaFloor);
    const double r1b = 0.5 * (prim.rho1[q0] + prim.rho1[q1]);
    const double r2b = 0.5 * (prim.rho2[q0] + prim.rho2[q1]);

    double A = 0.0, a = 0.0, kap = 0.0, A1 = 0.0, A2 = 0.0;
    bool componentwise = !(pb > 0.0) || !(rhob > 0.0);
    if (!componentwise) {
        if (five) {
            const AcousticBundle b = wood_sound_speed(alb, pb, rhob, mats);
            A = b.A;
            A1 = b.A1;
            A2 = b.A2;
            a = b.a_wood;
            kap = (b.A / b.A1 - 1.0) * alb;
        } else {
            a = four_eq_sound_speed(m1b, m2b, pb, mats);
            A = rhob * a * a;
        }
        if (!(a > 0.0) || !std::isfinite(a)) componentwise = true;
    }
    if (componentwise) ++fallbacks;

    // stencil values, offsets -2..+3 relative to the left cell
    double sr1[6], sr2[6], sun[6], sut[6], sp[6], sal[6];
    for (int k = -2; k <= 3; ++k) {
        const std::size_t q = q0 + k * stride;
        sr1[k + 2] = five ? prim.rho1[q] : f.m1[q];
        sr2[k + 2] = five ? prim.rho2[q] : f.m2[q];
        sun[k + 2] = un[q];
        sut[k + 2] = ut[q];
        sp[k + 2] = prim.p[q];
        sal[k + 2] = f.alpha1[q];
    }

    auto recon = [&](const double* w, double& left, double& right) {
        left = weno5_face(w[0], w[1], w[2], w[3], w[4]);
        right = weno5_face(w[5], w[4], w[3], w[2], w[1]);
    };

    double r1L, r1R, r2L, r2R, unL, unR, utL, utR, pL, pR, alL = alb, alR = alb;
    if (componentwise) {
        recon(sr1, r1L, r1R);
        recon(sr2, r2L, r2R);
        recon(sun, unL, unR);
        recon(sut, utL, utR);
        recon(sp, pL, pR);
        if (five) recon(sal, alL, alR);
    } else {
        const double inv2A = 0.5 / A;
        const double ra = rhob * a;
        // contact-family coupling coefficients of the density-like fields
        const double k1 = five ? r1b / A1 : m1b / A;
        const double k2 = five ? r2b / A2 : m2b / A;
        double wminus[6], wplus[6], w1[6], w2[6], wal[6];
        for (int k = 0; k < 6; ++k) {
            wminus[k] = (sp[k] - ra * sun[k]) * inv2A;
            wplus[k] = (sp[k] + ra * sun[k]) * inv2A;
            w1[k] = sr1[k] - k1 * sp[k];
            w2[k] = sr2[k] - k2 * sp[k];
            if (five) wal[k] = sal[k] + (kap / A) * sp[k];
        }
        double cmL, cmR, cpL, cpR, c1L, c1R, c2L, c2R, caL = 0, caR = 0;
        recon(wminus, cmL, cmR);
        recon(wplus, cpL, cpR);
        recon(w1, c1L, c1R);
        recon(w2, c2L, c2R);
        recon(sut, utL, utR);
        if (five) recon(wal, caL, caR);
        pL = A * (cmL + cpL);
        pR = A * (cmR + cpR);
        unL = a * (cpL - cmL);
        unR = a * (cpR - cmR);
        r1L = k1 * pL + c1L;
        r1R = k1 * pR + c1R;
        r2L = k2 * pL + c2L;
        r2R = k2 * pR + c2R;
        if (five) {
            alL = caL - (kap / A) * pL;
            alR = caR - (kap / A) * pR;
        }
    }
    if (five) {
        alL = std::clamp(alL, kAlphaFloor, 1.0 - kAlphaFloor);
        alR = std::clamp(alR, kAlphaFloor, 1.0 - kAlphaFloor);
        L = {alL * r1L, (1.0 - alL) * r2L, unL, utL, pL, alL};
        R = {alR * r1R, (1.0 - alR) * r2R, unR, utR, pR, alR};
    } else {
        L = {r1L, r2L, unL, utL, pL, 0.5};
        R = {r1R, r2R, unR, utR, pR, 0.5};
    }
    if (!sanitize_face(L, clips)) { L = cell_face_state(f, prim, q0, xdir, model); ++clips; }
    if (!sanitize_face(R, clips)) { R = cell_face_state(f, prim, q1, xdir, model); ++clips; }
}

}  // namespace

void face_states(const FieldSet& f, const PrimField& prim, const MaterialPair& mats,
                 ReconstructionMode mode, std::size_t q0, long stride, bool xdir, FlowModel model,
                 FaceState& L, FaceState& R, long& clips, long& fallbacks) {
    if (mode.kind == ReconstructionMode::Kind::Weno5)
        weno_states(f, prim, mats, q0, stride, xdir, model, L, R, clips, fallbacks);
    else
        muscl_states(f, prim, q0, stride, xdir, mode.limiter, model, L, R, clips);
}

double stable_dt(const FieldSet& f, const MaterialPair& mats, double cfl, FlowModel model) {
    const Grid& g = f.grid;
    PrimField prim;
    if (model == FlowModel::FiveEq)
        derive_primitives(f, mats, prim);
    else
        derive_primitives_4eq(f, mats, prim);
    double dtmin = std::numeric_limits<double>::max();
#pragma omp parallel for schedule(static) reduction(min : dtmin)
    for (int j = g.jbeg(); j < g.jend(); ++j) {
        for (int i = g.ng; i < g.ng + g.nx; ++i) {
            const std::size_t q = g.idx(i, j);
            const double rho = f.m1[q] + f.m2[q];
            const double a = model == FlowModel::FiveEq
                                 ? wood_sound_speed(f.alpha1[q], prim.p[q], rho, mats).a_wood
                                 : four_eq_sound_speed(f.m1[q], f.m2[q], prim.p[q], mats);
            double dt = g.dx / (std::abs(prim.u[q]) + a);
            if (g.ndim == 2) dt = std::min(dt, g.dy / (std::abs(prim.v[q]) + a));
            dtmin = std::min(dtmin, dt);
        }
    }
    return cfl * dtmin;
}

void hydro_rhs(const FieldSet& f, const MaterialPair& mats, ReconstructionMode mode,
               HydroWorkspace& ws, Residual& res, FlowModel model) {
    const Grid& g = f.grid;
    if (g.ng < mode.required_ghost())
        throw ConfigError("hydro_rhs: reconstruction stencil exceeds ghost layer");
    if (model == FlowModel::FiveEq)
        derive_primitives(f, mats, ws.prim);
    else
        derive_primitives_4eq(f, mats, ws.prim);
    res.resize(g.size());

    const int nx = g.nx, ng = g.ng;
    const int nyi = g.jend() - g.jbeg();
    const std::size_t nfx = static_cast<std::size_t>(nx + 1) * nyi;
    ws.fxm1.resize(nfx); ws.fxm2.resize(nfx); ws.fxmn.resize(nfx);
    ws.fxmt.resize(nfx); ws.fxE.resize(nfx); ws.fxal.resize(nfx); ws.ufx.resize(nfx);

    long clips = 0, fallbacks = 0;
    const bool five = model == FlowModel::FiveEq;

#pragma omp parallel for schedule(static) reduction(+ : clips, fallbacks)
    for (int jj = 0; jj < nyi; ++jj) {
        const int j = g.jbeg() + jj;
        for (int fi = 0; fi <= nx; ++fi) {
            const std::size_t q0 = g.idx(ng - 1 + fi, j);
            FaceState L, R;
            face_states(f, ws.prim, mats, mode, q0, 1, true, model, L, R, clips, fallbacks);
            const FaceFlux fl = five ? hllc_flux(L, R, mats) : hllc_flux_four_eq(L, R, mats);
            const std::size_t fq = static_cast<std::size_t>(jj) * (nx + 1) + fi;
            ws.fxm1[fq] = fl.f[0]; ws.fxm2[fq] = fl.f[1]; ws.fxmn[fq] = fl.f[2];
            ws.fxmt[fq] = fl.f[3]; ws.fxE[fq] = fl.f[4]; ws.fxal[fq] = fl.f_alpha;
            ws.ufx[fq] = fl.u_face;
        }
    }

    const bool twod = g.ndim == 2;
    const std::size_t nfy = twod ? static_cast<std::size_t>(nx) * (g.ny + 1) : 0;
    if (twod) {
        ws.fym1.resize(nfy); ws.fym2.resize(nfy); ws.fymn.resize(nfy);
        ws.fymt.resize(nfy); ws.fyE.resize(nfy); ws.fyal.resize(nfy); ws.ufy.resize(nfy);
#pragma omp parallel for schedule(static) reduction(+ : clips, fallbacks)
        for (int fj = 0; fj <= g.ny; ++fj) {
            for (int ii = 0; ii < nx; ++ii) {
                const std::size_t q0 = g.idx(ng + ii, ng - 1 + fj);
                FaceState L, R;
                face_states(f, ws.prim, mats, mode, q0, g.sx(), false, model, L, R, clips, fallbacks);
                const FaceFlux fl = five ? hllc_flux(L, R, mats) : hllc_flux_four_eq(L, R, mats);
                const std::size_t fq = static_cast<std::size_t>(fj) * nx + ii;
                ws.fym1[fq] = fl.f[0]; ws.fym2[fq] = fl.f[1]; ws.fymn[fq] = fl.f[2];
                ws.fymt[fq] = fl.f[3]; ws.fyE[fq] = fl.f[4]; ws.fyal[fq] = fl.f_alpha;
                ws.ufy[fq] = fl.u_face;
            }
        }
    }

    const double idx = 1.0 / g.dx;
    const double idy = twod ? 1.0 / g.dy : 0.0;
#pragma omp parallel for schedule(static)
    for (int jj = 0; jj < nyi; ++jj) {
        const int j = g.jbeg() + jj;
        for (int ii = 0; ii < nx; ++ii) {
            const std::size_t q = g.idx(ng + ii, j);
            const std::size_t fw = static_cast<std::size_t>(jj) * (nx + 1) + ii;
            const std::size_t fe = fw + 1;
            res.m1[q] = (ws.fxm1[fw] - ws.fxm1[fe]) * idx;
            res.m2[q] = (ws.fxm2[fw] - ws.fxm2[fe]) * idx;
            res.mx[q] = (ws.fxmn[fw] - ws.fxmn[fe]) * idx;
            res.my[q] = (ws.fxmt[fw] - ws.fxmt[fe]) * idx;
            res.rhoE[q] = (ws.fxE[fw] - ws.fxE[fe]) * idx;
            double divu = (ws.ufx[fe] - ws.ufx[fw]) * idx;
            double alflux = (ws.fxal[fw] - ws.fxal[fe]) * idx;
            if (twod) {
                const std::size_t fs = static_cast<std::size_t>(jj) * nx + ii;
                const std::size_t fn = fs + nx;
                res.m1[q] += (ws.fym1[fs] - ws.fym1[fn]) * idy;
                res.m2[q] += (ws.fym2[fs] - ws.fym2[fn]) * idy;
                // y-sweep normal momentum is my, transverse is mx
                res.my[q] += (ws.fymn[fs] - ws.fymn[fn]) * idy;
                res.mx[q] += (ws.fymt[fs] - ws.fymt[fn]) * idy;
                res.rhoE[q] += (ws.fyE[fs] - ws.fyE[fn]) * idy;
                divu += (ws.ufy[fn] - ws.ufy[fs]) * idy;
                alflux += (ws.fyal[fs] - ws.fyal[fn]) * idy;
            }
            if (five) {
                // non-conservative source (A/A1) alpha1 div(u), cell-averaged
                // coefficients, Riemann-face velocities
                const double A1 = mats[0].gamma * ws.prim.p[q];
                const double A = wood_sound_speed(f.alpha1[q], ws.prim.p[q],
                                                  f.m1[q] + f.m2[q], mats).A;
                res.alpha1[q] = alflux + (A / A1) * f.alpha1[q] * divu;
            } else {
                res.alpha1[q] = 0.0;
            }
        }
    }
    ws.clip_events += clips;
    ws.eig_fallbacks += fallbacks;
}

long heun_advance(FieldSet& f, const MaterialPair& mats, ReconstructionMode mode, double dt,
                  HydroWorkspace& ws, FlowModel model) {
    const Grid& g = f.grid;
    long clips = 0;
    apply_boundary(f);
    hydro_rhs(f, mats, mode, ws, ws.r0, model);

    ws.stage = f;
    FieldSet& s = ws.stage;
#pragma omp parallel for schedule(static)
    for (int j = g.jbeg(); j < g.jend(); ++j) {
        for (int i = g.ng; i < g.ng + g.nx; ++i) {
            const std::size_t q = g.idx(i, j);
            s.m1[q] = f.m1[q] + dt * ws.r0.m1[q];
            s.m2[q] = f.m2[q] + dt * ws.r0.m2[q];
            s.mx[q] = f.mx[q] + dt * ws.r0.mx[q];
            s.my[q] = f.my[q] + dt * ws.r0.my[q];
            s.rhoE[q] = f.rhoE[q] + dt * ws.r0.rhoE[q];
            s.alpha1[q] = f.alpha1[q] + dt * ws.r0.alpha1[q];
        }
    }
    clips += apply_state_floors(s);
    validate_fields(s, mats, "hydro predictor");
    apply_boundary(s);
    hydro_rhs(s, mats, mode, ws, ws.r1, model);

#pragma omp parallel for schedule(static)
    for (int j = g.jbeg(); j < g.jend(); ++j) {
        for (int i = g.ng; i < g.ng + g.nx; ++i) {
            const std::size_t q = g.idx(i, j);
            f.m1[q] = 0.5 * (f.m1[q] + s.m1[q] + dt * ws.r1.m1[q]);
            f.m2[q] = 0.5 * (f.m2[q] + s.m2[q] + dt * ws.r1.m2[q]);
            f.mx[q] = 0.5 * (f.mx[q] + s.mx[q] + dt * ws.r1.mx[q]);
            f.my[q] = 0.5 * (f.my[q] + s.my[q] + dt * ws.r1.my[q]);
            f.rhoE[q] = 0.5 * (f.rhoE[q] + s.rhoE[q] + dt * ws.r1.rhoE[q]);
            f.alpha1[q] = 0.5 * (f.alpha1[q] + s.alpha1[q] + dt * ws.r1.alpha1[q]);
        }
    }
    clips += apply_state_floors(f);
    validate_fields(f, mats, "hydro corrector");
    f.time += dt;
    return clips;
}

}  // namespace mcf
