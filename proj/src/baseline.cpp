#include "mcflow/baseline.hpp"

#include <algorithm>
#include <cmath>

#include "mcflow/eos.hpp"
#include "mcflow/parabolic.hpp"
#include "stage_utils.hpp"

namespace mcf {

using detail::extract_interior;
using detail::face_conductivities;
using detail::insert_interior;
using detail::scalar_bc;
using detail::velocity_bc;

void four_eq_temperature_pressure(const CellState& c, const MaterialPair& mats, double& T,
                                  double& p) {
    const double rho = c.rho();
    const double rho_e = c.rhoE - 0.5 * (c.mx * c.mx + c.my * c.my) / rho;
    const double cap = c.m1 * mats[0].cv + c.m2 * mats[1].cv;
    const double mR = c.m1 * mats[0].gas_constant() + c.m2 * mats[1].gas_constant();
    T = rho_e / cap;
    p = mR * T;
}

void four_eq_sync_alpha(FieldSet& f, const MaterialPair& mats) {
    const Grid& g = f.grid;
    for (int j = g.jbeg(); j < g.jend(); ++j)
        for (int i = g.ng; i < g.ng + g.nx; ++i) {
            const std::size_t q = g.idx(i, j);
            const double mR1 = f.m1[q] * mats[0].gas_constant();
            const double mR2 = f.m2[q] * mats[1].gas_constant();
            f.alpha1[q] = std::clamp(mR1 / (mR1 + mR2), kAlphaFloor, 1.0 - kAlphaFloor);
        }
}

namespace {

// Cell fields shared by the baseline stages: T, p, and the equilibrium
// alpha used for mixture transport coefficients.
void closure_fields(const FieldSet& f, const MaterialPair& mats, std::vector<double>& T,
                    std::vector<double>& p, std::vector<double>& al) {
    const Grid& g = f.grid;
    T.resize(g.size());
    p.resize(g.size());
    al.resize(g.size());
    for (std::size_t q = 0; q < g.size(); ++q) {
        const CellState c = f.cell(q);
        four_eq_temperature_pressure(c, mats, T[q], p[q]);
        const double mR1 = f.m1[q] * mats[0].gas_constant();
        const double mR2 = f.m2[q] * mats[1].gas_constant();
        al[q] = mR1 / (mR1 + mR2);
    }
}

}  // namespace

void four_eq_viscous_step(FieldSet& f, const MaterialPair& mats, const TransportModel& model,
                          double dt, StepReport& rep) {
    const Grid& g = f.grid;
    apply_boundary(f);
    std::vector<double> T, p, al;
    closure_fields(f, mats, T, p, al);

    std::vector<double> rho(g.size()), u0(g.size()), v0(g.size()), mu(g.size()), mub(g.size());
    for (std::size_t q = 0; q < g.size(); ++q) {
        rho[q] = f.m1[q] + f.m2[q];
        u0[q] = f.mx[q] / rho[q];
        v0[q] = f.my[q] / rho[q];
        mu[q] = al[q] * sutherland_mu(T[q], model.viscosity, mats[0].mu) +
                (1.0 - al[q]) * sutherland_mu(T[q], model.viscosity, mats[1].mu);
        mub[q] = al[q] * mats[0].mu_b + (1.0 - al[q]) * mats[1].mu_b;
    }

    std::vector<double> k_normal(g.size()), k_tang(g.size());
    for (std::size_t q = 0; q < g.size(); ++q) {
        k_normal[q] = 4.0 / 3.0 * mu[q] + mub[q];
        k_tang[q] = mu[q];
    }

    std::vector<double> un = u0, vn = v0;
    {
        ParabolicProblem pr;
        pr.ndim = g.ndim; pr.nx = g.nx; pr.ny = g.ndim == 2 ? g.ny : 1;
        pr.dx = g.dx; pr.dy = g.dy;
        pr.capacity = extract_interior(rho, g);
        std::vector<double> dummy;
        face_conductivities(k_normal, g, pr.kx, dummy);
        if (g.ndim == 2) face_conductivities(k_tang, g, dummy, pr.ky);
        pr.bc = {velocity_bc(g.bc[XLo], true), velocity_bc(g.bc[XHi], true),
                 velocity_bc(g.bc[YLo], false), velocity_bc(g.bc[YHi], false)};
        std::vector<double> ui = extract_interior(u0, g);
        QuasilinearStats st = solve_quasilinear(pr, nullptr, dt, ui, -1.0, true);
        rep.viscous_outer += st.outer_iterations;
        insert_interior(ui, g, un);
    }
    if (g.ndim == 2) {
        ParabolicProblem pr;
        pr.ndim = g.ndim; pr.nx = g.nx; pr.ny = g.ny;
        pr.dx = g.dx; pr.dy = g.dy;
        pr.capacity = extract_interior(rho, g);
        std::vector<double> dummy;
        face_conductivities(k_tang, g, pr.kx, dummy);
        face_conductivities(k_normal, g, dummy, pr.ky);
        pr.bc = {velocity_bc(g.bc[XLo], false), velocity_bc(g.bc[XHi], false),
                 velocity_bc(g.bc[YLo], true), velocity_bc(g.bc[YHi], true)};
        std::vector<double> vi = extract_interior(v0, g);
        QuasilinearStats st = solve_quasilinear(pr, nullptr, dt, vi, -1.0, true);
        rep.viscous_outer += st.outer_iterations;
        insert_interior(vi, g, vn);
    }
    apply_boundary_scalar(un, g, {-1, -1, 1, 1});
    apply_boundary_scalar(vn, g, {1, 1, -1, -1});

    for (int j = g.jbeg(); j < g.jend(); ++j)
        for (int i = g.ng; i < g.ng + g.nx; ++i) {
            const std::size_t q = g.idx(i, j);
            f.mx[q] = rho[q] * un[q];
            f.my[q] = rho[q] * vn[q];
        }

    // time-centered stress-power energy flux, same layout as the five-eq stage
    std::vector<double> ut(g.size()), vt(g.size());
    for (std::size_t q = 0; q < g.size(); ++q) {
        ut[q] = 0.5 * (u0[q] + un[q]);
        vt[q] = 0.5 * (v0[q] + vn[q]);
    }
    const detail::CellGrad gu{g, ut}, gv{g, vt};
    const int nx = g.nx, ng = g.ng;
    const int nyi = g.jend() - g.jbeg();
    std::vector<double> fx(static_cast<std::size_t>(nx + 1) * nyi);
    for (int jj = 0; jj < nyi; ++jj) {
        const int j = g.jbeg() + jj;
        for (int fi = 0; fi <= nx; ++fi) {
            const std::size_t q0 = g.idx(ng - 1 + fi, j), q1 = q0 + 1;
            const double muf = 0.5 * (mu[q0] + mu[q1]);
            const double mubf = 0.5 * (mub[q0] + mub[q1]);
            const double dudx = (ut[q1] - ut[q0]) / g.dx;
            const double dvdx = (vt[q1] - vt[q0]) / g.dx;
            double dudy = 0.0, dvdy = 0.0;
            if (g.ndim == 2) {
                dudy = 0.5 * (gu.ddy(q0) + gu.ddy(q1));
                dvdy = 0.5 * (gv.ddy(q0) + gv.ddy(q1));
            }
            const double txx = (4.0 / 3.0 * muf + mubf) * dudx + (mubf - 2.0 / 3.0 * muf) * dvdy;
            const double txy = muf * (dudy + dvdx);
            fx[static_cast<std::size_t>(jj) * (nx + 1) + fi] =
                txx * 0.5 * (ut[q0] + ut[q1]) + txy * 0.5 * (vt[q0] + vt[q1]);
        }
    }
    std::vector<double> fy;
    if (g.ndim == 2) {
        fy.resize(static_cast<std::size_t>(nx) * (g.ny + 1));
        for (int fj = 0; fj <= g.ny; ++fj)
            for (int ii = 0; ii < nx; ++ii) {
                const std::size_t q0 = g.idx(ng + ii, ng - 1 + fj), q1 = q0 + g.sx();
                const double muf = 0.5 * (mu[q0] + mu[q1]);
                const double mubf = 0.5 * (mub[q0] + mub[q1]);
                const double dudy = (ut[q1] - ut[q0]) / g.dy;
                const double dvdy = (vt[q1] - vt[q0]) / g.dy;
                const double dudx = 0.5 * (gu.ddx(q0) + gu.ddx(q1));
                const double dvdx = 0.5 * (gv.ddx(q0) + gv.ddx(q1));
                const double tyy =
                    (4.0 / 3.0 * muf + mubf) * dvdy + (mubf - 2.0 / 3.0 * muf) * dudx;
                const double tyx = muf * (dudy + dvdx);
                fy[static_cast<std::size_t>(fj) * nx + ii] =
                    tyx * 0.5 * (ut[q0] + ut[q1]) + tyy * 0.5 * (vt[q0] + vt[q1]);
            }
    }
    for (int jj = 0; jj < nyi; ++jj)
        for (int ii = 0; ii < nx; ++ii) {
            const std::size_t q = g.idx(ng + ii, g.jbeg() + jj);
            const std::size_t fw = static_cast<std::size_t>(jj) * (nx + 1) + ii;
            double div = (fx[fw + 1] - fx[fw]) / g.dx;
            if (g.ndim == 2) {
                const std::size_t fs = static_cast<std::size_t>(jj) * nx + ii;
                div += (fy[fs + nx] - fy[fs]) / g.dy;
            }
            f.rhoE[q] += dt * div;
        }
    four_eq_sync_alpha(f, mats);
}

void four_eq_conduction_step(FieldSet& f, const MaterialPair& mats, const TransportModel& model,
                             double dt, StepReport& rep) {
    const Grid& g = f.grid;
    apply_boundary(f);
    std::vector<double> T, p, al;
    closure_fields(f, mats, T, p, al);

    std::vector<double> lam(g.size()), cap(g.size());
    for (std::size_t q = 0; q < g.size(); ++q) {
        lam[q] = al[q] * mats[0].lambda + (1.0 - al[q]) * mats[1].lambda;
        cap[q] = f.m1[q] * mats[0].cv + f.m2[q] * mats[1].cv;
    }

    ParabolicProblem pr;
    pr.ndim = g.ndim; pr.nx = g.nx; pr.ny = g.ndim == 2 ? g.ny : 1;
    pr.dx = g.dx; pr.dy = g.dy;
    pr.capacity = extract_interior(cap, g);
    face_conductivities(lam, g, pr.kx, pr.ky);
    pr.bc = {scalar_bc(g.bc[XLo]), scalar_bc(g.bc[XHi]), scalar_bc(g.bc[YLo]), scalar_bc(g.bc[YHi])};
    if (model.source) {
        pr.source.resize(pr.cells());
        std::size_t k = 0;
        for (int j = g.jbeg(); j < g.jend(); ++j)
            for (int i = g.ng; i < g.ng + g.nx; ++i)
                pr.source[k++] = model.source(g.xc(i), g.yc(j), f.time);
    }
    std::vector<double> Ti = extract_interior(T, g);
    QuasilinearStats st = solve_quasilinear(pr, nullptr, dt, Ti, -1.0, true);
    rep.conduction_outer += st.outer_iterations;

    std::size_t k = 0;
    for (int j = g.jbeg(); j < g.jend(); ++j)
        for (int i = g.ng; i < g.ng + g.nx; ++i) {
            const std::size_t q = g.idx(i, j);
            const double rho = f.m1[q] + f.m2[q];
            f.rhoE[q] = cap[q] * Ti[k] + 0.5 * (f.mx[q] * f.mx[q] + f.my[q] * f.my[q]) / rho;
            ++k;
        }
    four_eq_sync_alpha(f, mats);
}

void four_eq_diffusion_step(FieldSet& f, const MaterialPair& mats, const TransportModel& model,
                            double dt, StepReport& rep) {
    const Grid& g = f.grid;
    apply_boundary(f);
    std::vector<double> T, p, al;
    closure_fields(f, mats, T, p, al);

    std::vector<double> rho(g.size()), y1(g.size()), rhoD(g.size()), h1(g.size()), h2(g.size());
    for (std::size_t q = 0; q < g.size(); ++q) {
        rho[q] = f.m1[q] + f.m2[q];
        y1[q] = f.m1[q] / rho[q];
        rhoD[q] = rho[q] * diffusivity_D(T[q], p[q], model.diffusivity);
        h1[q] = mats[0].gamma * mats[0].cv * T[q];
        h2[q] = mats[1].gamma * mats[1].cv * T[q];
    }

    // enthalpy-diffusion energy flux, evaluated at the stage-entry state
    const int nx = g.nx, ng = g.ng;
    const int nyi = g.jend() - g.jbeg();
    std::vector<double> fx(static_cast<std::size_t>(nx + 1) * nyi);
    for (int jj = 0; jj < nyi; ++jj) {
        const int j = g.jbeg() + jj;
        for (int fi = 0; fi <= nx; ++fi) {
            const std::size_t q0 = g.idx(ng - 1 + fi, j), q1 = q0 + 1;
            const double J = -0.5 * (rhoD[q0] + rhoD[q1]) * (y1[q1] - y1[q0]) / g.dx;
            fx[static_cast<std::size_t>(jj) * (nx + 1) + fi] =
                -(0.5 * (h1[q0] + h1[q1]) * J + 0.5 * (h2[q0] + h2[q1]) * (-J));
        }
    }
    std::vector<double> fy;
    if (g.ndim == 2) {
        fy.resize(static_cast<std::size_t>(nx) * (g.ny + 1));
        for (int fj = 0; fj <= g.ny; ++fj)
            for (int ii = 0; ii < nx; ++ii) {
                const std::size_t q0 = g.idx(ng + ii, ng - 1 + fj), q1 = q0 + g.sx();
                const double J = -0.5 * (rhoD[q0] + rhoD[q1]) * (y1[q1] - y1[q0]) / g.dy;
                fy[static_cast<std::size_t>(fj) * nx + ii] =
                    -(0.5 * (h1[q0] + h1[q1]) * J + 0.5 * (h2[q0] + h2[q1]) * (-J));
            }
    }

    ParabolicProblem pr;
    pr.ndim = g.ndim; pr.nx = g.nx; pr.ny = g.ndim == 2 ? g.ny : 1;
    pr.dx = g.dx; pr.dy = g.dy;
    pr.capacity = extract_interior(rho, g);
    face_conductivities(rhoD, g, pr.kx, pr.ky);
    pr.bc = {scalar_bc(g.bc[XLo]), scalar_bc(g.bc[XHi]), scalar_bc(g.bc[YLo]), scalar_bc(g.bc[YHi])};
    std::vector<double> yi = extract_interior(y1, g);
    QuasilinearStats st = solve_quasilinear(pr, nullptr, dt, yi, -1.0, true);
    rep.diffusion_outer += st.outer_iterations;

    std::size_t k = 0;
    for (int jj = 0; jj < nyi; ++jj)
        for (int ii = 0; ii < nx; ++ii) {
            const std::size_t q = g.idx(ng + ii, g.jbeg() + jj);
            const double yv = std::clamp(yi[k++], kPartialDensityFloorFrac,
                                         1.0 - kPartialDensityFloorFrac);
            f.m1[q] = rho[q] * yv;
            f.m2[q] = rho[q] - f.m1[q];
            const std::size_t fw = static_cast<std::size_t>(jj) * (nx + 1) + ii;
            double div = (fx[fw + 1] - fx[fw]) / g.dx;
            if (g.ndim == 2) {
                const std::size_t fs = static_cast<std::size_t>(jj) * nx + ii;
                div += (fy[fs + nx] - fy[fs]) / g.dy;
            }
            f.rhoE[q] += dt * div;
        }
    four_eq_sync_alpha(f, mats);
}

}  // namespace mcf
