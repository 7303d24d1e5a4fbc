#include "mcflow/dissipative.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "mcflow/baseline.hpp"
#include "mcflow/eos.hpp"
#include "mcflow/errors.hpp"
#include "mcflow/parabolic.hpp"
#include "stage_utils.hpp"

namespace mcf {

using detail::CellGrad;
using detail::extract_interior;
using detail::face_conductivities;
using detail::insert_interior;
using detail::scalar_bc;
using detail::velocity_bc;

namespace {

// Newtonian stress components at faces for a cell-centered vector field
// (ux, uy) with cell viscosities mu, mu_b. Normal derivatives are compact,
// tangential ones are averaged cell-centered central differences.
struct FaceStressOps {
    const Grid& g;
    const std::vector<double>& ux;
    const std::vector<double>& uy;
    const std::vector<double>& mu;
    const std::vector<double>& mub;

    void xface(std::size_t q0, double& txx, double& txy) const {
        const std::size_t q1 = q0 + 1;
        const double dudx = (ux[q1] - ux[q0]) / g.dx;
        const double dvdx = (uy[q1] - uy[q0]) / g.dx;
        double dudy = 0.0, dvdy = 0.0;
        if (g.ndim == 2) {
            const CellGrad gu{g, ux}, gv{g, uy};
            dudy = 0.5 * (gu.ddy(q0) + gu.ddy(q1));
            dvdy = 0.5 * (gv.ddy(q0) + gv.ddy(q1));
        }
        const double muf = 0.5 * (mu[q0] + mu[q1]);
        const double mubf = 0.5 * (mub[q0] + mub[q1]);
        txx = (4.0 / 3.0 * muf + mubf) * dudx + (mubf - 2.0 / 3.0 * muf) * dvdy;
        txy = muf * (dudy + dvdx);
    }

    void yface(std::size_t q0, double& tyx, double& tyy) const {
        const std::size_t q1 = q0 + g.sx();
        const double dudy = (ux[q1] - ux[q0]) / g.dy;
        const double dvdy = (uy[q1] - uy[q0]) / g.dy;
        const CellGrad gu{g, ux}, gv{g, uy};
        const double dudx = 0.5 * (gu.ddx(q0) + gu.ddx(q1));
        const double dvdx = 0.5 * (gv.ddx(q0) + gv.ddx(q1));
        const double muf = 0.5 * (mu[q0] + mu[q1]);
        const double mubf = 0.5 * (mub[q0] + mub[q1]);
        tyy = (4.0 / 3.0 * muf + mubf) * dvdy + (mubf - 2.0 / 3.0 * muf) * dudx;
        tyx = muf * (dudy + dvdx);
    }
};

// Accumulate dt * div(F) into `target` from per-face flux callbacks.
template <class XFlux, class YFlux>
void add_flux_divergence(const Grid& g, double dt, XFlux&& xflux, YFlux&& yflux,
                         std::vector<double>& target) {
    const int nx = g.nx, ng = g.ng;
    const int nyi = g.jend() - g.jbeg();
    std::vector<double> fx(static_cast<std::size_t>(nx + 1) * nyi);
#pragma omp parallel for schedule(static)
    for (int jj = 0; jj < nyi; ++jj) {
        const int j = g.jbeg() + jj;
        for (int fi = 0; fi <= nx; ++fi)
            fx[static_cast<std::size_t>(jj) * (nx + 1) + fi] = xflux(g.idx(ng - 1 + fi, j));
    }
    std::vector<double> fy;
    if (g.ndim == 2) {
        fy.resize(static_cast<std::size_t>(nx) * (g.ny + 1));
#pragma omp parallel for schedule(static)
        for (int fj = 0; fj <= g.ny; ++fj)
            for (int ii = 0; ii < nx; ++ii)
                fy[static_cast<std::size_t>(fj) * nx + ii] = yflux(g.idx(ng + ii, ng - 1 + fj));
    }
#pragma omp parallel for schedule(static)
    for (int jj = 0; jj < nyi; ++jj) {
        const int j = g.jbeg() + jj;
        for (int ii = 0; ii < nx; ++ii) {
            const std::size_t q = g.idx(ng + ii, j);
            const std::size_t fw = static_cast<std::size_t>(jj) * (nx + 1) + ii;
            double div = (fx[fw + 1] - fx[fw]) / g.dx;
            if (g.ndim == 2) {
                const std::size_t fs = static_cast<std::size_t>(jj) * nx + ii;
                div += (fy[fs + nx] - fy[fs]) / g.dy;
            }
            target[q] += dt * div;
        }
    }
}

std::array<ParabolicBc, 4> scalar_bcs(const Grid& g) {
    return {scalar_bc(g.bc[XLo]), scalar_bc(g.bc[XHi]), scalar_bc(g.bc[YLo]), scalar_bc(g.bc[YHi])};
}

ParabolicProblem make_problem(const Grid& g) {
    ParabolicProblem p;
    p.ndim = g.ndim;
    p.nx = g.nx;
    p.ny = g.ndim == 2 ? g.ny : 1;
    p.dx = g.dx;
    p.dy = g.dy;
    return p;
}

double internal_energy_density(const FieldSet& f, std::size_t q) {
    const double rho = f.m1[q] + f.m2[q];
    return f.rhoE[q] - 0.5 * (f.mx[q] * f.mx[q] + f.my[q] * f.my[q]) / rho;
}

}  // namespace

void mixture_viscosity(const FieldSet& f, const PrimField& prim, const MaterialPair& mats,
                       const TransportModel& model, std::vector<double>& mu,
                       std::vector<double>& mu_b) {
    const Grid& g = f.grid;
    mu.resize(g.size());
    mu_b.resize(g.size());
    const int sy = g.sy(), sx = g.sx();
#pragma omp parallel for schedule(static)
    for (int j = 0; j < sy; ++j)
        for (int i = 0; i < sx; ++i) {
            const std::size_t q = g.idx(i, j);
            double T1, T2;
            phase_temperatures(prim.p[q], prim.rho1[q], prim.rho2[q], mats, T1, T2);
            const double a1 = f.alpha1[q];
            mu[q] = a1 * sutherland_mu(T1, model.viscosity, mats[0].mu) +
                    (1.0 - a1) * sutherland_mu(T2, model.viscosity, mats[1].mu);
            mu_b[q] = a1 * mats[0].mu_b + (1.0 - a1) * mats[1].mu_b;
        }
}

void viscous_step(FieldSet& f, const MaterialPair& mats, const TransportModel& model, double dt,
                  StepReport& rep) {
    const Grid& g = f.grid;
    apply_boundary(f);
    PrimField prim;
    derive_primitives(f, mats, prim);

    std::vector<double> mu, mub;
    mixture_viscosity(f, prim, mats, model, mu, mub);
    std::vector<double> rho(g.size());
    for (std::size_t q = 0; q < g.size(); ++q) rho[q] = f.m1[q] + f.m2[q];

    const std::vector<double> u0 = prim.u;
    const std::vector<double> v0 = prim.v;
    std::vector<double> k_normal(g.size()), k_tang(g.size());
    for (std::size_t q = 0; q < g.size(); ++q) {
        k_normal[q] = 4.0 / 3.0 * mu[q] + mub[q];
        k_tang[q] = mu[q];
    }

    // velocity component solves (coefficients frozen at stage entry)
    std::vector<double> un = u0, vn = v0;
    {
        ParabolicProblem p = make_problem(g);
        p.capacity = extract_interior(rho, g);
        std::vector<double> dummy;
        face_conductivities(k_normal, g, p.kx, dummy);   // normal direction: 4mu/3 + mub
        if (g.ndim == 2) {
            face_conductivities(k_tang, g, dummy, p.ky);  // tangential: mu
            // cross-term source: d/dx[(mub-2mu/3) dv/dy] + d/dy[mu dv/dx]
            std::vector<double> src(g.size(), 0.0);
            const CellGrad gv{g, v0};
            add_flux_divergence(
                g, 1.0,
                [&](std::size_t q0) {
                    const std::size_t q1 = q0 + 1;
                    const double mubf = 0.5 * (mub[q0] + mub[q1]);
                    const double muf = 0.5 * (mu[q0] + mu[q1]);
                    return (mubf - 2.0 / 3.0 * muf) * 0.5 * (gv.ddy(q0) + gv.ddy(q1));
                },
                [&](std::size_t q0) {
                    const std::size_t q1 = q0 + g.sx();
                    const double muf = 0.5 * (mu[q0] + mu[q1]);
                    return muf * 0.5 * (gv.ddx(q0) + gv.ddx(q1));
                },
                src);
            p.source = extract_interior(src, g);
        }
        p.bc = {velocity_bc(g.bc[XLo], true), velocity_bc(g.bc[XHi], true),
                velocity_bc(g.bc[YLo], false), velocity_bc(g.bc[YHi], false)};
        std::vector<double> ui = extract_interior(u0, g);
        QuasilinearStats st = solve_quasilinear(p, nullptr, dt, ui, -1.0, true);
        rep.viscous_outer += st.outer_iterations;
        rep.viscous_stages = std::max(rep.viscous_stages, st.max_stages);
        insert_interior(ui, g, un);
    }
    if (g.ndim == 2) {
        ParabolicProblem p = make_problem(g);
        p.capacity = extract_interior(rho, g);
        std::vector<double> dummy;
        face_conductivities(k_tang, g, p.kx, dummy);
        face_conductivities(k_normal, g, dummy, p.ky);
        // cross-term source: d/dy[(mub-2mu/3) du/dx] + d/dx[mu du/dy]
        std::vector<double> src(g.size(), 0.0);
        const CellGrad gu{g, u0};
        add_flux_divergence(
            g, 1.0,
            [&](std::size_t q0) {
                const std::size_t q1 = q0 + 1;
                const double muf = 0.5 * (mu[q0] + mu[q1]);
                return muf * 0.5 * (gu.ddy(q0) + gu.ddy(q1));
            },
            [&](std::size_t q0) {
                const std::size_t q1 = q0 + g.sx();
                const double mubf = 0.5 * (mub[q0] + mub[q1]);
                const double muf = 0.5 * (mu[q0] + mu[q1]);
                return (mubf - 2.0 / 3.0 * muf) * 0.5 * (gu.ddx(q0) + gu.ddx(q1));
            },
            src);
        p.source = extract_interior(src, g);
        p.bc = {velocity_bc(g.bc[XLo], false), velocity_bc(g.bc[XHi], false),
                velocity_bc(g.bc[YLo], true), velocity_bc(g.bc[YHi], true)};
        std::vector<double> vi = extract_interior(v0, g);
        QuasilinearStats st = solve_quasilinear(p, nullptr, dt, vi, -1.0, true);
        rep.viscous_outer += st.outer_iterations;
        rep.viscous_stages = std::max(rep.viscous_stages, st.max_stages);
        insert_interior(vi, g, vn);
    }

    apply_boundary_scalar(un, g, {-1, -1, 1, 1});
    apply_boundary_scalar(vn, g, {1, 1, -1, -1});

    // momentum write-back (rho unchanged at this stage)
    for (int j = g.jbeg(); j < g.jend(); ++j)
        for (int i = g.ng; i < g.ng + g.nx; ++i) {
            const std::size_t q = g.idx(i, j);
            f.mx[q] = rho[q] * un[q];
            f.my[q] = rho[q] * vn[q];
        }

    // conservative stress-power energy update with time-centered velocities
    std::vector<double> ut(g.size()), vt(g.size());
    for (std::size_t q = 0; q < g.size(); ++q) {
        ut[q] = 0.5 * (u0[q] + un[q]);
        vt[q] = 0.5 * (v0[q] + vn[q]);
    }
    const FaceStressOps stress{g, ut, vt, mu, mub};
    add_flux_divergence(
        g, dt,
        [&](std::size_t q0) {
            double txx, txy;
            stress.xface(q0, txx, txy);
            return txx * 0.5 * (ut[q0] + ut[q0 + 1]) + txy * 0.5 * (vt[q0] + vt[q0 + 1]);
        },
        [&](std::size_t q0) {
            double tyx, tyy;
            stress.yface(q0, tyx, tyy);
            const std::size_t q1 = q0 + g.sx();
            return tyx * 0.5 * (ut[q0] + ut[q1]) + tyy * 0.5 * (vt[q0] + vt[q1]);
        },
        f.rhoE);

    // volume-fraction source from the per-phase average-velocity dissipation
    const CellGrad gu{g, ut}, gv{g, vt};
#pragma omp parallel for schedule(static)
    for (int j = g.jbeg(); j < g.jend(); ++j) {
        for (int i = g.ng; i < g.ng + g.nx; ++i) {
            const std::size_t q = g.idx(i, j);
            const double dudx = gu.ddx(q), dudy = gu.ddy(q);
            const double dvdx = gv.ddx(q), dvdy = gv.ddy(q);
            const double divu = dudx + dvdy;
            const double dd = dudx * dudx + dvdy * dvdy + 0.5 * (dudy + dvdx) * (dudy + dvdx);
            double T1, T2;
            phase_temperatures(prim.p[q], prim.rho1[q], prim.rho2[q], mats, T1, T2);
            const double th1 = 2.0 * sutherland_mu(T1, model.viscosity, mats[0].mu) * dd +
                               (mats[0].mu_b - 2.0 / 3.0 * sutherland_mu(T1, model.viscosity, mats[0].mu)) * divu * divu;
            const double th2 = 2.0 * sutherland_mu(T2, model.viscosity, mats[1].mu) * dd +
                               (mats[1].mu_b - 2.0 / 3.0 * sutherland_mu(T2, model.viscosity, mats[1].mu)) * divu * divu;
            const double a1 = f.alpha1[q], a2 = 1.0 - a1;
            const double A1 = mats[0].gamma * prim.p[q], A2 = mats[1].gamma * prim.p[q];
            const double rate = a1 * a2 *
                                ((mats[0].gamma - 1.0) * th1 - (mats[1].gamma - 1.0) * th2) /
                                (A1 * a2 + A2 * a1);
            f.alpha1[q] = std::clamp(f.alpha1[q] + dt * rate, kAlphaFloor, 1.0 - kAlphaFloor);
        }
    }

    validate_fields(f, mats, "viscous");
}

void relax_temperatures_field(FieldSet& f, const MaterialPair& mats, StepReport& rep) {
    const Grid& g = f.grid;
    double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(min : worst)
    for (int j = g.jbeg(); j < g.jend(); ++j) {
        for (int i = g.ng; i < g.ng + g.nx; ++i) {
            const std::size_t q = g.idx(i, j);
            const CellState before = f.cell(q);
            const CellState after = relax_temperatures(before, mats);
            const double s0 = mixture_entropy(before, mats);
            const double s1 = mixture_entropy(after, mats);
            const double rel = (s1 - s0) / std::max(std::abs(s0), 1e-300);
            worst = std::min(worst, rel);
            f.alpha1[q] = after.alpha1;
        }
    }
    rep.min_entropy_delta = std::min(rep.min_entropy_delta, worst);
    validate_fields(f, mats, "temperature relaxation");
}

void heat_conduction_step(FieldSet& f, const MaterialPair& mats, const TransportModel& model,
                          double dt, StepReport& rep) {
    const Grid& g = f.grid;
    apply_boundary(f);

    std::vector<double> T(g.size()), lam(g.size());
    for (std::size_t q = 0; q < g.size(); ++q) {
        const double cap = f.m1[q] * mats[0].cv + f.m2[q] * mats[1].cv;
        T[q] = internal_energy_density(f, q) / cap;
        lam[q] = f.alpha1[q] * mats[0].lambda + (1.0 - f.alpha1[q]) * mats[1].lambda;
    }

    ParabolicProblem p = make_problem(g);
    std::vector<double> cap_full(g.size());
    for (std::size_t q = 0; q < g.size(); ++q)
        cap_full[q] = f.m1[q] * mats[0].cv + f.m2[q] * mats[1].cv;
    p.capacity = extract_interior(cap_full, g);
    face_conductivities(lam, g, p.kx, p.ky);
    p.bc = scalar_bcs(g);
    if (model.source) {
        p.source.resize(p.cells());
        std::size_t k = 0;
        for (int j = g.jbeg(); j < g.jend(); ++j)
            for (int i = g.ng; i < g.ng + g.nx; ++i)
                p.source[k++] = model.source(g.xc(i), g.yc(j), f.time);
    }

    std::vector<double> Ti = extract_interior(T, g);
    QuasilinearStats st = solve_quasilinear(p, nullptr, dt, Ti, -1.0, true);
    rep.conduction_outer += st.outer_iterations;
    rep.conduction_stages = std::max(rep.conduction_stages, st.max_stages);

    std::size_t k = 0;
    for (int j = g.jbeg(); j < g.jend(); ++j)
        for (int i = g.ng; i < g.ng + g.nx; ++i) {
            const std::size_t q = g.idx(i, j);
            const double cap = f.m1[q] * mats[0].cv + f.m2[q] * mats[1].cv;
            const double rho = f.m1[q] + f.m2[q];
            const double rho_e = cap * Ti[k];
            f.rhoE[q] = rho_e + 0.5 * (f.mx[q] * f.mx[q] + f.my[q] * f.my[q]) / rho;
            const EquilibriumState eq = equilibrium_reconstruct(f.m1[q], f.m2[q], rho_e / rho, mats);
            f.alpha1[q] = eq.alpha1;
            ++k;
        }

    validate_fields(f, mats, "heat conduction");
}

void fick_fluxes(const FieldSet& f, const PrimField& prim, const MaterialPair& mats,
                 const TransportModel& model, DiffusionFluxes& out) {
    const Grid& g = f.grid;
    const int nx = g.nx, ng = g.ng;
    const int nyi = g.jend() - g.jbeg();

    std::vector<double> rho(g.size()), y1(g.size()), T(g.size()), rhoD(g.size()), D(g.size()),
        h1(g.size()), h2(g.size());
    for (std::size_t q = 0; q < g.size(); ++q) {
        rho[q] = f.m1[q] + f.m2[q];
        y1[q] = f.m1[q] / rho[q];
        const double cap = f.m1[q] * mats[0].cv + f.m2[q] * mats[1].cv;
        T[q] = internal_energy_density(f, q) / cap;
        D[q] = diffusivity_D(T[q], prim.p[q], model.diffusivity);
        rhoD[q] = rho[q] * D[q];
        h1[q] = mats[0].gamma * mats[0].cv * T[q];
        h2[q] = mats[1].gamma * mats[1].cv * T[q];
    }

    out.J1x.resize(static_cast<std::size_t>(nx + 1) * nyi);
    out.J2x.resize(out.J1x.size());
    out.Jh1x.resize(out.J1x.size());
    out.Jh2x.resize(out.J1x.size());
#pragma omp parallel for schedule(static)
    for (int jj = 0; jj < nyi; ++jj) {
        const int j = g.jbeg() + jj;
        for (int fi = 0; fi <= nx; ++fi) {
            const std::size_t q0 = g.idx(ng - 1 + fi, j), q1 = q0 + 1;
            const std::size_t fq = static_cast<std::size_t>(jj) * (nx + 1) + fi;
            const double J = -0.5 * (rhoD[q0] + rhoD[q1]) * (y1[q1] - y1[q0]) / g.dx;
            out.J1x[fq] = J;
            out.J2x[fq] = -J;
            out.Jh1x[fq] = 0.5 * (h1[q0] + h1[q1]) * J;
            out.Jh2x[fq] = 0.5 * (h2[q0] + h2[q1]) * (-J);
        }
    }
    if (g.ndim == 2) {
        out.J1y.resize(static_cast<std::size_t>(nx) * (g.ny + 1));
        out.J2y.resize(out.J1y.size());
        out.Jh1y.resize(out.J1y.size());
        out.Jh2y.resize(out.J1y.size());
#pragma omp parallel for schedule(static)
        for (int fj = 0; fj <= g.ny; ++fj)
            for (int ii = 0; ii < nx; ++ii) {
                const std::size_t q0 = g.idx(ng + ii, ng - 1 + fj), q1 = q0 + g.sx();
                const std::size_t fq = static_cast<std::size_t>(fj) * nx + ii;
                const double J = -0.5 * (rhoD[q0] + rhoD[q1]) * (y1[q1] - y1[q0]) / g.dy;
                out.J1y[fq] = J;
                out.J2y[fq] = -J;
                out.Jh1y[fq] = 0.5 * (h1[q0] + h1[q1]) * J;
                out.Jh2y[fq] = 0.5 * (h2[q0] + h2[q1]) * (-J);
            }
    } else {
        out.J1y.clear();
        out.J2y.clear();
        out.Jh1y.clear();
        out.Jh2y.clear();
    }

    // cell-centered diffusion velocities w_k = -D grad(y_k)/y_k, clipped
    out.w1x.assign(g.size(), 0.0);
    out.w1y.assign(g.size(), 0.0);
    out.w2x.assign(g.size(), 0.0);
    out.w2y.assign(g.size(), 0.0);
    const CellGrad gy{g, y1};
    const int ilo = 1, ihi = g.sx() - 1;
    const int jlo = g.ndim == 2 ? 1 : 0, jhi = g.ndim == 2 ? g.sy() - 1 : 1;
#pragma omp parallel for schedule(static)
    for (int j = jlo; j < jhi; ++j) {
        for (int i = ilo; i < ihi; ++i) {
            const std::size_t q = g.idx(i, j);
            const double gx = gy.ddx(q);
            const double gyv = gy.ddy(q);
            const double aw = wood_sound_speed(f.alpha1[q], prim.p[q], rho[q], mats).a_wood;
            const double wmax = 0.1 * aw;
            auto clipped = [&](double wx, double wy, double& ox, double& oy) {
                const double m = std::sqrt(wx * wx + wy * wy);
                const double s = m > wmax ? wmax / m : 1.0;
                ox = s * wx;
                oy = s * wy;
            };
            const double yk1 = std::max(y1[q], kMassFractionFloor);
            const double yk2 = std::max(1.0 - y1[q], kMassFractionFloor);
            clipped(-D[q] * gx / yk1, -D[q] * gyv / yk1, out.w1x[q], out.w1y[q]);
            clipped(D[q] * gx / yk2, D[q] * gyv / yk2, out.w2x[q], out.w2y[q]);
        }
    }
    // pad the outermost ring (stencil cannot reach it) with the nearest values
    for (std::vector<double>* w : {&out.w1x, &out.w1y, &out.w2x, &out.w2y}) {
        for (int j = 0; j < g.sy(); ++j) {
            (*w)[g.idx(0, j)] = (*w)[g.idx(1, j)];
            (*w)[g.idx(g.sx() - 1, j)] = (*w)[g.idx(g.sx() - 2, j)];
        }
        if (g.ndim == 2)
            for (int i = 0; i < g.sx(); ++i) {
                (*w)[g.idx(i, 0)] = (*w)[g.idx(i, 1)];
                (*w)[g.idx(i, g.sy() - 1)] = (*w)[g.idx(i, g.sy() - 2)];
            }
    }
}

void mass_diffusion_step(FieldSet& f, const MaterialPair& mats, const TransportModel& model,
                         double dt, AlphaUpdate mode, StepReport& rep) {
    const Grid& g = f.grid;
    apply_boundary(f);
    PrimField prim;
    derive_primitives(f, mats, prim);

    std::vector<double> rho(g.size()), y1(g.size()), T(g.size()), rhoD(g.size());
    for (std::size_t q = 0; q < g.size(); ++q) {
        rho[q] = f.m1[q] + f.m2[q];
        y1[q] = f.m1[q] / rho[q];
        const double cap = f.m1[q] * mats[0].cv + f.m2[q] * mats[1].cv;
        T[q] = internal_energy_density(f, q) / cap;
        rhoD[q] = rho[q] * diffusivity_D(T[q], prim.p[q], model.diffusivity);
    }

    DiffusionFluxes fl;
    fick_fluxes(f, prim, mats, model, fl);

    // (1) species transport
    ParabolicProblem p = make_problem(g);
    p.capacity = extract_interior(rho, g);
    face_conductivities(rhoD, g, p.kx, p.ky);
    p.bc = scalar_bcs(g);
    std::vector<double> yi = extract_interior(y1, g);
    QuasilinearStats st = solve_quasilinear(p, nullptr, dt, yi, -1.0, true);
    rep.diffusion_outer += st.outer_iterations;
    rep.diffusion_stages = std::max(rep.diffusion_stages, st.max_stages);
    for (double yv : yi)
        if (yv < -kMassFractionFloor || yv > 1.0 + kMassFractionFloor)
            throw SolverError("mass_diffusion_step: mass fraction out of range before flooring");
    {
        std::size_t k = 0;
        for (int j = g.jbeg(); j < g.jend(); ++j)
            for (int i = g.ng; i < g.ng + g.nx; ++i) {
                const std::size_t q = g.idx(i, j);
                // clamp only against the state floor; a mass-fraction-sized
                // floor here would add spurious trace mass in pure cells
                const double yv = std::clamp(yi[k++], kPartialDensityFloorFrac,
                                             1.0 - kPartialDensityFloorFrac);
                f.m1[q] = rho[q] * yv;
                f.m2[q] = rho[q] - f.m1[q];
            }
    }

    // (2) momentum from the diffusion-velocity stresses sum_k alpha_k tau_wk
    std::vector<double> mu1(g.size()), mu2(g.size()), mub1(g.size()), mub2(g.size());
    for (std::size_t q = 0; q < g.size(); ++q) {
        mu1[q] = sutherland_mu(T[q], model.viscosity, mats[0].mu);
        mu2[q] = sutherland_mu(T[q], model.viscosity, mats[1].mu);
        mub1[q] = mats[0].mu_b;
        mub2[q] = mats[1].mu_b;
    }
    const FaceStressOps sw1{g, fl.w1x, fl.w1y, mu1, mub1};
    const FaceStressOps sw2{g, fl.w2x, fl.w2y, mu2, mub2};
    auto alpha_face_x = [&](std::size_t q0) { return 0.5 * (f.alpha1[q0] + f.alpha1[q0 + 1]); };
    auto alpha_face_y = [&](std::size_t q0) { return 0.5 * (f.alpha1[q0] + f.alpha1[q0 + g.sx()]); };

    add_flux_divergence(
        g, dt,
        [&](std::size_t q0) {
            double t1xx, t1xy, t2xx, t2xy;
            sw1.xface(q0, t1xx, t1xy);
            sw2.xface(q0, t2xx, t2xy);
            const double a1 = alpha_face_x(q0);
            return a1 * t1xx + (1.0 - a1) * t2xx;
        },
        [&](std::size_t q0) {
            double t1yx, t1yy, t2yx, t2yy;
            sw1.yface(q0, t1yx, t1yy);
            sw2.yface(q0, t2yx, t2yy);
            const double a1 = alpha_face_y(q0);
            return a1 * t1yx + (1.0 - a1) * t2yx;
        },
        f.mx);
    if (g.ndim == 2)
        add_flux_divergence(
            g, dt,
            [&](std::size_t q0) {
                double t1xx, t1xy, t2xx, t2xy;
                sw1.xface(q0, t1xx, t1xy);
                sw2.xface(q0, t2xx, t2xy);
                const double a1 = alpha_face_x(q0);
                return a1 * t1xy + (1.0 - a1) * t2xy;
            },
            [&](std::size_t q0) {
                double t1yx, t1yy, t2yx, t2yy;
                sw1.yface(q0, t1yx, t1yy);
                sw2.yface(q0, t2yx, t2yy);
                const double a1 = alpha_face_y(q0);
                return a1 * t1yy + (1.0 - a1) * t2yy;
            },
            f.my);

    // (3) flux-form energy update: enthalpy diffusion + stress work terms
    const FaceStressOps sa1{g, prim.u, prim.v, mu1, mub1};
    const FaceStressOps sa2{g, prim.u, prim.v, mu2, mub2};
    const int nx = g.nx;
    add_flux_divergence(
        g, dt,
        [&](std::size_t q0) {
            const std::size_t q1 = q0 + 1;
            // face index within the x-face arrays
            const int j = static_cast<int>(q0 / g.sx());
            const int i = static_cast<int>(q0 % g.sx());
            const std::size_t fq =
                static_cast<std::size_t>(j - g.jbeg()) * (nx + 1) + (i - (g.ng - 1));
            const double a1 = alpha_face_x(q0);
            double t1xx, t1xy, t2xx, t2xy;
            sw1.xface(q0, t1xx, t1xy);
            sw2.xface(q0, t2xx, t2xy);
            const double ub = 0.5 * (prim.u[q0] + prim.u[q1]);
            const double vb = 0.5 * (prim.v[q0] + prim.v[q1]);
            double flux = -(fl.Jh1x[fq] + fl.Jh2x[fq]);
            flux += a1 * (t1xx * ub + t1xy * vb) + (1.0 - a1) * (t2xx * ub + t2xy * vb);
            double a1xx, a1xy, a2xx, a2xy;
            sa1.xface(q0, a1xx, a1xy);
            sa2.xface(q0, a2xx, a2xy);
            const double w1xb = 0.5 * (fl.w1x[q0] + fl.w1x[q1]);
            const double w1yb = 0.5 * (fl.w1y[q0] + fl.w1y[q1]);
            const double w2xb = 0.5 * (fl.w2x[q0] + fl.w2x[q1]);
            const double w2yb = 0.5 * (fl.w2y[q0] + fl.w2y[q1]);
            flux += a1 * (a1xx * w1xb + a1xy * w1yb) + (1.0 - a1) * (a2xx * w2xb + a2xy * w2yb);
            return flux;
        },
        [&](std::size_t q0) {
            const std::size_t q1 = q0 + g.sx();
            const int j = static_cast<int>(q0 / g.sx());
            const int i = static_cast<int>(q0 % g.sx());
            const std::size_t fq = static_cast<std::size_t>(j - (g.ng - 1)) * nx + (i - g.ng);
            const double a1 = alpha_face_y(q0);
            double t1yx, t1yy, t2yx, t2yy;
            sw1.yface(q0, t1yx, t1yy);
            sw2.yface(q0, t2yx, t2yy);
            const double ub = 0.5 * (prim.u[q0] + prim.u[q1]);
            const double vb = 0.5 * (prim.v[q0] + prim.v[q1]);
            double flux = -(fl.Jh1y[fq] + fl.Jh2y[fq]);
            flux += a1 * (t1yx * ub + t1yy * vb) + (1.0 - a1) * (t2yx * ub + t2yy * vb);
            double a1yx, a1yy, a2yx, a2yy;
            sa1.yface(q0, a1yx, a1yy);
            sa2.yface(q0, a2yx, a2yy);
            const double w1xb = 0.5 * (fl.w1x[q0] + fl.w1x[q1]);
            const double w1yb = 0.5 * (fl.w1y[q0] + fl.w1y[q1]);
            const double w2xb = 0.5 * (fl.w2x[q0] + fl.w2x[q1]);
            const double w2yb = 0.5 * (fl.w2y[q0] + fl.w2y[q1]);
            flux += a1 * (a1yx * w1xb + a1yy * w1yb) + (1.0 - a1) * (a2yx * w2xb + a2yy * w2yb);
            return flux;
        },
        f.rhoE);

    // (4) volume fraction
    if (mode == AlphaUpdate::Algebraic) {
        for (int j = g.jbeg(); j < g.jend(); ++j)
            for (int i = g.ng; i < g.ng + g.nx; ++i) {
                const std::size_t q = g.idx(i, j);
                const double rho_e = internal_energy_density(f, q);
                const EquilibriumState eq =
                    equilibrium_reconstruct(f.m1[q], f.m2[q], rho_e / rho[q], mats);
                f.alpha1[q] = eq.alpha1;
            }
    } else {
        // explicit rate equation for alpha1 (ideal-gas form), coefficients at
        // the stage-entry state
        const double g1 = mats[0].gamma - 1.0, g2 = mats[1].gamma - 1.0;
#pragma omp parallel for schedule(static)
        for (int j = g.jbeg(); j < g.jend(); ++j) {
            const int jj = j - g.jbeg();
            for (int i = g.ng; i < g.ng + g.nx; ++i) {
                const std::size_t q = g.idx(i, j);
                const int ii = i - g.ng;
                const std::size_t fw = static_cast<std::size_t>(jj) * (nx + 1) + ii;
                const std::size_t fe = fw + 1;
                double divJ1 = (fl.J1x[fe] - fl.J1x[fw]) / g.dx;
                double divJh1 = (fl.Jh1x[fe] - fl.Jh1x[fw]) / g.dx;
                double divJh2 = (fl.Jh2x[fe] - fl.Jh2x[fw]) / g.dx;
                if (g.ndim == 2) {
                    const std::size_t fs = static_cast<std::size_t>(jj) * nx + ii;
                    const std::size_t fn = fs + nx;
                    divJ1 += (fl.J1y[fn] - fl.J1y[fs]) / g.dy;
                    divJh1 += (fl.Jh1y[fn] - fl.Jh1y[fs]) / g.dy;
                    divJh2 += (fl.Jh2y[fn] - fl.Jh2y[fs]) / g.dy;
                }
                const double C1 = -divJ1, C2 = divJ1;
                // stress-work pieces at the cell
                const CellGrad gux{g, prim.u}, gvy{g, prim.v};
                const double daxx = gux.ddx(q), dayy = gvy.ddy(q);
                const double daxy = 0.5 * (gux.ddy(q) + gvy.ddx(q));
                const double divu = daxx + dayy;
                const CellGrad g1x{g, fl.w1x}, g1y{g, fl.w1y};
                const CellGrad g2x{g, fl.w2x}, g2y{g, fl.w2y};
                auto tw_contract = [&](const CellGrad& wx, const CellGrad& wy, double mu_k,
                                       double mub_k) {
                    const double dwxx = wx.ddx(q), dwyy = wy.ddy(q);
                    const double dwxy = 0.5 * (wx.ddy(q) + wy.ddx(q));
                    const double divw = dwxx + dwyy;
                    return 2.0 * mu_k * (dwxx * daxx + dwyy * dayy + 2.0 * dwxy * daxy) +
                           (mub_k - 2.0 / 3.0 * mu_k) * divw * divu;
                };
                const double a1 = f.alpha1[q], a2 = 1.0 - a1;
                const double tw1 = a1 * tw_contract(g1x, g1y, mu1[q], mub1[q]);
                const double tw2 = a2 * tw_contract(g2x, g2y, mu2[q], mub2[q]);

                // div(alpha_k tau_ak . w_k) via central differences of the
                // cell-centered products
                auto div_avk = [&](const FaceStressOps& sa, const std::vector<double>& wx,
                                   const std::vector<double>& wy, bool first) {
                    auto fx = [&](std::size_t c0) {
                        double txx, txy;
                        sa.xface(c0, txx, txy);
                        const std::size_t c1 = c0 + 1;
                        const double af = first ? 0.5 * (f.alpha1[c0] + f.alpha1[c1])
                                                : 1.0 - 0.5 * (f.alpha1[c0] + f.alpha1[c1]);
                        return af * (txx * 0.5 * (wx[c0] + wx[c1]) + txy * 0.5 * (wy[c0] + wy[c1]));
                    };
                    double east = fx(q), west = fx(q - 1);
                    double acc = (east - west) / g.dx;
                    if (g.ndim == 2) {
                        auto fy = [&](std::size_t c0) {
                            double tyx, tyy;
                            sa.yface(c0, tyx, tyy);
                            const std::size_t c1 = c0 + g.sx();
                            const double af = first ? 0.5 * (f.alpha1[c0] + f.alpha1[c1])
                                                    : 1.0 - 0.5 * (f.alpha1[c0] + f.alpha1[c1]);
                            return af * (tyx * 0.5 * (wx[c0] + wx[c1]) + tyy * 0.5 * (wy[c0] + wy[c1]));
                        };
                        acc += (fy(q) - fy(q - g.sx())) / g.dy;
                    }
                    return acc;
                };
                const double dav1 = div_avk(sa1, fl.w1x, fl.w1y, true);
                const double dav2 = div_avk(sa2, fl.w2x, fl.w2y, false);

                const double Ec1 = -divJh1 + tw1 + dav1;
                const double Ec2 = -divJh2 + tw2 + dav2;
                const double e1 = mats[0].cv * T[q], e2 = mats[1].cv * T[q];
                const double Es = -C1 * e1 - C2 * e2 + Ec1 + Ec2;
                const double A1 = mats[0].gamma * prim.p[q], A2 = mats[1].gamma * prim.p[q];
                const double H1 = C1 * (A1 - g1 * prim.p[q]) / prim.rho1[q];
                const double H2 = C2 * (A2 - g2 * prim.p[q]) / prim.rho2[q];
                const double denom = g1 / a1 + g2 / a2;
                const double ptil = prim.p[q] - (A1 / a1 + A2 / a2) / denom;
                const double Et1 = (Es * g2 / a2 + H2 - H1) / denom;
                const double Et2 = (Es * g1 / a1 + H1 - H2) / denom;
                const double m1 = rho[q] * y1[q], m2 = rho[q] - m1;  // stage-entry masses
                const double rate = (m2 * mats[1].cv * Et1 - m1 * mats[0].cv * Et2) /
                                    ((m1 * mats[0].cv + m2 * mats[1].cv) * ptil);
                f.alpha1[q] = std::clamp(f.alpha1[q] + dt * rate, kAlphaFloor, 1.0 - kAlphaFloor);
            }
        }
    }

    validate_fields(f, mats, "mass diffusion");
}

void split_driver(FieldSet& f, const MaterialPair& mats, const TransportModel& model,
                  const DriverConfig& cfg, double dt, HydroWorkspace& ws, StepReport& rep) {
    const auto t0 = std::chrono::steady_clock::now();
    rep.dt = dt;

    auto guarded = [&](const char* stage, auto&& fn) {
        try {
            fn();
        } catch (const SolverError& e) {
            throw SolverError(std::string(stage) + " stage failed: " + e.what());
        }
    };

    if (cfg.model == FlowModel::FiveEq) {
        guarded("hydrodynamic", [&] {
            rep.clip_events += heun_advance(f, mats, cfg.recon, dt, ws, FlowModel::FiveEq);
        });
        if (cfg.physics.viscosity && model.has_viscosity(mats))
            guarded("viscous", [&] { viscous_step(f, mats, model, dt, rep); });
        if (cfg.physics.relaxation)
            guarded("temperature relaxation", [&] { relax_temperatures_field(f, mats, rep); });
        if (cfg.physics.conduction && model.has_conduction(mats))
            guarded("heat conduction", [&] { heat_conduction_step(f, mats, model, dt, rep); });
        if (cfg.physics.diffusion && model.has_diffusion())
            guarded("mass diffusion", [&] {
                mass_diffusion_step(f, mats, model, dt, cfg.alpha_update, rep);
            });
    } else {
        guarded("hydrodynamic", [&] {
            rep.clip_events += heun_advance(f, mats, cfg.recon, dt, ws, FlowModel::FourEq);
        });
        if (cfg.physics.viscosity && model.has_viscosity(mats))
            guarded("viscous", [&] { four_eq_viscous_step(f, mats, model, dt, rep); });
        if (cfg.physics.conduction && model.has_conduction(mats))
            guarded("heat conduction", [&] { four_eq_conduction_step(f, mats, model, dt, rep); });
        if (cfg.physics.diffusion && model.has_diffusion())
            guarded("mass diffusion", [&] { four_eq_diffusion_step(f, mats, model, dt, rep); });
    }

    rep.clip_events += ws.clip_events;
    rep.eig_fallbacks += ws.eig_fallbacks;
    ws.clip_events = 0;
    ws.eig_fallbacks = 0;
    rep.time = f.time;
    rep.totals = conservation_totals(f);
    rep.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace mcf
