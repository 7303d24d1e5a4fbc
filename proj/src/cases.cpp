#include "mcflow/cases.hpp"

#include <cmath>

#include "mcflow/eos.hpp"
#include "mcflow/errors.hpp"
#include "mcflow/norms.hpp"
#include "mcflow/oracles.hpp"

namespace mcf {

Grid CaseSpec::make_grid(int nx_override, int ny_override) const {
    const int gx = nx_override > 0 ? nx_override : nx;
    const int gy = ny_override > 0 ? ny_override : ny;
    const int ng = driver.recon.required_ghost();
    if (ndim == 1) return make_grid_1d(gx, x0, x1, ng, bc[XLo], bc[XHi]);
    return make_grid_2d(gx, gy, x0, x1, y0, y1, ng, bc[XLo], bc[XHi], bc[YLo], bc[YHi]);
}

FieldSet CaseSpec::make_fields(int nx_override, int ny_override) const {
    FieldSet f(make_grid(nx_override, ny_override));
    init(f, mats);
    apply_state_floors(f);
    apply_boundary(f);
    validate_fields(f, mats, "initial condition");
    return f;
}

namespace {

// Fill one cell from a primitive description.
void set_prim(FieldSet& f, std::size_t q, const MaterialPair& mats, double rho1, double rho2,
              double u, double v, double p, double alpha1) {
    PrimitiveState w;
    w.rho1 = rho1;
    w.rho2 = rho2;
    w.u = u;
    w.v = v;
    w.p = p;
    w.alpha1 = alpha1;
    f.set_cell(q, prim_to_cons(w, mats));
}

// Smeared-interface gas pair of the transport/diffusion problems.
MaterialPair thornber_gases() {
    MaterialPair m;
    m[0] = {"gas1", 2.0, 100.0, 0.0, 0.0, 0.0};
    m[1] = {"gas2", 1.4, 5000.0, 0.0, 0.0, 0.0};
    return m;
}

// Cell-averaged erf-profile initial data at uniform pressure; momentum from
// the incompressible-limit flux -D d(rho)/dx when with_velocity is set.
void init_erf_interface(FieldSet& f, const MaterialPair& mats, const ErfProfile& prof, double p,
                        double u_uniform, bool with_velocity) {
    const Grid& g = f.grid;
    for (int i = g.ng; i < g.ng + g.nx; ++i) {
        const double xa = g.x0 + (i - g.ng) * g.dx;
        const double xb = xa + g.dx;
        const auto rho_fn = [&](double x) {
            double r, m1;
            prof.eval(x, 0.0, r, m1);
            return r;
        };
        const auto m1_fn = [&](double x) {
            double r, m1;
            prof.eval(x, 0.0, r, m1);
            return m1;
        };
        const double rho_avg = cell_average_1d(rho_fn, xa, xb, 1)[0];
        const double m1_avg = cell_average_1d(m1_fn, xa, xb, 1)[0];
        const std::size_t q = g.idx(i, 0);
        // rebuild the partial densities from the clamped volume fraction so
        // that rho_k = m_k/alpha_k stays exact at the profile feet
        const double a1 = std::clamp(m1_avg / prof.rho1, kAlphaFloor, 1.0 - kAlphaFloor);
        f.m1[q] = a1 * prof.rho1;
        f.m2[q] = (1.0 - a1) * prof.rho2;
        f.alpha1[q] = a1;
        const double rho = f.m1[q] + f.m2[q];
        (void)rho_avg;
        double mom = rho * u_uniform;
        if (with_velocity) {
            // exact cell average of rho*u = -D d(rho)/dx
            double ra, rb, dum;
            prof.eval(xa, 0.0, ra, dum);
            prof.eval(xb, 0.0, rb, dum);
            mom = -prof.D * (rb - ra) / g.dx;
        }
        f.mx[q] = mom;
        f.my[q] = 0.0;
        const double rho_e = p * (a1 / (mats[0].gamma - 1.0) + (1.0 - a1) / (mats[1].gamma - 1.0));
        f.rhoE[q] = rho_e + 0.5 * mom * mom / rho;
    }
    f.time = 0.0;
}

CaseSpec pure_transport_case() {
    CaseSpec c;
    c.name = "pure_transport";
    c.nx = 200;
    c.bc = {BcType::Periodic, BcType::Periodic, BcType::Periodic, BcType::Periodic};
    c.mats = thornber_gases();
    c.end_time = 5.0 / 100.0;  // five periods at u = 100 m/s
    c.driver.recon = ReconstructionMode::weno5();
    c.init = [](FieldSet& f, const MaterialPair& m) {
        ErfProfile prof{0.01, 0.02, 20.0, 1.0, 0.5};
        init_erf_interface(f, m, prof, 1.0e4, 100.0, false);
    };
    return c;
}

CaseSpec pure_diffusion_case() {
    CaseSpec c;
    c.name = "pure_diffusion";
    c.nx = 128;
    c.bc = {BcType::ZeroGradient, BcType::ZeroGradient, BcType::ZeroGradient,
            BcType::ZeroGradient};
    c.mats = thornber_gases();
    c.transport.diffusivity = {DiffusivityModel::Kind::Constant, 0.01, 298.0, 101325.0};
    c.end_time = 0.1;
    c.driver.recon = ReconstructionMode::muscl(Limiter::Minmod);
    c.init = [](FieldSet& f, const MaterialPair& m) {
        ErfProfile prof{0.01, 0.02, 20.0, 1.0, 0.5};
        init_erf_interface(f, m, prof, 1.0e5, 0.0, true);
    };
    return c;
}

CaseSpec viscous_manufactured_case() {
    CaseSpec c;
    c.name = "viscous_manufactured";
    c.nx = 128;
    c.bc = {BcType::ZeroGradient, BcType::ZeroGradient, BcType::ZeroGradient,
            BcType::ZeroGradient};
    // mixture kinematic viscosity 4/3 mu / rho = 0.01 with rho = 1
    c.mats[0] = {"gas1", 5.0, 40.0, 0.0075, 0.0, 0.0};
    c.mats[1] = {"gas2", 1.4, 400.0, 0.0075, 0.0, 0.0};
    c.end_time = 0.1;  // solution time runs 0.05 -> 0.15
    c.driver.recon = ReconstructionMode::muscl(Limiter::Minmod);
    c.init = [](FieldSet& f, const MaterialPair& m) {
        const Grid& g = f.grid;
        for (int i = g.ng; i < g.ng + g.nx; ++i) {
            const double xa = g.x0 + (i - g.ng) * g.dx;
            const double u = cell_average_1d(
                [&](double x) { return burgers_manufactured(x, 0.05, 0.4, 0.01, 0.1); }, xa,
                xa + g.dx, 1)[0];
            const double a1 = 0.7;
            set_prim(f, g.idx(i, 0), m, 0.5 / a1, 0.5 / (1.0 - a1), u, 0.0, 100.0, a1);
        }
        f.time = 0.0;
    };
    return c;
}

CaseSpec shock_tube_case() {
    CaseSpec c;
    c.name = "shock_tube";
    c.nx = 1200;
    c.bc = {BcType::ZeroGradient, BcType::ZeroGradient, BcType::ZeroGradient,
            BcType::ZeroGradient};
    c.mats[0] = {"heavy", 4.4, 1606.0, 0.0, 0.0, 0.0};
    c.mats[1] = {"light", 1.4, 714.0, 0.0, 0.0, 0.0};
    c.end_time = 2.4e-4;
    c.driver.recon = ReconstructionMode::weno5();
    c.init = [](FieldSet& f, const MaterialPair& m) {
        const Grid& g = f.grid;
        for (int i = g.ng; i < g.ng + g.nx; ++i) {
            const double x = g.xc(i);
            const std::size_t q = g.idx(i, 0);
            if (x < 0.7)
                set_prim(f, q, m, 1000.0, 1000.0, 0.0, 0.0, 1.0e9, 1.0 - kAlphaFloor);
            else
                set_prim(f, q, m, 50.0, 50.0, 0.0, 0.0, 1.0e5, kAlphaFloor);
        }
        f.time = 0.0;
    };
    return c;
}

CaseSpec smeared_interface_case() {
    CaseSpec c;
    c.name = "smeared_interface";
    c.nx = 500;
    c.x0 = 0.0;
    c.x1 = 0.05;
    c.bc = {BcType::ZeroGradient, BcType::ZeroGradient, BcType::ZeroGradient,
            BcType::ZeroGradient};
    // SF6 gamma/cv are standard handbook values, not printed in the problem
    // definition this case reproduces
    c.mats[0] = {"air", 1.4, 717.5, 0.0, 0.0, 0.0};
    c.mats[1] = {"sf6", 1.0935, 565.6, 0.0, 0.0, 0.0};
    c.end_time = 1.5e-5;
    c.driver.recon = ReconstructionMode::weno5();
    c.init = [](FieldSet& f, const MaterialPair& m) {
        const Grid& g = f.grid;
        const double p0 = 101325.0, rho_air = 1.29;
        const double T0 = p0 / (m[0].gas_constant() * rho_air);
        const double rho_sf6 = p0 / (m[1].gas_constant() * T0);
        // Mach 5 post-shock air state
        const double a1 = std::sqrt(1.4 * p0 / rho_air);
        const double M = 5.0;
        const double p_post = p0 * (1.0 + 2.0 * 1.4 / 2.4 * (M * M - 1.0));
        const double rho_post = rho_air * (2.4 * M * M) / (0.4 * M * M + 2.0);
        const double u_post = M * a1 * (1.0 - rho_air / rho_post);
        const double xs = 0.01;
        for (int i = g.ng; i < g.ng + g.nx; ++i) {
            const double x = g.xc(i);
            const std::size_t q = g.idx(i, 0);
            if (x < xs) {
                set_prim(f, q, m, rho_post, rho_sf6, u_post, 0.0, p_post, 1.0 - kAlphaFloor);
            } else {
                const double arg = 836.0 * (x - 0.02);
                const double a_sf6 =
                    std::clamp(0.95 / std::exp(arg * arg), kAlphaFloor, 1.0 - kAlphaFloor);
                set_prim(f, q, m, rho_air, rho_sf6, 0.0, 0.0, p0, 1.0 - a_sf6);
            }
        }
        f.time = 0.0;
    };
    return c;
}

CaseSpec shock_bubble_case() {
    CaseSpec c;
    c.name = "shock_bubble";
    c.ndim = 2;
    c.nx = 445;
    c.ny = 178;
    c.x0 = 0.0;
    c.x1 = 0.2225;
    c.y0 = 0.0;
    c.y1 = 0.0890;
    c.bc = {BcType::ZeroGradient, BcType::ZeroGradient, BcType::Reflective, BcType::Reflective};
    c.mats[0] = {"air", 1.4, 2430.35, 0.0, 0.0, 0.0257};
    c.mats[1] = {"helium", 1.6451, 717.50, 0.0, 0.0, 0.152};
    c.transport.viscosity.kind = ViscosityModel::Kind::Sutherland;
    c.transport.diffusivity = {DiffusivityModel::Kind::Scaled, 73.35e-6, 298.0, 101325.0};
    // 427 us timed from shock-bubble impact; the shock needs 11.95 us to
    // cover the 0.5 cm gap at 418.4 m/s
    c.end_time = 427.0e-6 + 1.195e-5;
    c.snapshot_interval = 2.5e-5;
    c.driver.recon = ReconstructionMode::weno5();
    c.init = [](FieldSet& f, const MaterialPair& m) {
        const Grid& g = f.grid;
        const double xs = 0.1680, xc = 0.1380, yc = 0.0445, r = 0.025;
        for (int j = g.jbeg(); j < g.jend(); ++j) {
            for (int i = g.ng; i < g.ng + g.nx; ++i) {
                const std::size_t q = g.idx(i, j);
                const double x = g.xc(i), y = g.yc(j);
                if (x > xs) {
                    set_prim(f, q, m, 1.66, 1.66, -114.0, 0.0, 159080.98, 1.0 - kAlphaFloor);
                    continue;
                }
                // helium coverage fraction of the cell, 4x4 subsampling
                int inside = 0;
                for (int sj = 0; sj < 4; ++sj)
                    for (int si = 0; si < 4; ++si) {
                        const double xx = x + (si - 1.5) * g.dx / 4.0;
                        const double yy = y + (sj - 1.5) * g.dy / 4.0;
                        if ((xx - xc) * (xx - xc) + (yy - yc) * (yy - yc) < r * r) ++inside;
                    }
                const double a_he = std::clamp(inside / 16.0, kAlphaFloor, 1.0 - kAlphaFloor);
                set_prim(f, q, m, 1.2062, 0.2204, 0.0, 0.0, 101325.0, 1.0 - a_he);
            }
        }
        f.time = 0.0;
    };
    return c;
}

}  // namespace

std::vector<std::string> case_names() {
    return {"pure_transport", "pure_diffusion", "viscous_manufactured",
            "shock_tube",     "smeared_interface", "shock_bubble"};
}

CaseSpec case_registry(const std::string& name) {
    if (name == "pure_transport") return pure_transport_case();
    if (name == "pure_diffusion") return pure_diffusion_case();
    if (name == "viscous_manufactured") return viscous_manufactured_case();
    if (name == "shock_tube") return shock_tube_case();
    if (name == "smeared_interface") return smeared_interface_case();
    if (name == "shock_bubble") return shock_bubble_case();
    std::string msg = "unknown case '" + name + "'; available:";
    for (const auto& n : case_names()) msg += " " + n;
    throw ConfigError(msg);
}

}  // namespace mcf
