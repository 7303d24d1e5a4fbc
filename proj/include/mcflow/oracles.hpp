#pragma once

#include <vector>

#include "mcflow/material.hpp"

namespace mcf {

/// Self-similar binary-diffusion profile: z = (x-x0)/sqrt(4 D t + h0^2),
/// rho = (rho1+rho2)/2 - (rho1-rho2)/2 erf(z), rho*Y1 = rho1/2 (1 - erf(z)).
struct ErfProfile {
    double D = 0.0;
    double h0 = 0.0;
    double rho1 = 0.0, rho2 = 0.0;
    double x0 = 0.0;

    void eval(double x, double t, double& rho, double& rho_y1) const;
    /// Velocity consistent with the incompressible-limit constraint
    /// d/dx (u + (D/rho) d rho/dx) = 0 with u -> 0 in the far field.
    double velocity(double x, double t) const;
};

/// Traveling-wave solution of the viscous Burgers equation
/// u_t + (u^2/2)_x = nu u_xx:
/// u = (1 + (2a-1) exp((1-a) xi/nu)) / (1 + exp((1-a) xi/nu)), xi = x-at-x0.
double burgers_manufactured(double x, double t, double a, double nu, double x0);

/// Exact two-gamma Riemann solution sampled at x/t.
struct RiemannSide {
    double rho = 0.0, u = 0.0, p = 0.0, gamma = 1.4;
};
struct RiemannSample {
    double rho = 0.0, u = 0.0, p = 0.0;
    bool left_gas = true;  // which side of the contact the sample lies on
};

/// Star-state pressure/velocity via Newton iteration on the standard pressure
/// function (relative tolerance 1e-12). Throws on vacuum formation.
void exact_riemann_star(const RiemannSide& l, const RiemannSide& r, double& p_star, double& u_star);

/// Sample the solution at similarity coordinate xi = x/t.
RiemannSample exact_riemann_sample(const RiemannSide& l, const RiemannSide& r, double xi);

/// Convenience: solution profile at time t over the given cell centers with
/// the initial discontinuity at x_interface.
std::vector<RiemannSample> exact_riemann_profile(const RiemannSide& l, const RiemannSide& r,
                                                 const std::vector<double>& x, double x_interface,
                                                 double t);

}  // namespace mcf
