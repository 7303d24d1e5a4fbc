#include "mcflow/oracles.hpp"

#include <cmath>
#include <string>

#include "mcflow/errors.hpp"

namespace mcf {

void ErfProfile::eval(double x, double t, double& rho, double& rho_y1) const {
    const double w = std::sqrt(4.0 * D * t + h0 * h0);
    const double z = (x - x0) / w;
    rho = 0.5 * (rho1 + rho2) - 0.5 * (rho1 - rho2) * std::erf(z);
    rho_y1 = 0.5 * rho1 * (1.0 - std::erf(z));
}

double ErfProfile::velocity(double x, double t) const {
    const double w = std::sqrt(4.0 * D * t + h0 * h0);
    const double z = (x - x0) / w;
    const double drho = -0.5 * (rho1 - rho2) * 2.0 / std::sqrt(M_PI) * std::exp(-z * z) / w;
    double rho, my1;
    eval(x, t, rho, my1);
    return -D / rho * drho;
}

double burgers_manufactured(double x, double t, double a, double nu, double x0) {
    const double xi = x - a * t - x0;
    const double arg = (1.0 - a) * xi / nu;
    if (arg > 700.0) return 2.0 * a - 1.0;
    if (arg < -700.0) return 1.0;
    const double e = std::exp(arg);
    return (1.0 + (2.0 * a - 1.0) * e) / (1.0 + e);
}

namespace {

// f_K(p) and its derivative for one side of the Riemann problem.
void side_function(const RiemannSide& s, double p, double& f, double& df) {
    const double g = s.gamma;
    const double a = std::sqrt(g * s.p / s.rho);
    if (p > s.p) {  // shock
        const double A = 2.0 / ((g + 1.0) * s.rho);
        const double B = (g - 1.0) / (g + 1.0) * s.p;
        const double root = std::sqrt(A / (p + B));
        f = (p - s.p) * root;
        df = root * (1.0 - 0.5 * (p - s.p) / (p + B));
    } else {  // rarefaction
        const double pr = p / s.p;
        f = 2.0 * a / (g - 1.0) * (std::pow(pr, (g - 1.0) / (2.0 * g)) - 1.0);
        df = 1.0 / (s.rho * a) * std::pow(pr, -(g + 1.0) / (2.0 * g));
    }
}

}  // namespace

void exact_riemann_star(const RiemannSide& l, const RiemannSide& r, double& p_star,
                        double& u_star) {
    const double al = std::sqrt(l.gamma * l.p / l.rho);
    const double ar = std::sqrt(r.gamma * r.p / r.rho);
    const double du = r.u - l.u;
    if (2.0 * al / (l.gamma - 1.0) + 2.0 * ar / (r.gamma - 1.0) <= du)
        throw SolverError("exact_riemann: vacuum formation");

    double p = 0.5 * (l.p + r.p);
    p = std::max(p, 1e-12 * std::max(l.p, r.p));
    for (int it = 0; it < 100; ++it) {
        double fl, dfl, fr, dfr;
        side_function(l, p, fl, dfl);
        side_function(r, p, fr, dfr);
        const double f = fl + fr + du;
        const double dp = f / (dfl + dfr);
        double pn = p - dp;
        if (pn <= 0.0) pn = 0.5 * p;
        const double change = std::abs(pn - p) / (0.5 * (pn + p));
        p = pn;
        if (change < 1e-12) break;
    }
    p_star = p;
    double fl, dfl, fr, dfr;
    side_function(l, p, fl, dfl);
    side_function(r, p, fr, dfr);
    u_star = 0.5 * (l.u + r.u) + 0.5 * (fr - fl);
}

RiemannSample exact_riemann_sample(const RiemannSide& l, const RiemannSide& r, double xi) {
    double ps, us;
    exact_riemann_star(l, r, ps, us);
    RiemannSample out;
    if (xi <= us) {
        // left of the contact
        out.left_gas = true;
        const double g = l.gamma;
        const double a = std::sqrt(g * l.p / l.rho);
        if (ps > l.p) {  // left shock
            const double sl = l.u - a * std::sqrt((g + 1.0) / (2.0 * g) * ps / l.p +
                                                   (g - 1.0) / (2.0 * g));
            if (xi <= sl) {
                out.rho = l.rho; out.u = l.u; out.p = l.p;
            } else {
                const double pr = ps / l.p;
                out.rho = l.rho * (pr + (g - 1.0) / (g + 1.0)) /
                          ((g - 1.0) / (g + 1.0) * pr + 1.0);
                out.u = us; out.p = ps;
            }
        } else {  // left rarefaction
            const double rho_s = l.rho * std::pow(ps / l.p, 1.0 / g);
            const double a_s = std::sqrt(g * ps / rho_s);
            const double head = l.u - a, tail = us - a_s;
            if (xi <= head) {
                out.rho = l.rho; out.u = l.u; out.p = l.p;
            } else if (xi >= tail) {
                out.rho = rho_s; out.u = us; out.p = ps;
            } else {
                const double c = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * a) * (l.u - xi);
                out.rho = l.rho * std::pow(c, 2.0 / (g - 1.0));
                out.u = 2.0 / (g + 1.0) * (a + (g - 1.0) / 2.0 * l.u + xi);
                out.p = l.p * std::pow(c, 2.0 * g / (g - 1.0));
            }
        }
    } else {
        out.left_gas = false;
        const double g = r.gamma;
        const double a = std::sqrt(g * r.p / r.rho);
        if (ps > r.p) {  // right shock
            const double sr = r.u + a * std::sqrt((g + 1.0) / (2.0 * g) * ps / r.p +
                                                   (g - 1.0) / (2.0 * g));
            if (xi >= sr) {
                out.rho = r.rho; out.u = r.u; out.p = r.p;
            } else {
                const double pr = ps / r.p;
                out.rho = r.rho * (pr + (g - 1.0) / (g + 1.0)) /
                          ((g - 1.0) / (g + 1.0) * pr + 1.0);
                out.u = us; out.p = ps;
            }
        } else {  // right rarefaction
            const double rho_s = r.rho * std::pow(ps / r.p, 1.0 / g);
            const double a_s = std::sqrt(g * ps / rho_s);
            const double head = r.u + a, tail = us + a_s;
            if (xi >= head) {
                out.rho = r.rho; out.u = r.u; out.p = r.p;
            } else if (xi <= tail) {
                out.rho = rho_s; out.u = us; out.p = ps;
            } else {
                const double c = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * a) * (r.u - xi);
                out.rho = r.rho * std::pow(c, 2.0 / (g - 1.0));
                out.u = 2.0 / (g + 1.0) * (-a + (g - 1.0) / 2.0 * r.u + xi);
                out.p = r.p * std::pow(c, 2.0 * g / (g - 1.0));
            }
        }
    }
    return out;
}

std::vector<RiemannSample> exact_riemann_profile(const RiemannSide& l, const RiemannSide& r,
                                                 const std::vector<double>& x, double x_interface,
                                                 double t) {
    std::vector<RiemannSample> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = exact_riemann_sample(l, r, (x[i] - x_interface) / t);
    return out;
}

}  // namespace mcf
