#include "mcflow/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace mcf {

namespace {

// div(k grad v) + f, scaled by 1/c, at cell (i,j).
struct Operator {
    const ParabolicProblem& p;

    double rate(const std::vector<double>& v, int i, int j) const {
        const int nx = p.nx, ny = p.ny;
        const std::size_t q = p.id(i, j);
        const double idx2 = 1.0 / (p.dx * p.dx);
        double acc = 0.0;

        const double kw = p.kx[static_cast<std::size_t>(j) * (nx + 1) + i];
        const double ke = p.kx[static_cast<std::size_t>(j) * (nx + 1) + i + 1];
        // west face
        if (i > 0) acc += kw * (v[p.id(i - 1, j)] - v[q]) * idx2;
        else if (p.bc[0] == ParabolicBc::Periodic) acc += kw * (v[p.id(nx - 1, j)] - v[q]) * idx2;
        else if (p.bc[0] == ParabolicBc::Antisymmetric) acc += kw * (-2.0 * v[q]) * idx2;
        // east face
        if (i < nx - 1) acc += ke * (v[p.id(i + 1, j)] - v[q]) * idx2;
        else if (p.bc[1] == ParabolicBc::Periodic) acc += ke * (v[p.id(0, j)] - v[q]) * idx2;
        else if (p.bc[1] == ParabolicBc::Antisymmetric) acc += ke * (-2.0 * v[q]) * idx2;

        if (p.ndim == 2) {
            const double idy2 = 1.0 / (p.dy * p.dy);
            const double ks = p.ky[static_cast<std::size_t>(j) * nx + i];
            const double kn = p.ky[static_cast<std::size_t>(j + 1) * nx + i];
            if (j > 0) acc += ks * (v[p.id(i, j - 1)] - v[q]) * idy2;
            else if (p.bc[2] == ParabolicBc::Periodic) acc += ks * (v[p.id(i, ny - 1)] - v[q]) * idy2;
            else if (p.bc[2] == ParabolicBc::Antisymmetric) acc += ks * (-2.0 * v[q]) * idy2;
            if (j < ny - 1) acc += kn * (v[p.id(i, j + 1)] - v[q]) * idy2;
            else if (p.bc[3] == ParabolicBc::Periodic) acc += kn * (v[p.id(i, 0)] - v[q]) * idy2;
            else if (p.bc[3] == ParabolicBc::Antisymmetric) acc += kn * (-2.0 * v[q]) * idy2;
        }
        if (!p.source.empty()) acc += p.source[q];
        return acc / p.capacity[q];
    }
};

void euler_stage(const ParabolicProblem& p, double tau, const std::vector<double>& v,
                 std::vector<double>& out) {
    const Operator op{p};
#pragma omp parallel for schedule(static)
    for (int j = 0; j < p.ny; ++j)
        for (int i = 0; i < p.nx; ++i) {
            const std::size_t q = p.id(i, j);
            out[q] = v[q] + tau * op.rate(v, i, j);
        }
}

double sts_total(int P, double nu, double dt_exp) {
    double s = 0.0;
    for (int j = 1; j <= P; ++j) {
        const double th = (2.0 * j - 1.0) * M_PI / (2.0 * P);
        s += dt_exp / ((nu - 1.0) * std::cos(th) + 1.0 + nu);
    }
    return s;
}

}  // namespace

double explicit_limit(const ParabolicProblem& p) {
    const int d = p.ndim;
    double lim = std::numeric_limits<double>::infinity();
    for (int j = 0; j < p.ny; ++j) {
        for (int i = 0; i < p.nx; ++i) {
            double kmax = std::max(p.kx[static_cast<std::size_t>(j) * (p.nx + 1) + i],
                                   p.kx[static_cast<std::size_t>(j) * (p.nx + 1) + i + 1]);
            double h2 = p.dx * p.dx;
            if (p.ndim == 2) {
                kmax = std::max({kmax, p.ky[static_cast<std::size_t>(j) * p.nx + i],
                                 p.ky[static_cast<std::size_t>(j + 1) * p.nx + i]});
                h2 = std::min(h2, p.dy * p.dy);
            }
            if (kmax > 0.0) lim = std::min(lim, p.capacity[p.id(i, j)] * h2 / (2.0 * d * kmax));
        }
    }
    return lim;
}

LimSchedule lim_schedule(const ParabolicProblem& p, double dt) {
    LimSchedule s;
    s.dt_exp = explicit_limit(p);
    if (!std::isfinite(s.dt_exp) || dt <= s.dt_exp) {
        s.stages = 1;
        s.tau.assign(1, dt);
        return s;
    }
    const double nu = kLimDamping;
    int P = std::max(2, static_cast<int>(std::ceil(std::sqrt(dt / (kLimCStab * s.dt_exp)))));
    while (P <= kLimStageCap && sts_total(P, nu, s.dt_exp) < dt) ++P;
    if (P > kLimStageCap)
        throw SolverError("lim_schedule: " + std::to_string(P) +
                          " stages exceed the cap; subdivide dt");
    std::vector<double> tau(P);
    for (int j = 1; j <= P; ++j) {
        const double th = (2.0 * j - 1.0) * M_PI / (2.0 * P);
        tau[j - 1] = s.dt_exp / ((nu - 1.0) * std::cos(th) + 1.0 + nu);
    }
    const double total = sts_total(P, nu, s.dt_exp);
    for (double& t : tau) t *= dt / total;
    // pairing order: largest, smallest, second largest, ... (round-off control)
    std::sort(tau.begin(), tau.end());
    s.tau.resize(P);
    int lo = 0, hi = P - 1;
    for (int k = 0; k < P; ++k) s.tau[k] = (k % 2 == 0) ? tau[hi--] : tau[lo++];
    s.stages = P;
    return s;
}

int chebyshev_advance(const ParabolicProblem& p, double dt, std::vector<double>& v) {
    const LimSchedule s = lim_schedule(p, dt);
    std::vector<double> tmp(v.size());
    std::vector<double>* cur = &v;
    std::vector<double>* nxt = &tmp;
    for (int k = 0; k < s.stages; ++k) {
        euler_stage(p, s.tau[k], *cur, *nxt);
        std::swap(cur, nxt);
    }
    if (cur != &v) v = *cur;
    return s.stages;
}

void implicit_reference_advance(const ParabolicProblem& p, double dt, std::vector<double>& v) {
    const std::size_t n = p.cells();
    // assemble rhs = (c/dt) v + f
    std::vector<double> rhs(n);
    for (std::size_t q = 0; q < n; ++q)
        rhs[q] = p.capacity[q] / dt * v[q] + (p.source.empty() ? 0.0 : p.source[q]);

    auto xcoef = [&](int i, int j, double& aw, double& ae, double& diag) {
        const double idx2 = 1.0 / (p.dx * p.dx);
        const double kw = p.kx[static_cast<std::size_t>(j) * (p.nx + 1) + i];
        const double ke = p.kx[static_cast<std::size_t>(j) * (p.nx + 1) + i + 1];
        aw = ae = 0.0;
        diag = p.capacity[p.id(i, j)] / dt;
        if (i > 0 || p.bc[0] == ParabolicBc::Periodic) { aw = -kw * idx2; diag += kw * idx2; }
        else if (p.bc[0] == ParabolicBc::Antisymmetric) diag += 2.0 * kw * idx2;
        if (i < p.nx - 1 || p.bc[1] == ParabolicBc::Periodic) { ae = -ke * idx2; diag += ke * idx2; }
        else if (p.bc[1] == ParabolicBc::Antisymmetric) diag += 2.0 * ke * idx2;
    };

    if (p.ndim == 1) {
        const int nx = p.nx;
        std::vector<double> a(nx), b(nx), c(nx), r(rhs);
        for (int i = 0; i < nx; ++i) xcoef(i, 0, a[i], c[i], b[i]);
        const bool cyc = p.bc[0] == ParabolicBc::Periodic;
        if (!cyc) {
            // Thomas
            for (int i = 1; i < nx; ++i) {
                const double m = a[i] / b[i - 1];
                b[i] -= m * c[i - 1];
                r[i] -= m * r[i - 1];
            }
            v[nx - 1] = r[nx - 1] / b[nx - 1];
            for (int i = nx - 2; i >= 0; --i) v[i] = (r[i] - c[i] * v[i + 1]) / b[i];
        } else {
            // Sherman-Morrison on the cyclic system
            const double corner_a = a[0], corner_c = c[nx - 1];
            const double gam = -b[0];
            std::vector<double> b2(b), u(nx, 0.0);
            b2[0] = b[0] - gam;
            b2[nx - 1] = b[nx - 1] - corner_a * corner_c / gam;
            u[0] = gam;
            u[nx - 1] = corner_c;
            a[0] = 0.0;
            c[nx - 1] = 0.0;
            auto thomas = [&](std::vector<double> bb, std::vector<double> rr) {
                for (int i = 1; i < nx; ++i) {
                    const double m = a[i] / bb[i - 1];
                    bb[i] -= m * c[i - 1];
                    rr[i] -= m * rr[i - 1];
                }
                std::vector<double> x(nx);
                x[nx - 1] = rr[nx - 1] / bb[nx - 1];
                for (int i = nx - 2; i >= 0; --i) x[i] = (rr[i] - c[i] * x[i + 1]) / bb[i];
                return x;
            };
            std::vector<double> x = thomas(b2, r);
            std::vector<double> z = thomas(b2, u);
            const double fact = (x[0] + corner_a * x[nx - 1] / gam) /
                                (1.0 + z[0] + corner_a * z[nx - 1] / gam);
            for (int i = 0; i < nx; ++i) v[i] = x[i] - fact * z[i];
        }
        return;
    }

    // 2D: alternating-line Gauss-Seidel with tridiagonal x-line solves
    const int nx = p.nx, ny = p.ny;
    const Operator op{p};
    double scale = 0.0;
    for (std::size_t q = 0; q < n; ++q) scale = std::max(scale, std::abs(rhs[q]));
    if (scale == 0.0) scale = 1.0;
    const int max_iter = 20000;
    std::vector<double> a(nx), b(nx), c(nx), r(nx);
    for (int it = 0; it < max_iter; ++it) {
        for (int j = 0; j < ny; ++j) {
            const double idy2 = 1.0 / (p.dy * p.dy);
            for (int i = 0; i < nx; ++i) {
                double diag;
                xcoef(i, j, a[i], c[i], diag);
                const double ks = p.ky[static_cast<std::size_t>(j) * nx + i];
                const double kn = p.ky[static_cast<std::size_t>(j + 1) * nx + i];
                double off = 0.0;
                if (j > 0) { diag += ks * idy2; off += ks * idy2 * v[p.id(i, j - 1)]; }
                else if (p.bc[2] == ParabolicBc::Periodic) { diag += ks * idy2; off += ks * idy2 * v[p.id(i, ny - 1)]; }
                else if (p.bc[2] == ParabolicBc::Antisymmetric) diag += 2.0 * ks * idy2;
                if (j < ny - 1) { diag += kn * idy2; off += kn * idy2 * v[p.id(i, j + 1)]; }
                else if (p.bc[3] == ParabolicBc::Periodic) { diag += kn * idy2; off += kn * idy2 * v[p.id(i, 0)]; }
                else if (p.bc[3] == ParabolicBc::Antisymmetric) diag += 2.0 * kn * idy2;
                b[i] = diag;
                r[i] = rhs[p.id(i, j)] + off;
            }
            // x-line tridiagonal (cyclic when periodic in x)
            if (p.bc[0] == ParabolicBc::Periodic) {
                const double corner_a = a[0], corner_c = c[nx - 1];
                const double gam = -b[0];
                std::vector<double> bb(b), u(nx, 0.0), aa(a), cc(c);
                bb[0] -= gam;
                bb[nx - 1] -= corner_a * corner_c / gam;
                u[0] = gam;
                u[nx - 1] = corner_c;
                aa[0] = 0.0;
                cc[nx - 1] = 0.0;
                auto thomas = [&](std::vector<double> b3, std::vector<double> r3) {
                    for (int i = 1; i < nx; ++i) {
                        const double m = aa[i] / b3[i - 1];
                        b3[i] -= m * cc[i - 1];
                        r3[i] -= m * r3[i - 1];
                    }
                    std::vector<double> x(nx);
                    x[nx - 1] = r3[nx - 1] / b3[nx - 1];
                    for (int i = nx - 2; i >= 0; --i) x[i] = (r3[i] - cc[i] * x[i + 1]) / b3[i];
                    return x;
                };
                std::vector<double> x = thomas(bb, r);
                std::vector<double> z = thomas(bb, u);
                const double fact = (x[0] + corner_a * x[nx - 1] / gam) /
                                    (1.0 + z[0] + corner_a * z[nx - 1] / gam);
                for (int i = 0; i < nx; ++i) v[p.id(i, j)] = x[i] - fact * z[i];
            } else {
                for (int i = 1; i < nx; ++i) {
                    const double m = a[i] / b[i - 1];
                    b[i] -= m * c[i - 1];
                    r[i] -= m * r[i - 1];
                }
                v[p.id(nx - 1, j)] = r[nx - 1] / b[nx - 1];
                for (int i = nx - 2; i >= 0; --i) v[p.id(i, j)] = (r[i] - c[i] * v[p.id(i + 1, j)]) / b[i];
            }
        }
        // residual check: (c/dt) v - L v - rhs
        double res = 0.0;
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                const std::size_t q = p.id(i, j);
                const double lv = op.rate(v, i, j) * p.capacity[q] -
                                  (p.source.empty() ? 0.0 : p.source[q]);
                res = std::max(res, std::abs(p.capacity[q] / dt * v[q] - lv - rhs[q]));
            }
        if (res <= 1e-12 * scale) return;
    }
    throw SolverError("implicit_reference_advance: 2D line relaxation did not converge");
}

QuasilinearStats solve_quasilinear(ParabolicProblem& p,
                                   const std::function<void(const std::vector<double>&)>& rebuild_k,
                                   double dt, std::vector<double>& v, double chi,
                                   bool constant_coefficients, int max_outer) {
    QuasilinearStats st;
    const std::vector<double> v0 = v;
    if (chi < 0.0) {
        double vmax = 0.0;
        for (double x : v0) vmax = std::max(vmax, std::abs(x));
        chi = 1e-10 * vmax;
    }

    auto advance_subcycled = [&](std::vector<double>& w) {
        // split dt when one super-step would blow the stage cap; probe the
        // schedule before touching the field
        int parts = 1;
        for (;;) {
            try {
                lim_schedule(p, dt / parts);
                break;
            } catch (const SolverError&) {
                if (parts > 65536) throw;
                parts *= 2;
            }
        }
        for (int s = 0; s < parts; ++s) {
            const int stages = chebyshev_advance(p, dt / parts, w);
            st.total_stages += stages;
            st.max_stages = std::max(st.max_stages, stages);
        }
    };

    if (rebuild_k) rebuild_k(v0);
    advance_subcycled(v);
    st.outer_iterations = 1;
    if (constant_coefficients || !rebuild_k) return st;

    for (int it = 1; it < max_outer; ++it) {
        std::vector<double> prev = v;
        rebuild_k(prev);
        v = v0;
        advance_subcycled(v);
        ++st.outer_iterations;
        double change = 0.0;
        for (std::size_t q = 0; q < v.size(); ++q) change = std::max(change, std::abs(v[q] - prev[q]));
        st.last_change = change;
        if (change < chi) return st;
    }
    throw SolverError("solve_quasilinear: outer iteration did not converge (last change " +
                      std::to_string(st.last_change) + ")");
}

}  // namespace mcf
