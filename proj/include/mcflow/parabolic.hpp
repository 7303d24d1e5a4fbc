#pragma once

#include <array>
#include <functional>
#include <vector>

#include "mcflow/errors.hpp"

namespace mcf {

enum class ParabolicBc { Periodic, ZeroFlux, Antisymmetric };

/// Quasi-linear parabolic problem c(x) dv/dt = div(k grad v) + f on the
/// interior cells of a uniform mesh (no ghosts; boundaries handled by the
/// operator). Face conductivities: kx is (nx+1) x ny, ky is nx x (ny+1),
/// x-fastest.
struct ParabolicProblem {
    int ndim = 1;
    int nx = 0, ny = 1;
    double dx = 0.0, dy = 1.0;
    std::vector<double> capacity;         // size nx*ny, > 0
    std::vector<double> kx, ky;           // face conductivities, >= 0
    std::vector<double> source;           // optional, size nx*ny
    std::array<ParabolicBc, 4> bc{ParabolicBc::Periodic, ParabolicBc::Periodic,
                                  ParabolicBc::Periodic, ParabolicBc::Periodic};

    std::size_t cells() const { return static_cast<std::size_t>(nx) * ny; }
    std::size_t id(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
};

/// Chebyshev stage schedule for one super-step.
///
/// Stage steps are reciprocals of shifted Chebyshev roots spanning
/// [nu*lambda_max, lambda_max] with damping nu = 0.1, applied in a
/// large/small pairing order for round-off stability. With this damping the
/// one-advance operator stays entrywise non-negative on the discrete
/// diffusion operators used here, which is what preserves the discrete
/// maximum principle. The documented scheme constant is c_stab = 0.12: a
/// stable advance of dt requires dt <= c_stab * P^2 * dt_exp in the
/// P^2-scaling regime (for very large P the fixed damping saturates the
/// usable step to ~1.58 * P * dt_exp and the schedule picks P accordingly).
struct LimSchedule {
    int stages = 1;
    double dt_exp = 0.0;
    std::vector<double> tau;  // stage steps, sum = dt
};

inline constexpr double kLimDamping = 0.1;
inline constexpr double kLimCStab = 0.12;
inline constexpr int kLimStageCap = 512;

/// Explicit stability/monotonicity limit: min over cells of
/// c dx^2 / (2 d max(face k)), d = ndim. All-zero conductivity gives +inf.
double explicit_limit(const ParabolicProblem& p);

/// Build the stage schedule for one advance of dt. Throws SolverError when
/// more than kLimStageCap stages would be needed (callers sub-cycle instead).
LimSchedule lim_schedule(const ParabolicProblem& p, double dt);

/// One explicit Chebyshev super-step of dt (frozen coefficients).
/// Preserves the discrete maximum principle for f = 0. Returns stages used.
int chebyshev_advance(const ParabolicProblem& p, double dt, std::vector<double>& v);

/// Backward-Euler reference advance: direct (cyclic) tridiagonal solve in 1D,
/// alternating line relaxation to relative residual 1e-12 in 2D. Same
/// contract as chebyshev_advance at first order in dt; used as an oracle.
void implicit_reference_advance(const ParabolicProblem& p, double dt, std::vector<double>& v);

struct QuasilinearStats {
    int outer_iterations = 0;
    int total_stages = 0;
    int max_stages = 0;     // largest P over all inner advances
    double last_change = 0.0;
};

/// Frozen-coefficient outer iteration for k = k(v): rebuild_k(v) refreshes
/// p.kx/p.ky from the current iterate, each outer pass re-advances from the
/// initial state, and iteration stops when the L-inf change drops below chi
/// (default 1e-10 * max|v0|). Set constant_coefficients when k does not
/// depend on v to skip the convergence check. dt is sub-cycled internally
/// whenever one advance would exceed the stage cap.
QuasilinearStats solve_quasilinear(ParabolicProblem& p,
                                   const std::function<void(const std::vector<double>&)>& rebuild_k,
                                   double dt, std::vector<double>& v, double chi = -1.0,
                                   bool constant_coefficients = false, int max_outer = 50);

}  // namespace mcf
