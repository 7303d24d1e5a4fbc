#pragma once

#include <algorithm>
#include <cmath>

#include "mcflow/errors.hpp"

namespace mcf {

enum class Limiter { Minmod, VanLeer };

/// Spatial reconstruction choice for the hydrodynamic stage.
struct ReconstructionMode {
    enum class Kind { Muscl, Weno5 };
    Kind kind = Kind::Weno5;
    Limiter limiter = Limiter::Minmod;

    int required_ghost() const { return kind == Kind::Weno5 ? 3 : 2; }

    static ReconstructionMode weno5() { return {Kind::Weno5, Limiter::Minmod}; }
    static ReconstructionMode muscl(Limiter l = Limiter::Minmod) { return {Kind::Muscl, l}; }
};

inline double minmod(double a, double b) {
    if (a * b <= 0.0) return 0.0;
    return std::abs(a) < std::abs(b) ? a : b;
}

inline double vanleer(double a, double b) {
    if (a * b <= 0.0) return 0.0;
    return 2.0 * a * b / (a + b);
}

inline double limited_slope(double dl, double dr, Limiter lim) {
    return lim == Limiter::Minmod ? minmod(dl, dr) : vanleer(dl, dr);
}

inline constexpr double kWenoEps = 1e-6;

/// WENO5-JS face value at x_{i+1/2} from the five cell values
/// (f_{i-2}, ..., f_{i+2}); mirror the arguments for the right-biased state.
/// The regularization is scaled by the stencil variation so the nonlinear
/// weights are invariant under affine rescaling of the data; reconstructions
/// of two fields that differ by scale and shift coincide to round-off, which
/// keeps phase densities consistent across contacts.
inline double weno5_face(double fm2, double fm1, double f0, double fp1, double fp2) {
    const double p0 = (2.0 * fm2 - 7.0 * fm1 + 11.0 * f0) / 6.0;
    const double p1 = (-fm1 + 5.0 * f0 + 2.0 * fp1) / 6.0;
    const double p2 = (2.0 * f0 + 5.0 * fp1 - fp2) / 6.0;
    double d;
    d = fm2 - 2.0 * fm1 + f0;
    double b0 = 13.0 / 12.0 * d * d;
    d = fm2 - 4.0 * fm1 + 3.0 * f0;
    b0 += 0.25 * d * d;
    d = fm1 - 2.0 * f0 + fp1;
    double b1 = 13.0 / 12.0 * d * d;
    d = fm1 - fp1;
    b1 += 0.25 * d * d;
    d = f0 - 2.0 * fp1 + fp2;
    double b2 = 13.0 / 12.0 * d * d;
    d = 3.0 * f0 - 4.0 * fp1 + fp2;
    b2 += 0.25 * d * d;
    const double d10 = fm1 - fm2, d21 = f0 - fm1, d32 = fp1 - f0, d43 = fp2 - fp1;
    const double scale = d10 * d10 + d21 * d21 + d32 * d32 + d43 * d43;
    const double eps = kWenoEps * scale + 1e-99;
    const double a0 = 0.1 / ((eps + b0) * (eps + b0));
    const double a1 = 0.6 / ((eps + b1) * (eps + b1));
    const double a2 = 0.3 / ((eps + b2) * (eps + b2));
    return (a0 * p0 + a1 * p1 + a2 * p2) / (a0 + a1 + a2);
}

}  // namespace mcf
