#pragma once

#include <functional>

#include "mcflow/material.hpp"

namespace mcf {

/// Temperature-dependent shear viscosity law.
struct ViscosityModel {
    enum class Kind { Constant, Sutherland };
    Kind kind = Kind::Constant;
    // Sutherland parameters; defaults are the standard air fit.
    double mu_ref = 1.716e-5;  // Pa s
    double T_ref = 273.15;     // K
    double S = 110.4;          // K
};

/// Binary diffusivity law.
struct DiffusivityModel {
    enum class Kind { Constant, Scaled };  // Scaled: D = D0 (T^1.5/p)/(T0^1.5/p0)
    Kind kind = Kind::Constant;
    double D0 = 0.0;       // m^2/s
    double T0 = 298.0;     // K
    double p0 = 101325.0;  // Pa
};

/// Volumetric heat source I(x, y, t) >= 0, W/m^3.
using HeatSource = std::function<double(double x, double y, double t)>;

/// Transport closure for the dissipative stages.
struct TransportModel {
    ViscosityModel viscosity;
    DiffusivityModel diffusivity;
    HeatSource source;  // empty = no external heating

    bool has_viscosity(const MaterialPair& mats) const {
        return viscosity.kind == ViscosityModel::Kind::Sutherland || mats[0].mu > 0.0 ||
               mats[1].mu > 0.0 || mats[0].mu_b > 0.0 || mats[1].mu_b > 0.0;
    }
    bool has_conduction(const MaterialPair& mats) const {
        return mats[0].lambda > 0.0 || mats[1].lambda > 0.0 || static_cast<bool>(source);
    }
    bool has_diffusion() const { return diffusivity.D0 > 0.0; }
};

/// Sutherland's law mu(T) = mu_ref (T/T_ref)^{3/2} (T_ref+S)/(T+S); the
/// Constant variant returns the material value unchanged.
double sutherland_mu(double T, const ViscosityModel& model, double mu_constant);

/// D(T, p) per the model; the Constant variant returns D0.
double diffusivity_D(double T, double p, const DiffusivityModel& model);

}  // namespace mcf
