#pragma once

#include <array>
#include <string>

#include "mcflow/errors.hpp"

namespace mcf {

/// Ideal-gas component with constant transport coefficients.
/// gamma and cv define the EOS: p = (gamma-1) rho cv T, e = cv T.
struct Material {
    std::string name;
    double gamma = 1.4;   // adiabatic exponent, > 1
    double cv = 718.0;    // specific heat at constant volume, J/(kg K)
    double mu = 0.0;      // shear viscosity, Pa s
    double mu_b = 0.0;    // bulk viscosity, Pa s
    double lambda = 0.0;  // heat conductivity, W/(m K)

    double gas_constant() const { return (gamma - 1.0) * cv; }

    void validate() const {
        if (!(gamma > 1.0)) throw ConfigError("material '" + name + "': gamma must be > 1");
        if (!(cv > 0.0)) throw ConfigError("material '" + name + "': cv must be > 0");
        if (mu < 0.0 || mu_b < 0.0 || lambda < 0.0)
            throw ConfigError("material '" + name + "': transport coefficients must be >= 0");
    }
};

/// The two components of the mixture. Index 0 is phase 1.
using MaterialPair = std::array<Material, 2>;

}  // namespace mcf
