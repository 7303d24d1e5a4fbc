#include "mcflow/transport.hpp"

#include <cmath>

namespace mcf {

double sutherland_mu(double T, const ViscosityModel& model, double mu_constant) {
    if (model.kind == ViscosityModel::Kind::Constant) return mu_constant;
    const double r = T / model.T_ref;
    return model.mu_ref * r * std::sqrt(r) * (model.T_ref + model.S) / (T + model.S);
}

double diffusivity_D(double T, double p, const DiffusivityModel& model) {
    if (model.kind == DiffusivityModel::Kind::Constant) return model.D0;
    return model.D0 * (T * std::sqrt(T) / p) / (model.T0 * std::sqrt(model.T0) / model.p0);
}

}  // namespace mcf
