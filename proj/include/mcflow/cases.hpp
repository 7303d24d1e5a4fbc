#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mcflow/dissipative.hpp"
#include "mcflow/fields.hpp"
#include "mcflow/transport.hpp"

namespace mcf {

/// Full problem definition: domain, materials, physics, scheme defaults and
/// the initial-field generator (resolution-independent).
struct CaseSpec {
    std::string name;
    int ndim = 1;
    int nx = 128, ny = 1;  // default resolution
    double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
    std::array<BcType, 4> bc{BcType::Periodic, BcType::Periodic, BcType::Periodic,
                             BcType::Periodic};
    MaterialPair mats;
    TransportModel transport;
    double end_time = 0.0;
    double cfl = 0.2;
    DriverConfig driver;
    double snapshot_interval = 0.0;  // <= 0: final snapshot only
    std::function<void(FieldSet&, const MaterialPair&)> init;

    Grid make_grid(int nx_override = 0, int ny_override = 0) const;
    FieldSet make_fields(int nx_override = 0, int ny_override = 0) const;
};

/// Names understood by case_registry, in registry order.
std::vector<std::string> case_names();

/// Look up a benchmark case; throws ConfigError listing the registry on an
/// unknown name.
CaseSpec case_registry(const std::string& name);

}  // namespace mcf
