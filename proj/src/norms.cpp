#include "mcflow/norms.hpp"

#include <cmath>
#include <string>

#include "mcflow/errors.hpp"
#include "mcflow/parallel.hpp"

namespace mcf {

ErrorEntry error_norms(const std::vector<double>& numeric, const std::vector<double>& oracle,
                       double cell_volume) {
    if (numeric.size() != oracle.size())
        throw ConfigError("error_norms: size mismatch (" + std::to_string(numeric.size()) + " vs " +
                          std::to_string(oracle.size()) + ")");
    ErrorEntry e;
    e.cells = static_cast<int>(numeric.size());
    std::vector<double> abse(numeric.size());
    for (std::size_t i = 0; i < numeric.size(); ++i) {
        abse[i] = std::abs(numeric[i] - oracle[i]);
        e.linf = std::max(e.linf, abse[i]);
    }
    e.l1 = pairwise_sum(abse) * cell_volume / (cell_volume * numeric.size());
    return e;
}

std::vector<double> cell_average_1d(const std::function<double(double)>& fn, double x0, double x1,
                                    int n) {
    // 5-point Gauss-Legendre nodes/weights on [-1, 1]
    static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                 0.5384693101056831, 0.9061798459386640};
    static const double gw[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                 0.4786286704993665, 0.2369268850561891};
    const double dx = (x1 - x0) / n;
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) {
        const double xc = x0 + (i + 0.5) * dx;
        double acc = 0.0;
        for (int k = 0; k < 5; ++k) acc += gw[k] * fn(xc + 0.5 * dx * gx[k]);
        out[i] = 0.5 * acc;
    }
    return out;
}

std::vector<double> convergence_order(const std::vector<ErrorEntry>& entries) {
    if (entries.size() < 2) throw ConfigError("convergence_order: need at least two grids");
    std::vector<double> orders;
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].cells != 2 * entries[i - 1].cells)
            throw ConfigError("convergence_order: grids are not dyadic");
        orders.push_back(std::log2(entries[i - 1].l1 / entries[i].l1));
    }
    return orders;
}

}  // namespace mcf
