#pragma once

#include <functional>
#include <vector>

#include "mcflow/grid.hpp"

namespace mcf {

struct ErrorEntry {
    int cells = 0;
    double l1 = 0.0;
    double linf = 0.0;
};

struct ErrorReport {
    std::vector<ErrorEntry> entries;   // coarse to fine
    std::vector<double> orders_l1;     // pairwise log2 ratios
};

/// Volume-weighted error norms between matching fields:
/// L1 = sum |e| V / sum V, Linf = max |e|. Sizes must match.
ErrorEntry error_norms(const std::vector<double>& numeric, const std::vector<double>& oracle,
                       double cell_volume);

/// Cell averages of fn over [x0, x1] split into n cells, 5-point Gauss.
std::vector<double> cell_average_1d(const std::function<double(double)>& fn, double x0, double x1,
                                    int n);

/// Pairwise orders log2(e_coarse/e_fine) for dyadically refined entries.
/// Throws ConfigError on fewer than 2 grids or non-dyadic cell counts.
std::vector<double> convergence_order(const std::vector<ErrorEntry>& entries);

}  // namespace mcf
