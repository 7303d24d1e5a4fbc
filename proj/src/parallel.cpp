#include "mcflow/parallel.hpp"

#include <omp.h>

namespace mcf {

namespace {
int g_threads = 0;  // 0 = library default
}

void set_worker_threads(int n) {
    if (n > 0) {
        g_threads = n;
        omp_set_num_threads(n);
    }
}

int worker_threads() {
    return g_threads > 0 ? g_threads : omp_get_max_threads();
}

double pairwise_sum(const double* data, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += data[i];
        return s;
    }
    std::size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

}  // namespace mcf
