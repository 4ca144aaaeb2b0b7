#include "tbsg/kernels.hpp"

#include <cmath>

namespace tbsg::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += x[i] * y[i];
    return sum;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double max_abs_diff_scalar(const double* x, const double* y, std::size_t n) {
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = std::fabs(x[i] - y[i]);
        if (d > best || std::isnan(d)) best = d;
    }
    return best;
}

void gemv_scalar(const double* a, const double* x, double* out, std::size_t rows,
                 std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) out[r] = dot_scalar(a + r * cols, x, cols);
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{Isa::scalar, dot_scalar, axpy_scalar, max_abs_diff_scalar,
                                   gemv_scalar};
    return table;
}

}  // namespace tbsg::kernels
