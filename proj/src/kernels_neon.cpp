// AArch64 variant. NEON is part of the baseline ISA there, so no runtime probe.

#include "tbsg/kernels.hpp"

#include <cmath>

#if defined(__aarch64__)
#include <arm_neon.h>

namespace tbsg::kernels {
namespace {

double dot_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0);
    float64x2_t acc1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vaddq_f64(acc0, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
        acc1 = vaddq_f64(acc1, vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
    }
    double sum = vaddvq_f64(vaddq_f64(acc0, acc1));
    for (; i < n; ++i) sum += x[i] * y[i];
    return sum;
}

void axpy_neon(double alpha, const double* x, double* y, std::size_t n) {
    const float64x2_t a = vdupq_n_f64(alpha);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(a, vld1q_f64(x + i))));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

double max_abs_diff_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t best = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        best = vmaxq_f64(best, vabdq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));  // vmaxq propagates NaN
    double result = vmaxvq_f64(best);
    for (; i < n; ++i) {
        double d = std::fabs(x[i] - y[i]);
        if (d > result || std::isnan(d)) result = d;
    }
    return result;
}

void gemv_neon(const double* a, const double* x, double* out, std::size_t rows, std::size_t cols) {
    for (std::size_t r = 0; r < rows; ++r) out[r] = dot_neon(a + r * cols, x, cols);
}

}  // namespace

const KernelTable* neon_kernels() {
    static const KernelTable table{Isa::neon, dot_neon, axpy_neon, max_abs_diff_neon, gemv_neon};
    return &table;
}

}  // namespace tbsg::kernels

#else

namespace tbsg::kernels {
const KernelTable* neon_kernels() { return nullptr; }
}  // namespace tbsg::kernels

#endif
