#pragma once

// Dense double-precision kernels used by the float evaluation path.
//
// Every kernel has a scalar reference implementation and, where the build and
// the running CPU allow, a vectorized variant. The variant is chosen once at
// first use; TBSG_KERNELS=scalar in the environment forces the reference.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace tbsg::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

struct KernelTable {
    Isa isa;
    /// sum_i x[i] * y[i]
    double (*dot)(const double* x, const double* y, std::size_t n);
    /// y[i] += alpha * x[i]
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    /// max_i |x[i] - y[i]|
    double (*max_abs_diff)(const double* x, const double* y, std::size_t n);
    /// out[r] = sum_c a[r*cols + c] * x[c], row-major a
    void (*gemv)(const double* a, const double* x, double* out, std::size_t rows,
                 std::size_t cols);
};

const KernelTable& scalar_kernels();
/// nullptr when the variant was not compiled in or the CPU lacks it.
const KernelTable* avx2_kernels();
const KernelTable* neon_kernels();

/// Every table usable on this machine, scalar first.
std::vector<const KernelTable*> available_kernels();

/// Table selected for this process.
const KernelTable& active();

inline double dot(std::span<const double> x, std::span<const double> y) {
    return active().dot(x.data(), y.data(), x.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    active().axpy(alpha, x.data(), y.data(), x.size());
}

inline double max_abs_diff(std::span<const double> x, std::span<const double> y) {
    return active().max_abs_diff(x.data(), y.data(), x.size());
}

}  // namespace tbsg::kernels
