#pragma once

#include "tbsg/game.hpp"
#include "tbsg/kernels.hpp"

#include <numeric>
#include <span>
#include <utility>
#include <vector>

namespace tbsg {

/// y += alpha * x over equal-length ranges.
template <class T>
void axpy(const T& alpha, std::span<const T> x, std::span<T> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

template <>
inline void axpy<double>(const double& alpha, std::span<const double> x, std::span<double> y) {
    kernels::axpy(alpha, x, y);
}

template <class T>
std::vector<T> multiply(const DenseMatrix<T>& a, const std::vector<T>& x) {
    std::vector<T> out(a.rows, T(0));
    for (std::size_t r = 0; r < a.rows; ++r)
        for (std::size_t c = 0; c < a.cols; ++c) out[r] += a(r, c) * x[c];
    return out;
}

template <>
inline std::vector<double> multiply<double>(const DenseMatrix<double>& a, const std::vector<double>& x) {
    std::vector<double> out(a.rows);
    kernels::active().gemv(a.data.data(), x.data(), out.data(), a.rows, a.cols);
    return out;
}

/// LU factorization P A = L U of a square matrix with row pivoting.
///
/// Float mode pivots on the largest magnitude in the column. Exact mode takes
/// the first nonzero entry; all arithmetic is exact so the choice only
/// affects the size of intermediate fractions.
template <class T>
class LuFactorization {
public:
    explicit LuFactorization(DenseMatrix<T> a) : lu_(std::move(a)), perm_(lu_.rows) {
        if (lu_.rows != lu_.cols) throw PreconditionError("LU factorization needs a square matrix");
        const std::size_t n = lu_.rows;
        std::iota(perm_.begin(), perm_.end(), std::size_t{0});
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t pivot = k;
            if constexpr (Num<T>::exact) {
                while (pivot < n && lu_(pivot, k) == 0) ++pivot;
                if (pivot == n) throw InternalError("singular matrix in LU factorization");
            } else {
                for (std::size_t r = k + 1; r < n; ++r)
                    if (Num<T>::abs(lu_(r, k)) > Num<T>::abs(lu_(pivot, k))) pivot = r;
                if (lu_(pivot, k) == T(0)) throw InternalError("singular matrix in LU factorization");
            }
            if (pivot != k) {
                std::swap_ranges(row(k).begin(), row(k).end(), row(pivot).begin());
                std::swap(perm_[k], perm_[pivot]);
            }
            const T inv_pivot = T(1) / lu_(k, k);
            for (std::size_t r = k + 1; r < n; ++r) {
                if (lu_(r, k) == T(0)) continue;
                T factor = lu_(r, k) * inv_pivot;
                lu_(r, k) = factor;
                axpy<T>(T(-factor), std::span<const T>(row(k).subspan(k + 1)), row(r).subspan(k + 1));
            }
        }
    }

    std::size_t size() const { return lu_.rows; }

    /// Solves A x = b.
    std::vector<T> solve(const std::vector<T>& b) const {
        const std::size_t n = size();
        std::vector<T> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
        for (std::size_t i = n; i-- > 0;) {
            for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
            x[i] /= lu_(i, i);
        }
        return x;
    }

    /// Solves A^T x = b, i.e. the row system x A = b^T.
    std::vector<T> solve_transposed(const std::vector<T>& b) const {
        const std::size_t n = size();
        // A^T = U^T L^T P: forward with U^T, backward with unit L^T, then permute.
        std::vector<T> z(b);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) z[i] -= lu_(j, i) * z[j];
            z[i] /= lu_(i, i);
        }
        for (std::size_t i = n; i-- > 0;)
            for (std::size_t j = i + 1; j < n; ++j) z[i] -= lu_(j, i) * z[j];
        std::vector<T> x(n);
        for (std::size_t i = 0; i < n; ++i) x[perm_[i]] = z[i];
        return x;
    }

private:
    std::span<T> row(std::size_t r) {
        return std::span<T>(lu_.data).subspan(r * lu_.cols, lu_.cols);
    }

    DenseMatrix<T> lu_;
    std::vector<std::size_t> perm_;
};

}  // namespace tbsg
