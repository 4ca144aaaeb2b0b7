#include "tbsg/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

namespace k = tbsg::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    std::vector<double> v(n);
    for (auto& x : v) x = dist(rng);
    return v;
}

}  // namespace

TEST_CASE("scalar table is always available and listed first") {
    auto tables = k::available_kernels();
    REQUIRE(!tables.empty());
    CHECK(tables.front()->isa == k::Isa::scalar);
    CHECK(k::isa_name(k::active().isa).size() > 0);
}

TEST_CASE("every vectorized table matches the scalar reference") {
    const auto& ref = k::scalar_kernels();
    std::mt19937_64 rng(11);
    for (const auto* table : k::available_kernels()) {
        CAPTURE(k::isa_name(table->isa));
        // Lengths straddle the vector widths and their tails.
        for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 101}) {
            CAPTURE(n);
            auto x = random_vector(rng, n);
            auto y = random_vector(rng, n);

            double scale = 1.0;
            for (std::size_t i = 0; i < n; ++i) scale += std::fabs(x[i] * y[i]);
            CHECK(table->dot(x.data(), y.data(), n) ==
                  doctest::Approx(ref.dot(x.data(), y.data(), n)).epsilon(1e-13).scale(scale));

            auto y1 = y, y2 = y;
            table->axpy(0.75, x.data(), y1.data(), n);
            ref.axpy(0.75, x.data(), y2.data(), n);
            CHECK(y1 == y2);

            CHECK(table->max_abs_diff(x.data(), y.data(), n) == ref.max_abs_diff(x.data(), y.data(), n));

            std::size_t rows = n % 6 + 1;
            auto a = random_vector(rng, rows * n);
            std::vector<double> o1(rows), o2(rows);
            table->gemv(a.data(), x.data(), o1.data(), rows, n);
            ref.gemv(a.data(), x.data(), o2.data(), rows, n);
            for (std::size_t r = 0; r < rows; ++r) CHECK(o1[r] == doctest::Approx(o2[r]).epsilon(1e-12));
        }
    }
}

TEST_CASE("max_abs_diff propagates NaN in every table") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto* table : k::available_kernels()) {
        CAPTURE(k::isa_name(table->isa));
        for (std::size_t pos : {0, 3, 8}) {
            std::vector<double> x(9, 1.0), y(9, 0.0);
            x[pos] = nan;
            CHECK(std::isnan(table->max_abs_diff(x.data(), y.data(), x.size())));
        }
    }
}
