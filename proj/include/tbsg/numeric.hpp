#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tbsg {

/// Exact arithmetic mode scalar.
using Rational = mpq_class;

/// Scalar traits shared by the float (`double`) and exact (`Rational`) code
/// paths. Every algorithm in the library is written against this interface.
template <class T>
struct Num;

template <>
struct Num<double> {
    static constexpr bool exact = false;
    static constexpr const char* name = "float";

    /// Accepts decimal ("-1.25", "3e-2") and fraction ("1/3") notation.
    static double parse(std::string_view text);
    /// Shortest representation that parses back to the same double.
    static std::string format(double x);
    static double to_double(double x) { return x; }
    static double abs(double x) { return std::fabs(x); }
    static bool is_finite(double x) { return std::isfinite(x); }
    /// Comparison slack scaled by the magnitude of the quantities compared.
    static double slack(double relative, double scale) { return relative * (1.0 + scale); }
};

template <>
struct Num<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* name = "exact";

    static Rational parse(std::string_view text);
    /// Terminating decimal when the denominator is 2^a 5^b, else "p/q".
    static std::string format(const Rational& x);
    static double to_double(const Rational& x);
    static Rational abs(const Rational& x) { return Rational(::abs(x)); }
    static bool is_finite(const Rational&) { return true; }
    static Rational slack(double, const Rational&) { return Rational(0); }
};

/// Thrown when a numeric literal cannot be parsed.
class NumberFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class T>
T sup_norm(const std::vector<T>& v) {
    T best(0);
    for (const auto& x : v) {
        T a = Num<T>::abs(x);
        if (a > best) best = a;
    }
    return best;
}

template <class T>
T sup_distance(const std::vector<T>& a, const std::vector<T>& b) {
    T best(0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        T d = Num<T>::abs(T(a[i] - b[i]));
        if (d > best) best = d;
    }
    return best;
}

template <class T>
T l1_distance(const std::vector<T>& a, const std::vector<T>& b) {
    T sum(0);
    for (std::size_t i = 0; i < a.size(); ++i) sum += Num<T>::abs(T(a[i] - b[i]));
    return sum;
}

template <class T>
std::vector<double> to_doubles(const std::vector<T>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(Num<T>::to_double(x));
    return out;
}

template <>
double sup_distance<double>(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace tbsg
