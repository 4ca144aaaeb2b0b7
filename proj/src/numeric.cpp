#include "tbsg/numeric.hpp"

#include "tbsg/kernels.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <charconv>
#include <system_error>

namespace tbsg {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

struct DecimalParts {
    bool negative = false;
    std::string digits;  // integer and fraction digits concatenated
    long exponent = 0;   // value = digits * 10^exponent
};

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// [+-]? digits ( . digits? )? ( [eE] [+-]? digits )?  or  [+-]? . digits ...
DecimalParts split_decimal(std::string_view text) {
    std::string_view s = text;
    DecimalParts parts;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        parts.negative = s.front() == '-';
        s.remove_prefix(1);
    }
    std::string_view exp_part;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        exp_part = s.substr(e + 1);
        s = s.substr(0, e);
        std::string_view digits = exp_part;
        if (!digits.empty() && (digits.front() == '+' || digits.front() == '-')) digits.remove_prefix(1);
        if (!all_digits(digits) || digits.size() > 6)
            throw NumberFormatError("malformed exponent in '" + std::string(text) + "'");
    }
    std::string_view int_part = s;
    std::string_view frac_part;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        int_part = s.substr(0, dot);
        frac_part = s.substr(dot + 1);
    }
    if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)))
        throw NumberFormatError("malformed number '" + std::string(text) + "'");
    parts.digits = std::string(int_part) + std::string(frac_part);
    parts.exponent = -static_cast<long>(frac_part.size());
    if (!exp_part.empty()) {
        long e = 0;
        std::string_view digits = exp_part;
        bool neg = false;
        if (digits.front() == '+' || digits.front() == '-') {
            neg = digits.front() == '-';
            digits.remove_prefix(1);
        }
        std::from_chars(digits.data(), digits.data() + digits.size(), e);
        parts.exponent += neg ? -e : e;
    }
    return parts;
}

double parse_plain_double(std::string_view text, std::string_view whole) {
    split_decimal(text);  // grammar check; from_chars alone would take "inf"/"nan"
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc::result_out_of_range || ptr != text.data() + text.size())
        throw NumberFormatError("number out of range '" + std::string(whole) + "'");
    return value;
}

}  // namespace

double Num<double>::parse(std::string_view text) {
    std::string_view s = trim(text);
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        double p = parse_plain_double(trim(s.substr(0, slash)), text);
        double q = parse_plain_double(trim(s.substr(slash + 1)), text);
        if (q == 0.0) throw NumberFormatError("zero denominator in '" + std::string(text) + "'");
        return p / q;
    }
    return parse_plain_double(s, text);
}

std::string Num<double>::format(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

Rational Num<Rational>::parse(std::string_view text) {
    std::string_view s = trim(text);
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Rational p = parse(s.substr(0, slash));
        Rational q = parse(s.substr(slash + 1));
        if (q == 0) throw NumberFormatError("zero denominator in '" + std::string(text) + "'");
        return Rational(p / q);
    }
    DecimalParts parts = split_decimal(s);
    mpz_class digits(parts.digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(parts.exponent)));
    Rational value = parts.exponent >= 0 ? Rational(digits * scale) : Rational(digits, scale);
    value.canonicalize();
    return parts.negative ? Rational(-value) : value;
}

std::string Num<Rational>::format(const Rational& x) {
    mpz_class den = x.get_den();
    unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(2).get_mpz_t());
    unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(5).get_mpz_t());
    if (den != 1) return x.get_str(10);

    unsigned long places = std::max(twos, fives);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
    mpz_class scaled = x.get_num() * scale / x.get_den();
    bool negative = scaled < 0;
    std::string digits = mpz_class(abs(scaled)).get_str(10);
    if (places == 0) return (negative ? "-" : "") + digits;
    if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
    std::string out = digits.substr(0, digits.size() - places) + "." + digits.substr(digits.size() - places);
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
    return (negative ? "-" : "") + out;
}

double Num<Rational>::to_double(const Rational& x) {
    mpz_class den = x.get_den();
    mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(2).get_mpz_t());
    mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(5).get_mpz_t());
    // Terminating decimals go through the correctly rounded decimal parser so
    // that exact and float games built from the same file agree bit for bit.
    if (den == 1) return Num<double>::parse(format(x));
    return x.get_d();
}

template <>
double sup_distance<double>(const std::vector<double>& a, const std::vector<double>& b) {
    return kernels::max_abs_diff(a, b);
}

}  // namespace tbsg
