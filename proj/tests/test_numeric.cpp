#include "tbsg/numeric.hpp"

#include <doctest.h>

#include <limits>

using tbsg::Num;
using tbsg::NumberFormatError;
using tbsg::Rational;

TEST_CASE("decimal parsing in both modes") {
    CHECK(Num<double>::parse("0.5") == 0.5);
    CHECK(Num<double>::parse("-3") == -3.0);
    CHECK(Num<double>::parse("1e-3") == 0.001);
    CHECK(Num<double>::parse("1/4") == 0.25);

    CHECK(Num<Rational>::parse("0.1") == Rational(1, 10));
    CHECK(Num<Rational>::parse("-2.5e1") == Rational(-25));
    CHECK(Num<Rational>::parse("3/9") == Rational(1, 3));
    CHECK(Num<Rational>::parse("1.25E-2") == Rational(1, 80));
}

TEST_CASE("malformed numbers are rejected") {
    for (std::string bad : {"", "abc", "1.2.3", "1/0", "--1", "1e", "0x10", "1 2"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(Num<double>::parse(bad), NumberFormatError);
        CHECK_THROWS_AS(Num<Rational>::parse(bad), NumberFormatError);
    }
}

TEST_CASE("formatting round-trips") {
    for (double x : {0.1, 1.0 / 3.0, -2.5, 1e-300, 123456789.125, 0.0}) {
        CAPTURE(x);
        CHECK(Num<double>::parse(Num<double>::format(x)) == x);
    }
    CHECK(Num<Rational>::format(Rational(1, 8)) == "0.125");
    CHECK(Num<Rational>::format(Rational(-7, 2)) == "-3.5");
    CHECK(Num<Rational>::format(Rational(1, 3)) == "1/3");
    CHECK(Num<Rational>::format(Rational(12)) == "12");
    for (const char* s : {"0.000000001", "-17.25", "2/7"}) CHECK(Num<Rational>::format(Num<Rational>::parse(s)) == s);
}

TEST_CASE("rational to double agrees with the decimal parser") {
    CHECK(Num<Rational>::to_double(Rational(1, 10)) == 0.1);
    CHECK(Num<Rational>::to_double(Rational(1, 3)) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("norms") {
    std::vector<double> a{1.0, -4.0, 2.0}, b{0.5, -1.0, 2.0};
    CHECK(tbsg::sup_norm(a) == 4.0);
    CHECK(tbsg::sup_distance(a, b) == 3.0);
    CHECK(tbsg::l1_distance(a, b) == 3.5);
    std::vector<Rational> ra{Rational(1, 3), Rational(-1)}, rb{Rational(0), Rational(0)};
    CHECK(tbsg::sup_distance(ra, rb) == Rational(1));
    CHECK(tbsg::l1_distance(ra, rb) == Rational(4, 3));
}

TEST_CASE("slack is relative in float mode and zero in exact mode") {
    CHECK(Num<double>::slack(1e-9, 0.0) == 1e-9);
    CHECK(Num<double>::slack(1e-9, 9.0) == doctest::Approx(1e-8));
    CHECK(Num<Rational>::slack(1e-9, Rational(100)) == 0);
}

TEST_CASE("surrounding whitespace is ignored") {
    CHECK(Num<double>::parse(" 1.5 ") == 1.5);
    CHECK(Num<Rational>::parse(" 1 / 3 ") == Rational(1, 3));
}
