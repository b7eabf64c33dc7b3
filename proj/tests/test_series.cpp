#include <doctest.h>

#include <hypertrace/series.hpp>

using namespace hypertrace;

namespace {

double f21r(const Rational& a, const Rational& b, const Rational& c, double x, int terms = 300) {
    return f21_series(a, b, c, {x, 0.0}, terms).real();
}

}  // namespace

TEST_CASE("2F1 basics") {
    CHECK(f21r(Rational(1, 3), Rational(2, 3), Rational(1), 0.0) == doctest::Approx(1.0));
    // 2F1(1, 1; 2; x) = -log(1-x)/x
    CHECK(f21r(Rational(1), Rational(1), Rational(2), 0.5, 600) ==
          doctest::Approx(-std::log(0.5) / 0.5).epsilon(1e-10));
    CHECK_THROWS_AS(f21_series(Rational(1), Rational(1), Rational(0), {0.1, 0}), PoleInC);
    CHECK_THROWS_AS(f21_series(Rational(1), Rational(1), Rational(-2), {0.1, 0}), PoleInC);
}

TEST_CASE("AGM transformation") {
    // F(2 sqrt(k)/(1+k)) = (1+k) F(k), F(k) = (pi/2) 2F1(1/2, 1/2; 1; k^2)
    Rational h(1, 2);
    for (double k : {0.3, 0.2, 0.12}) {
        double m = 2 * std::sqrt(k) / (1 + k);
        double lhs = f21r(h, h, Rational(1), m * m, 400);
        double rhs = (1 + k) * f21r(h, h, Rational(1), k * k, 400);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("lambda/j covering identity") {
    // 2F1(1/12, 5/12; 1; 27 l^2 (l-1)^2 / (4 (l^2-l+1)^3))
    //   = (1 - l + l^2)^(1/4) 2F1(1/2, 1/2; 1; l)
    for (double l : {0.2, 0.3, 0.4}) {
        double q = l * l - l + 1;
        double arg = 27.0 * l * l * (l - 1) * (l - 1) / (4.0 * q * q * q);
        double lhs = f21r(Rational(1, 12), Rational(5, 12), Rational(1), arg, 400);
        double rhs = std::pow(q, 0.25) * f21r(Rational(1, 2), Rational(1, 2), Rational(1), l, 400);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("Borwein cubic transformation") {
    // 2F1(1/3, 2/3; 1; 1-x^3) = 3/(1+2x) 2F1(1/3, 2/3; 1; ((1-x)/(1+2x))^3)
    for (double x : {0.55, 0.7, 0.8}) {
        double lhs = f21r(Rational(1, 3), Rational(2, 3), Rational(1), 1 - x * x * x, 800);
        double arg = std::pow((1 - x) / (1 + 2 * x), 3.0);
        double rhs = 3.0 / (1 + 2 * x) * f21r(Rational(1, 3), Rational(2, 3), Rational(1), arg, 800);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
}

TEST_CASE("Goursat cubic transformation") {
    // 2F1(a, a+1/3; 2a+5/6; 27x(1-x)^2/(1+3x)^3) = (1+3x)^(3a) 2F1(3a, 3a+1/2; 2a+5/6; x)
    Rational a(1, 24);  // n = 1 in the arithmetic-triangle-group family
    for (double x : {0.01, 0.02, 0.03}) {
        double arg = 27 * x * (1 - x) * (1 - x) / std::pow(1 + 3 * x, 3.0);
        double lhs = f21r(a, a + Rational(1, 3), a * Rational(2) + Rational(5, 6), arg, 800);
        double rhs = std::pow(1 + 3 * x, 3.0 * a.to_double()) *
                     f21r(a * Rational(3), a * Rational(3) + Rational(1, 2),
                          a * Rational(2) + Rational(5, 6), x, 800);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("quadratic transformation") {
    // Kummer: 2F1(a, b; a+b+1/2; 4x(1-x)) = 2F1(2a, 2b; a+b+1/2; x)
    Rational a(1, 16), b(3, 16);
    Rational c = a + b + Rational(1, 2);
    for (double x : {0.05, 0.1, 0.2}) {
        double lhs = f21r(a, b, c, 4 * x * (1 - x), 400);
        double rhs = f21r(a * Rational(2), b * Rational(2), c, x, 400);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}
