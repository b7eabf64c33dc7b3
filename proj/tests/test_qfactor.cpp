#include <doctest.h>

#include <hypertrace/qfactor.hpp>

using namespace hypertrace;

namespace {

QPoly zp(std::initializer_list<long long> c) {
    std::vector<Rational> v;
    for (auto x : c) v.emplace_back(x);
    return QPoly(std::move(v));
}

// exact multiplicity of a factor inside a target polynomial
long exact_multiplicity(const QPoly& target, const QPoly& factor) {
    QPoly rem = target;
    long mult = 0;
    while (true) {
        QPoly q, r;
        QPoly::divmod(rem, factor, q, r);
        if (!r.is_zero()) return mult;
        rem = q;
        ++mult;
    }
}

void check_fiber(const RationalMap& R, const std::optional<Rational>& c) {
    QPoly target = c ? (R.num - R.den.scaled(*c)) : R.den;
    long total = 0;
    for (const auto& pl : rational_map_fibers(R, c)) {
        if (!pl.at_infinity) {
            QPoly factor = pl.algebraic ? pl.min_poly : zp({0, 1}) - QPoly::constant(pl.point);
            CHECK(exact_multiplicity(target, factor) == pl.ram);
        }
        total += pl.degree * pl.ram;
    }
    CHECK(total == R.degree());
}

}  // namespace

TEST_CASE("squarefree decomposition") {
    QPoly f = zp({-1, 1});           // x - 1
    QPoly g = zp({2, 1});            // x + 2
    QPoly h = zp({1, 0, 1});         // x^2 + 1
    QPoly prod = f * f * g * g * g * h;
    auto parts = squarefree_decomposition(prod);
    REQUIRE(parts.size() == 3);
    CHECK(parts[0].part == h.monic());
    CHECK(parts[0].mult == 1);
    CHECK(parts[1].part == f.monic());
    CHECK(parts[1].mult == 2);
    CHECK(parts[2].part == g.monic());
    CHECK(parts[2].mult == 3);
}

TEST_CASE("rational roots") {
    // roots 3/2, -1/3, 0 from (2x-3)(3x+1)x(x^2+x+1)
    QPoly f = zp({-3, 2}) * zp({1, 3}) * zp({0, 1}) * zp({1, 1, 1});
    auto roots = rational_roots(f);
    REQUIRE(roots.size() == 3);
    CHECK(roots[0] == Rational(-1, 3));
    CHECK(roots[1] == Rational(0));
    CHECK(roots[2] == Rational(3, 2));
}

TEST_CASE("irreducibility certificates") {
    auto factors = factor_over_q(zp({1, -1, 1}));  // x^2 - x + 1
    REQUIRE(factors.size() == 1);
    CHECK(factors[0].certified);
    CHECK(factors[0].poly.degree() == 2);

    // (x^2+1)(x^2+2) splits into two certified quadratics
    auto split = factor_over_q(zp({1, 0, 1}) * zp({2, 0, 1}));
    REQUIRE(split.size() == 2);
    for (const auto& f : split) {
        CHECK(f.poly.degree() == 2);
        CHECK(f.certified);
    }

    // x^4 + 1: irreducible over Q though reducible mod every prime;
    // the resolvent certificate must carry it
    auto x4p1 = factor_over_q(zp({1, 0, 0, 0, 1}));
    REQUIRE(x4p1.size() == 1);
    CHECK(x4p1[0].poly.degree() == 4);
    CHECK(x4p1[0].certified);

    // x^4 + 4 = (x^2-2x+2)(x^2+2x+2)
    auto x4p4 = factor_over_q(zp({4, 0, 0, 0, 1}));
    REQUIRE(x4p4.size() == 2);

    // degree 5, irreducible with a mod-p witness
    auto quintic = factor_over_q(zp({-1, -1, 0, 0, 0, 1}));  // x^5 - x - 1
    REQUIRE(quintic.size() == 1);
    CHECK(quintic[0].certified);
}

TEST_CASE("fibers of the (2,4,8) cubic map x(x-9)^2/(x+3)^3") {
    RationalMap R(zp({0, 1}) * zp({-9, 1}) * zp({-9, 1}), zp({3, 1}) * zp({3, 1}) * zp({3, 1}));
    CHECK(R.degree() == 3);

    auto f0 = rational_map_fibers(R, Rational(0));
    REQUIRE(f0.size() == 2);
    // {x = 0 (e=1), x = 9 (e=2)}
    bool saw0 = false, saw9 = false;
    for (auto& pl : f0) {
        if (!pl.at_infinity && pl.point == Rational(0)) { saw0 = true; CHECK(pl.ram == 1); }
        if (!pl.at_infinity && pl.point == Rational(9)) { saw9 = true; CHECK(pl.ram == 2); }
    }
    CHECK(saw0);
    CHECK(saw9);

    auto f1 = rational_map_fibers(R, Rational(1));
    // {x = 1 (e=2), infinity (e=1)}
    bool saw1 = false, sawinf = false;
    for (auto& pl : f1) {
        if (!pl.at_infinity && pl.point == Rational(1)) { saw1 = true; CHECK(pl.ram == 2); }
        if (pl.at_infinity) { sawinf = true; CHECK(pl.ram == 1); }
    }
    CHECK(saw1);
    CHECK(sawinf);

    auto finf = rational_map_fibers(R, std::nullopt);
    REQUIRE(finf.size() == 1);
    CHECK(finf[0].point == Rational(-3));
    CHECK(finf[0].ram == 3);

    for (auto c : {std::optional<Rational>(Rational(0)), std::optional<Rational>(Rational(1)),
                   std::optional<Rational>()})
        check_fiber(R, c);
}

TEST_CASE("fibers of x^2") {
    RationalMap R(zp({0, 0, 1}), zp({1}));
    auto f0 = rational_map_fibers(R, Rational(0));
    REQUIRE(f0.size() == 1);
    CHECK(f0[0].point == Rational(0));
    CHECK(f0[0].ram == 2);
    auto f4 = rational_map_fibers(R, Rational(4));
    REQUIRE(f4.size() == 2);  // +-2
}

TEST_CASE("fibers of the lambda/j map") {
    // j = 27 x^2 (x-1)^2 / (4 (x^2-x+1)^3)
    QPoly num = zp({0, 0, 27}) * zp({-1, 1}) * zp({-1, 1});
    QPoly q = zp({1, -1, 1});
    QPoly den = (q * q * q).scaled(Rational(4));
    RationalMap R(num, den);
    CHECK(R.degree() == 6);

    auto f0 = rational_map_fibers(R, Rational(0));
    // {0 (e2), 1 (e2), infinity (e2)}
    REQUIRE(f0.size() == 3);
    long infs = 0;
    for (auto& pl : f0) {
        CHECK(pl.ram == 2);
        if (pl.at_infinity) ++infs;
    }
    CHECK(infs == 1);

    auto finf = rational_map_fibers(R, std::nullopt);
    REQUIRE(finf.size() == 1);
    CHECK(finf[0].algebraic);
    CHECK(finf[0].degree == 2);
    CHECK(finf[0].ram == 3);
    CHECK(finf[0].certified);
    CHECK(finf[0].min_poly == q.monic());

    auto f1 = rational_map_fibers(R, Rational(1));
    // j = 1 at lambda in {-1, 2, 1/2}, each doubly
    REQUIRE(f1.size() == 3);
    for (auto& pl : f1) {
        CHECK(pl.ram == 2);
        CHECK(!pl.algebraic);
    }
    for (auto c : {std::optional<Rational>(Rational(0)), std::optional<Rational>(Rational(1)),
                   std::optional<Rational>()})
        check_fiber(R, c);
}

TEST_CASE("fibers of the Vidunas degree-10 map") {
    QPoly f = zp({1, -57, -1029, 50421});
    QPoly g = zp({0, 0, -1}) * zp({1, -27});
    for (int i = 0; i < 7; ++i) g = g * zp({3, -49});
    RationalMap R(g.scaled(Rational(27)), (f * f * f).scaled(Rational(4)));
    CHECK(R.degree() == 10);

    auto f0 = rational_map_fibers(R, Rational(0));
    // ramification profile (1, 2, 7) at 1/27, 0, 3/49
    REQUIRE(f0.size() == 3);
    for (auto& pl : f0) {
        CHECK(!pl.algebraic);
        if (pl.point == Rational(1, 27)) CHECK(pl.ram == 1);
        if (pl.point == Rational(0)) CHECK(pl.ram == 2);
        if (pl.point == Rational(3, 49)) CHECK(pl.ram == 7);
    }

    auto finf = rational_map_fibers(R, std::nullopt);
    // profile (3, 3, 3, 1): an irreducible cubic place with e = 3, plus x = infinity
    REQUIRE(finf.size() == 2);
    bool cubic = false, inf = false;
    for (auto& pl : finf) {
        if (pl.algebraic) {
            cubic = true;
            CHECK(pl.degree == 3);
            CHECK(pl.ram == 3);
            CHECK(pl.certified);
        }
        if (pl.at_infinity) {
            inf = true;
            CHECK(pl.ram == 1);
        }
    }
    CHECK(cubic);
    CHECK(inf);

    auto f1 = rational_map_fibers(R, Rational(1));
    // profile 2^5: one quintic place, squared
    REQUIRE(f1.size() == 1);
    CHECK(f1[0].degree == 5);
    CHECK(f1[0].ram == 2);
    CHECK(f1[0].certified);  // mod-p witness

    for (auto c : {std::optional<Rational>(Rational(0)), std::optional<Rational>(Rational(1)),
                   std::optional<Rational>()})
        check_fiber(R, c);
}

TEST_CASE("rational map validation") {
    CHECK_THROWS_AS(RationalMap(zp({1}), zp({2})), ConstantMap);
    CHECK_THROWS_AS(RationalMap(zp({1, 1}), QPoly()), DivisionByZero);
    // common factors are cancelled
    RationalMap R(zp({0, 1}) * zp({1, 1}), zp({1, 1}));
    CHECK(R.degree() == 1);
}
