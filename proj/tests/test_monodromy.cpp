#include <doctest.h>

#include <random>

#include <hypertrace/monodromy.hpp>

using namespace hypertrace;

namespace {

QPoly zp(std::initializer_list<long long> c) {
    std::vector<Rational> v;
    for (auto x : c) v.emplace_back(x);
    return QPoly(std::move(v));
}

MonodromyTuple cubic248_H_scheme() {
    // H^can(eps, 1; conj eta, conj eta^17), eta of order 48:
    // (0, 1/2) at 0, (0, 1/8) at 1, (1/48, 17/48) at infinity
    std::vector<std::pair<PointId, LocalDatum>> local;
    local.emplace_back(PointId::finite(Rational(0)), LocalDatum({Rational(0), Rational(1, 2)}));
    local.emplace_back(PointId::finite(Rational(1)), LocalDatum({Rational(0), Rational(1, 8)}));
    local.emplace_back(PointId::infinity(), LocalDatum({Rational(1, 48), Rational(17, 48)}));
    return MonodromyTuple(2, std::move(local));
}

RationalMap cubic248_map() {
    return RationalMap(zp({0, 1}) * zp({-9, 1}) * zp({-9, 1}),
                       zp({3, 1}) * zp({3, 1}) * zp({3, 1}));
}

}  // namespace

TEST_CASE("rigidity index examples") {
    // H^can local shape: rank 2, three points, rig = (2-3)4 + (2+2+2) = 2
    MonodromyTuple h = hcan_local_shape({Rational(1, 2), Rational(0)},
                                        {Rational(47, 48), Rational(31, 48)});
    CHECK(rigidity_index(h) == 2);
    // matches the paper's table for H: (0,1/2 | 0,1/8 | 1/48,17/48)
    CHECK(same_local_data(h, cubic248_H_scheme()));

    // rank 1 with any m points is rigid
    for (int m = 2; m <= 5; ++m) {
        std::vector<std::pair<PointId, LocalDatum>> local;
        Rational sum;
        for (int i = 0; i + 1 < m; ++i) {
            Rational e(1, 3);
            sum += e;
            local.emplace_back(PointId::finite(Rational(i)), LocalDatum({e}));
        }
        local.emplace_back(PointId::infinity(), LocalDatum({(-sum).mod1()}));
        if (local.back().second.is_trivial()) local.pop_back();
        MonodromyTuple t(1, std::move(local));
        CHECK(rigidity_index(t) == 2);
    }

    // rank 2, four points, distinct eigenvalues: (2-4)4 + 4*2 = 0
    std::vector<std::pair<PointId, LocalDatum>> lame;
    lame.emplace_back(PointId::finite(Rational(0)), LocalDatum({Rational(0), Rational(1, 2)}));
    lame.emplace_back(PointId::finite(Rational(1)), LocalDatum({Rational(0), Rational(1, 2)}));
    lame.emplace_back(PointId::finite(Rational(2)), LocalDatum({Rational(0), Rational(1, 2)}));
    lame.emplace_back(PointId::infinity(), LocalDatum({Rational(0), Rational(1, 2)}));
    CHECK(rigidity_index(MonodromyTuple(2, std::move(lame))) == 0);
}

TEST_CASE("hcan shape rejects non-semisimple data") {
    CHECK_THROWS_AS(hcan_local_shape({Rational(0), Rational(0)}, {Rational(1, 3), Rational(2, 3)}),
                    NonSemisimple);
    // prod(alpha) = prod(beta): unipotent pseudoreflection
    CHECK_THROWS_AS(hcan_local_shape({Rational(0), Rational(1, 2)},
                                     {Rational(1, 6), Rational(1, 3)}),
                    NonSemisimple);
}

TEST_CASE("pullback of the quadratic map drops the even point") {
    // eps at 0: exponents (0, 1/2); pull back along x^2: 2*(0,1/2) = (0,0), lisse at 0
    std::vector<std::pair<PointId, LocalDatum>> local;
    local.emplace_back(PointId::finite(Rational(0)), LocalDatum({Rational(0), Rational(1, 2)}));
    local.emplace_back(PointId::finite(Rational(1)), LocalDatum({Rational(0), Rational(1, 4)}));
    local.emplace_back(PointId::infinity(), LocalDatum({Rational(1, 8), Rational(1, 8)}));
    MonodromyTuple t(2, std::move(local));
    RationalMap sq(zp({0, 0, 1}), zp({1}));
    MonodromyTuple pulled = pullback_tuple(t, sq);
    CHECK(pulled.datum_at(PointId::finite(Rational(0))) == nullptr);  // dropped
    REQUIRE(pulled.datum_at(PointId::finite(Rational(1))) != nullptr);
    REQUIRE(pulled.datum_at(PointId::finite(Rational(-1))) != nullptr);
    CHECK(*pulled.datum_at(PointId::finite(Rational(1))) ==
          LocalDatum({Rational(0), Rational(1, 4)}));
    CHECK(*pulled.datum_at(PointId::infinity()) == LocalDatum({Rational(1, 4), Rational(1, 4)}));
}

TEST_CASE("pullback along the identity and Moebius invertibility") {
    MonodromyTuple h = cubic248_H_scheme();
    RationalMap ident(zp({0, 1}), zp({1}));
    CHECK(same_local_data(pullback_tuple(h, ident), h));

    RationalMap moebius(zp({1, 2}), zp({-3, 1}));  // (2x+1)/(x-3)
    // its inverse: x = (3y+1)/(y-2)
    RationalMap minv(zp({1, 3}), zp({-2, 1}));
    MonodromyTuple round = pullback_tuple(pullback_tuple(h, moebius), minv);
    CHECK(same_local_data(round, h));
}

TEST_CASE("cubic-248 five-point pullback table") {
    MonodromyTuple pulled = pullback_tuple(cubic248_H_scheme(), cubic248_map());
    // x = 9 is lisse (the squared eps), so four singular points remain
    CHECK(pulled.local.size() == 4);
    CHECK(pulled.datum_at(PointId::finite(Rational(9))) == nullptr);
    CHECK(*pulled.datum_at(PointId::finite(Rational(0))) ==
          LocalDatum({Rational(0), Rational(1, 2)}));
    CHECK(*pulled.datum_at(PointId::finite(Rational(1))) ==
          LocalDatum({Rational(0), Rational(1, 4)}));
    CHECK(*pulled.datum_at(PointId::infinity()) == LocalDatum({Rational(0), Rational(1, 8)}));
    CHECK(*pulled.datum_at(PointId::finite(Rational(-3))) ==
          LocalDatum({Rational(1, 16), Rational(1, 16)}));
}

TEST_CASE("cubic-248 bracket: pullback + twist aligns with K") {
    MonodromyTuple pulled = pullback_tuple(cubic248_H_scheme(), cubic248_map());
    // twist by -1/16 at -3 and +1/16 at infinity
    MonodromyTuple twisted = kummer_twist(
        pulled, {{PointId::finite(Rational(-3)), Rational(-1, 16)},
                 {PointId::infinity(), Rational(1, 16)}});
    // expected: [0,1/2 | 1/16,3/16 | 0,1/4] at (0 | inf | 1)
    std::vector<std::pair<PointId, LocalDatum>> expect;
    expect.emplace_back(PointId::finite(Rational(0)), LocalDatum({Rational(0), Rational(1, 2)}));
    expect.emplace_back(PointId::finite(Rational(1)), LocalDatum({Rational(0), Rational(1, 4)}));
    expect.emplace_back(PointId::infinity(), LocalDatum({Rational(1, 16), Rational(3, 16)}));
    CHECK(same_local_data(twisted, MonodromyTuple(2, std::move(expect))));
    // and that is the K-side H^can(eps, 1; conj eta^3, conj eta^9) shape
    MonodromyTuple k = hcan_local_shape({Rational(1, 2), Rational(0)},
                                        {Rational(45, 48), Rational(39, 48)});
    CHECK(same_local_data(twisted, k));
}

TEST_CASE("quadratic P-bracket identity at exponent level") {
    Rational a(1, 16), b(3, 16);
    // [0,1/2 | a,b | 0,1/2-a-b] at x^2  vs  [0,1/2-a-b | 2a,2b | 0,1/2-a-b] at (x+1)/2
    std::vector<std::pair<PointId, LocalDatum>> lhs_data;
    lhs_data.emplace_back(PointId::finite(Rational(0)), LocalDatum({Rational(0), Rational(1, 2)}));
    lhs_data.emplace_back(PointId::finite(Rational(1)),
                          LocalDatum({Rational(0), (Rational(1, 2) - a - b).mod1()}));
    lhs_data.emplace_back(PointId::infinity(), LocalDatum({a, b}));
    MonodromyTuple lhs(2, std::move(lhs_data));

    std::vector<std::pair<PointId, LocalDatum>> rhs_data;
    rhs_data.emplace_back(PointId::finite(Rational(0)),
                          LocalDatum({Rational(0), (Rational(1, 2) - a - b).mod1()}));
    rhs_data.emplace_back(PointId::finite(Rational(1)),
                          LocalDatum({Rational(0), (Rational(1, 2) - a - b).mod1()}));
    rhs_data.emplace_back(PointId::infinity(), LocalDatum({(a + a).mod1(), (b + b).mod1()}));
    MonodromyTuple rhs(2, std::move(rhs_data));

    RationalMap sq(zp({0, 0, 1}), zp({1}));
    RationalMap half(zp({1, 1}), zp({2}));
    CHECK(same_local_data(pullback_tuple(lhs, sq), pullback_tuple(rhs, half)));
}

TEST_CASE("fuchs relation") {
    CHECK_NOTHROW(fuchs_check(f21_scheme(Rational(1, 2), Rational(1, 2), Rational(1))));
    CHECK_NOTHROW(fuchs_check(f21_scheme(Rational(1, 16), Rational(3, 16), Rational(1, 2))));
    // a scheme with integral determinant but exponent sum 2 != 1
    std::vector<std::pair<PointId, LocalDatum>> bad;
    bad.emplace_back(PointId::finite(Rational(0)), LocalDatum({Rational(0), Rational(1, 2)}));
    bad.emplace_back(PointId::finite(Rational(1)), LocalDatum({Rational(0), Rational(1, 2)}));
    bad.emplace_back(PointId::infinity(), LocalDatum({Rational(1, 2), Rational(1, 2)}));
    CHECK_THROWS_AS(fuchs_check(MonodromyTuple(2, std::move(bad))), FuchsViolation);
}

TEST_CASE("kummer twist cancels a rank-1 datum and preserves rigidity") {
    std::vector<std::pair<PointId, LocalDatum>> local;
    local.emplace_back(PointId::finite(Rational(0)), LocalDatum({Rational(1, 3)}));
    local.emplace_back(PointId::finite(Rational(5)), LocalDatum({Rational(1, 4)}));
    local.emplace_back(PointId::infinity(), LocalDatum({Rational(5, 12)}));
    MonodromyTuple t(1, std::move(local));
    MonodromyTuple cancelled = kummer_twist(t, {{PointId::finite(Rational(0)), Rational(-1, 3)},
                                                {PointId::infinity(), Rational(1, 3)}});
    CHECK(cancelled.datum_at(PointId::finite(Rational(0))) == nullptr);
    CHECK(cancelled.local.size() == 2);

    CHECK_THROWS_AS(kummer_twist(t, {{PointId::finite(Rational(0)), Rational(1, 3)}}),
                    DeterminantViolation);
}

TEST_CASE("rigidity is invariant under kummer twists: random tuples") {
    std::mt19937 rng(2024);
    for (int rep = 0; rep < 100; ++rep) {
        long rank = 1 + static_cast<long>(rng() % 3);
        int m = 3 + static_cast<int>(rng() % 3);
        std::vector<std::pair<PointId, LocalDatum>> local;
        Rational total;
        for (int i = 0; i < m; ++i) {
            std::vector<Rational> exps;
            for (long j = 0; j < rank; ++j) {
                Rational e(static_cast<long long>(rng() % 12), 12);
                if (i + 1 == m && j + 1 == rank) {
                    e = (-total).mod1();  // close the determinant
                }
                total += e;
                exps.push_back(e);
            }
            PointId pt = (i + 1 == m) ? PointId::infinity() : PointId::finite(Rational(i));
            local.emplace_back(pt, LocalDatum(std::move(exps)));
        }
        MonodromyTuple t(rank, std::move(local));
        long rig = rigidity_index(t);

        // a random twist supported on two of the tuple's points
        Rational e(static_cast<long long>(1 + rng() % 11), 12);
        MonodromyTuple tw = kummer_twist(t, {{PointId::finite(Rational(0)), e},
                                             {PointId::infinity(), -e}});
        // twisting can only merge or split eigenvalue patterns at the twisted
        // points by translation, which leaves every multiplicity multiset fixed
        CHECK(rigidity_index(tw) == rig);
    }
}
