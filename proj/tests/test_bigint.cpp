#include <doctest.h>

#include <random>

#include <hypertrace/bigint.hpp>
#include <hypertrace/rational.hpp>

using namespace hypertrace;

TEST_CASE("bigint small arithmetic matches int128") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<long long> dist(-1000000000000000000LL, 1000000000000000000LL);
    for (int i = 0; i < 500; ++i) {
        long long a = dist(rng), b = dist(rng);
        CHECK(BigInt(a) + BigInt(b) == BigInt(a + b));
        CHECK(BigInt(a) - BigInt(b) == BigInt(a - b));
        __int128 prod = static_cast<__int128>(a) * b;
        BigInt expected = BigInt(a) * BigInt(b);
        // reconstruct prod as BigInt through strings
        bool neg = prod < 0;
        unsigned __int128 m = neg ? -static_cast<unsigned __int128>(prod) : prod;
        std::string s;
        if (m == 0) s = "0";
        while (m) { s += static_cast<char>('0' + static_cast<int>(m % 10)); m /= 10; }
        std::reverse(s.begin(), s.end());
        if (neg && s != "0") s = "-" + s;
        CHECK(expected.to_string() == s);
        if (b != 0) {
            BigInt q, r;
            BigInt::divmod(BigInt(a), BigInt(b), q, r);
            CHECK(q == BigInt(a / b));
            CHECK(r == BigInt(a % b));
        }
    }
}

TEST_CASE("bigint division identity on large operands") {
    std::mt19937_64 rng(99);
    auto rand_big = [&](int limbs) {
        BigInt v(0);
        for (int i = 0; i < limbs; ++i)
            v = v * BigInt(1000000000LL) + BigInt(static_cast<long long>(rng() % 1000000000ULL));
        return v;
    };
    for (int i = 0; i < 120; ++i) {
        BigInt a = rand_big(1 + static_cast<int>(rng() % 8));
        BigInt b = rand_big(1 + static_cast<int>(rng() % 5));
        if (b.is_zero()) continue;
        if (rng() % 2) a = -a;
        if (rng() % 2) b = -b;
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(cmp(abs(r), abs(b)) < 0);
        if (!r.is_zero()) CHECK(r.sign() == a.sign());
    }
}

TEST_CASE("bigint strings and powers") {
    BigInt v("123456789012345678901234567890");
    CHECK(v.to_string() == "123456789012345678901234567890");
    CHECK((-v).to_string() == "-123456789012345678901234567890");
    CHECK(BigInt::pow(BigInt(2), 100).to_string() == "1267650600228229401496703205376");
    CHECK(BigInt::gcd(BigInt::pow(BigInt(6), 40), BigInt::pow(BigInt(15), 40)) ==
          BigInt::pow(BigInt(3), 40));
}

TEST_CASE("rational arithmetic and normalization") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(Rational(-4, -8) == Rational(1, 2));
    CHECK(Rational(4, -8) == Rational(-1, 2));
    CHECK(Rational::parse("-3/9") == Rational(-1, 3));
    CHECK(Rational(7, 2).mod1() == Rational(1, 2));
    CHECK(Rational(-1, 3).mod1() == Rational(2, 3));
    CHECK(Rational(22, 7).to_double() == doctest::Approx(22.0 / 7.0));
    CHECK_THROWS_AS(Rational(1, 0), DivisionByZero);
    // scaled conversion survives operands far beyond double range
    Rational huge(BigInt::pow(BigInt(10), 400) * BigInt(3), BigInt::pow(BigInt(10), 400));
    CHECK(huge.to_double() == doctest::Approx(3.0));
}
