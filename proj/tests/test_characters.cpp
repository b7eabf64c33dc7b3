#include <doctest.h>

#include <set>

#include <hypertrace/characters.hpp>

using namespace hypertrace;

TEST_CASE("trivial and Legendre characters") {
    auto F13 = FiniteField::make(13, 1);
    MultChar one = trivial_char(F13);
    for (std::uint32_t x = 1; x < 13; ++x) CHECK(one.eval(x) == CycloNum::one(1));

    MultChar eps = legendre_char(F13);
    // oracle: enumerate the squares mod 13
    std::set<std::uint32_t> squares;
    for (std::uint32_t x = 1; x < 13; ++x) squares.insert((x * x) % 13);
    for (std::uint32_t x = 1; x < 13; ++x) {
        CycloNum expected = squares.count(x) ? CycloNum::one(2) : -CycloNum::one(2);
        CHECK(eps.eval(x) == expected);
    }
    CHECK(eps.eval(std::uint32_t(2)) == -CycloNum::one(2));  // 2 is a nonsquare mod 13
}

TEST_CASE("order-3 character over F_7 sends the generator to zeta_3") {
    auto F7 = FiniteField::make(7, 1);
    CHECK(F7->generator() == 3);
    MultChar eta = chi_q(1, 3, F7);
    CHECK(eta.order() == 3);
    CHECK(eta.eval(F7->generator()) == CycloNum::root_of_unity(3, 1));
}

TEST_CASE("chi_q") {
    auto F13 = FiniteField::make(13, 1);
    CHECK(chi_q(1, 2, F13) == legendre_char(F13));

    auto F7 = FiniteField::make(7, 1);
    // N = 6, q = 7: chi_q(t) = chi(t^1); direct exponentiation oracle
    MultChar c = chi_q(1, 6, F7);
    for (std::uint32_t t = 1; t < 7; ++t) {
        std::uint32_t mu = F7->pow(t, (7 - 1) / 6);  // = t, enumerates mu_6
        CHECK(mu == t);
        // chi sends zeta_6 = g^{(q-1)/6} = g to zeta_6
        long long expected_exp = static_cast<long long>(F7->dlog(mu));
        CHECK(c.eval(t) == CycloNum::root_of_unity(6, expected_exp));
    }

    CHECK_THROWS_AS(chi_q(1, 5, F7), CongruenceViolation);

    // multiplicativity in the exponent: chi_q(k) chi_q(k') = chi_q(k + k')
    for (long long k = 0; k < 6; ++k)
        for (long long kp = 0; kp < 6; ++kp) {
            MultChar lhs = chi_q(k, 6, F7) * chi_q(kp, 6, F7);
            MultChar rhs = chi_q(k + kp, 6, F7);
            CHECK(lhs == rhs);
            for (std::uint32_t t = 1; t < 7; ++t)
                CHECK(lhs.eval(t).lifted(6) == rhs.eval(t).lifted(6));
        }
}

TEST_CASE("additive character") {
    auto F5 = FiniteField::make(5, 1);
    AdditiveChar psi(F5);
    CHECK(std::abs(psi.eval(0) - std::complex<double>(1, 0)) < 1e-15);
    CHECK(std::abs(psi.eval(1) - std::polar(1.0, 2 * 3.14159265358979323846 / 5)) < 1e-12);

    std::vector<std::uint64_t> mod{3, 1, 1};
    auto F49 = FiniteField::make(7, 2, &mod);
    AdditiveChar psi49(F49);
    std::uint32_t root = 7;
    CHECK(F49->abs_trace(root) == 6);
    CHECK(std::abs(psi49.eval(root) - std::polar(1.0, -2 * 3.14159265358979323846 / 7)) < 1e-12);

    // psi(x + y) = psi(x) psi(y)
    for (std::uint32_t x = 0; x < 49; x += 11)
        for (std::uint32_t y = 0; y < 49; y += 7)
            CHECK(std::abs(psi49.eval(F49->add(x, y)) - psi49.eval(x) * psi49.eval(y)) < 1e-12);
}

TEST_CASE("orthogonality") {
    for (auto [p, d] : std::vector<std::pair<std::uint64_t, unsigned>>{{5, 1}, {13, 1}, {7, 2}}) {
        auto F = FiniteField::make(p, d);
        for (std::uint64_t e = 1; e < F->q() - 1; e += 3) {
            MultChar chi(F, e);
            long long M = static_cast<long long>(chi.order());
            ZetaSum acc(M);
            for (std::uint32_t x = 1; x < F->q(); ++x) acc.add(*chi.exp_at_level(x, M));
            CHECK(acc.to_cyclo().is_zero());
        }
        AdditiveChar psi(F);
        std::complex<double> s(0, 0);
        for (std::uint32_t x = 0; x < F->q(); ++x) s += psi.eval(x);
        CHECK(std::abs(s) < 1e-9 * static_cast<double>(F->q()));
    }
}

TEST_CASE("zero conventions") {
    auto F7 = FiniteField::make(7, 1);
    MultChar one = trivial_char(F7);
    MultChar eta = chi_q(1, 3, F7);
    CHECK(one.eval(std::uint32_t(0), ZeroRule::Jacobi) == CycloNum::one(1));
    CHECK(one.eval(std::uint32_t(0), ZeroRule::Strict).is_zero());
    CHECK(eta.eval(std::uint32_t(0), ZeroRule::Jacobi).is_zero());
    CHECK(eta.eval(std::uint32_t(0), ZeroRule::Strict).is_zero());
}
