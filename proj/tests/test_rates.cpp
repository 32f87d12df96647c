#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pcc/rates.hpp"

using namespace pcc;

TEST_CASE("rational parsing") {
    CHECK(parse_rational("5/2") == Rational(5, 2));
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("-7/4") == Rational(-7, 4));
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidParams);
    CHECK_THROWS_AS(parse_rational("abc"), InvalidParams);
    CHECK(to_string(Rational(5, 2)) == "5/2");
    CHECK(to_string(Rational(4, 2)) == "2");
}

TEST_CASE("centralized rate: corner identities") {
    CHECK(rate_centralized(3, 3, Rational(1)) == Rational(3));        // M=1 -> K
    CHECK(rate_centralized(3, 3, Rational(5, 2)) == Rational(3, 2));  // t=1 corner
    CHECK(rate_centralized(3, 3, Rational(6)) == Rational(1));        // extreme
    CHECK(rate_centralized(2, 2, Rational(1)) == Rational(2));
    CHECK(rate_centralized(2, 2, Rational(2)) == Rational(1));

    // closed form K(N+M-1)/(N+(K+1)(M-1)) at interior corner memories
    for (unsigned n = 2; n <= 6; ++n)
        for (unsigned k = 2; k <= 6; ++k)
            for (const auto& pt : corner_points(n, k)) {
                if (pt.corner.is_extreme()) continue;
                const Rational m = pt.memory;
                const Rational closed =
                    Rational(k) * (Rational(n) + m - 1) /
                    (Rational(n) + Rational(k + 1) * (m - 1));
                CHECK(rate_centralized(n, k, m) == closed);
            }

    CHECK_THROWS_AS(rate_centralized(3, 3, Rational(1, 2)), OutOfRange);
    CHECK_THROWS_AS(rate_centralized(3, 3, Rational(7)), OutOfRange);
}

TEST_CASE("centralized rate is non-increasing and convex in M") {
    for (unsigned n : {2u, 3u, 5u, 8u})
        for (unsigned k : {2u, 4u, 7u}) {
            const Rational lo(1), hi(static_cast<long long>(n) * (k - 1));
            std::vector<Rational> rs;
            const int pts = 60;
            for (int i = 0; i <= pts; ++i)
                rs.push_back(rate_centralized(n, k, lo + (hi - lo) * Rational(i, pts)));
            for (std::size_t i = 0; i + 1 < rs.size(); ++i) REQUIRE(rs[i] >= rs[i + 1]);
            for (std::size_t i = 0; i + 2 < rs.size(); ++i)  // midpoint convexity
                REQUIRE(rs[i] + rs[i + 2] >= 2 * rs[i + 1]);
        }
}

TEST_CASE("lower bound: examples and argmax") {
    // N=K=4, s=2 term equals 3 - M
    for (long long num = 4; num <= 10; ++num) {
        const Rational m(num, 4);
        const BoundResult b = lower_bound(4, 4, m);
        bool found = false;
        for (const auto& [s, term] : b.terms)
            if (s == 2) {
                CHECK(term == Rational(3) - m);
                found = true;
            }
        CHECK(found);
    }
    // ...and s=2 attains the max once M is large enough that s=1's term (=1) loses
    CHECK(lower_bound(4, 4, Rational(3, 2)).value == Rational(3, 2));
    CHECK(lower_bound(4, 4, Rational(3, 2)).argmax_s == 2);

    // s=1 term is 1 for any N >= 2
    for (unsigned n = 2; n <= 9; ++n) {
        const BoundResult b = lower_bound(n, 3, Rational(2));
        CHECK(b.terms.front().first == 1);
        CHECK(b.terms.front().second == Rational(1));
    }

    // N=K=2, M=1: only s=1 admissible
    const BoundResult b22 = lower_bound(2, 2, Rational(1));
    CHECK(b22.value == Rational(1));
    CHECK(b22.terms.size() == 1);

    CHECK_THROWS_AS(lower_bound(3, 3, Rational(1, 2)), OutOfRange);
}

TEST_CASE("m_zero threshold") {
    CHECK(m_zero(3, 3) == Rational(1));  // N >= K
    CHECK(m_zero(5, 3) == Rational(1));
    CHECK(m_zero(2, 4) == Rational(5, 3));  // 1 + 2*2/(1*4+2)
    for (unsigned n = 2; n <= 12; ++n)
        for (unsigned k = 2; k <= 12; ++k) {
            const Rational m0 = m_zero(n, k);
            CHECK(m0 >= Rational(1));
            CHECK(m0 < Rational(5, 2));
            if (n >= k) CHECK(m0 == Rational(1));
        }
}

TEST_CASE("optimality ratio stays within [1, 16] and the bound never exceeds R_C") {
    for (unsigned n = 2; n <= 12; ++n)
        for (unsigned k = 2; k <= 12; ++k) {
            const Rational m0 = m_zero(n, k);
            const Rational hi(static_cast<long long>(n) * (k - 1));
            const int pts = 25;
            for (int i = 0; i <= pts; ++i) {
                const Rational m = m0 + (hi - m0) * Rational(i, pts);
                const Rational rc = rate_centralized(n, k, m);
                const Rational lb = lower_bound(n, k, m).value;
                REQUIRE(lb <= rc);  // achievability dominates the converse
                const double ratio = optimality_ratio(n, k, m);
                REQUIRE(ratio >= 1.0 - 1e-12);
                REQUIRE(ratio <= 16.0 + 1e-12);
            }
        }
    CHECK(optimality_ratio(2, 2, Rational(1)) == Catch::Approx(2.0));
    CHECK(optimality_ratio(3, 3, Rational(6)) == Catch::Approx(1.0));
    CHECK_THROWS_AS(optimality_ratio(2, 4, Rational(1)), BelowThreshold);
}

TEST_CASE("decentralized rate") {
    CHECK(rate_decentralized(5, 4, 1.0) == 4.0);
    CHECK(rate_decentralized(5, 4, 1.9) == 4.0);
    CHECK(rate_decentralized(5, 4, 2.0) == 4.0);  // continuous at M=2
    // N=10, K=15, M=4: q' = 1/6
    const double expected = 6.0 * (1.0 - std::pow(5.0 / 6.0, 15.0));
    CHECK(rate_decentralized(10, 15, 4.0) == Catch::Approx(expected));
    // large M limit -> 1
    CHECK(rate_decentralized(10, 15, 1e9) == Catch::Approx(1.0).margin(1e-6));
    CHECK_THROWS_AS(rate_decentralized(5, 4, 0.5), OutOfRange);

    // slightly above 2, the formula continuously approaches K
    CHECK(rate_decentralized(5, 4, 2.0001) == Catch::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("gap checks in the stated regimes") {
    // R_D / R_C <= 6
    for (unsigned n : {2u, 5u, 10u, 20u})
        for (unsigned k : {2u, 5u, 15u}) {
            const Rational lo = (n >= k) ? Rational(1) : Rational(5, 2);
            const Rational hi(static_cast<long long>(n) * (k - 1));
            if (lo > hi) continue;
            for (int i = 0; i <= 30; ++i) {
                const Rational m = lo + (hi - lo) * Rational(i, 30);
                REQUIRE(dec_cent_gap(n, k, m) <= 6.0 + 1e-9);
            }
        }
    // M=1, N >= K: both rates are K
    CHECK(dec_cent_gap(5, 4, Rational(1)) == Catch::Approx(1.0));
    CHECK_THROWS_AS(dec_cent_gap(2, 5, Rational(2)), BelowThreshold);

    // R_D(M) / R_C(M-1) <= 2 for M >= 2
    for (unsigned n : {2u, 4u, 9u})
        for (unsigned k : {2u, 6u, 12u}) {
            const Rational hi(static_cast<long long>(n) * (k - 1));
            for (int i = 0; i <= 30; ++i) {
                const Rational m = Rational(2) + (hi - Rational(2)) * Rational(i, 30);
                const double rd = rate_decentralized(n, k, to_double(m));
                const double rc_shift = to_double(rate_centralized(n, k, m - 1));
                REQUIRE(rd / rc_shift <= 2.0 + 1e-9);
            }
        }
}
