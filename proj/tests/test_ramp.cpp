#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "pcc/ramp.hpp"
#include "pcc/subsets.hpp"

using namespace pcc;

TEST_CASE("ramp parameter validation") {
    const FieldSpec fs = FieldSpec::for_width(2);
    CHECK_THROWS_AS(RampParams(2, 2, fs), InvalidParams);   // m >= n
    CHECK_THROWS_AS(RampParams(1, 4, fs), InvalidParams);   // n > 2^w - 1
    const RampParams p(1, 3, fs);
    CHECK(p.block_len(4) == 2);   // ceil(4 / (3-1))
    CHECK(p.block_len(5) == 3);
    CHECK(p.randomness_budget(4) == 2);
    CHECK(p.eval_point(0) == 1);  // points 1..n, never 0
    CHECK(p.eval_point(2) == 3);
}

TEST_CASE("share-size bound is met with equality") {
    // share size = ceil(secret / (n - m)) symbols, the §IV lower bound
    const FieldSpec fs = FieldSpec::for_width(4);
    for (unsigned n = 2; n <= 6; ++n)
        for (unsigned m = 0; m < n; ++m) {
            const RampParams p(m, n, fs);
            for (std::size_t secret = 1; secret <= 8; ++secret)
                CHECK(p.block_len(secret) == (secret + (n - m) - 1) / (n - m));
        }
}

TEST_CASE("share / reconstruct roundtrips") {
    for (unsigned w : {2u, 4u, 8u}) {
        const FieldSpec fs = FieldSpec::for_width(w);
        for (unsigned n = 2; n <= std::min<unsigned>(5, fs.max_symbol()); ++n)
            for (unsigned m = 0; m < n; ++m) {
                const RampParams p(m, n, fs);
                RandomnessTape tape = seeded_tape(fs, 1000 * w + 10 * n + m,
                                                  p.randomness_budget(7) + 7);
                const FieldSymbolVector secret = tape.draw(7);
                ShareBundle bundle = ramp_share(secret, p, tape);
                REQUIRE(bundle.shares.size() == n);
                for (const auto& s : bundle.shares)
                    REQUIRE(s.size() == p.block_len(7));
                CHECK(ramp_reconstruct(bundle) == secret);
            }
    }
}

TEST_CASE("zero-length randomness (m=0) still reconstructs") {
    const FieldSpec fs = FieldSpec::for_width(4);
    const RampParams p(0, 2, fs);
    RandomnessTape tape(fs, {});
    const FieldSymbolVector secret(fs, {5, 9, 3});
    CHECK(ramp_reconstruct(ramp_share(secret, p, tape)) == secret);
}

TEST_CASE("m=1, n=2 closed form: share = r + s*x") {
    const FieldSpec fs = FieldSpec::for_width(4);
    const RampParams p(1, 2, fs);
    for (symbol r = 0; r < fs.order(); ++r)
        for (symbol s = 0; s < fs.order(); ++s) {
            RandomnessTape tape(fs, {r});
            const ShareBundle b = ramp_share(FieldSymbolVector(fs, {s}), p, tape);
            CHECK(b.shares[0].symbols[0] == gf_add(r, gf_mul(fs, s, 1)));
            CHECK(b.shares[1].symbols[0] == gf_add(r, gf_mul(fs, s, 2)));
        }
}

TEST_CASE("single-share marginal is uniform at w=2 (m=1, n=2)") {
    const FieldSpec fs = FieldSpec::for_width(2);
    const RampParams p(1, 2, fs);
    for (symbol s = 0; s < fs.order(); ++s) {  // condition on each secret value
        std::map<symbol, unsigned> hist0, hist1;
        for (symbol r = 0; r < fs.order(); ++r) {
            RandomnessTape tape(fs, {r});
            const ShareBundle b = ramp_share(FieldSymbolVector(fs, {s}), p, tape);
            ++hist0[b.shares[0].symbols[0]];
            ++hist1[b.shares[1].symbols[0]];
        }
        for (symbol v = 0; v < fs.order(); ++v) {
            CHECK(hist0[v] == 1);
            CHECK(hist1[v] == 1);
        }
    }
}

TEST_CASE("exact leakage: zero for m-subsets, positive beyond") {
    const FieldSpec fs = FieldSpec::for_width(2);

    // (1,2): one share leaks nothing, both shares determine the secret
    const RampParams p12(1, 2, fs);
    CHECK(leakage_free_check(p12, {0}, 1) == 0.0);
    CHECK(leakage_free_check(p12, {1}, 1) == 0.0);
    CHECK(leakage_free_check(p12, {0, 1}, 1) == Catch::Approx(2.0));  // H(secret) = w bits

    // (1,3): any single share leaks nothing; two shares leak (ramp regime)
    const RampParams p13(1, 3, fs);
    for (unsigned s = 0; s < 3; ++s) CHECK(leakage_free_check(p13, {s}, 2) == 0.0);
    CHECK(leakage_free_check(p13, {0, 1}, 2) > 0.0);

    // (2,3): any two shares leak nothing
    const RampParams p23(2, 3, fs);
    CHECK(leakage_free_check(p23, {0, 1}, 1) == 0.0);
    CHECK(leakage_free_check(p23, {0, 2}, 1) == 0.0);
    CHECK(leakage_free_check(p23, {1, 2}, 1) == 0.0);
    CHECK(leakage_free_check(p23, {0, 1, 2}, 1) == Catch::Approx(2.0));
}

TEST_CASE("leakage enumeration respects the world ceiling") {
    const RampParams p(2, 3, FieldSpec::for_width(2));
    CHECK_THROWS_AS(leakage_free_check(p, {0, 1}, 20), EnumerationTooLarge);
}

TEST_CASE("every m-subset of Vandermonde columns is invertible (n <= 6, w=4)") {
    // the structural fact behind ramp privacy: the m x m minor on the
    // randomness columns 0..m-1 is invertible for any m evaluation points
    const FieldSpec fs = FieldSpec::for_width(4);
    for (unsigned n = 2; n <= 6; ++n)
        for (unsigned m = 1; m < n; ++m) {
            const RampParams p(m, n, fs);
            for (const auto& rows : k_subsets(n, m)) {
                std::vector<std::vector<symbol>> mat(m, std::vector<symbol>(m));
                for (unsigned i = 0; i < m; ++i)
                    for (unsigned j = 0; j < m; ++j)
                        mat[i][j] = gf_pow(fs, p.eval_point(rows[i] - 1), j);
                CHECK_NOTHROW(detail::gf_matrix_inverse(fs, mat));
            }
        }
}

TEST_CASE("reconstruction guards") {
    const FieldSpec fs = FieldSpec::for_width(4);
    const RampParams p(1, 3, fs);
    RandomnessTape tape = seeded_tape(fs, 5, p.randomness_budget(4) + 4);
    const FieldSymbolVector secret = tape.draw(4);
    ShareBundle bundle = ramp_share(secret, p, tape);

    ShareBundle missing = bundle;
    missing.shares.pop_back();
    CHECK_THROWS_AS(ramp_reconstruct(missing), MissingShare);

    ShareBundle truncated = bundle;
    truncated.shares[1].symbols.pop_back();
    CHECK_THROWS_AS(ramp_reconstruct(truncated), MissingShare);
}
