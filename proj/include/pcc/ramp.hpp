#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcc/gf.hpp"
#include "pcc/info.hpp"
#include "pcc/tape.hpp"

namespace pcc {

/// (m, n) ramp secret sharing over GF(2^w): any m shares reveal nothing,
/// all n shares reconstruct the secret, share size = ceil(secret / (n - m)).
///
/// Construction: per symbol position, a degree-(n-1) polynomial whose m low
/// coefficients are tape randomness and whose n-m high coefficients carry the
/// secret blocks; share j is the evaluation at point j+1.
struct RampParams {
    unsigned privacy_threshold = 0;  // m
    unsigned share_count = 1;        // n
    FieldSpec spec;

    RampParams() = default;
    RampParams(unsigned m, unsigned n, FieldSpec fs)
        : privacy_threshold(m), share_count(n), spec(fs) {
        if (m >= n) throw InvalidParams("ramp sharing requires m < n");
        if (n > fs.max_symbol())
            throw InvalidParams("ramp sharing requires n <= 2^w - 1 evaluation points");
    }

    symbol eval_point(unsigned share_index) const { return share_index + 1; }

    unsigned block_count() const { return share_count - privacy_threshold; }

    std::size_t block_len(std::size_t secret_symbols) const {
        const unsigned blocks = block_count();
        return (secret_symbols + blocks - 1) / blocks;
    }

    std::size_t randomness_budget(std::size_t secret_symbols) const {
        return static_cast<std::size_t>(privacy_threshold) * block_len(secret_symbols);
    }
};

struct ShareBundle {
    RampParams params;
    std::vector<FieldSymbolVector> shares;  // share_count entries, block_len symbols each
    std::size_t block_len = 0;
    std::size_t secret_bits = 0;
    std::size_t secret_symbols = 0;
};

namespace detail {

inline symbol eval_poly(const FieldSpec& fs, const std::vector<symbol>& coeffs, symbol x) {
    symbol acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;)
        acc = gf_add(gf_mul(fs, acc, x), coeffs[i]);
    return acc;
}

/// Gauss-Jordan inverse over GF(2^w); the caller guarantees invertibility
/// (Vandermonde on distinct points).
inline std::vector<std::vector<symbol>> gf_matrix_inverse(
    const FieldSpec& fs, std::vector<std::vector<symbol>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<symbol>> inv(n, std::vector<symbol>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) throw InvalidParams("singular matrix in ramp reconstruction");
        std::swap(a[pivot], a[col]);
        std::swap(inv[pivot], inv[col]);
        const symbol scale = gf_inv(fs, a[col][col]);
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] = gf_mul(fs, a[col][j], scale);
            inv[col][j] = gf_mul(fs, inv[col][j], scale);
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || a[row][col] == 0) continue;
            const symbol factor = a[row][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[row][j] ^= gf_mul(fs, factor, a[col][j]);
                inv[row][j] ^= gf_mul(fs, factor, inv[col][j]);
            }
        }
    }
    return inv;
}

inline std::vector<std::vector<symbol>> vandermonde(const RampParams& p) {
    const unsigned n = p.share_count;
    std::vector<std::vector<symbol>> v(n, std::vector<symbol>(n));
    for (unsigned row = 0; row < n; ++row)
        for (unsigned col = 0; col < n; ++col)
            v[row][col] = gf_pow(p.spec, p.eval_point(row), col);
    return v;
}

}  // namespace detail

/// Tape consumption is position-major: all m coefficients for position 0,
/// then position 1, and so on.
inline ShareBundle ramp_share(const FieldSymbolVector& secret, const RampParams& params,
                              RandomnessTape& tape) {
    if (!(secret.spec == params.spec)) throw InvalidParams("secret/params field mismatch");
    const unsigned m = params.privacy_threshold;
    const unsigned n = params.share_count;
    const std::size_t secret_syms = secret.size();
    const std::size_t blk = params.block_len(secret_syms);

    ShareBundle bundle;
    bundle.params = params;
    bundle.block_len = blk;
    bundle.secret_bits = secret.bit_length;
    bundle.secret_symbols = secret_syms;
    bundle.shares.assign(n, FieldSymbolVector::zeros(params.spec, blk));

    std::vector<symbol> coeffs(n, 0);
    for (std::size_t pos = 0; pos < blk; ++pos) {
        for (unsigned i = 0; i < m; ++i) coeffs[i] = tape.draw_one();
        for (unsigned j = 0; j + m < n; ++j) {
            const std::size_t idx = static_cast<std::size_t>(j) * blk + pos;
            coeffs[m + j] = (idx < secret_syms) ? secret.symbols[idx] : 0;
        }
        for (unsigned s = 0; s < n; ++s)
            bundle.shares[s].symbols[pos] =
                detail::eval_poly(params.spec, coeffs, params.eval_point(s));
    }
    return bundle;
}

inline FieldSymbolVector ramp_reconstruct(const ShareBundle& bundle) {
    const RampParams& p = bundle.params;
    const unsigned m = p.privacy_threshold;
    const unsigned n = p.share_count;
    if (bundle.shares.size() != n)
        throw MissingShare("reconstruction requires all n shares");
    for (const auto& s : bundle.shares)
        if (s.size() != bundle.block_len)
            throw MissingShare("share with wrong block length");

    const auto vinv = detail::gf_matrix_inverse(p.spec, detail::vandermonde(p));

    FieldSymbolVector secret = FieldSymbolVector::zeros(p.spec, bundle.secret_symbols);
    secret.bit_length = bundle.secret_bits;
    for (std::size_t pos = 0; pos < bundle.block_len; ++pos) {
        for (unsigned j = 0; j + m < n; ++j) {
            const std::size_t idx = static_cast<std::size_t>(j) * bundle.block_len + pos;
            if (idx >= bundle.secret_symbols) continue;
            symbol acc = 0;
            for (unsigned s = 0; s < n; ++s)
                acc ^= gf_mul(p.spec, vinv[m + j][s], bundle.shares[s].symbols[pos]);
            secret.symbols[idx] = acc;
        }
    }
    return secret;
}

/// Brute-force I(secret; shares[subset]) in bits over all secrets of the
/// given symbol length and all randomness tapes. Exactly 0 for |subset| = m.
inline double leakage_free_check(const RampParams& params,
                                 const std::vector<unsigned>& subset,
                                 std::size_t secret_symbols,
                                 std::uint64_t world_ceiling = (1ull << 26)) {
    const std::uint64_t q = params.spec.order();
    const std::size_t tape_syms = params.randomness_budget(secret_symbols);

    // world count = q^(secret_symbols + tape_syms)
    std::uint64_t worlds = 1;
    for (std::size_t i = 0; i < secret_symbols + tape_syms; ++i) {
        if (worlds > world_ceiling / q)
            throw EnumerationTooLarge("leakage_free_check enumeration above ceiling");
        worlds *= q;
    }

    // mixed-radix odometer; runs the body exactly once for an empty vector
    auto next_assignment = [&](std::vector<symbol>& v) {
        std::size_t i = 0;
        while (i < v.size()) {
            if (++v[i] < q) return true;
            v[i] = 0;
            ++i;
        }
        return false;
    };

    JointCounter joint;
    std::vector<symbol> secret_vals(secret_symbols, 0);
    do {
        FieldSymbolVector secret(params.spec, secret_vals);
        std::string xkey = serialize(secret);
        std::vector<symbol> tape_vals(tape_syms, 0);
        do {
            RandomnessTape tape(params.spec, tape_vals);
            ShareBundle bundle = ramp_share(secret, params, tape);
            std::string ykey;
            for (unsigned s : subset) serialize_into(bundle.shares[s], ykey);
            joint.add(xkey, ykey);
        } while (next_assignment(tape_vals));
    } while (next_assignment(secret_vals));
    return joint.mutual_information_bits();
}

}  // namespace pcc
