#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "pcc/gf.hpp"
#include "pcc/ramp.hpp"
#include "pcc/subsets.hpp"
#include "pcc/tape.hpp"

namespace pcc {

// ---------------------------------------------------------------------------
// Decentralized scheme: each user independently caches a private key, a
// random subset of qG shares per file, and a random subset of shared keys.
// Delivery either sends one key-padded XOR segment per exclusivity class
// (event Q) or falls back to K one-time-padded whole files.
// ---------------------------------------------------------------------------

struct DecParams {
    unsigned num_files = 1;
    unsigned num_users = 2;
    std::uint64_t file_bits = 8;
    FieldSpec spec;
    double cache_size = 1.0;       // M
    unsigned shares_per_file = 0;  // G
    double slack = 0.1;            // r

    DecParams(unsigned n, unsigned k, std::uint64_t f, FieldSpec fs, double m, unsigned g,
              double r = 0.1)
        : num_files(n), num_users(k), file_bits(f), spec(fs), cache_size(m),
          shares_per_file(g), slack(r) {
        if (n < 1 || k < 1) throw InvalidParams("need N >= 1, K >= 1");
        if (m < 1.0) throw InvalidParams("decentralized scheme needs M >= 1");
        if (r <= 0.0) throw InvalidParams("slack r must be positive");
        if (f == 0 || f % fs.width != 0)
            throw InvalidParams("file size must be a positive multiple of the field width");
        if (has_share_machinery()) {
            if (g < 2 || g > fs.max_symbol())
                throw InvalidParams("share count G must be in [2, 2^w - 1]");
            if (shares_per_user() == 0 || shares_per_user() >= g)
                throw InvalidParams("qG rounds to a degenerate share subset size");
            if (keys_per_user() == 0 || keys_per_user() > key_pool_size())
                throw InvalidParams("degenerate key subset size");
        }
    }

    // M <= 2 gives q <= ~0, no share/key machinery; fallback-only regime.
    bool has_share_machinery() const { return cache_size > 2.0; }

    double q() const {
        return (cache_size - 2.0) / (cache_size + num_files + slack - 2.0);
    }

    // Floors keep the per-user memory accounting at or below M*F.
    unsigned shares_per_user() const {
        return static_cast<unsigned>(std::floor(q() * shares_per_file));
    }
    unsigned keys_per_user() const {
        return static_cast<unsigned>(std::floor(((1.0 - q()) + slack * q()) * shares_per_file));
    }
    unsigned key_pool_size() const {
        return static_cast<unsigned>(
            std::llround(shares_per_file * ((1.0 - q()) / q() + slack)));
    }

    RampParams ramp_params() const {
        return RampParams(shares_per_user(), shares_per_file, spec);
    }
    std::size_t file_symbols() const { return file_bits / spec.width; }
    std::size_t share_symbols() const {  // h in symbols
        return ramp_params().block_len(file_symbols());
    }
    std::uint64_t share_bits() const { return share_symbols() * spec.width; }

    std::size_t tape_budget() const {
        std::size_t budget = static_cast<std::size_t>(num_users) * file_symbols();
        if (!has_share_machinery()) return budget;
        budget += static_cast<std::size_t>(num_files) *
                  ramp_params().randomness_budget(file_symbols());
        budget += static_cast<std::size_t>(num_users) * num_files * (shares_per_file - 1);
        budget += static_cast<std::size_t>(key_pool_size()) * share_symbols();
        budget += static_cast<std::size_t>(num_users) * (key_pool_size() - 1);
        return budget;
    }
};

struct DecPlacement {
    std::vector<FieldSymbolVector> private_keys;  // C_k, F bits each
    std::vector<ShareBundle> share_bundles;       // per file; empty in fallback-only regime
    // [user-1][file-1] -> sorted share indices cached there
    std::vector<std::vector<std::vector<unsigned>>> user_share_sets;
    std::vector<FieldSymbolVector> key_pool;
    std::vector<std::vector<unsigned>> user_key_sets;  // [user-1] -> sorted pool indices
    std::uint64_t max_user_bits = 0;

    bool has_share_machinery() const { return !share_bundles.empty(); }
    unsigned num_users() const { return static_cast<unsigned>(private_keys.size()); }
};

namespace detail {

/// Full Fisher-Yates shuffle driven by tape symbols (swap index = symbol mod
/// (i+1)); the first `take` elements, sorted, form the sample.
inline std::vector<unsigned> tape_sample(RandomnessTape& tape, unsigned universe,
                                         unsigned take) {
    std::vector<unsigned> perm(universe);
    std::iota(perm.begin(), perm.end(), 0u);
    for (unsigned i = 1; i < universe; ++i) {
        const unsigned j = tape.draw_one() % (i + 1);
        std::swap(perm[i], perm[j]);
    }
    std::vector<unsigned> out(perm.begin(), perm.begin() + take);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// Tape order: private keys by user; ramp randomness by file; share subsets
/// by (user, file) ascending; key pool payloads; key subsets by user.
inline DecPlacement dec_place(const DecParams& params,
                              const std::vector<FieldSymbolVector>& library,
                              RandomnessTape& tape) {
    if (library.size() != params.num_files) throw InvalidParams("library must have N files");
    for (const auto& f : library)
        if (f.size() != params.file_symbols()) throw InvalidParams("file with wrong size");

    DecPlacement placement;
    for (unsigned k = 0; k < params.num_users; ++k)
        placement.private_keys.push_back(tape.draw(params.file_symbols()));

    if (params.has_share_machinery()) {
        const RampParams rp = params.ramp_params();
        for (unsigned i = 0; i < params.num_files; ++i)
            placement.share_bundles.push_back(ramp_share(library[i], rp, tape));

        placement.user_share_sets.resize(params.num_users);
        for (unsigned k = 0; k < params.num_users; ++k)
            for (unsigned i = 0; i < params.num_files; ++i)
                placement.user_share_sets[k].push_back(detail::tape_sample(
                    tape, params.shares_per_file, params.shares_per_user()));

        for (unsigned p = 0; p < params.key_pool_size(); ++p)
            placement.key_pool.push_back(tape.draw(params.share_symbols()));
        for (unsigned k = 0; k < params.num_users; ++k)
            placement.user_key_sets.push_back(detail::tape_sample(
                tape, params.key_pool_size(), params.keys_per_user()));
    } else {
        placement.user_share_sets.assign(
            params.num_users,
            std::vector<std::vector<unsigned>>(params.num_files));
        placement.user_key_sets.resize(params.num_users);
    }

    for (unsigned k = 0; k < params.num_users; ++k) {
        std::uint64_t bits = params.file_bits;  // private key
        if (params.has_share_machinery()) {
            bits += static_cast<std::uint64_t>(params.num_files) * params.shares_per_user() *
                    params.share_bits();
            bits += static_cast<std::uint64_t>(params.keys_per_user()) * params.share_bits();
        }
        placement.max_user_bits = std::max(placement.max_user_bits, bits);
    }
    return placement;
}

/// Partition of share indices (per file) and key-pool indices by the exact
/// set of users caching them. Masks use bit k-1 for user k.
struct ExclusivityIndex {
    std::vector<std::map<std::uint32_t, std::vector<unsigned>>> share_cells;  // per file
    std::map<std::uint32_t, std::vector<unsigned>> key_cells;

    const std::vector<unsigned>* share_cell(unsigned file_index, std::uint32_t mask) const {
        const auto& cells = share_cells[file_index];
        auto it = cells.find(mask);
        return it == cells.end() ? nullptr : &it->second;
    }
    const std::vector<unsigned>* key_cell(std::uint32_t mask) const {
        auto it = key_cells.find(mask);
        return it == key_cells.end() ? nullptr : &it->second;
    }
};

inline ExclusivityIndex build_exclusivity(const DecPlacement& placement,
                                          unsigned num_files, unsigned shares_per_file,
                                          unsigned key_pool_size) {
    const unsigned num_users = placement.num_users();
    ExclusivityIndex index;
    index.share_cells.resize(num_files);
    for (unsigned i = 0; i < num_files; ++i) {
        std::vector<std::uint32_t> mask(shares_per_file, 0);
        for (unsigned k = 0; k < num_users; ++k)
            for (unsigned s : placement.user_share_sets[k][i]) mask[s] |= (1u << k);
        for (unsigned s = 0; s < shares_per_file; ++s)
            index.share_cells[i][mask[s]].push_back(s);
    }
    std::vector<std::uint32_t> kmask(key_pool_size, 0);
    for (unsigned k = 0; k < num_users; ++k)
        for (unsigned p : placement.user_key_sets[k]) kmask[p] |= (1u << k);
    for (unsigned p = 0; p < key_pool_size; ++p) index.key_cells[kmask[p]].push_back(p);
    return index;
}

inline ExclusivityIndex build_exclusivity(const DecParams& params,
                                          const DecPlacement& placement) {
    return build_exclusivity(placement, params.num_files, params.shares_per_file,
                             params.has_share_machinery() ? params.key_pool_size() : 0);
}

/// Event Q: for every non-empty user subset S, the key cell U^S covers the
/// largest share operand G_{d_k}^{S \ k} over k in S.
inline bool check_Q(const ExclusivityIndex& index, const std::vector<unsigned>& demand) {
    const unsigned num_users = static_cast<unsigned>(demand.size());
    for (unsigned k = 0; k < num_users; ++k) {
        const unsigned file = demand[k] - 1;
        for (const auto& [mask, cell] : index.share_cells[file]) {
            if (cell.empty() || (mask & (1u << k))) continue;
            const std::uint32_t s_mask = mask | (1u << k);
            const auto* keys = index.key_cell(s_mask);
            if (keys == nullptr || keys->size() < cell.size()) return false;
        }
    }
    return true;
}

struct DecTransmission {
    std::vector<unsigned> demand;
    bool fallback = false;
    // Q path: (subset mask, payload of |U^S| * h bits). Fallback: (user mask, W ^ C_k).
    std::vector<std::pair<std::uint32_t, FieldSymbolVector>> segments;
    std::uint64_t total_bits = 0;
};

namespace detail {

/// Concatenation of shares/keys in ascending index order, zero-padded on the
/// right to total_symbols.
inline FieldSymbolVector padded_concat(const FieldSpec& spec,
                                       const std::vector<FieldSymbolVector>& pool,
                                       const std::vector<unsigned>& indices,
                                       std::size_t item_symbols, std::size_t total_symbols) {
    FieldSymbolVector out = FieldSymbolVector::zeros(spec, total_symbols);
    std::size_t at = 0;
    for (unsigned idx : indices) {
        for (std::size_t p = 0; p < item_symbols; ++p)
            out.symbols[at + p] = pool[idx].symbols[p];
        at += item_symbols;
    }
    return out;
}

}  // namespace detail

inline DecTransmission dec_deliver(const DecPlacement& placement,
                                   const ExclusivityIndex& index,
                                   const std::vector<unsigned>& demand,
                                   const std::vector<FieldSymbolVector>& library) {
    const unsigned num_users = placement.num_users();
    if (demand.size() != num_users) throw InvalidParams("demand must have K entries");

    DecTransmission x;
    x.demand = demand;

    if (!placement.has_share_machinery() || !check_Q(index, demand)) {
        x.fallback = true;
        for (unsigned k = 0; k < num_users; ++k) {
            FieldSymbolVector seg = library[demand[k] - 1];
            seg.xor_with(placement.private_keys[k]);
            x.total_bits += seg.bits();
            x.segments.emplace_back(1u << k, std::move(seg));
        }
        return x;
    }

    const FieldSpec spec = placement.share_bundles[0].params.spec;
    const std::size_t h = placement.share_bundles[0].block_len;
    for (const auto& [s_mask, keys] : index.key_cells) {
        if (s_mask == 0 || keys.empty()) continue;
        const std::size_t seg_syms = keys.size() * h;
        FieldSymbolVector seg =
            detail::padded_concat(spec, placement.key_pool, keys, h, seg_syms);
        for (unsigned k = 0; k < num_users; ++k) {
            if (!(s_mask & (1u << k))) continue;
            const std::uint32_t cell_mask = s_mask & ~(1u << k);
            const auto* cell = index.share_cell(demand[k] - 1, cell_mask);
            if (cell == nullptr || cell->empty()) continue;
            seg.xor_with(detail::padded_concat(
                spec, placement.share_bundles[demand[k] - 1].shares, *cell, h, seg_syms));
        }
        x.total_bits += seg.bits();
        x.segments.emplace_back(s_mask, std::move(seg));
    }
    return x;
}

inline FieldSymbolVector dec_decode(unsigned user, const DecPlacement& placement,
                                    const ExclusivityIndex& index, const DecTransmission& x) {
    const unsigned k = user - 1;
    const unsigned file = x.demand[k] - 1;

    if (x.fallback) {
        for (const auto& [mask, payload] : x.segments) {
            if (mask != (1u << k)) continue;
            FieldSymbolVector out = payload;
            out.xor_with(placement.private_keys[k]);
            return out;
        }
        throw MalformedTransmission("missing fallback segment for user");
    }

    const ShareBundle& wanted = placement.share_bundles[file];
    const FieldSpec spec = wanted.params.spec;
    const std::size_t h = wanted.block_len;

    ShareBundle collected;
    collected.params = wanted.params;
    collected.block_len = h;
    collected.secret_bits = wanted.secret_bits;
    collected.secret_symbols = wanted.secret_symbols;
    collected.shares.assign(wanted.params.share_count, FieldSymbolVector::zeros(spec, h));

    // cached shares of the demanded file
    for (unsigned s : placement.user_share_sets[k][file])
        collected.shares[s] = wanted.shares[s];

    for (const auto& [s_mask, payload] : x.segments) {
        if (!(s_mask & (1u << k))) continue;
        const std::uint32_t cell_mask = s_mask & ~(1u << k);
        const auto* cell = index.share_cell(file, cell_mask);
        if (cell == nullptr || cell->empty()) continue;

        const auto* keys = index.key_cell(s_mask);
        if (keys == nullptr) throw MalformedTransmission("segment without key cell");
        const std::size_t seg_syms = payload.size();

        FieldSymbolVector rec = payload;
        rec.xor_with(detail::padded_concat(spec, placement.key_pool, *keys, h, seg_syms));
        for (unsigned j = 0; j < placement.num_users(); ++j) {
            if (j == k || !(s_mask & (1u << j))) continue;
            const std::uint32_t other_mask = s_mask & ~(1u << j);
            const auto* other = index.share_cell(x.demand[j] - 1, other_mask);
            if (other == nullptr || other->empty()) continue;
            rec.xor_with(detail::padded_concat(
                spec, placement.share_bundles[x.demand[j] - 1].shares, *other, h, seg_syms));
        }
        for (std::size_t c = 0; c < cell->size(); ++c) {
            FieldSymbolVector share = FieldSymbolVector::zeros(spec, h);
            for (std::size_t p = 0; p < h; ++p) share.symbols[p] = rec.symbols[c * h + p];
            collected.shares[(*cell)[c]] = std::move(share);
        }
    }
    return ramp_reconstruct(collected);
}

// ---------------------------------------------------------------------------
// Statistical validation of event Q and the expected rate, payload-free: only
// the cached index sets are sampled, so large G is cheap.
// ---------------------------------------------------------------------------

struct QEstimate {
    double empirical_q_probability = 0.0;
    double chebyshev_lower_bound = 0.0;
    double mean_keyed_rate = 0.0;  // E[sum_S |U^S| * h] / F, the Q-path transmission size
    double fallback_rate = 0.0;    // K
    std::vector<unsigned> demand;
    unsigned trials = 0;
};

inline double chebyshev_q_bound(const DecParams& params) {
    const double q = params.q();
    const double k = params.num_users;
    const double g = params.shares_per_file;
    const double r = params.slack;
    return 1.0 - k * (2.0 * (1.0 - q) / q + r) /
                     (std::pow(q, k) * std::pow(1.0 - q, k - 1.0) * r * r * g);
}

/// Demand used for the estimate: all-distinct files when N >= K, else
/// round-robin over [N].
inline std::vector<unsigned> estimator_demand(unsigned num_files, unsigned num_users) {
    std::vector<unsigned> d(num_users);
    for (unsigned k = 0; k < num_users; ++k) d[k] = (k % num_files) + 1;
    return d;
}

inline QEstimate estimate_Q_probability(const DecParams& params, unsigned trials,
                                        std::uint64_t seed) {
    if (trials < 1) throw InvalidParams("trials must be >= 1");
    if (!params.has_share_machinery())
        throw InvalidParams("Q estimation requires M > 2");

    const unsigned num_users = params.num_users;
    const unsigned g = params.shares_per_file;
    const unsigned pool = params.key_pool_size();
    const double h_over_f =
        static_cast<double>(params.share_bits()) / static_cast<double>(params.file_bits);

    QEstimate est;
    est.demand = estimator_demand(params.num_files, num_users);
    est.trials = trials;
    est.chebyshev_lower_bound = chebyshev_q_bound(params);
    est.fallback_rate = num_users;

    const std::size_t syms_per_trial =
        static_cast<std::size_t>(num_users) * params.num_files * (g - 1) +
        static_cast<std::size_t>(num_users) * (pool - 1);

    unsigned q_hits = 0;
    double rate_sum = 0.0;
    for (unsigned trial = 0; trial < trials; ++trial) {
        RandomnessTape tape = seeded_tape(params.spec, seed + trial, syms_per_trial);

        DecPlacement pattern;  // index sets only; no payloads
        pattern.private_keys.resize(num_users);  // marks K users
        pattern.user_share_sets.resize(num_users);
        for (unsigned k = 0; k < num_users; ++k)
            for (unsigned i = 0; i < params.num_files; ++i)
                pattern.user_share_sets[k].push_back(
                    detail::tape_sample(tape, g, params.shares_per_user()));
        for (unsigned k = 0; k < num_users; ++k)
            pattern.user_key_sets.push_back(
                detail::tape_sample(tape, pool, params.keys_per_user()));

        const ExclusivityIndex index =
            build_exclusivity(pattern, params.num_files, g, pool);
        if (check_Q(index, est.demand)) ++q_hits;

        std::uint64_t keyed_symbols_times_h = 0;
        for (const auto& [mask, cell] : index.key_cells)
            if (mask != 0) keyed_symbols_times_h += cell.size();
        rate_sum += static_cast<double>(keyed_symbols_times_h) * h_over_f;
    }
    est.empirical_q_probability = static_cast<double>(q_hits) / trials;
    est.mean_keyed_rate = rate_sum / trials;
    return est;
}

}  // namespace pcc
