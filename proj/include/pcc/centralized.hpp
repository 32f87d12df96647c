#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "pcc/gf.hpp"
#include "pcc/ramp.hpp"
#include "pcc/rational.hpp"
#include "pcc/subsets.hpp"
#include "pcc/tape.hpp"

namespace pcc {

// ---------------------------------------------------------------------------
// Corner points of the centralized scheme.
//
// Interior corners T(t), t in {0,...,K-2}, sit at M = Nt/(K-t) + 1 with rate
// K/(1+t). The extreme corner sits at M = N(K-1) with rate 1. Intermediate M
// is served by memory sharing between adjacent corners.
// ---------------------------------------------------------------------------

enum class CornerKind { Interior, Extreme };

struct Corner {
    CornerKind kind = CornerKind::Interior;
    unsigned t = 0;  // meaningful only for Interior

    static Corner interior(unsigned t) { return {CornerKind::Interior, t}; }
    static Corner extreme() { return {CornerKind::Extreme, 0}; }
    bool is_extreme() const { return kind == CornerKind::Extreme; }
};

struct CornerPoint {
    Corner corner;
    Rational memory;  // M
    Rational rate;    // R
};

inline std::vector<CornerPoint> corner_points(unsigned num_files, unsigned num_users) {
    if (num_files < 1 || num_users < 2)
        throw InvalidParams("corner_points requires N >= 1, K >= 2");
    const long long n = num_files, k = num_users;
    std::vector<CornerPoint> points;
    for (unsigned t = 0; t + 2 <= num_users; ++t) {
        const Rational m = Rational(n * t, k - t) + 1;
        points.push_back({Corner::interior(t), m, Rational(k, 1 + t)});
    }
    const Rational m_ext(n * (k - 1), 1);
    // N = 1, K = 2 collapses the extreme corner onto T(0); keep the cheaper rate
    if (!points.empty() && points.back().memory >= m_ext) {
        while (!points.empty() && points.back().memory >= m_ext) points.pop_back();
    }
    points.push_back({Corner::extreme(), m_ext, Rational(1)});
    return points;
}

struct MemorySharePlan {
    CornerPoint low;
    CornerPoint high;
    Rational alpha;  // fraction of every file served by the low-memory corner
    Rational combined_rate;
};

inline MemorySharePlan memory_share_plan(unsigned num_files, unsigned num_users,
                                         const Rational& memory) {
    const auto points = corner_points(num_files, num_users);
    if (memory < points.front().memory || memory > points.back().memory)
        throw OutOfRange("memory outside [1, N(K-1)]");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (memory == points[i].memory)
            return {points[i], points[i], Rational(1), points[i].rate};
        if (i + 1 < points.size() && memory > points[i].memory &&
            memory < points[i + 1].memory) {
            // alpha * M_lo + (1 - alpha) * M_hi = M
            const Rational alpha =
                (points[i + 1].memory - memory) / (points[i + 1].memory - points[i].memory);
            const Rational rate =
                alpha * points[i].rate + (Rational(1) - alpha) * points[i + 1].rate;
            return {points[i], points[i + 1], alpha, rate};
        }
    }
    throw OutOfRange("memory outside corner range");
}

// ---------------------------------------------------------------------------
// Centralized system: placement / delivery / decoding at a corner.
// ---------------------------------------------------------------------------

struct CentralizedSystem {
    unsigned num_files = 1;
    unsigned num_users = 2;
    std::uint64_t file_bits = 8;
    FieldSpec spec;
    Corner corner;

    CentralizedSystem(unsigned n, unsigned k, std::uint64_t f, FieldSpec fs, Corner c)
        : num_files(n), num_users(k), file_bits(f), spec(fs), corner(c) {
        if (n < 1 || k < 2) throw InvalidParams("need N >= 1, K >= 2");
        if (f == 0 || f % fs.width != 0)
            throw InvalidParams("file size must be a positive multiple of the field width");
        if (!c.is_extreme() && c.t > k - 2) throw InvalidParams("corner t must be <= K-2");
        if (share_count() > fs.max_symbol())
            throw InvalidParams("field too small for the share count C(K,t)");
    }

    bool is_extreme() const { return corner.is_extreme(); }
    unsigned t() const { return corner.t; }
    std::size_t file_symbols() const { return file_bits / spec.width; }

    unsigned share_count() const {  // n of the ramp scheme
        if (is_extreme()) return num_users;
        if (corner.t == 0) return 1;  // no shares at T(0)
        return static_cast<unsigned>(binomial(num_users, corner.t));
    }
    unsigned privacy_threshold() const {  // m of the ramp scheme
        if (is_extreme()) return num_users - 1;
        if (corner.t == 0) return 0;
        return static_cast<unsigned>(binomial(num_users - 1, corner.t - 1));
    }
    bool uses_shares() const { return is_extreme() || corner.t >= 1; }
    bool uses_keys() const { return !is_extreme(); }

    RampParams ramp_params() const {
        return RampParams(privacy_threshold(), share_count(), spec);
    }

    std::size_t share_symbols() const {  // F_s in symbols
        if (!uses_shares()) return file_symbols();
        return ramp_params().block_len(file_symbols());
    }
    std::uint64_t share_bits() const { return share_symbols() * spec.width; }

    std::size_t key_count() const {
        if (is_extreme()) return 0;
        if (corner.t == 0) return num_users;
        return binomial(num_users, corner.t + 1);
    }
    std::size_t key_symbols() const { return corner.t == 0 ? file_symbols() : share_symbols(); }

    Rational memory() const {
        if (is_extreme()) return Rational(static_cast<long long>(num_files) * (num_users - 1));
        return Rational(static_cast<long long>(num_files) * corner.t,
                        static_cast<long long>(num_users) - corner.t) +
               1;
    }

    std::size_t tape_budget() const {
        std::size_t budget = 0;
        if (uses_shares())
            budget += static_cast<std::size_t>(num_files) *
                      ramp_params().randomness_budget(file_symbols());
        budget += key_count() * key_symbols();
        return budget;
    }
};

using DemandVector = std::vector<unsigned>;  // length K, entries in [1, N]

struct CacheContents {
    unsigned user = 0;
    // (file index 1..N, share subset index) -> share payload
    std::map<std::pair<unsigned, unsigned>, FieldSymbolVector> shares;
    // key index (subset V index; user index at T(0)) -> key payload
    std::map<unsigned, FieldSymbolVector> keys;
    std::uint64_t used_bits = 0;
};

struct ServerState {
    std::vector<FieldSymbolVector> library;
    std::vector<ShareBundle> bundles;      // per file; empty at T(0)
    std::vector<FieldSymbolVector> keys;   // per V index (per user at T(0))
    bool placed = false;
};

struct Placement {
    std::vector<CacheContents> caches;  // index 0 is user 1
    ServerState server;
};

struct Transmission {
    DemandVector demand;
    // (segment id, payload): V index at T(t>=1), user at T(0), 0 at the extreme
    std::vector<std::pair<unsigned, FieldSymbolVector>> segments;
    std::uint64_t total_bits = 0;
};

namespace detail {

inline void check_demand(const CentralizedSystem& sys, const DemandVector& d) {
    if (d.size() != sys.num_users) throw InvalidParams("demand vector must have K entries");
    for (unsigned f : d)
        if (f < 1 || f > sys.num_files) throw InvalidParams("demand entry out of [1, N]");
}

inline unsigned subset_index(const std::vector<std::vector<unsigned>>& subsets,
                             const std::vector<unsigned>& s) {
    for (unsigned i = 0; i < subsets.size(); ++i)
        if (subsets[i] == s) return i;
    throw MalformedTransmission("unknown user subset");
}

}  // namespace detail

/// Tape consumption order: per file (ascending), ramp randomness; then per
/// key subset (lexicographic), key symbols.
inline Placement place(const CentralizedSystem& sys,
                       const std::vector<FieldSymbolVector>& library, RandomnessTape& tape) {
    if (library.size() != sys.num_files) throw InvalidParams("library must have N files");
    for (const auto& f : library)
        if (f.size() != sys.file_symbols()) throw InvalidParams("file with wrong size");

    Placement placement;
    placement.server.library = library;
    placement.caches.resize(sys.num_users);
    for (unsigned k = 1; k <= sys.num_users; ++k) placement.caches[k - 1].user = k;

    if (sys.uses_shares()) {
        const RampParams rp = sys.ramp_params();
        for (unsigned i = 1; i <= sys.num_files; ++i)
            placement.server.bundles.push_back(ramp_share(library[i - 1], rp, tape));
    }

    if (sys.is_extreme()) {
        // user k caches every share except S_i^k
        for (unsigned k = 1; k <= sys.num_users; ++k) {
            auto& cache = placement.caches[k - 1];
            for (unsigned i = 1; i <= sys.num_files; ++i)
                for (unsigned j = 1; j <= sys.num_users; ++j)
                    if (j != k) {
                        cache.shares[{i, j - 1}] = placement.server.bundles[i - 1].shares[j - 1];
                        cache.used_bits += sys.share_bits();
                    }
        }
    } else if (sys.t() == 0) {
        for (unsigned k = 1; k <= sys.num_users; ++k) {
            FieldSymbolVector key = tape.draw(sys.file_symbols());
            placement.server.keys.push_back(key);
            placement.caches[k - 1].keys[k] = std::move(key);
            placement.caches[k - 1].used_bits += sys.file_bits;
        }
    } else {
        const auto t_subsets = k_subsets(sys.num_users, sys.t());
        for (unsigned k = 1; k <= sys.num_users; ++k) {
            auto& cache = placement.caches[k - 1];
            for (unsigned i = 1; i <= sys.num_files; ++i)
                for (unsigned li = 0; li < t_subsets.size(); ++li)
                    if (subset_contains(t_subsets[li], k)) {
                        cache.shares[{i, li}] = placement.server.bundles[i - 1].shares[li];
                        cache.used_bits += sys.share_bits();
                    }
        }
        const auto v_subsets = k_subsets(sys.num_users, sys.t() + 1);
        for (unsigned vi = 0; vi < v_subsets.size(); ++vi) {
            FieldSymbolVector key = tape.draw(sys.share_symbols());
            placement.server.keys.push_back(key);
            for (unsigned k : v_subsets[vi]) {
                placement.caches[k - 1].keys[vi] = key;
                placement.caches[k - 1].used_bits += sys.share_bits();
            }
        }
    }
    placement.server.placed = true;
    return placement;
}

/// drop_key_index: fault-injection hook; skips XORing the key with that
/// segment id into the transmission (-1 disables).
inline Transmission deliver(const CentralizedSystem& sys, const Placement& placement,
                            const DemandVector& d, int drop_key_index = -1) {
    if (!placement.server.placed) throw PlacementMissing("deliver before place");
    detail::check_demand(sys, d);

    Transmission x;
    x.demand = d;
    const auto& server = placement.server;

    if (sys.is_extreme()) {
        FieldSymbolVector seg = FieldSymbolVector::zeros(sys.spec, sys.share_symbols());
        for (unsigned k = 1; k <= sys.num_users; ++k)
            seg.xor_with(server.bundles[d[k - 1] - 1].shares[k - 1]);
        x.total_bits += seg.bits();
        x.segments.emplace_back(0u, std::move(seg));
    } else if (sys.t() == 0) {
        for (unsigned k = 1; k <= sys.num_users; ++k) {
            FieldSymbolVector seg = server.library[d[k - 1] - 1];
            if (static_cast<int>(k) != drop_key_index) seg.xor_with(server.keys[k - 1]);
            x.total_bits += seg.bits();
            x.segments.emplace_back(k, std::move(seg));
        }
    } else {
        const auto t_subsets = k_subsets(sys.num_users, sys.t());
        const auto v_subsets = k_subsets(sys.num_users, sys.t() + 1);
        for (unsigned vi = 0; vi < v_subsets.size(); ++vi) {
            FieldSymbolVector seg = FieldSymbolVector::zeros(sys.spec, sys.share_symbols());
            if (static_cast<int>(vi) != drop_key_index) seg.xor_with(server.keys[vi]);
            for (unsigned k : v_subsets[vi]) {  // ascending user index
                const auto l = subset_without(v_subsets[vi], k);
                const unsigned li = detail::subset_index(t_subsets, l);
                seg.xor_with(server.bundles[d[k - 1] - 1].shares[li]);
            }
            x.total_bits += seg.bits();
            x.segments.emplace_back(vi, std::move(seg));
        }
    }
    return x;
}

inline FieldSymbolVector decode(const CentralizedSystem& sys, unsigned user,
                                const CacheContents& cache, const Transmission& x) {
    detail::check_demand(sys, x.demand);
    const unsigned wanted = x.demand[user - 1];

    auto find_segment = [&](unsigned id) -> const FieldSymbolVector& {
        for (const auto& [sid, payload] : x.segments)
            if (sid == id) return payload;
        throw MalformedTransmission("missing segment");
    };

    if (sys.t() == 0 && !sys.is_extreme()) {
        FieldSymbolVector file = find_segment(user);
        file.xor_with(cache.keys.at(user));
        file.bit_length = sys.file_bits;
        return file;
    }

    ShareBundle bundle;
    bundle.params = sys.ramp_params();
    bundle.block_len = sys.share_symbols();
    bundle.secret_bits = sys.file_bits;
    bundle.secret_symbols = sys.file_symbols();
    bundle.shares.assign(sys.share_count(),
                         FieldSymbolVector::zeros(sys.spec, sys.share_symbols()));

    if (sys.is_extreme()) {
        FieldSymbolVector missing = find_segment(0);
        for (unsigned j = 1; j <= sys.num_users; ++j) {
            if (j == user) continue;
            missing.xor_with(cache.shares.at({x.demand[j - 1], j - 1}));
            bundle.shares[j - 1] = cache.shares.at({wanted, j - 1});
        }
        bundle.shares[user - 1] = std::move(missing);
    } else {
        const auto t_subsets = k_subsets(sys.num_users, sys.t());
        const auto v_subsets = k_subsets(sys.num_users, sys.t() + 1);
        for (unsigned li = 0; li < t_subsets.size(); ++li)
            if (subset_contains(t_subsets[li], user))
                bundle.shares[li] = cache.shares.at({wanted, li});
        for (unsigned vi = 0; vi < v_subsets.size(); ++vi) {
            if (!subset_contains(v_subsets[vi], user)) continue;
            FieldSymbolVector rec = find_segment(vi);
            rec.xor_with(cache.keys.at(vi));
            for (unsigned j : v_subsets[vi]) {
                if (j == user) continue;
                const auto lj = subset_without(v_subsets[vi], j);
                rec.xor_with(cache.shares.at({x.demand[j - 1],
                                              detail::subset_index(t_subsets, lj)}));
            }
            const auto lk = subset_without(v_subsets[vi], user);
            bundle.shares[detail::subset_index(t_subsets, lk)] = std::move(rec);
        }
    }
    return ramp_reconstruct(bundle);
}

// ---------------------------------------------------------------------------
// The optimal N = K = 2, M = 1 scheme (rate 1).
//
// Files split into halves W_i^1, W_i^2. Caches: Z_1 = {T_1, W_1^1^W_2^1^T_2},
// Z_2 = {T_2, W_1^2^W_2^2^T_1}. Distinct demands are served with two keyed
// half-file segments; equal demands send the file in the clear.
// ---------------------------------------------------------------------------

struct TwoByTwoUserCache {
    FieldSymbolVector key;  // T_k
    FieldSymbolVector mix;  // the keyed half-file combination
    std::uint64_t used_bits = 0;
};

struct TwoByTwoPlacement {
    std::vector<FieldSymbolVector> library;
    FieldSymbolVector key1, key2;
    TwoByTwoUserCache cache1, cache2;
};

namespace detail {

inline FieldSymbolVector half(const FieldSymbolVector& v, bool second) {
    const std::size_t h = v.size() / 2;
    std::vector<symbol> syms(v.symbols.begin() + static_cast<std::ptrdiff_t>(second ? h : 0),
                             v.symbols.begin() + static_cast<std::ptrdiff_t>(second ? 2 * h : h));
    return FieldSymbolVector(v.spec, std::move(syms));
}

}  // namespace detail

inline std::size_t tape_budget_2x2(const FieldSpec& spec, std::uint64_t file_bits) {
    return static_cast<std::size_t>(file_bits / spec.width);
}

inline TwoByTwoPlacement place_2x2(const std::vector<FieldSymbolVector>& library,
                                   RandomnessTape& tape) {
    if (library.size() != 2) throw InvalidParams("2x2 scheme requires exactly 2 files");
    const std::size_t syms = library[0].size();
    if (syms % 2 != 0 || library[1].size() != syms)
        throw InvalidParams("2x2 scheme requires an even number of symbols per file");

    TwoByTwoPlacement p;
    p.library = library;
    p.key1 = tape.draw(syms / 2);
    p.key2 = tape.draw(syms / 2);

    p.cache1.key = p.key1;
    p.cache1.mix = gf_xor(gf_xor(detail::half(library[0], false),
                                 detail::half(library[1], false)),
                          p.key2);
    p.cache2.key = p.key2;
    p.cache2.mix = gf_xor(gf_xor(detail::half(library[0], true),
                                 detail::half(library[1], true)),
                          p.key1);
    p.cache1.used_bits = p.cache1.key.bits() + p.cache1.mix.bits();
    p.cache2.used_bits = p.cache2.key.bits() + p.cache2.mix.bits();
    return p;
}

inline Transmission deliver_2x2(const TwoByTwoPlacement& p, const DemandVector& d,
                                int drop_key_index = -1) {
    if (d.size() != 2 || d[0] < 1 || d[0] > 2 || d[1] < 1 || d[1] > 2)
        throw InvalidParams("2x2 demand must be two entries in {1,2}");

    Transmission x;
    x.demand = d;
    if (d[0] == d[1]) {
        FieldSymbolVector seg = p.library[d[0] - 1];  // in the clear
        x.total_bits += seg.bits();
        x.segments.emplace_back(0u, std::move(seg));
        return x;
    }
    FieldSymbolVector seg1 = detail::half(p.library[d[0] - 1], true);
    if (drop_key_index != 1) seg1.xor_with(p.key1);
    FieldSymbolVector seg2 = detail::half(p.library[d[1] - 1], false);
    if (drop_key_index != 2) seg2.xor_with(p.key2);
    x.total_bits = seg1.bits() + seg2.bits();
    x.segments.emplace_back(1u, std::move(seg1));
    x.segments.emplace_back(2u, std::move(seg2));
    return x;
}

inline FieldSymbolVector decode_2x2(unsigned user, const TwoByTwoUserCache& cache,
                                    const Transmission& x) {
    if (user != 1 && user != 2) throw InvalidParams("2x2 user must be 1 or 2");
    if (x.demand.size() != 2) throw MalformedTransmission("demand missing");
    if (x.demand[0] == x.demand[1]) {
        if (x.segments.size() != 1) throw MalformedTransmission("expected one clear segment");
        return x.segments[0].second;
    }
    if (x.segments.size() != 2) throw MalformedTransmission("expected two segments");
    const FieldSymbolVector& seg1 = x.segments[0].second;
    const FieldSymbolVector& seg2 = x.segments[1].second;

    FieldSymbolVector first_half =
        (user == 1) ? gf_xor(cache.mix, seg2) : gf_xor(seg2, cache.key);
    FieldSymbolVector second_half =
        (user == 1) ? gf_xor(seg1, cache.key) : gf_xor(cache.mix, seg1);

    std::vector<symbol> syms = first_half.symbols;
    syms.insert(syms.end(), second_half.symbols.begin(), second_half.symbols.end());
    return FieldSymbolVector(first_half.spec, std::move(syms));
}

}  // namespace pcc
