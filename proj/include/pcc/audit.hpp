#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pcc/centralized.hpp"
#include "pcc/decentralized.hpp"
#include "pcc/info.hpp"

namespace pcc {

// ---------------------------------------------------------------------------
// Exact brute-force auditor: enumerates every (library, randomness tape)
// world at reduced scale and measures the defining guarantees directly --
// per-user leakage I(W_others; X_d, Z_k), worst-case error probability, and
// eavesdropper leakage I(W_all; X_d). All probabilities are exact counts;
// a reported leakage of 0 means identically 0.
// ---------------------------------------------------------------------------

struct AuditOptions {
    std::uint64_t world_ceiling = (1ull << 26);
    int drop_key_index = -1;  // fault injection: omit this key from delivery
};

struct LeakageEntry {
    DemandVector demand;
    unsigned user = 0;
    double leakage_bits = 0.0;
};

struct AuditReport {
    std::string scheme;
    std::uint64_t worlds = 0;
    std::vector<LeakageEntry> leakage;                              // per (d, k)
    std::vector<std::pair<DemandVector, double>> error_probability; // per d
    std::vector<std::pair<DemandVector, double>> eavesdropper_bits; // per d
    double max_leakage = 0.0;
    double max_error = 0.0;
    double max_eavesdropper = 0.0;
};

struct DemandOutcome {
    std::string transcript;
    std::vector<bool> decode_ok;
};

/// A scheme under audit: place once per world, then answer every demand.
struct WorldAuditHooks {
    unsigned num_files = 0;
    unsigned num_users = 0;
    std::size_t file_symbols = 0;
    FieldSpec spec;
    std::size_t tape_budget = 0;
    std::function<void(const std::vector<FieldSymbolVector>&, RandomnessTape&)> place;
    std::function<DemandOutcome(const DemandVector&)> run_demand;
    std::function<std::string(unsigned user)> cache_view;
};

inline std::vector<DemandVector> all_demands(unsigned num_files, unsigned num_users) {
    std::vector<DemandVector> out;
    DemandVector d(num_users, 1);
    while (true) {
        out.push_back(d);
        unsigned i = 0;
        while (i < num_users) {
            if (++d[i] <= num_files) break;
            d[i] = 1;
            ++i;
        }
        if (i == num_users) break;
    }
    return out;
}

/// One full world pass per demand keeps the joint counters for a single
/// demand in memory at a time.
inline AuditReport audit_worlds(const WorldAuditHooks& hooks,
                                const std::vector<DemandVector>& demands,
                                const AuditOptions& opt = {}) {
    const std::uint64_t q = hooks.spec.order();
    const std::size_t lib_syms = hooks.num_files * hooks.file_symbols;
    const std::size_t total_syms = lib_syms + hooks.tape_budget;

    std::uint64_t worlds = 1;
    for (std::size_t i = 0; i < total_syms; ++i) {
        if (worlds > opt.world_ceiling / q)
            throw EnumerationTooLarge("world enumeration above configured ceiling");
        worlds *= q;
    }

    AuditReport report;
    report.worlds = worlds;

    for (const DemandVector& d : demands) {
        std::vector<JointCounter> user_joints(hooks.num_users);
        JointCounter eaves_joint;
        std::uint64_t error_worlds = 0;

        std::vector<symbol> assignment(total_syms, 0);
        while (true) {
            std::vector<FieldSymbolVector> library;
            library.reserve(hooks.num_files);
            for (unsigned i = 0; i < hooks.num_files; ++i) {
                std::vector<symbol> syms(
                    assignment.begin() + static_cast<std::ptrdiff_t>(i * hooks.file_symbols),
                    assignment.begin() +
                        static_cast<std::ptrdiff_t>((i + 1) * hooks.file_symbols));
                library.emplace_back(hooks.spec, std::move(syms));
            }
            RandomnessTape tape(hooks.spec,
                                std::vector<symbol>(assignment.begin() +
                                                        static_cast<std::ptrdiff_t>(lib_syms),
                                                    assignment.end()));
            hooks.place(library, tape);

            const DemandOutcome outcome = hooks.run_demand(d);
            bool any_error = false;
            for (unsigned k = 1; k <= hooks.num_users; ++k) {
                if (!outcome.decode_ok[k - 1]) any_error = true;
                std::string others;
                for (unsigned i = 1; i <= hooks.num_files; ++i)
                    if (i != d[k - 1]) serialize_into(library[i - 1], others);
                user_joints[k - 1].add(others, outcome.transcript + hooks.cache_view(k));
            }
            if (any_error) ++error_worlds;

            std::string all_files_key;
            for (const auto& f : library) serialize_into(f, all_files_key);
            eaves_joint.add(all_files_key, outcome.transcript);

            std::size_t i = 0;
            while (i < total_syms) {
                if (++assignment[i] < q) break;
                assignment[i] = 0;
                ++i;
            }
            if (i == total_syms) break;
        }

        for (unsigned k = 1; k <= hooks.num_users; ++k) {
            const double bits = user_joints[k - 1].mutual_information_bits();
            report.leakage.push_back({d, k, bits});
            report.max_leakage = std::max(report.max_leakage, bits);
        }
        const double pe = static_cast<double>(error_worlds) / static_cast<double>(worlds);
        report.error_probability.emplace_back(d, pe);
        report.max_error = std::max(report.max_error, pe);
        const double ev = eaves_joint.mutual_information_bits();
        report.eavesdropper_bits.emplace_back(d, ev);
        report.max_eavesdropper = std::max(report.max_eavesdropper, ev);
    }
    return report;
}

// --------------------------- scheme adapters ------------------------------

inline WorldAuditHooks make_centralized_hooks(const CentralizedSystem& sys,
                                              int drop_key_index = -1) {
    auto state = std::make_shared<Placement>();
    auto sys_copy = std::make_shared<CentralizedSystem>(sys);

    WorldAuditHooks hooks;
    hooks.num_files = sys.num_files;
    hooks.num_users = sys.num_users;
    hooks.file_symbols = sys.file_symbols();
    hooks.spec = sys.spec;
    hooks.tape_budget = sys.tape_budget();
    hooks.place = [state, sys_copy](const std::vector<FieldSymbolVector>& library,
                                    RandomnessTape& tape) {
        *state = place(*sys_copy, library, tape);
    };
    hooks.run_demand = [state, sys_copy, drop_key_index](const DemandVector& d) {
        const Transmission x = deliver(*sys_copy, *state, d, drop_key_index);
        DemandOutcome out;
        for (const auto& [id, payload] : x.segments) serialize_into(payload, out.transcript);
        for (unsigned k = 1; k <= sys_copy->num_users; ++k) {
            const FieldSymbolVector got = decode(*sys_copy, k, state->caches[k - 1], x);
            out.decode_ok.push_back(got.symbols ==
                                    state->server.library[d[k - 1] - 1].symbols);
        }
        return out;
    };
    hooks.cache_view = [state](unsigned user) {
        const CacheContents& cache = state->caches[user - 1];
        std::string view;
        for (const auto& [key, payload] : cache.shares) serialize_into(payload, view);
        for (const auto& [key, payload] : cache.keys) serialize_into(payload, view);
        return view;
    };
    return hooks;
}

inline WorldAuditHooks make_2x2_hooks(const FieldSpec& spec, std::uint64_t file_bits,
                                      int drop_key_index = -1) {
    auto state = std::make_shared<TwoByTwoPlacement>();

    WorldAuditHooks hooks;
    hooks.num_files = 2;
    hooks.num_users = 2;
    hooks.file_symbols = file_bits / spec.width;
    hooks.spec = spec;
    hooks.tape_budget = tape_budget_2x2(spec, file_bits);
    hooks.place = [state](const std::vector<FieldSymbolVector>& library,
                          RandomnessTape& tape) { *state = place_2x2(library, tape); };
    hooks.run_demand = [state, drop_key_index](const DemandVector& d) {
        const Transmission x = deliver_2x2(*state, d, drop_key_index);
        DemandOutcome out;
        for (const auto& [id, payload] : x.segments) serialize_into(payload, out.transcript);
        for (unsigned k = 1; k <= 2; ++k) {
            const TwoByTwoUserCache& cache = (k == 1) ? state->cache1 : state->cache2;
            const FieldSymbolVector got = decode_2x2(k, cache, x);
            out.decode_ok.push_back(got.symbols == state->library[d[k - 1] - 1].symbols);
        }
        return out;
    };
    hooks.cache_view = [state](unsigned user) {
        const TwoByTwoUserCache& cache = (user == 1) ? state->cache1 : state->cache2;
        std::string view;
        serialize_into(cache.key, view);
        serialize_into(cache.mix, view);
        return view;
    };
    return hooks;
}

/// Tiny decentralized instance with a fixed caching pattern so that the
/// remaining randomness (private keys, ramp randomness, key-pool payloads)
/// stays exhaustively enumerable. N = K = 2, G = 2.
///
/// Q-path pattern: user 1 caches share 0 of each file, user 2 caches share 1,
/// and both users cache pool key 0 (event Q holds for every demand).
struct TinyDecScheme {
    FieldSpec spec = FieldSpec::for_width(2);
    std::uint64_t file_bits = 2;
    bool fallback_only = false;  // true models the 1 <= M < 2 regime

    std::size_t file_symbols() const { return file_bits / spec.width; }
    static constexpr unsigned kPoolSize = 2;

    std::size_t tape_budget() const {
        std::size_t budget = 2 * file_symbols();  // private keys
        if (fallback_only) return budget;
        const RampParams rp = ramp_params();
        budget += 2 * rp.randomness_budget(file_symbols());            // per file
        budget += kPoolSize * rp.block_len(file_symbols());            // pool payloads
        return budget;
    }
    RampParams ramp_params() const { return RampParams(1, 2, spec); }
};

inline WorldAuditHooks make_tiny_dec_hooks(const TinyDecScheme& scheme) {
    struct State {
        DecPlacement placement;
        ExclusivityIndex index;
        std::vector<FieldSymbolVector> library;
    };
    auto state = std::make_shared<State>();
    auto cfg = std::make_shared<TinyDecScheme>(scheme);

    WorldAuditHooks hooks;
    hooks.num_files = 2;
    hooks.num_users = 2;
    hooks.file_symbols = scheme.file_symbols();
    hooks.spec = scheme.spec;
    hooks.tape_budget = scheme.tape_budget();
    hooks.place = [state, cfg](const std::vector<FieldSymbolVector>& library,
                               RandomnessTape& tape) {
        DecPlacement p;
        p.private_keys = {tape.draw(cfg->file_symbols()), tape.draw(cfg->file_symbols())};
        p.user_share_sets.resize(2);
        p.user_key_sets.resize(2);
        if (!cfg->fallback_only) {
            const RampParams rp = cfg->ramp_params();
            p.share_bundles = {ramp_share(library[0], rp, tape),
                               ramp_share(library[1], rp, tape)};
            const std::size_t h = p.share_bundles[0].block_len;
            for (unsigned i = 0; i < TinyDecScheme::kPoolSize; ++i)
                p.key_pool.push_back(tape.draw(h));
            p.user_share_sets[0] = {{0u}, {0u}};  // user 1: share 0 of each file
            p.user_share_sets[1] = {{1u}, {1u}};  // user 2: share 1 of each file
            p.user_key_sets[0] = {0u};            // both users cache pool key 0
            p.user_key_sets[1] = {0u};
        } else {
            p.user_share_sets[0] = {{}, {}};  // per-file entries, all empty
            p.user_share_sets[1] = {{}, {}};
        }
        state->placement = std::move(p);
        state->index = build_exclusivity(state->placement, 2, 2,
                                         cfg->fallback_only ? 0u : TinyDecScheme::kPoolSize);
        state->library = library;
    };
    hooks.run_demand = [state](const DemandVector& d) {
        const DecTransmission x =
            dec_deliver(state->placement, state->index, d, state->library);
        DemandOutcome out;
        for (const auto& [mask, payload] : x.segments) serialize_into(payload, out.transcript);
        for (unsigned k = 1; k <= 2; ++k) {
            const FieldSymbolVector got =
                dec_decode(k, state->placement, state->index, x);
            out.decode_ok.push_back(got.symbols == state->library[d[k - 1] - 1].symbols);
        }
        return out;
    };
    hooks.cache_view = [state](unsigned user) {
        std::string view;
        serialize_into(state->placement.private_keys[user - 1], view);
        if (state->placement.has_share_machinery()) {
            for (unsigned i = 0; i < 2; ++i)
                for (unsigned s : state->placement.user_share_sets[user - 1][i])
                    serialize_into(state->placement.share_bundles[i].shares[s], view);
            for (unsigned p : state->placement.user_key_sets[user - 1])
                serialize_into(state->placement.key_pool[p], view);
        }
        return view;
    };
    return hooks;
}

// ------------------------------ entry points -------------------------------

inline AuditReport audit_centralized(const CentralizedSystem& sys,
                                     const std::vector<DemandVector>& demands,
                                     const AuditOptions& opt = {}) {
    auto report = audit_worlds(make_centralized_hooks(sys, opt.drop_key_index), demands, opt);
    report.scheme = sys.is_extreme() ? "centralized-extreme"
                                     : "centralized-t" + std::to_string(sys.t());
    return report;
}

inline AuditReport audit_centralized(const CentralizedSystem& sys,
                                     const AuditOptions& opt = {}) {
    return audit_centralized(sys, all_demands(sys.num_files, sys.num_users), opt);
}

inline double audit_eavesdropper(const CentralizedSystem& sys, const DemandVector& d,
                                 const AuditOptions& opt = {}) {
    const auto report = audit_worlds(make_centralized_hooks(sys, opt.drop_key_index), {d}, opt);
    return report.eavesdropper_bits.front().second;
}

inline AuditReport audit_2x2(const FieldSpec& spec, std::uint64_t file_bits,
                             const AuditOptions& opt = {}) {
    auto report = audit_worlds(make_2x2_hooks(spec, file_bits, opt.drop_key_index),
                               all_demands(2, 2), opt);
    report.scheme = "2x2-optimal";
    return report;
}

inline AuditReport audit_decentralized_tiny(const TinyDecScheme& scheme,
                                            const AuditOptions& opt = {}) {
    auto report = audit_worlds(make_tiny_dec_hooks(scheme), all_demands(2, 2), opt);
    report.scheme = scheme.fallback_only ? "decentralized-tiny-fallback"
                                         : "decentralized-tiny-q";
    return report;
}

}  // namespace pcc
