// Command-line front end: rate curves as CSV, seeded scheme simulations, and
// exhaustive small-instance audits.
//
// Exit codes: 0 success, 2 invalid parameters, 3 decode failure,
// 4 leakage or decoding error detected by an audit, 5 enumeration overflow.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pcc/audit.hpp"
#include "pcc/centralized.hpp"
#include "pcc/decentralized.hpp"
#include "pcc/rates.hpp"

namespace {

constexpr int kExitInvalidParams = 2;
constexpr int kExitDecodeFailure = 3;
constexpr int kExitLeakage = 4;
constexpr int kExitEnumerationOverflow = 5;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

pcc::DemandVector parse_demand(const std::string& s, unsigned num_users,
                               unsigned num_files) {
    pcc::DemandVector d;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) d.push_back(static_cast<unsigned>(std::stoul(item)));
    if (d.size() != num_users) throw pcc::InvalidParams("--demand must list K entries");
    for (unsigned f : d)
        if (f < 1 || f > num_files) throw pcc::InvalidParams("--demand entry out of [1, N]");
    return d;
}

struct Output {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file.open(path, std::ios::binary);  // binary keeps LF endings everywhere
            if (!file) throw pcc::InvalidParams("cannot open output file: " + path);
            stream = &file;
        }
    }
    std::ostream& out() { return *stream; }
};

// ----------------------------------- rates ---------------------------------

int cmd_rates(unsigned n, unsigned k, const std::string& m_str, unsigned grid,
              const std::string& out_path) {
    Output output(out_path);
    std::vector<pcc::Rational> ms;
    if (!m_str.empty()) {
        ms.push_back(pcc::parse_rational(m_str));
    } else {
        const pcc::Rational lo(1), hi(static_cast<long long>(n) * (k - 1));
        if (grid < 1) throw pcc::InvalidParams("--grid must be >= 1");
        if (grid == 1 || lo == hi) {
            ms.push_back(lo);
        } else {
            for (unsigned i = 0; i < grid; ++i)
                ms.push_back(lo + (hi - lo) * pcc::Rational(i, grid - 1));
        }
    }

    output.out() << "M,R_C,R_D,lower_bound,ratio,gap\n";
    for (const pcc::Rational& m : ms) {
        const pcc::Rational rc = pcc::rate_centralized(n, k, m);
        const double rd = pcc::rate_decentralized(n, k, pcc::to_double(m));
        const pcc::Rational lb = pcc::lower_bound(n, k, m).value;
        const pcc::Rational lb_floored = std::max(lb, pcc::Rational(1));
        const double ratio = pcc::to_double(rc / lb_floored);
        const double gap = rd / pcc::to_double(rc);
        output.out() << fmt(pcc::to_double(m)) << ',' << fmt(pcc::to_double(rc)) << ','
                     << fmt(rd) << ',' << fmt(pcc::to_double(lb)) << ',' << fmt(ratio)
                     << ',' << fmt(gap) << '\n';
    }
    return 0;
}

// --------------------------------- simulate --------------------------------

pcc::Corner pick_corner(unsigned n, unsigned k, std::optional<int> t,
                        const std::string& m_str) {
    if (t.has_value()) {
        if (*t < 0 || static_cast<unsigned>(*t) > k - 2)
            throw pcc::InvalidParams("--t must be in [0, K-2]");
        return pcc::Corner::interior(static_cast<unsigned>(*t));
    }
    if (m_str.empty()) throw pcc::InvalidParams("centralized needs --t or a corner --m");
    const pcc::Rational m = pcc::parse_rational(m_str);
    for (const auto& p : pcc::corner_points(n, k))
        if (p.memory == m) return p.corner;
    throw pcc::InvalidParams("--m is not a corner memory; use --t or memory sharing");
}

int simulate_centralized(unsigned n, unsigned k, std::optional<int> t,
                         const std::string& m_str, std::uint64_t f_bits, unsigned width,
                         std::uint64_t seed, const std::string& demand_str, Output& output) {
    const pcc::FieldSpec spec = pcc::FieldSpec::for_width(width);
    const pcc::CentralizedSystem sys(n, k, f_bits, spec, pick_corner(n, k, t, m_str));
    const pcc::DemandVector d = demand_str.empty()
                                    ? pcc::estimator_demand(n, k)
                                    : parse_demand(demand_str, k, n);

    pcc::RandomnessTape tape = pcc::seeded_tape(
        spec, seed, static_cast<std::size_t>(n) * sys.file_symbols() + sys.tape_budget());
    std::vector<pcc::FieldSymbolVector> library;
    for (unsigned i = 0; i < n; ++i) library.push_back(tape.draw(sys.file_symbols()));

    const pcc::Placement placement = pcc::place(sys, library, tape);
    const pcc::Transmission x = pcc::deliver(sys, placement, d);

    bool all_ok = true;
    std::string per_user;
    for (unsigned u = 1; u <= k; ++u) {
        const bool ok =
            pcc::decode(sys, u, placement.caches[u - 1], x).symbols ==
            library[d[u - 1] - 1].symbols;
        all_ok = all_ok && ok;
        per_user += ok ? "1" : "0";
        if (u < k) per_user += ",";
    }

    std::uint64_t cache_bits = 0;
    for (const auto& c : placement.caches) cache_bits = std::max(cache_bits, c.used_bits);

    output.out() << "scheme: centralized\n"
                 << "corner: " << (sys.is_extreme() ? "extreme" : "t=" + std::to_string(sys.t()))
                 << "\n"
                 << "memory: " << pcc::to_string(sys.memory()) << "\n"
                 << "per_cache_bits: " << cache_bits << "\n"
                 << "transmission_bits: " << x.total_bits << "\n"
                 << "measured_rate: "
                 << fmt(static_cast<double>(x.total_bits) / static_cast<double>(f_bits)) << "\n"
                 << "decode_ok: " << per_user << "\n";
    return all_ok ? 0 : kExitDecodeFailure;
}

int simulate_2x2(std::uint64_t f_bits, unsigned width, std::uint64_t seed,
                 const std::string& demand_str, Output& output) {
    const pcc::FieldSpec spec = pcc::FieldSpec::for_width(width);
    if (f_bits == 0 || f_bits % width != 0)
        throw pcc::InvalidParams("--f-bits must be a positive multiple of the field width");
    const std::size_t file_syms = f_bits / width;
    const pcc::DemandVector d =
        demand_str.empty() ? pcc::DemandVector{1, 2} : parse_demand(demand_str, 2, 2);

    pcc::RandomnessTape tape =
        pcc::seeded_tape(spec, seed, 2 * file_syms + pcc::tape_budget_2x2(spec, f_bits));
    std::vector<pcc::FieldSymbolVector> library = {tape.draw(file_syms),
                                                   tape.draw(file_syms)};
    const pcc::TwoByTwoPlacement placement = pcc::place_2x2(library, tape);
    const pcc::Transmission x = pcc::deliver_2x2(placement, d);

    bool all_ok = true;
    std::string per_user;
    for (unsigned u = 1; u <= 2; ++u) {
        const auto& cache = (u == 1) ? placement.cache1 : placement.cache2;
        const bool ok =
            pcc::decode_2x2(u, cache, x).symbols == library[d[u - 1] - 1].symbols;
        all_ok = all_ok && ok;
        per_user += ok ? "1" : "0";
        if (u < 2) per_user += ",";
    }
    output.out() << "scheme: 2x2\n"
                 << "per_cache_bits: " << placement.cache1.used_bits << "\n"
                 << "transmission_bits: " << x.total_bits << "\n"
                 << "measured_rate: "
                 << fmt(static_cast<double>(x.total_bits) / static_cast<double>(f_bits)) << "\n"
                 << "decode_ok: " << per_user << "\n";
    return all_ok ? 0 : kExitDecodeFailure;
}

int simulate_decentralized(unsigned n, unsigned k, const std::string& m_str,
                           std::uint64_t f_bits, unsigned width, unsigned g_shares,
                           double r_slack, std::uint64_t seed,
                           const std::string& demand_str, Output& output) {
    const pcc::FieldSpec spec = pcc::FieldSpec::for_width(width);
    if (m_str.empty()) throw pcc::InvalidParams("decentralized simulate needs --m");
    const double m = pcc::to_double(pcc::parse_rational(m_str));
    const pcc::DecParams params(n, k, f_bits, spec, m, g_shares, r_slack);
    const pcc::DemandVector d = demand_str.empty()
                                    ? pcc::estimator_demand(n, k)
                                    : parse_demand(demand_str, k, n);

    pcc::RandomnessTape tape = pcc::seeded_tape(
        spec, seed,
        static_cast<std::size_t>(n) * params.file_symbols() + params.tape_budget());
    std::vector<pcc::FieldSymbolVector> library;
    for (unsigned i = 0; i < n; ++i) library.push_back(tape.draw(params.file_symbols()));

    const pcc::DecPlacement placement = pcc::dec_place(params, library, tape);
    const pcc::ExclusivityIndex index = pcc::build_exclusivity(params, placement);
    const pcc::DecTransmission x = pcc::dec_deliver(placement, index, d, library);

    bool all_ok = true;
    std::string per_user;
    for (unsigned u = 1; u <= k; ++u) {
        const bool ok = pcc::dec_decode(u, placement, index, x).symbols ==
                        library[d[u - 1] - 1].symbols;
        all_ok = all_ok && ok;
        per_user += ok ? "1" : "0";
        if (u < k) per_user += ",";
    }
    output.out() << "scheme: decentralized\n"
                 << "fallback: " << (x.fallback ? "1" : "0") << "\n"
                 << "per_cache_bits: " << placement.max_user_bits << "\n"
                 << "transmission_bits: " << x.total_bits << "\n"
                 << "measured_rate: "
                 << fmt(static_cast<double>(x.total_bits) / static_cast<double>(f_bits)) << "\n"
                 << "decode_ok: " << per_user << "\n";
    return all_ok ? 0 : kExitDecodeFailure;
}

// ----------------------------------- audit ---------------------------------

void print_report(const pcc::AuditReport& report, Output& output) {
    output.out() << "scheme: " << report.scheme << "\n"
                 << "worlds: " << report.worlds << "\n";
    for (const auto& e : report.leakage) {
        output.out() << "leakage_bits d=";
        for (std::size_t i = 0; i < e.demand.size(); ++i)
            output.out() << (i ? "," : "") << e.demand[i];
        output.out() << " k=" << e.user << ": " << fmt(e.leakage_bits) << "\n";
    }
    for (const auto& [d, pe] : report.error_probability) {
        output.out() << "error_probability d=";
        for (std::size_t i = 0; i < d.size(); ++i) output.out() << (i ? "," : "") << d[i];
        output.out() << ": " << fmt(pe) << "\n";
    }
    for (const auto& [d, ev] : report.eavesdropper_bits) {
        output.out() << "eavesdropper_bits d=";
        for (std::size_t i = 0; i < d.size(); ++i) output.out() << (i ? "," : "") << d[i];
        output.out() << ": " << fmt(ev) << "\n";
    }
    output.out() << "max_leakage: " << fmt(report.max_leakage) << "\n"
                 << "max_error: " << fmt(report.max_error) << "\n"
                 << "max_eavesdropper: " << fmt(report.max_eavesdropper) << "\n";
}

int cmd_audit(const std::string& scheme, unsigned n, unsigned k, std::optional<int> t,
              const std::string& m_str, std::uint64_t f_bits, unsigned width,
              int drop_key, const std::string& out_path) {
    Output output(out_path);
    pcc::AuditOptions opt;
    opt.drop_key_index = drop_key;

    pcc::AuditReport report;
    const pcc::FieldSpec spec = pcc::FieldSpec::for_width(width);
    if (scheme == "centralized") {
        const pcc::CentralizedSystem sys(n, k, f_bits, spec, pick_corner(n, k, t, m_str));
        report = pcc::audit_centralized(sys, opt);
    } else if (scheme == "2x2") {
        report = pcc::audit_2x2(spec, f_bits, opt);
    } else if (scheme == "decentralized") {
        pcc::TinyDecScheme tiny;
        tiny.spec = spec;
        tiny.file_bits = f_bits;
        tiny.fallback_only =
            !m_str.empty() && pcc::parse_rational(m_str) < pcc::Rational(2);
        report = pcc::audit_decentralized_tiny(tiny, opt);
    } else {
        throw pcc::InvalidParams("unknown audit scheme: " + scheme);
    }

    print_report(report, output);
    if (report.max_leakage > 0.0 || report.max_error > 0.0) return kExitLeakage;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"private coded caching: rates, simulation, and exact audits"};
    app.require_subcommand(1);

    unsigned n = 2, k = 2, width = 8, grid = 50, g_shares = 100, trials = 1000;
    std::optional<int> t;
    std::string m_str, demand, out_path, scheme = "centralized";
    std::uint64_t f_bits = 32, seed = 1;
    double r_slack = 0.1;
    int drop_key = -1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--n", n, "number of files N");
        cmd->add_option("--k", k, "number of users K");
        cmd->add_option("--out", out_path, "output path (default: stdout)");
    };

    CLI::App* rates = app.add_subcommand("rates", "emit the rate/bound curve as CSV");
    add_common(rates);
    rates->add_option("--m", m_str, "single memory point as p/q");
    rates->add_option("--grid", grid, "grid points over [1, N(K-1)]");

    CLI::App* simulate = app.add_subcommand("simulate", "run one seeded placement/delivery");
    add_common(simulate);
    simulate->add_option("--scheme", scheme, "centralized | decentralized | 2x2");
    simulate->add_option("--t", t, "centralized corner t");
    simulate->add_option("--m", m_str, "memory as p/q");
    simulate->add_option("--f-bits", f_bits, "file size in bits");
    simulate->add_option("--field-width", width, "field width w in {2,4,8,16}");
    simulate->add_option("--g-shares", g_shares, "decentralized shares per file G");
    simulate->add_option("--r-slack", r_slack, "decentralized slack r");
    simulate->add_option("--seed", seed, "tape seed");
    simulate->add_option("--trials", trials, "trial count (reserved for estimators)");
    simulate->add_option("--demand", demand, "comma-separated demand vector");

    CLI::App* audit = app.add_subcommand("audit", "exhaustive leakage/error audit");
    add_common(audit);
    audit->add_option("--scheme", scheme, "centralized | decentralized | 2x2");
    audit->add_option("--t", t, "centralized corner t");
    audit->add_option("--m", m_str, "memory as p/q (selects corner / dec regime)");
    audit->add_option("--f-bits", f_bits, "file size in bits (keep tiny)");
    audit->add_option("--field-width", width, "field width w");
    audit->add_option("--fault-inject-drop-key", drop_key,
                      "omit this key index from delivery (negative control)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalidParams;
    }

    try {
        if (rates->parsed()) return cmd_rates(n, k, m_str, grid, out_path);
        if (simulate->parsed()) {
            Output output(out_path);
            if (scheme == "centralized")
                return simulate_centralized(n, k, t, m_str, f_bits, width, seed, demand,
                                            output);
            if (scheme == "2x2") return simulate_2x2(f_bits, width, seed, demand, output);
            if (scheme == "decentralized")
                return simulate_decentralized(n, k, m_str, f_bits, width, g_shares, r_slack,
                                              seed, demand, output);
            throw pcc::InvalidParams("unknown scheme: " + scheme);
        }
        if (audit->parsed())
            return cmd_audit(scheme, n, k, t, m_str, f_bits, width, drop_key, out_path);
    } catch (const pcc::EnumerationTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEnumerationOverflow;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidParams;
    }
    return 0;
}
