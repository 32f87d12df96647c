#pragma once

#include <cmath>
#include <vector>

#include "pcc/centralized.hpp"
#include "pcc/rational.hpp"

namespace pcc {

/// Achievable centralized rate: the lower convex envelope of the corner
/// points, evaluated at M. Exact rational arithmetic throughout.
inline Rational rate_centralized(unsigned num_files, unsigned num_users, const Rational& m) {
    const auto points = corner_points(num_files, num_users);
    if (m < points.front().memory || m > points.back().memory)
        throw OutOfRange("M outside [1, N(K-1)]");

    // lower convex hull in the (M, R) plane
    std::vector<CornerPoint> hull;
    for (const auto& p : points) {
        while (hull.size() >= 2) {
            const auto& a = hull[hull.size() - 2];
            const auto& b = hull[hull.size() - 1];
            // keep b only if it lies strictly below segment a-p
            const Rational lhs = (b.rate - a.rate) * (p.memory - a.memory);
            const Rational rhs = (p.rate - a.rate) * (b.memory - a.memory);
            if (lhs < rhs) break;
            hull.pop_back();
        }
        hull.push_back(p);
    }

    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        if (m == hull[i].memory) return hull[i].rate;
        if (m > hull[i].memory && m <= hull[i + 1].memory) {
            const Rational span = hull[i + 1].memory - hull[i].memory;
            const Rational alpha = (hull[i + 1].memory - m) / span;
            return alpha * hull[i].rate + (Rational(1) - alpha) * hull[i + 1].rate;
        }
    }
    return hull.back().rate;
}

struct BoundResult {
    Rational value{1};
    unsigned argmax_s = 1;
    std::vector<std::pair<unsigned, Rational>> terms;  // (s, term value)
};

/// Cut-set lower bound on the optimal private rate:
/// max over s of (s*floor(N/s) - 1 - (s-1)M) / (floor(N/s) - 1).
/// s <= N/2 guarantees floor(N/s) >= 2; values with floor(N/s) < 2 are
/// skipped defensively.
inline BoundResult lower_bound(unsigned num_files, unsigned num_users, const Rational& m) {
    const long long n = num_files, k = num_users;
    if (m < 1 || m > Rational(n * (k - 1)))
        throw OutOfRange("M outside [1, N(K-1)]");

    const long long s_max = std::min<long long>(n / 2, k);
    BoundResult result;
    bool first = true;
    for (long long s = 1; s <= s_max; ++s) {
        const long long fl = n / s;
        if (fl < 2) continue;
        const Rational term = (Rational(s * fl - 1) - Rational(s - 1) * m) / Rational(fl - 1);
        result.terms.emplace_back(static_cast<unsigned>(s), term);
        if (first || term > result.value) {
            result.value = term;
            result.argmax_s = static_cast<unsigned>(s);
            first = false;
        }
    }
    if (first) {  // no admissible s (N < 2); the standalone bound R >= ... is vacuous here
        result.value = Rational(0);
        result.argmax_s = 0;
    }
    return result;
}

/// Memory threshold above which the centralized scheme is order-optimal.
inline Rational m_zero(unsigned num_files, unsigned num_users) {
    if (num_files < 2 || num_users < 2) throw InvalidParams("m_zero requires N, K >= 2");
    const long long n = num_files, k = num_users;
    const Rational extra(n * (k - n), (n - 1) * k + n);
    return Rational(1) + std::max(Rational(0), extra);
}

/// R_C(M) / max(lower_bound, 1); the floor at 1 encodes the standalone
/// R >= 1 requirement of any private scheme.
inline double optimality_ratio(unsigned num_files, unsigned num_users, const Rational& m) {
    if (m < m_zero(num_files, num_users))
        throw BelowThreshold("M below the order-optimality threshold M_0");
    const Rational rc = rate_centralized(num_files, num_users, m);
    const Rational lb = std::max(lower_bound(num_files, num_users, m).value, Rational(1));
    return to_double(rc / lb);
}

/// Expected decentralized rate: K for M < 2, (1-(1-q')^K)/q' above, with
/// q' = (M-2)/(M+N-2); continuous (-> K) at M = 2.
inline double rate_decentralized(unsigned num_files, unsigned num_users, double m) {
    if (m < 1.0) throw OutOfRange("decentralized rate needs M >= 1");
    const double k = num_users;
    if (m <= 2.0) return k;
    const double qp = (m - 2.0) / (m + num_files - 2.0);
    return (1.0 - std::pow(1.0 - qp, k)) / qp;
}

inline double dec_cent_gap(unsigned num_files, unsigned num_users, const Rational& m) {
    const bool regime_ok = (num_files >= num_users && m >= 1) ||
                           (num_files < num_users && m >= Rational(5, 2));
    if (!regime_ok) throw BelowThreshold("outside the decentralized gap regimes");
    const double rd = rate_decentralized(num_files, num_users, to_double(m));
    const double rc = to_double(rate_centralized(num_files, num_users, m));
    return rd / rc;
}

}  // namespace pcc
