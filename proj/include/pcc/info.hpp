#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pcc/errors.hpp"

namespace pcc {

/// Exact joint distribution over (X, Y) pairs accumulated as integer counts.
/// Independence is decided by integer cross-multiplication, so a reported
/// mutual information of 0 means identically 0, not merely below tolerance.
class JointCounter {
public:
    void add(const std::string& x, const std::string& y, std::uint64_t weight = 1) {
        counts_[{x, y}] += weight;
        marg_x_[x] += weight;
        marg_y_[y] += weight;
        total_ += weight;
    }

    std::uint64_t total() const { return total_; }

    bool exactly_independent() const {
        // Every cell of the full cross product must satisfy
        // count(x,y) * total == marg(x) * marg(y).
        for (const auto& [x, mx] : marg_x_) {
            for (const auto& [y, my] : marg_y_) {
                auto it = counts_.find({x, y});
                const std::uint64_t c = (it == counts_.end()) ? 0 : it->second;
                if (c * total_ != mx * my) return false;
            }
        }
        return true;
    }

    double mutual_information_bits() const {
        if (total_ == 0) return 0.0;
        if (exactly_independent()) return 0.0;
        const double n = static_cast<double>(total_);
        double mi = 0.0;
        for (const auto& [xy, c] : counts_) {
            const double pxy = static_cast<double>(c) / n;
            const double px = static_cast<double>(marg_x_.at(xy.first)) / n;
            const double py = static_cast<double>(marg_y_.at(xy.second)) / n;
            mi += pxy * std::log2(pxy / (px * py));
        }
        return mi;
    }

private:
    std::map<std::pair<std::string, std::string>, std::uint64_t> counts_;
    std::map<std::string, std::uint64_t> marg_x_;
    std::map<std::string, std::uint64_t> marg_y_;
    std::uint64_t total_ = 0;
};

/// I(X;Y) in bits for an explicit joint probability table (must sum to 1).
inline double mutual_information(
    const std::vector<std::pair<std::pair<std::string, std::string>, double>>& joint) {
    double sum = 0.0;
    for (const auto& [xy, p] : joint) {
        if (p < 0.0) throw NotADistribution("negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw NotADistribution("probabilities do not sum to 1");

    std::map<std::string, double> px, py;
    for (const auto& [xy, p] : joint) {
        px[xy.first] += p;
        py[xy.second] += p;
    }
    double mi = 0.0;
    for (const auto& [xy, p] : joint) {
        if (p == 0.0) continue;  // 0 log 0 = 0
        mi += p * std::log2(p / (px[xy.first] * py[xy.second]));
    }
    return mi;
}

}  // namespace pcc
