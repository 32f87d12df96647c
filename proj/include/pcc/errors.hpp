#pragma once

#include <stdexcept>
#include <string>

namespace pcc {

struct InvalidParams : std::invalid_argument {
    explicit InvalidParams(const std::string& what) : std::invalid_argument(what) {}
};

struct ZeroInverse : std::domain_error {
    ZeroInverse() : std::domain_error("multiplicative inverse of zero") {}
};

struct TapeExhausted : std::runtime_error {
    explicit TapeExhausted(const std::string& what = "randomness tape exhausted")
        : std::runtime_error(what) {}
};

struct MissingShare : std::runtime_error {
    explicit MissingShare(const std::string& what) : std::runtime_error(what) {}
};

struct EnumerationTooLarge : std::runtime_error {
    explicit EnumerationTooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct PlacementMissing : std::logic_error {
    explicit PlacementMissing(const std::string& what) : std::logic_error(what) {}
};

struct MalformedTransmission : std::runtime_error {
    explicit MalformedTransmission(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfRange : std::out_of_range {
    explicit OutOfRange(const std::string& what) : std::out_of_range(what) {}
};

struct BelowThreshold : std::out_of_range {
    explicit BelowThreshold(const std::string& what) : std::out_of_range(what) {}
};

struct NotADistribution : std::invalid_argument {
    explicit NotADistribution(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace pcc
