#pragma once

#include <cstdint>
#include <vector>

#include "pcc/gf.hpp"

namespace pcc {

/// Deterministic randomness tape. Every randomized procedure in the library
/// consumes symbols from one of these; equal tapes give bit-identical runs.
struct RandomnessTape {
    FieldSpec spec;
    std::vector<symbol> stream;
    std::size_t cursor = 0;

    RandomnessTape(FieldSpec fs, std::vector<symbol> syms)
        : spec(fs), stream(std::move(syms)) {}

    std::size_t remaining() const { return stream.size() - cursor; }

    symbol draw_one() {
        if (cursor >= stream.size()) throw TapeExhausted();
        return stream[cursor++];
    }

    FieldSymbolVector draw(std::size_t count) {
        if (cursor + count > stream.size()) throw TapeExhausted();
        std::vector<symbol> out(stream.begin() + static_cast<std::ptrdiff_t>(cursor),
                                stream.begin() + static_cast<std::ptrdiff_t>(cursor + count));
        cursor += count;
        return FieldSymbolVector(spec, std::move(out));
    }
};

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Convenience tape for the CLI layer: one splitmix64 step per symbol,
/// emitting the low w bits.
inline RandomnessTape seeded_tape(FieldSpec fs, std::uint64_t seed, std::size_t count) {
    std::vector<symbol> stream;
    stream.reserve(count);
    std::uint64_t state = seed;
    for (std::size_t i = 0; i < count; ++i)
        stream.push_back(static_cast<symbol>(splitmix64_next(state) & fs.max_symbol()));
    return RandomnessTape(fs, std::move(stream));
}

}  // namespace pcc
