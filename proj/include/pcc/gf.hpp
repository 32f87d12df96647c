#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcc/errors.hpp"

namespace pcc {

using symbol = std::uint32_t;

/// Binary extension field GF(2^w) with a fixed reduction polynomial per width.
struct FieldSpec {
    unsigned width = 8;
    std::uint32_t primitive_poly = 0x11B;

    static FieldSpec for_width(unsigned w) {
        switch (w) {
            case 2:  return {2, 0x7};       // x^2 + x + 1
            case 4:  return {4, 0x13};      // x^4 + x + 1
            case 8:  return {8, 0x11B};     // x^8 + x^4 + x^3 + x + 1
            case 16: return {16, 0x1100B};  // x^16 + x^12 + x^3 + x + 1
            default: throw InvalidParams("field width must be one of {2,4,8,16}");
        }
    }

    std::uint32_t order() const { return 1u << width; }
    symbol max_symbol() const { return order() - 1; }

    bool operator==(const FieldSpec& o) const {
        return width == o.width && primitive_poly == o.primitive_poly;
    }
};

inline symbol gf_add(symbol a, symbol b) { return a ^ b; }

/// Carry-less multiply reduced by the primitive polynomial.
inline symbol gf_mul(const FieldSpec& fs, symbol a, symbol b) {
    const std::uint32_t high_bit = 1u << fs.width;
    std::uint32_t acc = 0;
    while (b != 0) {
        if (b & 1u) acc ^= a;
        b >>= 1;
        a <<= 1;
        if (a & high_bit) a ^= fs.primitive_poly;
    }
    return acc;
}

inline symbol gf_pow(const FieldSpec& fs, symbol base, std::uint64_t e) {
    symbol result = 1;
    while (e != 0) {
        if (e & 1u) result = gf_mul(fs, result, base);
        base = gf_mul(fs, base, base);
        e >>= 1;
    }
    return result;
}

inline symbol gf_inv(const FieldSpec& fs, symbol a) {
    if (a == 0) throw ZeroInverse();
    return gf_pow(fs, a, fs.order() - 2);
}

/// A payload (file, share, key, transmission segment) as GF(2^w) symbols.
/// bit_length records the pre-padding size in bits.
struct FieldSymbolVector {
    FieldSpec spec;
    std::vector<symbol> symbols;
    std::size_t bit_length = 0;

    FieldSymbolVector() = default;
    FieldSymbolVector(FieldSpec fs, std::vector<symbol> syms)
        : spec(fs), symbols(std::move(syms)), bit_length(symbols.size() * fs.width) {}
    FieldSymbolVector(FieldSpec fs, std::vector<symbol> syms, std::size_t bits)
        : spec(fs), symbols(std::move(syms)), bit_length(bits) {}

    static FieldSymbolVector zeros(FieldSpec fs, std::size_t count) {
        return FieldSymbolVector(fs, std::vector<symbol>(count, 0));
    }

    std::size_t size() const { return symbols.size(); }
    std::size_t bits() const { return bit_length; }

    void xor_with(const FieldSymbolVector& other) {
        if (other.symbols.size() != symbols.size())
            throw InvalidParams("xor_with: length mismatch");
        for (std::size_t i = 0; i < symbols.size(); ++i)
            symbols[i] ^= other.symbols[i];
    }

    bool operator==(const FieldSymbolVector& o) const {
        return symbols == o.symbols && bit_length == o.bit_length;
    }
    bool operator!=(const FieldSymbolVector& o) const { return !(*this == o); }
};

inline FieldSymbolVector gf_xor(FieldSymbolVector a, const FieldSymbolVector& b) {
    a.xor_with(b);
    return a;
}

/// Canonical byte serialization, used as a key for joint-distribution counting.
inline void serialize_into(const FieldSymbolVector& v, std::string& out) {
    for (symbol s : v.symbols) {
        out.push_back(static_cast<char>(s & 0xFF));
        if (v.spec.width > 8) out.push_back(static_cast<char>((s >> 8) & 0xFF));
    }
    out.push_back('|');
}

inline std::string serialize(const FieldSymbolVector& v) {
    std::string out;
    serialize_into(v, out);
    return out;
}

}  // namespace pcc
