#pragma once

// Fixed-length binary strings used as witnesses and witness prefixes.
//
// Witnesses are stored as std::string over the characters '0' and '1' so
// that ordinary string comparison is the lexicographic order on witnesses
// and prefixes can be passed around as cheap std::string_view slices.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace totp {

using Count = mpz_class;
using Bits = std::string;
using BitsView = std::string_view;

inline Bits zeros(std::size_t n) { return Bits(n, '0'); }
inline Bits ones(std::size_t n) { return Bits(n, '1'); }

inline bool has_prefix(BitsView s, BitsView prefix) {
    return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

inline bool all_zero(BitsView s) { return s.find('1') == BitsView::npos; }

/// True iff every character is '0' or '1'.
bool is_bitstring(BitsView s);

/// Lexicographic successor among strings of the same length, or nullopt at 1^n.
std::optional<Bits> successor(BitsView s);
/// Lexicographic predecessor among strings of the same length, or nullopt at 0^n.
std::optional<Bits> predecessor(BitsView s);

/// Value of s read as an unsigned binary numeral, most significant bit first.
Count value_of(BitsView s);
/// Same as value_of for strings of at most 64 bits.
std::uint64_t small_value_of(BitsView s);

/// Width-bit big-endian encoding of v. Requires v < 2^width.
Bits encode(std::uint64_t v, std::size_t width);

/// Number of bits needed to write every value in [0, max_value].
std::size_t index_width(std::uint64_t max_value);

/// 2^e as a Count.
Count pow2(std::size_t e);

inline std::string to_decimal(const Count& c) { return c.get_str(10); }

}  // namespace totp
