#include "totp/bits.hpp"

#include <bit>

#include "totp/errors.hpp"

namespace totp {

bool is_bitstring(BitsView s) {
    return s.find_first_not_of("01") == BitsView::npos;
}

std::optional<Bits> successor(BitsView s) {
    Bits out(s);
    for (std::size_t i = out.size(); i-- > 0;) {
        if (out[i] == '0') {
            out[i] = '1';
            return out;
        }
        out[i] = '0';
    }
    return std::nullopt;
}

std::optional<Bits> predecessor(BitsView s) {
    Bits out(s);
    for (std::size_t i = out.size(); i-- > 0;) {
        if (out[i] == '1') {
            out[i] = '0';
            return out;
        }
        out[i] = '1';
    }
    return std::nullopt;
}

Count value_of(BitsView s) {
    if (s.empty()) return Count(0);
    return Count(std::string(s), 2);
}

std::uint64_t small_value_of(BitsView s) {
    if (s.size() > 64) throw UsageError("small_value_of: more than 64 bits");
    std::uint64_t v = 0;
    for (char ch : s) v = (v << 1) | static_cast<std::uint64_t>(ch == '1');
    return v;
}

Bits encode(std::uint64_t v, std::size_t width) {
    if (width < 64 && (v >> width) != 0) throw UsageError("encode: value does not fit width");
    Bits out(width, '0');
    for (std::size_t i = 0; i < width && i < 64; ++i) {
        if ((v >> i) & 1U) out[width - 1 - i] = '1';
    }
    return out;
}

std::size_t index_width(std::uint64_t max_value) {
    return static_cast<std::size_t>(std::bit_width(max_value));
}

Count pow2(std::size_t e) {
    Count out;
    mpz_ui_pow_ui(out.get_mpz_t(), 2, e);
    return out;
}

}  // namespace totp
