#pragma once

#include <bit>
#include <cstdint>

namespace mixcert::detail {

// Lexicographic order of the ascending member lists of two bitmasks.
inline bool mask_lex_less(std::uint64_t a, std::uint64_t b) {
    const std::uint64_t diff = a ^ b;
    if (diff == 0)
        return false;
    const std::uint64_t low = diff & (~diff + 1);
    const std::uint64_t above = ~((low << 1) - 1);
    // The set holding `low` continues with `low`; the other continues with its
    // next element above `low`, or ends (and is then a proper prefix).
    if (a & low)
        return (b & above) != 0;
    return (a & above) == 0;
}

} // namespace mixcert::detail
