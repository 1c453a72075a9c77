#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sclim/bitstream.hpp"

namespace sclim {

struct S2BResult {
    std::uint32_t count = 0;
    /// Output width in digits: log2(N) + 1 so that an all-ones stream fits.
    unsigned digits = 0;
    /// Tree levels traversed; log2(N).
    unsigned steps = 0;
    double cycles = 0.0;
    /// Half-adder cells fired across the whole tree.
    std::size_t half_adders = 0;
    /// Partial sums after each level; level k holds N / 2^(k+1) entries.
    std::vector<std::vector<std::uint32_t>> levels;
};

/// Reduces the stream with a pairwise tree whose adders are built only from
/// half-adder cells (sum = XOR, carry = AND into the next column).
S2BResult s2b_convert(const BitBundle& b, bool keep_levels = false);

/// Each tree level costs 4.5 cycles, so conversion takes 4.5 * log2(N).
double s2b_cycles(std::size_t n);

}  // namespace sclim
