#include "sclim/s2b.hpp"

namespace sclim {

namespace {

// Adds two partial sums using only half-adder cells, rippling carries column by column.
std::uint32_t half_adder_add(std::uint32_t a, std::uint32_t b, std::size_t& cells) {
    while (b != 0) {
        const std::uint32_t carry = a & b;
        a ^= b;
        b = carry << 1;
        ++cells;
    }
    return a;
}

}  // namespace

S2BResult s2b_convert(const BitBundle& b, bool keep_levels) {
    const std::size_t n = b.size();
    S2BResult r;
    r.digits = length_bits(n) + 1;
    r.cycles = s2b_cycles(n);

    std::vector<std::uint32_t> level(n);
    for (std::size_t j = 0; j < n; ++j) level[j] = b.test(j) ? 1U : 0U;

    while (level.size() > 1) {
        std::vector<std::uint32_t> next(level.size() / 2);
        for (std::size_t i = 0; i < next.size(); ++i)
            next[i] = half_adder_add(level[2 * i], level[2 * i + 1], r.half_adders);
        level = std::move(next);
        ++r.steps;
        if (keep_levels) r.levels.push_back(level);
    }
    r.count = level.front();
    return r;
}

double s2b_cycles(std::size_t n) { return 4.5 * length_bits(n); }

}  // namespace sclim
