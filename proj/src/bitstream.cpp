#include "sclim/bitstream.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "sclim/error.hpp"
#include "sclim/rng.hpp"

namespace sclim {

bool is_valid_length(std::size_t n) {
    return n >= 2 && n <= kMaxLength && std::has_single_bit(n);
}

unsigned length_bits(std::size_t n) {
    if (!is_valid_length(n)) throw ParamError("stream length must be a power of two in [2, 65536]");
    return static_cast<unsigned>(std::countr_zero(n));
}

BitBundle::BitBundle(std::size_t n, Provenance prov) : n_(n), prov_(prov) {
    if (!is_valid_length(n)) throw ParamError("stream length must be a power of two in [2, 65536]");
    words_.assign((n + 63) / 64, 0);
}

BitBundle BitBundle::ones(std::size_t n, Provenance prov) {
    BitBundle b(n, prov);
    std::fill(b.words_.begin(), b.words_.end(), ~std::uint64_t{0});
    b.words_.back() &= b.tail_mask();
    return b;
}

BitBundle BitBundle::parse(std::string_view text) {
    BitBundle b(text.size());
    for (std::size_t j = 0; j < text.size(); ++j) {
        if (text[j] != '0' && text[j] != '1') throw ParamError("stream text must contain only '0' and '1'");
        b.set(j, text[j] == '1');
    }
    return b;
}

void BitBundle::set(std::size_t j, bool v) {
    const std::uint64_t bit = std::uint64_t{1} << (j & 63);
    if (v)
        words_[j >> 6] |= bit;
    else
        words_[j >> 6] &= ~bit;
}

std::size_t BitBundle::popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
}

std::uint64_t BitBundle::tail_mask() const {
    return n_ >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
}

std::string BitBundle::to_string() const {
    std::string s(n_, '0');
    for (std::size_t j = 0; j < n_; ++j)
        if (test(j)) s[j] = '1';
    return s;
}

namespace {

std::uint32_t rotl_bits(std::uint32_t j, unsigned r, unsigned m) {
    if (r == 0) return j;
    const std::uint32_t full = max_word(m);
    return ((j << r) | (j >> (m - r))) & full;
}

}  // namespace

std::uint32_t max_word(unsigned bits) { return (std::uint32_t{1} << bits) - 1; }

MappingPattern::MappingPattern(unsigned bits, Variant variant) : bits_(bits), variant_(variant) {
    if (bits < 1 || bits > 16) throw ParamError("pattern width must be in [1, 16]");
    if (variant.rotation >= bits) throw ParamError("rotation must be below the pattern width");
    if (variant.mask > max_word(bits)) throw ParamError("xor mask must be below 2^m");

    const std::size_t n = size();
    const std::size_t nwords = (n + 63) / 64;
    assignment_.resize(n);
    digit_masks_.assign(bits, std::vector<std::uint64_t>(nwords, 0));
    for (std::size_t j = 0; j < n; ++j) {
        const std::uint32_t jp = rotl_bits(static_cast<std::uint32_t>(j), variant.rotation, bits) ^ variant.mask;
        const auto trailing = static_cast<unsigned>(std::countr_one(jp));
        if (trailing >= bits) {
            assignment_[j] = kConst0;
            continue;
        }
        const unsigned digit = bits - 1 - trailing;
        assignment_[j] = static_cast<std::int8_t>(digit);
        digit_masks_[digit][j >> 6] |= std::uint64_t{1} << (j & 63);
    }
}

MappingPattern make_pattern(unsigned bits, unsigned rotation, std::uint32_t mask) {
    return MappingPattern(bits, Variant{rotation, mask});
}

PatternAllocator::PatternAllocator(unsigned bits) : bits_(bits) {
    if (bits < 1 || bits > 16) throw ParamError("pattern width must be in [1, 16]");
    // A third of a turn between consecutive groups; tuned on the function chains.
    stride_ = std::max(1U, (2 * bits + 3) / 6);
    next_mask_.assign(bits, 0);
}

void PatternAllocator::advance_from(unsigned from) { base_ = (from + stride_) % bits_; }

Variant PatternAllocator::draw_at(unsigned rotation) {
    if (rotation >= bits_) throw ParamError("rotation must be below the pattern width");
    if (next_mask_[rotation] > max_word(bits_))
        throw ExhaustedError("pattern allocator exhausted for rotation " + std::to_string(rotation));
    Variant v{rotation, next_mask_[rotation]++};
    issued_.push_back(v);
    return v;
}

std::vector<Variant> PatternAllocator::draw_group(std::size_t k, int avoid_last) {
    if (k == 0) return {};
    const auto m = static_cast<std::size_t>(bits_);
    auto rotation_of = [&](std::size_t base, std::size_t i) {
        return static_cast<unsigned>((base + (i * m) / k) % m);
    };
    std::size_t base = base_;
    if (avoid_last >= 0) {
        for (std::size_t shift = 0; shift < m; ++shift) {
            if (rotation_of(base_ + shift, k - 1) != static_cast<unsigned>(avoid_last)) {
                base = base_ + shift;
                break;
            }
        }
    }
    std::vector<Variant> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back(draw_at(rotation_of(base, i)));
    advance_from(static_cast<unsigned>(base % m));
    return out;
}

BitBundle encode_deterministic(std::uint32_t value, const MappingPattern& pattern) {
    const unsigned m = pattern.bits();
    if (value > max_word(m)) throw ParamError("value does not fit the pattern width");
    BitBundle b(pattern.size(), Provenance{Source::Deterministic, m, pattern.variant(), 0});
    auto& w = b.words();
    for (unsigned i = 0; i < m; ++i) {
        if (!((value >> i) & 1U)) continue;
        const auto& dm = pattern.digit_mask(i);
        for (std::size_t k = 0; k < w.size(); ++k) w[k] |= dm[k];
    }
    return b;
}

BitBundle encode_thermometer(std::uint32_t value, std::size_t n) {
    BitBundle b(n, Provenance{Source::Thermometer, 0, {}, 0});
    if (value > n) throw ParamError("thermometer value exceeds stream length");
    auto& w = b.words();
    const std::size_t full = value / 64;
    for (std::size_t k = 0; k < full; ++k) w[k] = ~std::uint64_t{0};
    if (value % 64) w[full] = (std::uint64_t{1} << (value % 64)) - 1;
    return b;
}

BitBundle encode_random(std::uint32_t value, std::size_t n, std::uint64_t seed) {
    const unsigned m = length_bits(n);
    if (value > n) throw ParamError("random-encoding value exceeds stream length");
    BitBundle b(n, Provenance{Source::Random, 0, {}, seed});
    Rng rng(seed);
    for (std::size_t j = 0; j < n; ++j) {
        const auto r = static_cast<std::uint32_t>(rng() >> (64 - m));
        if (r < value) b.set(j, true);
    }
    return b;
}

Ratio decode_value(const BitBundle& b) { return Ratio{b.popcount(), b.size()}; }

std::uint32_t quantize(double x, unsigned bits) {
    if (!(x >= 0.0 && x <= 1.0)) throw ParamError("quantize input must lie in [0, 1]");
    if (bits < 1 || bits > 16) throw ParamError("quantize width must be in [1, 16]");
    const double scaled = std::floor(std::ldexp(x, static_cast<int>(bits)));
    return std::min(static_cast<std::uint32_t>(scaled), max_word(bits));
}

double scc(const BitBundle& a, const BitBundle& b) {
    if (a.size() != b.size()) throw ParamError("scc needs equal stream lengths");
    // All terms scaled by N^2 so the sign tests are exact.
    const auto n = static_cast<std::int64_t>(a.size());
    std::int64_t both = 0;
    for (std::size_t k = 0; k < a.words().size(); ++k) both += std::popcount(a.words()[k] & b.words()[k]);
    const auto ca = static_cast<std::int64_t>(a.popcount());
    const auto cb = static_cast<std::int64_t>(b.popcount());
    const std::int64_t delta = both * n - ca * cb;
    std::int64_t den = 0;
    if (delta > 0)
        den = std::min(ca, cb) * n - ca * cb;
    else if (delta < 0)
        den = ca * cb - std::max<std::int64_t>(ca + cb - n, 0) * n;
    if (delta == 0 || den == 0) return 0.0;
    return static_cast<double>(delta) / static_cast<double>(den);
}

}  // namespace sclim
