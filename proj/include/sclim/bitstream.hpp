#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sclim {

/// \brief Relabeling of the stream position index: rotate left by `rotation`, then XOR `mask`.
struct Variant {
    unsigned rotation = 0;
    std::uint32_t mask = 0;
    friend bool operator==(const Variant&, const Variant&) = default;
};

enum class Source { Derived, Deterministic, Thermometer, Random };

struct Provenance {
    Source source = Source::Derived;
    unsigned bits = 0;       // pattern width for Deterministic
    Variant variant{};       // Deterministic only
    std::uint64_t seed = 0;  // Random only
};

/// \brief Exact unipolar value ones/length.
struct Ratio {
    std::uint64_t num = 0;
    std::uint64_t den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Ratio& a, const Ratio& b) {
        // Denominators are stream lengths, so the cross products fit in 64 bits.
        return a.num * b.den == b.num * a.den;
    }
};

constexpr std::size_t kMaxLength = std::size_t{1} << 16;

bool is_valid_length(std::size_t n);
/// log2 of a valid length.
unsigned length_bits(std::size_t n);

/// \brief Packed bit-stream of power-of-two length; bit j lives in word j/64, bit j%64.
class BitBundle {
public:
    explicit BitBundle(std::size_t n, Provenance prov = {});
    static BitBundle ones(std::size_t n, Provenance prov = {});
    /// Parse '0'/'1' text, position 0 first.
    static BitBundle parse(std::string_view text);

    std::size_t size() const { return n_; }
    bool test(std::size_t j) const { return (words_[j >> 6] >> (j & 63)) & 1U; }
    void set(std::size_t j, bool v);
    void flip(std::size_t j) { words_[j >> 6] ^= std::uint64_t{1} << (j & 63); }
    std::size_t popcount() const;

    std::vector<std::uint64_t>& words() { return words_; }
    const std::vector<std::uint64_t>& words() const { return words_; }
    /// Mask of valid bits in the last word.
    std::uint64_t tail_mask() const;

    const Provenance& provenance() const { return prov_; }
    void set_provenance(Provenance p) { prov_ = p; }

    std::string to_string() const;

    friend bool operator==(const BitBundle& a, const BitBundle& b) {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }

private:
    std::size_t n_;
    std::vector<std::uint64_t> words_;
    Provenance prov_;
};

/// \brief Position-to-digit assignment for deterministic encoding.
class MappingPattern {
public:
    static constexpr int kConst0 = -1;

    MappingPattern(unsigned bits, Variant variant);

    unsigned bits() const { return bits_; }
    std::size_t size() const { return std::size_t{1} << bits_; }
    const Variant& variant() const { return variant_; }
    /// Digit index feeding position j, or kConst0.
    int digit_at(std::size_t j) const { return assignment_[j]; }
    /// Packed positions carrying digit i.
    const std::vector<std::uint64_t>& digit_mask(unsigned i) const { return digit_masks_[i]; }

private:
    unsigned bits_;
    Variant variant_;
    std::vector<std::int8_t> assignment_;
    std::vector<std::vector<std::uint64_t>> digit_masks_;
};

MappingPattern make_pattern(unsigned bits, unsigned rotation, std::uint32_t mask);

/// \brief Hands out unused pattern variants for one circuit evaluation.
///
/// Streams that meet at a gate are requested together as a group; group members
/// get rotations spread evenly around the m possible rotations, which keeps the
/// digit layouts of co-operands as far apart as the index permutation allows.
/// Reusing a rotation picks the next mask for it, so no variant repeats.
class PatternAllocator {
public:
    explicit PatternAllocator(unsigned bits);

    unsigned bits() const { return bits_; }
    /// Rotation the next group starts from.
    unsigned base() const { return base_; }
    /// Move the group base forward by the default stride.
    void advance() { advance_from(base_); }

    /// Next unused variant with the given rotation.
    Variant draw_at(unsigned rotation);
    /// k variants with evenly spaced rotations. If `avoid_last` is set, the base is
    /// nudged so the final member's rotation differs from it.
    std::vector<Variant> draw_group(std::size_t k, int avoid_last = -1);

    std::size_t issued() const { return issued_.size(); }
    std::size_t capacity() const { return std::size_t{bits_} << bits_; }
    const std::vector<Variant>& history() const { return issued_; }

private:
    void advance_from(unsigned from);

    unsigned bits_;
    unsigned stride_;
    unsigned base_ = 0;
    std::vector<std::uint32_t> next_mask_;
    std::vector<Variant> issued_;
};

/// Largest word value representable with `bits` digits, i.e. 2^bits - 1.
std::uint32_t max_word(unsigned bits);

BitBundle encode_deterministic(std::uint32_t value, const MappingPattern& pattern);
BitBundle encode_thermometer(std::uint32_t value, std::size_t n);
BitBundle encode_random(std::uint32_t value, std::size_t n, std::uint64_t seed);

Ratio decode_value(const BitBundle& b);

/// min(floor(x * 2^bits), 2^bits - 1).
std::uint32_t quantize(double x, unsigned bits);

/// Stochastic cross-correlation in [-1, 1].
double scc(const BitBundle& a, const BitBundle& b);

}  // namespace sclim
