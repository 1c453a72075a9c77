#include <doctest.h>

#include <bit>
#include <random>
#include <set>

#include "sclim/bitstream.hpp"
#include "sclim/error.hpp"

using namespace sclim;

namespace {

// Independent oracle for the position rule, written straight from its definition.
int oracle_digit(unsigned m, unsigned rot, std::uint32_t mask, std::uint32_t j) {
    std::uint32_t rotated = j;
    for (unsigned i = 0; i < rot; ++i) {
        const std::uint32_t top = (rotated >> (m - 1)) & 1U;
        rotated = ((rotated << 1) | top) & ((1U << m) - 1);
    }
    std::uint32_t jp = rotated ^ mask;
    unsigned t = 0;
    while (t < m && (jp & 1U)) {
        ++t;
        jp >>= 1;
    }
    return t >= m ? MappingPattern::kConst0 : static_cast<int>(m - 1 - t);
}

std::vector<int> assignment(const MappingPattern& p) {
    std::vector<int> a(p.size());
    for (std::size_t j = 0; j < p.size(); ++j) a[j] = p.digit_at(j);
    return a;
}

void check_replication(const MappingPattern& p) {
    const unsigned m = p.bits();
    std::vector<std::size_t> counts(m, 0);
    std::size_t const0 = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        const int d = p.digit_at(j);
        if (d == MappingPattern::kConst0)
            ++const0;
        else
            ++counts[static_cast<unsigned>(d)];
    }
    for (unsigned i = 0; i < m; ++i) REQUIRE(counts[i] == (std::size_t{1} << i));
    REQUIRE(const0 == 1);
}

}  // namespace

TEST_CASE("bit bundle basics") {
    CHECK_THROWS_AS((void)BitBundle(3), ParamError);
    CHECK_THROWS_AS((void)BitBundle(1), ParamError);
    CHECK_THROWS_AS((void)BitBundle(kMaxLength * 2), ParamError);
    CHECK(BitBundle(kMaxLength).size() == kMaxLength);
    const auto b = BitBundle::parse("1100");
    CHECK(b.size() == 4);
    CHECK(b.popcount() == 2);
    CHECK(b.to_string() == "1100");
    CHECK(BitBundle::ones(8).to_string() == "11111111");
    CHECK(BitBundle::ones(128).popcount() == 128);
    CHECK_THROWS_AS(BitBundle::parse("10x1"), ParamError);
    CHECK_THROWS_AS(BitBundle::parse("101"), ParamError);
}

TEST_CASE("make_pattern examples") {
    const auto p = make_pattern(3, 0, 0);
    const std::vector<int> expect{2, 1, 2, 0, 2, 1, 2, MappingPattern::kConst0};
    CHECK(assignment(p) == expect);

    const auto p1 = make_pattern(1, 0, 0);
    CHECK(p1.digit_at(0) == 0);
    CHECK(p1.digit_at(1) == MappingPattern::kConst0);

    const auto r1 = make_pattern(3, 1, 0);
    std::size_t top = 0;
    for (std::size_t j = 0; j < 8; ++j) top += r1.digit_at(j) == 2;
    CHECK(top == 4);

    CHECK_THROWS_AS(make_pattern(3, 3, 0), ParamError);
    CHECK_THROWS_AS(make_pattern(3, 0, 8), ParamError);
    CHECK_THROWS_AS(make_pattern(0, 0, 0), ParamError);
    CHECK_THROWS_AS(make_pattern(17, 0, 0), ParamError);
}

TEST_CASE("pattern matches the position-rule oracle, exhaustive for m <= 6") {
    for (unsigned m = 1; m <= 6; ++m)
        for (unsigned r = 0; r < m; ++r)
            for (std::uint32_t k = 0; k < (1U << m); ++k) {
                const auto p = make_pattern(m, r, k);
                for (std::uint32_t j = 0; j < (1U << m); ++j) REQUIRE(p.digit_at(j) == oracle_digit(m, r, k, j));
            }
}

TEST_CASE("digit i fills exactly 2^i positions for m <= 12") {
    for (unsigned m = 1; m <= 8; ++m)
        for (unsigned r = 0; r < m; ++r)
            for (std::uint32_t k = 0; k < (1U << m); ++k) check_replication(make_pattern(m, r, k));
    std::mt19937 gen(5);
    for (unsigned m = 9; m <= 12; ++m)
        for (unsigned r = 0; r < m; ++r)
            for (int s = 0; s < 6; ++s) check_replication(make_pattern(m, r, gen() & max_word(m)));
}

TEST_CASE("distinct variants give distinct assignments, exhaustive for m <= 6") {
    for (unsigned m = 2; m <= 6; ++m) {
        std::set<std::vector<int>> seen;
        for (unsigned r = 0; r < m; ++r)
            for (std::uint32_t k = 0; k < (1U << m); ++k) seen.insert(assignment(make_pattern(m, r, k)));
        CHECK(seen.size() == (std::size_t{m} << m));
    }
}

TEST_CASE("encode_deterministic") {
    CHECK(encode_deterministic(0b011, make_pattern(3, 0, 0)).to_string() == "01010100");
    for (unsigned m = 1; m <= 8; ++m) {
        const auto p = make_pattern(m, m / 2, 1);
        CHECK(encode_deterministic(0, p).popcount() == 0);
        const auto full = encode_deterministic(max_word(m), p);
        CHECK(full.popcount() == p.size() - 1);
        for (std::size_t j = 0; j < p.size(); ++j)
            if (p.digit_at(j) == MappingPattern::kConst0) CHECK_FALSE(full.test(j));
    }
    CHECK_THROWS_AS(encode_deterministic(8, make_pattern(3, 0, 0)), ParamError);
    const auto b = encode_deterministic(5, make_pattern(3, 2, 3));
    CHECK(b.provenance().source == Source::Deterministic);
    CHECK(b.provenance().variant == Variant{2, 3});
}

TEST_CASE("deterministic decode round trip, exhaustive for m <= 8") {
    for (unsigned m = 1; m <= 8; ++m)
        for (unsigned r = 0; r < m; ++r)
            for (std::uint32_t k = 0; k < (1U << m); ++k) {
                const auto p = make_pattern(m, r, k);
                for (std::uint32_t v = 0; v < (1U << m); ++v)
                    REQUIRE(decode_value(encode_deterministic(v, p)) == Ratio{v, 1ULL << m});
            }
}

TEST_CASE("encode_thermometer") {
    CHECK(encode_thermometer(3, 8).to_string() == "11100000");
    CHECK(encode_thermometer(0, 8).to_string() == "00000000");
    CHECK(encode_thermometer(8, 8).to_string() == "11111111");
    CHECK_THROWS_AS(encode_thermometer(9, 8), ParamError);
    for (std::size_t n : {2U, 64U, 128U, 1024U})
        for (std::uint32_t v = 0; v <= n; v += 1 + static_cast<std::uint32_t>(n / 16))
            CHECK(decode_value(encode_thermometer(v, n)) == Ratio{v, n});
    CHECK(encode_thermometer(100, 128).words()[1] == (std::uint64_t{1} << 36) - 1);
}

TEST_CASE("encode_random") {
    CHECK(encode_random(0, 64, 123).popcount() == 0);
    CHECK(encode_random(64, 64, 123).popcount() == 64);
    // Golden vector frozen from the first run of the seeded generator.
    CHECK(encode_random(32, 64, 1).to_string() ==
          "1111101100100111101110111111000101100111010100000101001111111111");
    CHECK(encode_random(77, 256, 99) == encode_random(77, 256, 99));
    CHECK_FALSE(encode_random(77, 256, 99) == encode_random(77, 256, 100));
    CHECK_THROWS_AS(encode_random(65, 64, 1), ParamError);

    // Popcount has mean v over seeds.
    double total = 0;
    for (std::uint64_t s = 0; s < 2000; ++s) total += static_cast<double>(encode_random(32, 64, s).popcount());
    CHECK(total / 2000 == doctest::Approx(32).epsilon(0.01));
}

TEST_CASE("decode_value") {
    CHECK(decode_value(BitBundle::parse("01010100")) == Ratio{3, 8});
    CHECK(decode_value(BitBundle(16)) == Ratio{0, 1});
    CHECK(decode_value(BitBundle::parse("1100")) == Ratio{1, 2});
    CHECK(decode_value(BitBundle::parse("1100")).value() == 0.5);
}

TEST_CASE("quantize") {
    CHECK(quantize(0.5, 3) == 4);
    CHECK(quantize(1.0, 6) == 63);
    CHECK(quantize(0.0, 5) == 0);
    CHECK(quantize(0.999, 4) == 15);
    CHECK(quantize(0.0624, 4) == 0);
    CHECK(quantize(0.0625, 4) == 1);
    CHECK_THROWS_AS(quantize(-0.01, 4), ParamError);
    CHECK_THROWS_AS(quantize(1.01, 4), ParamError);
    CHECK_THROWS_AS(quantize(std::nan(""), 4), ParamError);
    // Decoded levels never exceed the input: the encoding value is q / 2^m.
    for (int i = 0; i <= 1000; ++i) {
        const double x = i / 1000.0;
        const double level = quantize(x, 6) / 64.0;
        CHECK(level <= x);
        CHECK(x - level <= 1.0 / 64 + 1e-12);
    }
}

TEST_CASE("scc") {
    const auto a = BitBundle::parse("11010010");
    CHECK(scc(a, a) == 1.0);
    CHECK(scc(encode_thermometer(3, 8), encode_thermometer(5, 8)) == 1.0);
    BitBundle na = a;
    for (std::size_t j = 0; j < na.size(); ++j) na.flip(j);
    CHECK(scc(a, na) == -1.0);
    CHECK(scc(BitBundle::parse("1100"), BitBundle::parse("1010")) == 0.0);
    CHECK(scc(BitBundle(8), a) == 0.0);
    CHECK_THROWS_AS(scc(BitBundle(8), BitBundle(16)), ParamError);
    for (std::uint32_t x = 1; x < 64; ++x)
        for (std::uint32_t y = 1; y < 64; ++y) REQUIRE(scc(encode_thermometer(x, 64), encode_thermometer(y, 64)) == 1.0);
}

TEST_CASE("pattern allocator") {
    PatternAllocator alloc(6);
    const auto pair = alloc.draw_group(2);
    CHECK(pair[0] == Variant{0, 0});
    CHECK(pair[1] == Variant{3, 0});
    CHECK(alloc.base() == 2);
    const auto three = alloc.draw_group(3);
    CHECK(three[0].rotation == 2);
    CHECK(three[1].rotation == 4);
    CHECK(three[2].rotation == 0);
    CHECK(three[2].mask == 1);

    PatternAllocator avoid(6);
    const auto g = avoid.draw_group(3, 4);
    CHECK(g.back().rotation != 4);

    PatternAllocator small(3);
    std::set<std::pair<unsigned, std::uint32_t>> seen;
    for (std::size_t i = 0; i < small.capacity(); ++i) {
        const auto v = small.draw_group(1)[0];
        CHECK(seen.insert({v.rotation, v.mask}).second);
    }
    CHECK(small.issued() == 24);
    CHECK_THROWS_AS(small.draw_group(1), ExhaustedError);
    CHECK_THROWS_AS((void)PatternAllocator(0), ParamError);
}
