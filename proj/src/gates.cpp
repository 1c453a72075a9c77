#include "sclim/gates.hpp"

#include "sclim/error.hpp"

namespace sclim {

namespace {

void require_same_length(const BitBundle& a, const BitBundle& b) {
    if (a.size() != b.size()) throw ParamError("gate operands differ in length");
}

template <class Op>
BitBundle zip(const BitBundle& a, const BitBundle& b, Op op) {
    require_same_length(a, b);
    BitBundle out(a.size());
    auto& w = out.words();
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = op(a.words()[k], b.words()[k]);
    w.back() &= out.tail_mask();
    return out;
}

bool independent_source(const Provenance& p) {
    return p.source == Source::Deterministic || p.source == Source::Random;
}

}  // namespace

BitBundle gate_and(const BitBundle& a, const BitBundle& b) {
    return zip(a, b, [](std::uint64_t x, std::uint64_t y) { return x & y; });
}

BitBundle gate_or(const BitBundle& a, const BitBundle& b) {
    return zip(a, b, [](std::uint64_t x, std::uint64_t y) { return x | y; });
}

BitBundle gate_xor(const BitBundle& a, const BitBundle& b) {
    return zip(a, b, [](std::uint64_t x, std::uint64_t y) { return x ^ y; });
}

BitBundle gate_not(const BitBundle& a) {
    BitBundle out(a.size());
    auto& w = out.words();
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = ~a.words()[k];
    w.back() &= out.tail_mask();
    return out;
}

BitBundle gate_mux(const BitBundle& a, const BitBundle& b, const BitBundle& sel) {
    require_same_length(a, b);
    require_same_length(a, sel);
    BitBundle out(a.size());
    auto& w = out.words();
    for (std::size_t k = 0; k < w.size(); ++k) {
        const auto s = sel.words()[k];
        w[k] = (a.words()[k] & s) | (b.words()[k] & ~s);
    }
    return out;
}

void require_mode(const BitBundle& a, const BitBundle& b, CorrelationMode mode) {
    require_same_length(a, b);
    const auto& pa = a.provenance();
    const auto& pb = b.provenance();
    if (mode == CorrelationMode::Independent) {
        if (!independent_source(pa) || !independent_source(pb))
            throw ModeError("independent mode needs deterministic or random operands");
        if (pa.source == Source::Deterministic && pb.source == Source::Deterministic &&
            pa.bits == pb.bits && pa.variant == pb.variant)
            throw ModeError("independent operands share a pattern variant");
        if (pa.source == Source::Random && pb.source == Source::Random && pa.seed == pb.seed)
            throw ModeError("independent operands share a random seed");
        return;
    }
    if (pa.source == Source::Thermometer && pb.source == Source::Thermometer) return;
    if (pa.source == Source::Deterministic && pb.source == Source::Deterministic && pa.bits == pb.bits &&
        pa.variant == pb.variant)
        return;
    throw ModeError("correlated mode needs two thermometer operands or one shared pattern variant");
}

BitBundle sc_mul(const BitBundle& a, const BitBundle& b) {
    require_mode(a, b, CorrelationMode::Independent);
    return gate_and(a, b);
}

BitBundle sc_approx_add(const BitBundle& a, const BitBundle& b) {
    require_mode(a, b, CorrelationMode::Independent);
    return gate_or(a, b);
}

BitBundle sc_scaled_add(const BitBundle& a, const BitBundle& b, const BitBundle& select) {
    require_mode(a, select, CorrelationMode::Independent);
    require_mode(b, select, CorrelationMode::Independent);
    return gate_mux(a, b, select);
}

BitBundle sc_min(const BitBundle& a, const BitBundle& b) {
    require_mode(a, b, CorrelationMode::Correlated);
    return gate_and(a, b);
}

BitBundle sc_max(const BitBundle& a, const BitBundle& b) {
    require_mode(a, b, CorrelationMode::Correlated);
    return gate_or(a, b);
}

BitBundle sc_abs_sub(const BitBundle& a, const BitBundle& b) {
    require_mode(a, b, CorrelationMode::Correlated);
    return gate_xor(a, b);
}

BitBundle sc_negate(const BitBundle& a) { return gate_not(a); }

BitBundle sc_mul(std::uint32_t a, std::uint32_t b, PatternAllocator& alloc) {
    const auto g = alloc.draw_group(2);
    const unsigned m = alloc.bits();
    return sc_mul(encode_deterministic(a, MappingPattern(m, g[0])),
                  encode_deterministic(b, MappingPattern(m, g[1])));
}

BitBundle sc_approx_add(std::uint32_t a, std::uint32_t b, PatternAllocator& alloc) {
    const auto g = alloc.draw_group(2);
    const unsigned m = alloc.bits();
    return sc_approx_add(encode_deterministic(a, MappingPattern(m, g[0])),
                         encode_deterministic(b, MappingPattern(m, g[1])));
}

ScaledAddPatterns draw_scaled_add(PatternAllocator& alloc) {
    const unsigned r = alloc.base();
    ScaledAddPatterns p;
    p.a = alloc.draw_at(r);
    p.b = alloc.draw_at(r);
    p.select = alloc.draw_at((r + 1) % alloc.bits());
    alloc.advance();
    return p;
}

BitBundle sc_scaled_add(std::uint32_t a, std::uint32_t b, PatternAllocator& alloc) {
    const unsigned m = alloc.bits();
    const auto p = draw_scaled_add(alloc);
    const auto half = std::uint32_t{1} << (m - 1);
    return sc_scaled_add(encode_deterministic(a, MappingPattern(m, p.a)),
                         encode_deterministic(b, MappingPattern(m, p.b)),
                         encode_deterministic(half, MappingPattern(m, p.select)));
}

namespace {

std::pair<BitBundle, BitBundle> correlated_pair(std::uint32_t a, std::uint32_t b, std::size_t n,
                                                CorrelatedEncoding enc) {
    const unsigned m = length_bits(n);
    if (a > max_word(m) || b > max_word(m)) throw ParamError("operand does not fit log2(N) bits");
    if (enc == CorrelatedEncoding::Thermometer) return {encode_thermometer(a, n), encode_thermometer(b, n)};
    const auto shared = make_pattern(m, 0, 0);
    return {encode_deterministic(a, shared), encode_deterministic(b, shared)};
}

}  // namespace

BitBundle sc_min(std::uint32_t a, std::uint32_t b, std::size_t n, CorrelatedEncoding enc) {
    auto [x, y] = correlated_pair(a, b, n, enc);
    return sc_min(x, y);
}

BitBundle sc_max(std::uint32_t a, std::uint32_t b, std::size_t n, CorrelatedEncoding enc) {
    auto [x, y] = correlated_pair(a, b, n, enc);
    return sc_max(x, y);
}

BitBundle sc_abs_sub(std::uint32_t a, std::uint32_t b, std::size_t n, CorrelatedEncoding enc) {
    auto [x, y] = correlated_pair(a, b, n, enc);
    return sc_abs_sub(x, y);
}

}  // namespace sclim
