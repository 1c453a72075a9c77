#pragma once

#include <cstdint>

#include "sclim/bitstream.hpp"

namespace sclim {

enum class CorrelationMode { Independent, Correlated };

/// How correlated operands are materialized.
enum class CorrelatedEncoding { Thermometer, SharedPattern };

BitBundle gate_and(const BitBundle& a, const BitBundle& b);
BitBundle gate_or(const BitBundle& a, const BitBundle& b);
BitBundle gate_xor(const BitBundle& a, const BitBundle& b);
BitBundle gate_not(const BitBundle& a);
/// sel = 1 picks a, sel = 0 picks b.
BitBundle gate_mux(const BitBundle& a, const BitBundle& b, const BitBundle& sel);

/// Throws ModeError unless the pair satisfies the given mode.
void require_mode(const BitBundle& a, const BitBundle& b, CorrelationMode mode);

// Bundle-level operators; they validate operand provenance.
BitBundle sc_mul(const BitBundle& a, const BitBundle& b);
BitBundle sc_approx_add(const BitBundle& a, const BitBundle& b);
BitBundle sc_scaled_add(const BitBundle& a, const BitBundle& b, const BitBundle& select);
BitBundle sc_min(const BitBundle& a, const BitBundle& b);
BitBundle sc_max(const BitBundle& a, const BitBundle& b);
BitBundle sc_abs_sub(const BitBundle& a, const BitBundle& b);
BitBundle sc_negate(const BitBundle& a);

// Word-level wrappers that encode their operands.

/// AND of two deterministic encodings drawn as one allocator group.
BitBundle sc_mul(std::uint32_t a, std::uint32_t b, PatternAllocator& alloc);
/// OR of two deterministic encodings drawn as one allocator group.
BitBundle sc_approx_add(std::uint32_t a, std::uint32_t b, PatternAllocator& alloc);

/// Patterns used by the scaled adder: both arms share a rotation (their bits never
/// meet), the half-valued select uses the next rotation so it splits every digit
/// except the least significant one evenly between the arms.
struct ScaledAddPatterns {
    Variant a, b, select;
};
ScaledAddPatterns draw_scaled_add(PatternAllocator& alloc);
BitBundle sc_scaled_add(std::uint32_t a, std::uint32_t b, PatternAllocator& alloc);

/// Correlated operators on words of width log2(n).
BitBundle sc_min(std::uint32_t a, std::uint32_t b, std::size_t n,
                 CorrelatedEncoding enc = CorrelatedEncoding::Thermometer);
BitBundle sc_max(std::uint32_t a, std::uint32_t b, std::size_t n,
                 CorrelatedEncoding enc = CorrelatedEncoding::Thermometer);
BitBundle sc_abs_sub(std::uint32_t a, std::uint32_t b, std::size_t n,
                     CorrelatedEncoding enc = CorrelatedEncoding::Thermometer);

}  // namespace sclim
