#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "sclim/bitstream.hpp"

namespace sclim {

enum class FunctionKind { Sin, Cos, Tanh, Arctan, Sigmoid, Sinc, ExpNeg, Ln1p };

inline constexpr std::array<FunctionKind, 8> kAllFunctions = {
    FunctionKind::Sin,     FunctionKind::Cos,  FunctionKind::Tanh,   FunctionKind::Arctan,
    FunctionKind::Sigmoid, FunctionKind::Sinc, FunctionKind::ExpNeg, FunctionKind::Ln1p};

std::string_view function_name(FunctionKind k);
std::optional<FunctionKind> parse_function(std::string_view name);

/// One NAND stage: t <- 1 - (x^degree * coef) * t.
struct ChainStage {
    unsigned degree;
    std::uint32_t coef_num;
    std::uint32_t coef_den;
    double coef() const { return static_cast<double>(coef_num) / coef_den; }
};

struct ChainSpec {
    FunctionKind kind;
    std::vector<ChainStage> stages;  // innermost first
    bool final_multiply_by_x;
    /// Leaf streams consumed by one evaluation.
    std::size_t budget() const;
};

ChainSpec build_chain(FunctionKind kind);

/// Truncated series evaluated in double precision.
double reference_poly(FunctionKind kind, double x);
/// The untruncated function on [0,1].
double true_function(FunctionKind kind, double x);

/// Smallest pattern width accepted for chain evaluation.
inline constexpr unsigned kMinChainBits = 4;

enum class LeafRole { Operand, Coefficient };

/// Leaves are numbered in evaluation order: the final multiplicand (if any) first,
/// then each stage's operand copies followed by its coefficient.
struct Leaf {
    LeafRole role;
    std::uint32_t word;
};
std::vector<Leaf> chain_leaves(const ChainSpec& spec, unsigned bits, std::uint32_t x_word);

/// Produces the stream for leaf i.
using LeafSource = std::function<BitBundle(std::size_t index, const Leaf& leaf)>;

/// Structural NAND-chain evaluation over any leaf source.
BitBundle eval_chain(const ChainSpec& spec, std::size_t n, std::uint32_t x_word, const LeafSource& source);

/// One pattern per leaf, in leaf order.
struct ChainPlan {
    ChainSpec spec;
    unsigned bits;
    std::vector<MappingPattern> patterns;
};
ChainPlan plan_chain(FunctionKind kind, unsigned bits, PatternAllocator& alloc);

/// Deterministic evaluation with fresh patterns from alloc.
BitBundle eval_chain_sc(FunctionKind kind, std::uint32_t x_word, std::size_t n, PatternAllocator& alloc);

}  // namespace sclim
