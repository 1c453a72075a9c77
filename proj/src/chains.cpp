#include "sclim/chains.hpp"

#include <cmath>
#include <string>

#include "sclim/error.hpp"
#include "sclim/gates.hpp"

namespace sclim {

std::string_view function_name(FunctionKind k) {
    switch (k) {
        case FunctionKind::Sin: return "sin";
        case FunctionKind::Cos: return "cos";
        case FunctionKind::Tanh: return "tanh";
        case FunctionKind::Arctan: return "arctan";
        case FunctionKind::Sigmoid: return "sigmoid";
        case FunctionKind::Sinc: return "sinc";
        case FunctionKind::ExpNeg: return "exp";
        case FunctionKind::Ln1p: return "ln";
    }
    return "?";
}

std::optional<FunctionKind> parse_function(std::string_view name) {
    for (auto k : kAllFunctions)
        if (function_name(k) == name) return k;
    return std::nullopt;
}

std::size_t ChainSpec::budget() const {
    std::size_t b = final_multiply_by_x ? 1 : 0;
    for (const auto& s : stages) b += s.degree + 1;
    return b;
}

ChainSpec build_chain(FunctionKind kind) {
    using S = ChainStage;
    switch (kind) {
        case FunctionKind::Sin: return {kind, {S{2, 1, 42}, S{2, 1, 20}, S{2, 1, 6}}, true};
        case FunctionKind::Cos: return {kind, {S{2, 1, 56}, S{2, 1, 30}, S{2, 1, 12}, S{2, 1, 2}}, false};
        case FunctionKind::Tanh: return {kind, {S{2, 17, 42}, S{2, 2, 5}, S{2, 1, 3}}, true};
        case FunctionKind::Arctan: return {kind, {S{2, 5, 7}, S{2, 3, 5}, S{2, 1, 3}}, true};
        case FunctionKind::Sigmoid: return {kind, {S{2, 1, 10}, S{2, 1, 12}, S{1, 1, 2}, S{0, 1, 2}}, false};
        case FunctionKind::Sinc: return {kind, {S{2, 1, 42}, S{2, 1, 20}, S{2, 1, 6}}, false};
        case FunctionKind::ExpNeg:
            return {kind, {S{1, 1, 5}, S{1, 1, 4}, S{1, 1, 3}, S{1, 1, 2}, S{1, 1, 1}}, false};
        case FunctionKind::Ln1p: return {kind, {S{1, 4, 5}, S{1, 3, 4}, S{1, 2, 3}, S{1, 1, 2}}, true};
    }
    throw ParamError("unknown function kind");
}

double reference_poly(FunctionKind kind, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw ParamError("reference_poly input must lie in [0, 1]");
    const auto spec = build_chain(kind);
    double t = 1.0;
    for (const auto& s : spec.stages) t = 1.0 - s.coef() * std::pow(x, s.degree) * t;
    return spec.final_multiply_by_x ? x * t : t;
}

double true_function(FunctionKind kind, double x) {
    switch (kind) {
        case FunctionKind::Sin: return std::sin(x);
        case FunctionKind::Cos: return std::cos(x);
        case FunctionKind::Tanh: return std::tanh(x);
        case FunctionKind::Arctan: return std::atan(x);
        case FunctionKind::Sigmoid: return 1.0 / (1.0 + std::exp(-x));
        case FunctionKind::Sinc: return x == 0.0 ? 1.0 : std::sin(x) / x;
        case FunctionKind::ExpNeg: return std::exp(-x);
        case FunctionKind::Ln1p: return std::log1p(x);
    }
    throw ParamError("unknown function kind");
}

namespace {

void check_bits(FunctionKind kind, unsigned bits) {
    if (bits < kMinChainBits)
        throw ConfigError(std::string(function_name(kind)) + " chain needs at least " +
                          std::to_string(kMinChainBits) + "-bit streams");
}

std::uint32_t coef_word(const ChainStage& s, unsigned bits) { return quantize(s.coef(), bits); }

}  // namespace

std::vector<Leaf> chain_leaves(const ChainSpec& spec, unsigned bits, std::uint32_t x_word) {
    std::vector<Leaf> leaves;
    leaves.reserve(spec.budget());
    if (spec.final_multiply_by_x) leaves.push_back({LeafRole::Operand, x_word});
    for (const auto& s : spec.stages) {
        for (unsigned d = 0; d < s.degree; ++d) leaves.push_back({LeafRole::Operand, x_word});
        leaves.push_back({LeafRole::Coefficient, coef_word(s, bits)});
    }
    return leaves;
}

BitBundle eval_chain(const ChainSpec& spec, std::size_t n, std::uint32_t x_word, const LeafSource& source) {
    const unsigned bits = length_bits(n);
    check_bits(spec.kind, bits);
    if (x_word > max_word(bits)) throw ParamError("chain input does not fit log2(N) bits");
    const auto leaves = chain_leaves(spec, bits, x_word);

    std::size_t next = 0;
    std::optional<BitBundle> final_x;
    if (spec.final_multiply_by_x) {
        final_x = source(next, leaves[next]);
        ++next;
    }
    // Seeding with an exact all-ones stream keeps the innermost stage unbiased.
    BitBundle t = BitBundle::ones(n);
    for (const auto& s : spec.stages) {
        BitBundle leaf = source(next, leaves[next]);
        ++next;
        for (unsigned d = 1; d <= s.degree; ++d, ++next) leaf = gate_and(leaf, source(next, leaves[next]));
        t = gate_not(gate_and(leaf, t));
    }
    if (final_x) t = gate_and(t, *final_x);
    return t;
}

ChainPlan plan_chain(FunctionKind kind, unsigned bits, PatternAllocator& alloc) {
    check_bits(kind, bits);
    if (alloc.bits() != bits) throw ParamError("allocator width differs from chain width");
    ChainPlan plan{build_chain(kind), bits, {}};
    plan.patterns.reserve(plan.spec.budget());
    if (plan.spec.final_multiply_by_x) plan.patterns.emplace_back(bits, alloc.draw_group(1)[0]);
    // Two coefficient streams on one rotation light up the same (or complementary)
    // top-digit positions, so consecutive coefficients are kept on distinct rotations.
    int last_coef_rotation = -1;
    for (const auto& s : plan.spec.stages) {
        const auto group = alloc.draw_group(s.degree + 1, last_coef_rotation);
        for (const auto& v : group) plan.patterns.emplace_back(bits, v);
        last_coef_rotation = static_cast<int>(group.back().rotation);
    }
    return plan;
}

BitBundle eval_chain_sc(FunctionKind kind, std::uint32_t x_word, std::size_t n, PatternAllocator& alloc) {
    const unsigned bits = length_bits(n);
    const auto plan = plan_chain(kind, bits, alloc);
    return eval_chain(plan.spec, n, x_word, [&](std::size_t i, const Leaf& leaf) {
        return encode_deterministic(leaf.word, plan.patterns[i]);
    });
}

}  // namespace sclim
