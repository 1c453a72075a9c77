#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sclim/bitstream.hpp"
#include "sclim/chains.hpp"
#include "sclim/rng.hpp"

namespace sclim {

enum class ExperimentKind { Mul, ScaledAdd, AbsSub, Min, Max, Sin, Cos, Tanh, Arctan, Sinc, Sigmoid, Exp, Ln };

inline constexpr std::array<ExperimentKind, 5> kOperatorKinds = {
    ExperimentKind::Mul, ExperimentKind::ScaledAdd, ExperimentKind::AbsSub, ExperimentKind::Min,
    ExperimentKind::Max};
inline constexpr std::array<ExperimentKind, 8> kFunctionKinds = {
    ExperimentKind::Sin,  ExperimentKind::Cos,     ExperimentKind::Tanh, ExperimentKind::Arctan,
    ExperimentKind::Sinc, ExperimentKind::Sigmoid, ExperimentKind::Exp,  ExperimentKind::Ln};

std::string_view kind_name(ExperimentKind k);
std::optional<ExperimentKind> parse_kind(std::string_view name);
std::optional<FunctionKind> as_function(ExperimentKind k);

/// Per-bit flip probability in [0, 0.5] plus the seed of its generator.
struct NoiseSpec {
    double rate = 0.0;
    std::uint64_t seed = 0;
    NoiseSpec(double rate, std::uint64_t seed);
};

BitBundle flip_stream(const BitBundle& b, const NoiseSpec& noise);
std::uint32_t flip_binary(std::uint32_t word, unsigned bits, const NoiseSpec& noise);

/// Generator-driven variants. They always consume one draw per bit so that runs
/// at different rates with the same generator flip nested sets of positions.
void flip_stream_inplace(BitBundle& b, double rate, Rng& rng);
std::uint32_t flip_binary(std::uint32_t word, unsigned bits, double rate, Rng& rng);

struct MaeRow {
    ExperimentKind kind;
    std::size_t n;
    double noise_rate;
    double sc_mae_pct;
    double binary_mae_pct;
    std::size_t trials;
};

/// Monte-Carlo MAE of one table cell. Results do not depend on `threads`
/// (0 picks the hardware concurrency).
MaeRow mae_experiment(ExperimentKind kind, std::size_t n, double noise_rate, std::size_t trials,
                      std::uint64_t master_seed, unsigned threads = 0);

struct SweepConfig {
    std::vector<ExperimentKind> kinds;
    std::vector<std::size_t> lengths{16, 64};
    std::vector<double> noise_pct{0, 1, 2, 5, 10, 20, 30};
    std::size_t trials = 100000;
    std::uint64_t master_seed = 0;
    unsigned threads = 0;
};

SweepConfig table1_config(std::size_t trials, std::uint64_t master_seed);
SweepConfig table2_config(std::size_t trials, std::uint64_t master_seed);

/// Rows ordered by kind, then length, then noise.
std::vector<MaeRow> sweep_tables(const SweepConfig& cfg);

inline constexpr std::string_view kMaeCsvHeader = "kind,N,noise_pct,sc_mae_pct,binary_mae_pct,trials";
std::string format_mae_row(const MaeRow& row);
void write_mae_csv(std::ostream& out, const std::vector<MaeRow>& rows);

}  // namespace sclim
