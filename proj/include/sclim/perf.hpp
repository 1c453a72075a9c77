#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sclim {

enum class ExecMode { Parallel, Serial };

/// Measured per-operation latency and power of one circuit in both modes.
struct OpCost {
    std::string kind;
    double parallel_cycles;
    double serial_cycles;
    double parallel_power_mw;
    double serial_power_mw;
    /// Reported power x delay, kept to audit the recomputed products.
    double reported_pdp_parallel;
    double reported_pdp_serial;

    double cycles(ExecMode m) const { return m == ExecMode::Parallel ? parallel_cycles : serial_cycles; }
    double power_mw(ExecMode m) const { return m == ExecMode::Parallel ? parallel_power_mw : serial_power_mw; }
};

/// Default cost table: twelve circuits measured at 64-bit streams.
const std::vector<OpCost>& default_costs();
const OpCost& cost_of(std::string_view kind);

double pdp(std::string_view kind, ExecMode mode);
double speedup(std::string_view kind);

struct ArrayConfig {
    std::size_t columns_total = 1024;
    std::size_t stream_length = 256;
    double clock_hz = 200e6;
    double batch_overhead_cycles = 16;
    std::size_t image_pixels = 65536;

    /// Pixels processed per batch; throws ParamError when below 1.
    std::size_t pixels_per_batch() const;
};

struct PipelineReport {
    std::string kind;
    std::size_t pixels_per_batch;
    double cycles_per_frame_parallel;
    double cycles_per_frame_serial;
    double fps_parallel;
    double fps_serial;
    double throughput_ratio;
    double energy_per_frame_parallel_j;
    double energy_per_frame_serial_j;
    double edp_ratio;
};

/// Frame throughput of the bit-parallel and bit-serial pipelines. Frame energy
/// charges every pixel one operation at its measured power and latency.
PipelineReport pipeline_report(const ArrayConfig& cfg, std::string_view kind);

/// Rows Delay/Power/PDP per mode, one column per circuit.
void write_cost_csv(std::ostream& out, const std::vector<OpCost>& costs = default_costs());
std::string pipeline_json(const ArrayConfig& cfg, const std::vector<PipelineReport>& reports);

}  // namespace sclim
