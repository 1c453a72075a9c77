#include "sclim/perf.hpp"

#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "sclim/error.hpp"

namespace sclim {

const std::vector<OpCost>& default_costs() {
    static const std::vector<OpCost> table = {
        {"Mul&Min", 1, 64, 3.1, 0.05, 3.1, 3.2},       {"Max", 1, 64, 3.1, 0.05, 3.1, 3.2},
        {"ScaledAdd", 2, 66, 9.3, 0.15, 18.7, 9.9},    {"AbsSub", 2, 66, 9.3, 0.15, 18.7, 9.9},
        {"sin", 3, 67, 15.4, 0.87, 46.3, 58.3},        {"cos", 3, 67, 15.4, 0.62, 46.1, 41.6},
        {"tanh", 3, 67, 15.4, 0.87, 46.2, 58.3},       {"arctan", 3, 67, 15.4, 0.87, 46.2, 58.3},
        {"Sinc", 2.5, 67, 12.3, 0.44, 30.8, 29.5},     {"sigmoid", 3, 67, 15.2, 0.62, 45.6, 41.5},
        {"exp", 3, 67, 15.3, 0.74, 46.0, 49.6},        {"ln", 3, 67, 15.3, 0.74, 45.9, 49.6},
    };
    return table;
}

const OpCost& cost_of(std::string_view kind) {
    for (const auto& c : default_costs())
        if (c.kind == kind) return c;
    throw ParamError(fmt::format("unknown circuit kind '{}'", kind));
}

double pdp(std::string_view kind, ExecMode mode) {
    const auto& c = cost_of(kind);
    return c.power_mw(mode) * c.cycles(mode);
}

double speedup(std::string_view kind) {
    const auto& c = cost_of(kind);
    return c.serial_cycles / c.parallel_cycles;
}

std::size_t ArrayConfig::pixels_per_batch() const {
    if (stream_length == 0 || columns_total < stream_length)
        throw ParamError("columns_total must be at least the stream length");
    return columns_total / stream_length;
}

PipelineReport pipeline_report(const ArrayConfig& cfg, std::string_view kind) {
    const auto& c = cost_of(kind);
    const std::size_t p = cfg.pixels_per_batch();
    if (!(cfg.clock_hz > 0)) throw ParamError("clock frequency must be positive");
    if (cfg.image_pixels == 0) throw ParamError("image must contain pixels");

    PipelineReport r;
    r.kind = c.kind;
    r.pixels_per_batch = p;
    const double batches = std::ceil(static_cast<double>(cfg.image_pixels) / static_cast<double>(p));
    r.cycles_per_frame_parallel = batches * (c.parallel_cycles + cfg.batch_overhead_cycles);
    r.cycles_per_frame_serial = static_cast<double>(cfg.image_pixels) * static_cast<double>(cfg.stream_length);
    r.fps_parallel = cfg.clock_hz / r.cycles_per_frame_parallel;
    r.fps_serial = cfg.clock_hz / r.cycles_per_frame_serial;
    r.throughput_ratio = r.fps_parallel / r.fps_serial;

    const double pixels = static_cast<double>(cfg.image_pixels);
    r.energy_per_frame_parallel_j = pixels * c.parallel_power_mw * 1e-3 * c.parallel_cycles / cfg.clock_hz;
    r.energy_per_frame_serial_j = pixels * c.serial_power_mw * 1e-3 * c.serial_cycles / cfg.clock_hz;
    const double t_par = 1.0 / r.fps_parallel;
    const double t_ser = 1.0 / r.fps_serial;
    r.edp_ratio = (r.energy_per_frame_serial_j * t_ser) / (r.energy_per_frame_parallel_j * t_par);
    return r;
}

void write_cost_csv(std::ostream& out, const std::vector<OpCost>& costs) {
    out << "metric,mode";
    for (const auto& c : costs) out << ',' << c.kind;
    out << '\n';
    auto row = [&](std::string_view metric, ExecMode mode, auto value) {
        out << metric << ',' << (mode == ExecMode::Parallel ? "parallel" : "serial");
        for (const auto& c : costs) out << ',' << fmt::format("{:.2f}", value(c));
        out << '\n';
    };
    for (auto mode : {ExecMode::Parallel, ExecMode::Serial}) {
        row("delay_cycles", mode, [&](const OpCost& c) { return c.cycles(mode); });
        row("power_mw", mode, [&](const OpCost& c) { return c.power_mw(mode); });
        row("pdp", mode, [&](const OpCost& c) { return c.power_mw(mode) * c.cycles(mode); });
    }
}

std::string pipeline_json(const ArrayConfig& cfg, const std::vector<PipelineReport>& reports) {
    nlohmann::ordered_json j;
    j["config"] = {{"columns_total", cfg.columns_total},
                   {"stream_length", cfg.stream_length},
                   {"clock_hz", cfg.clock_hz},
                   {"batch_overhead_cycles", cfg.batch_overhead_cycles},
                   {"image_pixels", cfg.image_pixels},
                   {"pixels_per_batch", cfg.pixels_per_batch()}};
    auto& arr = j["reports"] = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        arr.push_back({{"kind", r.kind},
                       {"pixels_per_batch", r.pixels_per_batch},
                       {"cycles_per_frame_parallel", r.cycles_per_frame_parallel},
                       {"cycles_per_frame_serial", r.cycles_per_frame_serial},
                       {"fps_parallel", r.fps_parallel},
                       {"fps_serial", r.fps_serial},
                       {"throughput_ratio", r.throughput_ratio},
                       {"energy_per_frame_parallel_j", r.energy_per_frame_parallel_j},
                       {"energy_per_frame_serial_j", r.energy_per_frame_serial_j},
                       {"edp_ratio", r.edp_ratio}});
    }
    return j.dump(2) + "\n";
}

}  // namespace sclim
