#include "cli_app.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "sclim/bitstream.hpp"
#include "sclim/error.hpp"
#include "sclim/fault.hpp"
#include "sclim/perf.hpp"
#include "sclim/tonemap.hpp"

namespace sclim::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t parse_seed(std::string_view text, std::string_view what) {
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (text.empty() || ec != std::errc{} || ptr != end)
        throw UsageError(fmt::format("{} must be an unsigned 64-bit integer, got '{}'", what, text));
    return v;
}

std::uint64_t resolve_seed(const CLI::Option* opt, const std::string& flag_value) {
    if (opt->count() > 0) return parse_seed(flag_value, "--seed");
    if (const char* env = std::getenv("SCLIM_SEED")) return parse_seed(env, "SCLIM_SEED");
    return kDefaultSeed;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
    f << content;
    if (!f) throw IoError(fmt::format("cannot write '{}'", path.string()));
}

std::string rows_csv(const std::vector<MaeRow>& rows) {
    std::ostringstream s;
    write_mae_csv(s, rows);
    return s.str();
}

ExperimentKind require_kind(const std::string& name) {
    if (auto k = parse_kind(name)) return *k;
    throw UsageError(fmt::format("unknown op '{}'", name));
}

void require_trials(std::size_t trials) {
    if (trials == 0) throw UsageError("--trials must be positive");
}

// ---------------------------------------------------------------- gen

struct GenArgs {
    std::uint32_t value = 0;
    unsigned bits = 0;
    std::string mode = "det";
    unsigned rot = 0;
    std::uint32_t mask = 0;
    std::string seed;
    CLI::Option* seed_opt = nullptr;
};

void cmd_gen(const GenArgs& a, std::ostream& out) {
    if (a.bits < 1 || a.bits > 16) throw UsageError("--bits must lie in [1, 16]");
    if (a.value > max_word(a.bits)) throw UsageError(fmt::format("--value must be below 2^{}", a.bits));
    const std::size_t n = std::size_t{1} << a.bits;
    BitBundle b = [&] {
        if (a.mode == "det") return encode_deterministic(a.value, make_pattern(a.bits, a.rot, a.mask));
        if (a.mode == "thermo") return encode_thermometer(a.value, n);
        return encode_random(a.value, n, resolve_seed(a.seed_opt, a.seed));
    }();
    const auto v = decode_value(b);
    out << b.to_string() << '\n' << fmt::format("value = {}/{}", v.num, v.den) << '\n';
}

// ---------------------------------------------------------------- mae / tables

struct MaeArgs {
    std::string op;
    std::size_t n = 64;
    std::vector<double> noise{0};
    std::size_t trials = 100000;
    unsigned threads = 0;
    std::string out;
    std::string seed;
    CLI::Option* seed_opt = nullptr;
};

void cmd_mae(const MaeArgs& a, std::ostream& out) {
    const auto kind = require_kind(a.op);
    require_trials(a.trials);
    const auto seed = resolve_seed(a.seed_opt, a.seed);
    std::vector<MaeRow> rows;
    for (double pct : a.noise) rows.push_back(mae_experiment(kind, a.n, pct / 100.0, a.trials, seed, a.threads));
    const auto csv = rows_csv(rows);
    if (!a.out.empty()) write_text(a.out, csv);
    out << csv;
}

struct TablesArgs {
    std::string out_dir = ".";
    std::size_t trials = 100000;
    std::vector<std::size_t> lengths{16, 64};
    std::vector<double> noise{0, 1, 2, 5, 10, 20, 30};
    unsigned threads = 0;
    std::string seed;
    CLI::Option* seed_opt = nullptr;
};

void cmd_tables(const TablesArgs& a, std::ostream& out) {
    require_trials(a.trials);
    const auto seed = resolve_seed(a.seed_opt, a.seed);
    for (auto n : a.lengths)
        if (!is_valid_length(n) || n < 16) throw UsageError("--n values must be powers of two of at least 16");
    std::filesystem::create_directories(a.out_dir);
    for (const auto& [name, cfg] : {std::pair{"table1.csv", table1_config(a.trials, seed)},
                                   std::pair{"table2.csv", table2_config(a.trials, seed)}}) {
        auto c = cfg;
        c.lengths = a.lengths;
        c.noise_pct = a.noise;
        c.threads = a.threads;
        const auto rows = sweep_tables(c);
        const auto path = std::filesystem::path(a.out_dir) / name;
        write_text(path, rows_csv(rows));
        out << fmt::format("wrote {} ({} rows, seed {})\n", path.string(), rows.size(), seed);
    }
}

// ---------------------------------------------------------------- perf

struct PerfArgs {
    ArrayConfig cfg;
    double clock_mhz = 200.0;
    std::string out_dir = ".";
};

void cmd_perf(PerfArgs a, std::ostream& out) {
    a.cfg.clock_hz = a.clock_mhz * 1e6;
    if (!(a.cfg.clock_hz > 0)) throw UsageError("--clock-mhz must be positive");
    if (a.cfg.batch_overhead_cycles < 0) throw UsageError("--overhead must be non-negative");
    if (a.cfg.image_pixels == 0) throw UsageError("--pixels must be positive");
    if (a.cfg.stream_length == 0 || a.cfg.columns_total / a.cfg.stream_length < 1)
        throw UsageError(fmt::format("--columns {} holds no {}-bit stream (P < 1)", a.cfg.columns_total,
                                     a.cfg.stream_length));

    std::vector<PipelineReport> reports;
    for (const auto& c : default_costs()) reports.push_back(pipeline_report(a.cfg, c.kind));

    std::ostringstream csv;
    write_cost_csv(csv);
    std::filesystem::create_directories(a.out_dir);
    write_text(std::filesystem::path(a.out_dir) / "table3.csv", csv.str());
    write_text(std::filesystem::path(a.out_dir) / "pipeline.json", pipeline_json(a.cfg, reports));

    out << fmt::format("P = {} pixels/batch, serial {:.1f} FPS\n", a.cfg.pixels_per_batch(), reports[0].fps_serial);
    for (const auto& r : reports)
        out << fmt::format("{:<10} parallel {:8.1f} FPS  speedup {:5.1f}x  EDP ratio {:6.1f}x\n", r.kind,
                           r.fps_parallel, r.throughput_ratio, r.edp_ratio);
}

// ---------------------------------------------------------------- tonemap

struct ToneArgs {
    std::string in;
    std::string fn = "sigmoid";
    std::size_t n = 256;
    std::string mode = "det";
    ToneParams params;
    std::string out;
    std::string report;
    bool compare_random = false;
    bool ascii = false;
    std::string seed;
    CLI::Option* seed_opt = nullptr;
};

Json metrics_json(const QualityReport& q) { return Json::parse(quality_json(q)); }

void cmd_tonemap(const ToneArgs& a, std::ostream& out) {
    const auto kind = parse_tone_kind(a.fn);
    if (!kind) throw UsageError(fmt::format("unknown --fn '{}' (sigmoid or tanh)", a.fn));
    if (a.mode != "det" && a.mode != "random") throw UsageError("--mode must be det or random");
    if (!is_valid_length(a.n) || a.n < 16) throw UsageError("--n must be a power of two of at least 16");
    a.params.validate();
    const auto seed = resolve_seed(a.seed_opt, a.seed);

    const GrayImage img = read_pgm(a.in);
    const GrayImage ref = tonemap_ref(img, a.params, *kind);
    const StreamMode mode = a.mode == "det" ? StreamMode::deterministic() : StreamMode::random(seed);
    const GrayImage mapped = tonemap_sc(img, a.params, a.n, mode, *kind);
    if (!a.out.empty()) write_pgm(mapped, a.out, !a.ascii);

    Json j;
    j["fn"] = a.fn;
    j["n"] = a.n;
    j["mode"] = a.mode;
    j["seed"] = seed;
    j["params"] = {{"alpha", a.params.alpha}, {"beta", a.params.beta}, {"k", a.params.k}, {"c", a.params.c}};
    j["width"] = img.width;
    j["height"] = img.height;
    j["metrics"] = metrics_json(quality_metrics(mapped, ref));
    if (a.compare_random) {
        const auto det = quality_metrics(tonemap_sc(img, a.params, a.n, StreamMode::deterministic(), *kind), ref);
        const auto rnd = quality_metrics(tonemap_sc(img, a.params, a.n, StreamMode::random(seed), *kind), ref);
        j["deterministic"] = metrics_json(det);
        j["random"] = metrics_json(rnd);
        j["psnr_db_det"] = j["deterministic"]["psnr_db"];
        j["psnr_db_rand"] = j["random"]["psnr_db"];
    }
    const auto text = j.dump(2) + "\n";
    if (!a.report.empty()) write_text(a.report, text);
    out << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bit-parallel stochastic-computing pipeline simulator", "sclim"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Encode a word as a bit-stream and print it");
    g->add_option("--value", gen.value, "Word to encode (below 2^bits)")->required();
    g->add_option("--bits", gen.bits, "Word width m; stream length is 2^m")->required();
    g->add_option("--mode", gen.mode, "det | thermo | random")
        ->capture_default_str()
        ->check(CLI::IsMember({"det", "thermo", "random"}));
    g->add_option("--rot", gen.rot, "Pattern rotation (det mode)")->capture_default_str();
    g->add_option("--mask", gen.mask, "Pattern xor mask (det mode)")->capture_default_str();
    gen.seed_opt = g->add_option("--seed", gen.seed, "Generator seed (random mode); default $SCLIM_SEED or " +
                                                         std::to_string(kDefaultSeed));

    MaeArgs mae;
    auto* m = app.add_subcommand("mae", "Monte-Carlo MAE of one operation or function");
    m->add_option("--op", mae.op, "mul scaled_add abs_sub min max sin cos tanh arctan sinc sigmoid exp ln")
        ->required();
    m->add_option("--n", mae.n, "Stream length")->capture_default_str();
    m->add_option("--noise", mae.noise, "Bit-flip rate(s) in percent, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    m->add_option("--trials", mae.trials, "Monte-Carlo trials")->capture_default_str();
    m->add_option("--threads", mae.threads, "Worker threads (0 = all cores)")->capture_default_str();
    m->add_option("--out", mae.out, "CSV output path");
    mae.seed_opt = m->add_option("--seed", mae.seed, "Master seed; default $SCLIM_SEED or " +
                                                         std::to_string(kDefaultSeed));

    TablesArgs tables;
    auto* t = app.add_subcommand("tables", "Full noise sweeps: table1.csv (operators), table2.csv (functions)");
    t->add_option("--out-dir", tables.out_dir, "Output directory")->capture_default_str();
    t->add_option("--trials", tables.trials, "Monte-Carlo trials per cell")->capture_default_str();
    t->add_option("--n", tables.lengths, "Stream lengths, comma separated")->delimiter(',')->capture_default_str();
    t->add_option("--noise", tables.noise, "Noise grid in percent, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    t->add_option("--threads", tables.threads, "Worker threads (0 = all cores)")->capture_default_str();
    tables.seed_opt = t->add_option("--seed", tables.seed, "Master seed; default $SCLIM_SEED or " +
                                                               std::to_string(kDefaultSeed));

    PerfArgs perf;
    auto* p = app.add_subcommand("perf", "Cost table (table3.csv) and pipeline model (pipeline.json)");
    p->add_option("--columns", perf.cfg.columns_total, "Memory columns")->capture_default_str();
    p->add_option("--n", perf.cfg.stream_length, "Stream length")->capture_default_str();
    p->add_option("--clock-mhz", perf.clock_mhz, "Clock frequency in MHz")->capture_default_str();
    p->add_option("--overhead", perf.cfg.batch_overhead_cycles, "Per-batch overhead cycles")
        ->capture_default_str();
    p->add_option("--pixels", perf.cfg.image_pixels, "Pixels per frame")->capture_default_str();
    p->add_option("--out-dir", perf.out_dir, "Output directory")->capture_default_str();

    ToneArgs tone;
    auto* tm = app.add_subcommand("tonemap", "Tone-map a PGM image through the stochastic S-curve");
    tm->add_option("--in", tone.in, "Input PGM (P2 or P5, maxval 255)")->required();
    tm->add_option("--fn", tone.fn, "sigmoid | tanh")->capture_default_str();
    tm->add_option("--n", tone.n, "Stream length (>= 16)")->capture_default_str();
    tm->add_option("--mode", tone.mode, "det | random")->capture_default_str();
    tm->add_option("--alpha", tone.params.alpha, "Contrast gain")->capture_default_str();
    tm->add_option("--beta", tone.params.beta, "Gain pivot")->capture_default_str();
    tm->add_option("--k", tone.params.k, "Curve slope")->capture_default_str();
    tm->add_option("--c", tone.params.c, "Curve center")->capture_default_str();
    tm->add_option("--out", tone.out, "Output PGM path");
    tm->add_option("--report", tone.report, "Metrics JSON path (also printed)");
    tm->add_flag("--compare-random", tone.compare_random, "Also report deterministic vs random metrics");
    tm->add_flag("--ascii", tone.ascii, "Write P2 instead of P5");
    tone.seed_opt = tm->add_option("--seed", tone.seed, "Seed for random streams; default $SCLIM_SEED or " +
                                                            std::to_string(kDefaultSeed));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsageError;
    }

    try {
        if (*g) cmd_gen(gen, out);
        if (*m) cmd_mae(mae, out);
        if (*t) cmd_tables(tables, out);
        if (*p) cmd_perf(perf, out);
        if (*tm) cmd_tonemap(tone, out);
        return kOk;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const ParamError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const ModeError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
}

}  // namespace sclim::cli
