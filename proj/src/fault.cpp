#include "sclim/fault.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>
#include <utility>

#include <fmt/format.h>

#include "sclim/error.hpp"
#include "sclim/gates.hpp"

namespace sclim {

namespace {

constexpr std::array<std::pair<ExperimentKind, std::string_view>, 13> kNames = {{
    {ExperimentKind::Mul, "mul"},
    {ExperimentKind::ScaledAdd, "scaled_add"},
    {ExperimentKind::AbsSub, "abs_sub"},
    {ExperimentKind::Min, "min"},
    {ExperimentKind::Max, "max"},
    {ExperimentKind::Sin, "sin"},
    {ExperimentKind::Cos, "cos"},
    {ExperimentKind::Tanh, "tanh"},
    {ExperimentKind::Arctan, "arctan"},
    {ExperimentKind::Sinc, "sinc"},
    {ExperimentKind::Sigmoid, "sigmoid"},
    {ExperimentKind::Exp, "exp"},
    {ExperimentKind::Ln, "ln"},
}};

constexpr std::size_t kChunk = 1024;

void check_rate(double rate) {
    if (!(rate >= 0.0 && rate <= 0.5)) throw ParamError("noise rate must lie in [0, 0.5]");
}

// Everything about one (kind, N) cell that does not change between trials.
class CellModel {
public:
    CellModel(ExperimentKind kind, std::size_t n) : kind_(kind), n_(n), bits_(length_bits(n)) {
        PatternAllocator alloc(bits_);
        if (auto fn = as_function(kind)) {
            plan_.emplace(plan_chain(*fn, bits_, alloc));
            return;
        }
        if (kind == ExperimentKind::Mul) {
            for (const auto& v : alloc.draw_group(2)) patterns_.emplace_back(bits_, v);
        } else if (kind == ExperimentKind::ScaledAdd) {
            const auto p = draw_scaled_add(alloc);
            patterns_.emplace_back(bits_, p.a);
            patterns_.emplace_back(bits_, p.b);
            select_.emplace(encode_deterministic(std::uint32_t{1} << (bits_ - 1), MappingPattern(bits_, p.select)));
        }
    }

    // Returns (|SC - exact|, |noisy binary - clean binary|).
    std::pair<double, double> run(Rng& rng, double rate) const {
        return plan_ ? run_function(rng, rate) : run_op(rng, rate);
    }

private:
    double to_real(std::uint32_t w) const { return static_cast<double>(w) / static_cast<double>(n_); }

    void perturb(BitBundle& b, double rate, Rng& rng) const {
        if (rate > 0.0) flip_stream_inplace(b, rate, rng);
    }
    std::uint32_t perturb(std::uint32_t w, double rate, Rng& rng) const {
        return rate > 0.0 ? flip_binary(w, bits_, rate, rng) : w;
    }

    double op_value(double a, double b) const {
        switch (kind_) {
            case ExperimentKind::Mul: return a * b;
            case ExperimentKind::ScaledAdd: return 0.5 * (a + b);
            case ExperimentKind::AbsSub: return std::abs(a - b);
            case ExperimentKind::Min: return std::min(a, b);
            case ExperimentKind::Max: return std::max(a, b);
            default: throw ParamError("not an arithmetic kind");
        }
    }

    std::pair<double, double> run_op(Rng& rng, double rate) const {
        const double a = uniform01(rng);
        const double b = uniform01(rng);
        const auto qa = quantize(a, bits_);
        const auto qb = quantize(b, bits_);

        BitBundle sa = patterns_.empty() ? encode_thermometer(qa, n_) : encode_deterministic(qa, patterns_[0]);
        BitBundle sb = patterns_.empty() ? encode_thermometer(qb, n_) : encode_deterministic(qb, patterns_[1]);
        perturb(sa, rate, rng);
        perturb(sb, rate, rng);
        BitBundle out = [&] {
            switch (kind_) {
                case ExperimentKind::Mul: return gate_and(sa, sb);
                case ExperimentKind::ScaledAdd: return gate_mux(sa, sb, *select_);
                case ExperimentKind::AbsSub: return gate_xor(sa, sb);
                case ExperimentKind::Min: return gate_and(sa, sb);
                default: return gate_or(sa, sb);
            }
        }();
        const double sc_err = std::abs(decode_value(out).value() - op_value(a, b));

        const auto na = perturb(qa, rate, rng);
        const auto nb = perturb(qb, rate, rng);
        const double bin_err = std::abs(op_value(to_real(na), to_real(nb)) - op_value(to_real(qa), to_real(qb)));
        return {sc_err, bin_err};
    }

    std::pair<double, double> run_function(Rng& rng, double rate) const {
        const double x = uniform01(rng);
        const auto qx = quantize(x, bits_);
        const auto out = eval_chain(plan_->spec, n_, qx, [&](std::size_t i, const Leaf& leaf) {
            BitBundle s = encode_deterministic(leaf.word, plan_->patterns[i]);
            // Coefficients are stored constants; only operand copies see noise.
            if (leaf.role == LeafRole::Operand) perturb(s, rate, rng);
            return s;
        });
        const auto fn = plan_->spec.kind;
        const double sc_err = std::abs(decode_value(out).value() - true_function(fn, x));

        const auto nx = perturb(qx, rate, rng);
        const double bin_err = std::abs(reference_poly(fn, to_real(nx)) - reference_poly(fn, to_real(qx)));
        return {sc_err, bin_err};
    }

    ExperimentKind kind_;
    std::size_t n_;
    unsigned bits_;
    std::vector<MappingPattern> patterns_;
    std::optional<BitBundle> select_;
    std::optional<ChainPlan> plan_;
};

}  // namespace

std::string_view kind_name(ExperimentKind k) {
    for (const auto& [kind, name] : kNames)
        if (kind == k) return name;
    return "?";
}

std::optional<ExperimentKind> parse_kind(std::string_view name) {
    for (const auto& [kind, n] : kNames)
        if (n == name) return kind;
    return std::nullopt;
}

std::optional<FunctionKind> as_function(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Sin: return FunctionKind::Sin;
        case ExperimentKind::Cos: return FunctionKind::Cos;
        case ExperimentKind::Tanh: return FunctionKind::Tanh;
        case ExperimentKind::Arctan: return FunctionKind::Arctan;
        case ExperimentKind::Sinc: return FunctionKind::Sinc;
        case ExperimentKind::Sigmoid: return FunctionKind::Sigmoid;
        case ExperimentKind::Exp: return FunctionKind::ExpNeg;
        case ExperimentKind::Ln: return FunctionKind::Ln1p;
        default: return std::nullopt;
    }
}

NoiseSpec::NoiseSpec(double r, std::uint64_t s) : rate(r), seed(s) { check_rate(r); }

void flip_stream_inplace(BitBundle& b, double rate, Rng& rng) {
    check_rate(rate);
    const auto threshold = bernoulli_threshold(rate);
    for (std::size_t j = 0; j < b.size(); ++j)
        if (rng() < threshold) b.flip(j);
}

std::uint32_t flip_binary(std::uint32_t word, unsigned bits, double rate, Rng& rng) {
    check_rate(rate);
    if (bits < 1 || bits > 16 || word > max_word(bits)) throw ParamError("word does not fit the given width");
    const auto threshold = bernoulli_threshold(rate);
    for (unsigned i = 0; i < bits; ++i)
        if (rng() < threshold) word ^= std::uint32_t{1} << i;
    return word;
}

BitBundle flip_stream(const BitBundle& b, const NoiseSpec& noise) {
    Rng rng(noise.seed);
    BitBundle out = b;
    flip_stream_inplace(out, noise.rate, rng);
    return out;
}

std::uint32_t flip_binary(std::uint32_t word, unsigned bits, const NoiseSpec& noise) {
    Rng rng(noise.seed);
    return flip_binary(word, bits, noise.rate, rng);
}

MaeRow mae_experiment(ExperimentKind kind, std::size_t n, double noise_rate, std::size_t trials,
                      std::uint64_t master_seed, unsigned threads) {
    check_rate(noise_rate);
    if (trials == 0) throw ParamError("trials must be positive");
    const CellModel model(kind, n);

    // The cell seed ignores the noise rate: every rate replays the same inputs.
    const std::uint64_t cell_seed =
        derive_seed(derive_seed(master_seed, static_cast<std::uint64_t>(kind)), static_cast<std::uint64_t>(n));

    const std::size_t chunks = (trials + kChunk - 1) / kChunk;
    std::vector<std::pair<double, double>> partial(chunks);
    std::atomic<std::size_t> cursor{0};
    auto worker = [&] {
        for (std::size_t c; (c = cursor.fetch_add(1)) < chunks;) {
            double sc = 0.0, bin = 0.0;
            const std::size_t end = std::min(trials, (c + 1) * kChunk);
            for (std::size_t t = c * kChunk; t < end; ++t) {
                Rng rng(derive_seed(cell_seed, t));
                const auto [e_sc, e_bin] = model.run(rng, noise_rate);
                sc += e_sc;
                bin += e_bin;
            }
            partial[c] = {sc, bin};
        }
    };

    unsigned workers = threads ? threads : std::max(1U, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, chunks));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    }

    double sc = 0.0, bin = 0.0;
    for (const auto& [s, b] : partial) {
        sc += s;
        bin += b;
    }
    const double scale = 100.0 / static_cast<double>(trials);
    return MaeRow{kind, n, noise_rate, sc * scale, bin * scale, trials};
}

SweepConfig table1_config(std::size_t trials, std::uint64_t master_seed) {
    SweepConfig cfg;
    cfg.kinds.assign(kOperatorKinds.begin(), kOperatorKinds.end());
    cfg.trials = trials;
    cfg.master_seed = master_seed;
    return cfg;
}

SweepConfig table2_config(std::size_t trials, std::uint64_t master_seed) {
    SweepConfig cfg;
    cfg.kinds.assign(kFunctionKinds.begin(), kFunctionKinds.end());
    cfg.trials = trials;
    cfg.master_seed = master_seed;
    return cfg;
}

std::vector<MaeRow> sweep_tables(const SweepConfig& cfg) {
    std::vector<MaeRow> rows;
    rows.reserve(cfg.kinds.size() * cfg.lengths.size() * cfg.noise_pct.size());
    for (auto kind : cfg.kinds)
        for (auto n : cfg.lengths)
            for (auto pct : cfg.noise_pct)
                rows.push_back(mae_experiment(kind, n, pct / 100.0, cfg.trials, cfg.master_seed, cfg.threads));
    return rows;
}

std::string format_mae_row(const MaeRow& r) {
    return fmt::format("{},{},{:.2f},{:.2f},{:.2f},{}", kind_name(r.kind), r.n, r.noise_rate * 100.0, r.sc_mae_pct,
                       r.binary_mae_pct, r.trials);
}

void write_mae_csv(std::ostream& out, const std::vector<MaeRow>& rows) {
    out << kMaeCsvHeader << '\n';
    for (const auto& r : rows) out << format_mae_row(r) << '\n';
}

}  // namespace sclim
