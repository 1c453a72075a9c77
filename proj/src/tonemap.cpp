#include "sclim/tonemap.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "sclim/bitstream.hpp"
#include "sclim/chains.hpp"
#include "sclim/error.hpp"
#include "sclim/rng.hpp"

namespace sclim {

GrayImage::GrayImage(std::size_t w, std::size_t h, double fill) : width(w), height(h), pixels(w * h, fill) {}

namespace {

class HeaderReader {
public:
    explicit HeaderReader(std::string_view d) : data_(d) {}

    std::string token() {
        skip_space_and_comments();
        const std::size_t start = pos_;
        while (pos_ < data_.size() && !std::isspace(static_cast<unsigned char>(data_[pos_]))) ++pos_;
        if (start == pos_) throw FormatError("PGM header is truncated");
        return std::string(data_.substr(start, pos_ - start));
    }

    std::size_t number() {
        const auto t = token();
        if (!std::all_of(t.begin(), t.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }) ||
            t.size() > 9)
            throw FormatError("PGM header field is not a number: " + t);
        return std::stoul(t);
    }

    std::size_t pos() const { return pos_; }
    void skip(std::size_t k) { pos_ += k; }

private:
    void skip_space_and_comments() {
        while (pos_ < data_.size()) {
            if (data_[pos_] == '#') {
                while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(data_[pos_]))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    std::string_view data_;
    std::size_t pos_ = 0;
};

double clip01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

GrayImage parse_pgm(std::string_view data) {
    HeaderReader rd(data);
    const auto magic = rd.token();
    if (magic != "P2" && magic != "P5") throw FormatError("not a PGM file (magic '" + magic + "')");
    const auto w = rd.number();
    const auto h = rd.number();
    const auto maxval = rd.number();
    if (w == 0 || h == 0) throw FormatError("PGM dimensions must be positive");
    if (maxval != 255) throw FormatError("unsupported PGM maxval " + std::to_string(maxval));
    if (w * h > (std::size_t{1} << 28)) throw FormatError("PGM image too large");

    GrayImage img(w, h);
    if (magic == "P2") {
        for (auto& v : img.pixels) {
            std::size_t s = 0;
            try {
                s = rd.number();
            } catch (const FormatError&) {
                throw FormatError("PGM payload is truncated or malformed");
            }
            if (s > 255) throw FormatError("PGM sample exceeds maxval");
            v = static_cast<double>(s) / 255.0;
        }
        return img;
    }
    rd.skip(1);  // the single whitespace byte after maxval
    if (rd.pos() > data.size() || data.size() - rd.pos() < w * h) throw FormatError("PGM payload is truncated");
    for (std::size_t i = 0; i < w * h; ++i)
        img.pixels[i] = static_cast<double>(static_cast<unsigned char>(data[rd.pos() + i])) / 255.0;
    return img;
}

GrayImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open image '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("cannot read image '" + path + "'");
    return parse_pgm(ss.str());
}

std::string encode_pgm(const GrayImage& img, bool binary) {
    if (img.pixels.size() != img.width * img.height || img.pixels.empty())
        throw ParamError("image dimensions do not match its pixel count");
    auto level = [](double v) { return static_cast<int>(std::lround(clip01(v) * 255.0)); };
    std::ostringstream out;
    out << (binary ? "P5" : "P2") << '\n' << img.width << ' ' << img.height << "\n255\n";
    if (binary) {
        for (double v : img.pixels) out.put(static_cast<char>(level(v)));
    } else {
        for (std::size_t y = 0; y < img.height; ++y) {
            for (std::size_t x = 0; x < img.width; ++x) out << (x ? " " : "") << level(img.at(x, y));
            out << '\n';
        }
    }
    return out.str();
}

void write_pgm(const GrayImage& img, const std::string& path, bool binary) {
    const auto bytes = encode_pgm(img, binary);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("cannot write '" + path + "'");
}

void ToneParams::validate() const {
    if (!(alpha > 0)) throw ParamError("alpha must be positive");
    if (!(k > 0)) throw ParamError("k must be positive");
    if (!(beta >= 0 && beta <= 1)) throw ParamError("beta must lie in [0, 1]");
    if (!(c >= 0 && c <= 1)) throw ParamError("c must lie in [0, 1]");
}

std::optional<ToneKind> parse_tone_kind(std::string_view name) {
    if (name == "sigmoid") return ToneKind::Sigmoid;
    if (name == "tanh") return ToneKind::Tanh;
    return std::nullopt;
}

namespace {

double stretched(double x, const ToneParams& p) { return clip01(p.beta + p.alpha * (x - p.beta)); }

}  // namespace

double tone_curve_ref(double x, const ToneParams& p, ToneKind kind) {
    if (!(x >= 0 && x <= 1)) throw ParamError("intensity must lie in [0, 1]");
    const double arg = p.k * (stretched(x, p) - p.c);
    if (kind == ToneKind::Sigmoid) return 1.0 / (1.0 + std::exp(-arg));
    return 0.5 * (std::tanh(arg) + 1.0);
}

GrayImage tonemap_ref(const GrayImage& img, const ToneParams& p, ToneKind kind) {
    p.validate();
    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) out.pixels[i] = tone_curve_ref(img.pixels[i], p, kind);
    return out;
}

GrayImage tonemap_sc(const GrayImage& img, const ToneParams& p, std::size_t n, StreamMode mode, ToneKind kind) {
    p.validate();
    const unsigned bits = length_bits(n);
    if (n < 16) throw ParamError("tone mapping needs streams of at least 16 bits");
    const FunctionKind fn = kind == ToneKind::Sigmoid ? FunctionKind::Sigmoid : FunctionKind::Tanh;
    const ChainSpec spec = build_chain(fn);

    // Deterministic streams depend only on the quantized magnitude, so one chain
    // evaluation per level serves the whole image.
    std::vector<double> table;
    if (mode.kind == StreamMode::Kind::Deterministic) {
        PatternAllocator alloc(bits);
        const auto plan = plan_chain(fn, bits, alloc);
        table.resize(n);
        for (std::uint32_t q = 0; q < n; ++q) {
            const auto out = eval_chain(spec, n, q, [&](std::size_t i, const Leaf& leaf) {
                return encode_deterministic(leaf.word, plan.patterns[i]);
            });
            table[q] = decode_value(out).value();
        }
    }

    GrayImage out(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        const double z = std::clamp(p.k * (stretched(clip01(img.pixels[i]), p) - p.c), -1.0, 1.0);
        const auto q = quantize(std::abs(z), bits);
        double g = 0.0;
        if (mode.kind == StreamMode::Kind::Deterministic) {
            g = table[q];
        } else {
            const std::uint64_t pixel_seed = derive_seed(mode.seed, i);
            g = decode_value(eval_chain(spec, n, q, [&](std::size_t leaf_index, const Leaf& leaf) {
                    return encode_random(leaf.word, n, derive_seed(pixel_seed, leaf_index));
                })).value();
        }
        const double sign = (z > 0) - (z < 0);
        const double y = kind == ToneKind::Sigmoid ? 0.5 + sign * (g - 0.5) : 0.5 + sign * 0.5 * g;
        out.pixels[i] = clip01(y);
    }
    return out;
}

QualityReport quality_metrics(const GrayImage& out, const GrayImage& ref) {
    if (out.width != ref.width || out.height != ref.height || out.pixels.size() != ref.pixels.size())
        throw ParamError("images differ in dimensions");
    if (out.pixels.empty()) throw ParamError("images are empty");
    const double count = static_cast<double>(out.pixels.size());
    double se = 0, ae = 0, max_ae = 0, mo = 0, mr = 0;
    for (std::size_t i = 0; i < out.pixels.size(); ++i) {
        const double d = out.pixels[i] - ref.pixels[i];
        se += d * d;
        ae += std::abs(d);
        max_ae = std::max(max_ae, std::abs(d));
        mo += out.pixels[i];
        mr += ref.pixels[i];
    }
    mo /= count;
    mr /= count;
    double cov = 0, vo = 0, vr = 0;
    for (std::size_t i = 0; i < out.pixels.size(); ++i) {
        const double a = out.pixels[i] - mo, b = ref.pixels[i] - mr;
        cov += a * b;
        vo += a * a;
        vr += b * b;
    }
    QualityReport q;
    q.mse = se / count;
    q.rmse = std::sqrt(q.mse);
    q.mae = ae / count;
    q.max_ae = max_ae;
    q.psnr_db = q.mse > 0 ? 10.0 * std::log10(1.0 / q.mse) : std::numeric_limits<double>::infinity();
    if (vo > 0 && vr > 0)
        q.pearson_corr = std::clamp(cov / std::sqrt(vo * vr), -1.0, 1.0);
    else
        q.pearson_corr = out.pixels == ref.pixels ? 1.0 : 0.0;
    return q;
}

std::string quality_json(const QualityReport& q) {
    nlohmann::ordered_json j;
    if (std::isinf(q.psnr_db))
        j["psnr_db"] = "inf";
    else
        j["psnr_db"] = q.psnr_db;
    j["mse"] = q.mse;
    j["rmse"] = q.rmse;
    j["mae"] = q.mae;
    j["max_ae"] = q.max_ae;
    j["pearson_corr"] = q.pearson_corr;
    return j.dump(2);
}

}  // namespace sclim
