#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sclim {

/// Row-major grayscale image with intensities in [0,1].
struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<double> pixels;

    GrayImage() = default;
    GrayImage(std::size_t w, std::size_t h, double fill = 0.0);
    double& at(std::size_t x, std::size_t y) { return pixels[y * width + x]; }
    double at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
};

/// Accepts P2 and P5 with maxval 255.
GrayImage parse_pgm(std::string_view data);
GrayImage read_pgm(const std::string& path);
std::string encode_pgm(const GrayImage& img, bool binary = true);
void write_pgm(const GrayImage& img, const std::string& path, bool binary = true);

struct ToneParams {
    double alpha = 1.2;  // contrast gain
    double beta = 0.5;   // pivot of the gain
    double k = 4.0;      // curve slope
    double c = 0.5;      // curve center
    void validate() const;
};

enum class ToneKind { Sigmoid, Tanh };
std::optional<ToneKind> parse_tone_kind(std::string_view name);

double tone_curve_ref(double x, const ToneParams& p, ToneKind kind);
GrayImage tonemap_ref(const GrayImage& img, const ToneParams& p, ToneKind kind);

struct StreamMode {
    enum class Kind { Deterministic, Random } kind = Kind::Deterministic;
    std::uint64_t seed = 0;
    static StreamMode deterministic() { return {}; }
    static StreamMode random(std::uint64_t seed) { return {Kind::Random, seed}; }
};

/// Per-pixel S-curve through the stochastic sigmoid or tanh block. The curve
/// argument is clipped to [-1, 1]; its magnitude drives the block and the sign
/// is restored through the curve's point symmetry about (0, 1/2).
GrayImage tonemap_sc(const GrayImage& img, const ToneParams& p, std::size_t n, StreamMode mode, ToneKind kind);

struct QualityReport {
    double psnr_db;  // +inf for identical images
    double mse;
    double rmse;
    double mae;
    double max_ae;
    double pearson_corr;
};

QualityReport quality_metrics(const GrayImage& out, const GrayImage& reference);
/// JSON object with keys psnr_db, mse, rmse, mae, max_ae, pearson_corr; infinite PSNR becomes "inf".
std::string quality_json(const QualityReport& q);

}  // namespace sclim
