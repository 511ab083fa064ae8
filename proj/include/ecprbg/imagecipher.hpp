#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ecprbg/prbg.hpp"
#include "ecprbg/sha256.hpp"

namespace ecprbg {

/// 8-bit grayscale raster, row-major.
struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels;

    bool operator==(const GrayImage&) const = default;
};

class PgmError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads binary "P5" or ASCII "P2", maxval <= 255. Header comments are
/// collected (leading "# " stripped) when `comments` is non-null.
GrayImage read_pgm(const std::string& path, std::vector<std::string>* comments = nullptr);

/// Writes binary "P5" with maxval 255; each comment becomes one header line.
void write_pgm(const std::string& path, const GrayImage& image,
               const std::vector<std::string>& comments = {});

/// XOR keystream cipher: draws 8 bits per pixel from the generator and
/// XORs them in, row-major. Decryption is the same operation.
GrayImage encrypt_image(const GrayImage& image, GeneratorState& state);
GrayImage decrypt_image(const GrayImage& image, GeneratorState& state);

/// SHA-256 over the raw pixel bytes.
Sha256::Digest image_digest(const GrayImage& image);

/// Seed material binding a keystream to one plainimage: user_seed || digest.
/// Rebuilding it for decryption needs the digest, which the encrypt command
/// stores in the cipher file's header.
std::vector<std::uint8_t> keystream_seed(std::span<const std::uint8_t> user_seed,
                                         const Sha256::Digest& plain_digest);

/// Shannon entropy of the pixel distribution, bits per pixel, in [0, 8].
double image_entropy(const GrayImage& image);

/// Mean absolute / squared pixel error. Dimension mismatch throws.
double mae(const GrayImage& a, const GrayImage& b);
double mse(const GrayImage& a, const GrayImage& b);

/// 10*log10(255^2 / mse); +infinity when the images are identical.
double psnr(const GrayImage& a, const GrayImage& b);

enum class Adjacency { horizontal, vertical, diagonal };

/// Pearson correlation over all adjacent pixel pairs in one direction.
/// Empty when either coordinate has zero variance (e.g. constant image).
std::optional<double> adjacent_correlation(const GrayImage& image, Adjacency direction);

/// (NPCR %, UACI %) between two equal-sized images.
std::pair<double, double> npcr_uaci(const GrayImage& c1, const GrayImage& c2);

struct HistogramResult {
    std::array<std::uint64_t, 256> bins{};
    double chi2 = 0.0;
    double p_value = 0.0;  // uniformity, 255 degrees of freedom
};

HistogramResult histogram(const GrayImage& image);

/// Cipher-quality summary for one plain/cipher pair. Entropy, correlations
/// and the histogram describe the cipher image; NPCR/UACI are present only
/// when a second cipher image is supplied.
struct CipherMetrics {
    double entropy = 0.0;
    double mae = 0.0;
    double mse = 0.0;
    double psnr = 0.0;
    std::optional<double> corr_horizontal;
    std::optional<double> corr_vertical;
    std::optional<double> corr_diagonal;
    std::optional<double> npcr;
    std::optional<double> uaci;
    std::array<std::uint64_t, 256> histogram{};
    double histogram_chi2 = 0.0;
    double histogram_chi2_p = 0.0;
};

CipherMetrics compute_metrics(const GrayImage& plain, const GrayImage& cipher,
                              const GrayImage* second_cipher = nullptr);

/// JSON document mirroring the CipherMetrics fields. +infinity serializes
/// as the string "inf", absent optionals as null.
std::string metrics_json(const CipherMetrics& metrics);

}  // namespace ecprbg
