#include "ecprbg/imagecipher.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>

#include "ecprbg/special_functions.hpp"
#include "json.hpp"

namespace ecprbg {

namespace {

void require_valid(const GrayImage& image, const char* role) {
    if (image.width == 0 || image.height == 0)
        throw std::invalid_argument(std::string(role) + " has zero dimensions");
    if (image.pixels.size() != image.width * image.height)
        throw std::invalid_argument(std::string(role) + " pixel count does not match dimensions");
}

void require_same_size(const GrayImage& a, const GrayImage& b) {
    require_valid(a, "first image");
    require_valid(b, "second image");
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument("image dimensions differ: " + std::to_string(a.width) + "x" +
                                    std::to_string(a.height) + " vs " + std::to_string(b.width) +
                                    "x" + std::to_string(b.height));
}

// Next header token; '#' starts a comment running to end of line.
std::string next_token(std::istream& in, std::vector<std::string>* comments) {
    std::string token;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            std::string comment;
            std::getline(in, comment);
            if (!comment.empty() && comment.back() == '\r') comment.pop_back();
            if (!comment.empty() && comment.front() == ' ') comment.erase(0, 1);
            if (comments) comments->push_back(comment);
            continue;
        }
        if (std::isspace(c)) {
            if (!token.empty()) return token;
            continue;
        }
        token.push_back(char(c));
    }
    return token;
}

std::size_t parse_dim(const std::string& token, const char* what) {
    if (token.empty()) throw PgmError(std::string("missing ") + what + " in header");
    std::size_t value = 0;
    for (char ch : token) {
        if (ch < '0' || ch > '9') throw PgmError(std::string("malformed ") + what + ": " + token);
        value = value * 10 + std::size_t(ch - '0');
        if (value > 1u << 20) throw PgmError(std::string(what) + " out of range: " + token);
    }
    return value;
}

}  // namespace

GrayImage read_pgm(const std::string& path, std::vector<std::string>* comments) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PgmError("cannot open " + path);

    const std::string magic = next_token(in, comments);
    if (magic != "P5" && magic != "P2") throw PgmError("unsupported format '" + magic + "' in " + path);
    const bool binary = magic == "P5";

    GrayImage image;
    image.width = parse_dim(next_token(in, comments), "width");
    image.height = parse_dim(next_token(in, comments), "height");
    const std::size_t maxval = parse_dim(next_token(in, comments), "maxval");
    if (image.width == 0 || image.height == 0) throw PgmError("zero image dimension in " + path);
    if (maxval == 0 || maxval > 255) throw PgmError("maxval " + std::to_string(maxval) +
                                                    " unsupported (must be 1..255) in " + path);

    const std::size_t count = image.width * image.height;
    image.pixels.resize(count);
    if (binary) {
        // The maxval token consumed exactly one trailing whitespace byte.
        in.read(reinterpret_cast<char*>(image.pixels.data()), std::streamsize(count));
        if (std::size_t(in.gcount()) != count) throw PgmError("truncated pixel data in " + path);
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const std::string token = next_token(in, comments);
            const std::size_t v = parse_dim(token, "pixel");
            if (v > maxval) throw PgmError("pixel value " + token + " exceeds maxval in " + path);
            image.pixels[i] = std::uint8_t(v);
        }
    }
    for (std::uint8_t v : image.pixels)
        if (v > maxval) throw PgmError("pixel value exceeds maxval in " + path);
    return image;
}

void write_pgm(const std::string& path, const GrayImage& image,
               const std::vector<std::string>& comments) {
    require_valid(image, "image");
    for (const std::string& comment : comments)
        if (comment.find('\n') != std::string::npos)
            throw std::invalid_argument("comment must not contain a newline");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw PgmError("cannot open " + path + " for writing");
    out << "P5\n";
    for (const std::string& comment : comments) out << "# " << comment << "\n";
    out << image.width << " " << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.pixels.data()),
              std::streamsize(image.pixels.size()));
    if (!out) throw PgmError("write failed for " + path);
}

GrayImage encrypt_image(const GrayImage& image, GeneratorState& state) {
    require_valid(image, "image");
    const BitStream keystream = state.generate(8 * image.pixels.size());
    const std::vector<std::uint8_t>& key = keystream.bytes();
    GrayImage out = image;
    for (std::size_t i = 0; i < out.pixels.size(); ++i) out.pixels[i] ^= key[i];
    return out;
}

GrayImage decrypt_image(const GrayImage& image, GeneratorState& state) {
    return encrypt_image(image, state);
}

Sha256::Digest image_digest(const GrayImage& image) {
    require_valid(image, "image");
    return Sha256::digest(std::span<const std::uint8_t>(image.pixels));
}

std::vector<std::uint8_t> keystream_seed(std::span<const std::uint8_t> user_seed,
                                         const Sha256::Digest& plain_digest) {
    std::vector<std::uint8_t> material(user_seed.begin(), user_seed.end());
    material.insert(material.end(), plain_digest.begin(), plain_digest.end());
    return material;
}

double image_entropy(const GrayImage& image) {
    require_valid(image, "image");
    std::array<std::uint64_t, 256> bins{};
    for (std::uint8_t v : image.pixels) ++bins[v];
    const double total = double(image.pixels.size());
    double h = 0.0;
    for (std::uint64_t c : bins)
        if (c != 0) {
            const double p = double(c) / total;
            h -= p * std::log2(p);
        }
    return h;
}

double mae(const GrayImage& a, const GrayImage& b) {
    require_same_size(a, b);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i)
        acc += std::uint64_t(a.pixels[i] > b.pixels[i] ? a.pixels[i] - b.pixels[i]
                                                       : b.pixels[i] - a.pixels[i]);
    return double(acc) / double(a.pixels.size());
}

double mse(const GrayImage& a, const GrayImage& b) {
    require_same_size(a, b);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const std::int64_t d = std::int64_t(a.pixels[i]) - std::int64_t(b.pixels[i]);
        acc += std::uint64_t(d * d);
    }
    return double(acc) / double(a.pixels.size());
}

double psnr(const GrayImage& a, const GrayImage& b) {
    const double err = mse(a, b);
    if (err == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / err);
}

std::optional<double> adjacent_correlation(const GrayImage& image, Adjacency direction) {
    require_valid(image, "image");
    const std::size_t W = image.width, H = image.height;
    std::size_t dx = 0, dy = 0;
    switch (direction) {
        case Adjacency::horizontal: dx = 1; break;
        case Adjacency::vertical: dy = 1; break;
        case Adjacency::diagonal: dx = 1, dy = 1; break;
    }
    if (W <= dx || H <= dy) return std::nullopt;

    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    std::size_t count = 0;
    for (std::size_t y = 0; y + dy < H; ++y)
        for (std::size_t x = 0; x + dx < W; ++x) {
            const double u = image.pixels[y * W + x];
            const double v = image.pixels[(y + dy) * W + (x + dx)];
            sx += u, sy += v, sxx += u * u, syy += v * v, sxy += u * v;
            ++count;
        }
    const double n = double(count);
    const double cov = sxy - sx * sy / n;
    const double varx = sxx - sx * sx / n;
    const double vary = syy - sy * sy / n;
    if (varx <= 0.0 || vary <= 0.0) return std::nullopt;
    return cov / std::sqrt(varx * vary);
}

std::pair<double, double> npcr_uaci(const GrayImage& c1, const GrayImage& c2) {
    require_same_size(c1, c2);
    std::size_t changed = 0;
    std::uint64_t diff = 0;
    for (std::size_t i = 0; i < c1.pixels.size(); ++i) {
        const int d = std::abs(int(c1.pixels[i]) - int(c2.pixels[i]));
        changed += std::size_t(d != 0);
        diff += std::uint64_t(d);
    }
    const double n = double(c1.pixels.size());
    const double npcr = 100.0 * double(changed) / n;
    const double uaci = 100.0 * double(diff) / (255.0 * n);
    return {npcr, uaci};
}

HistogramResult histogram(const GrayImage& image) {
    require_valid(image, "image");
    HistogramResult result;
    for (std::uint8_t v : image.pixels) ++result.bins[v];
    const double expected = double(image.pixels.size()) / 256.0;
    for (std::uint64_t c : result.bins) {
        const double d = double(c) - expected;
        result.chi2 += d * d / expected;
    }
    result.p_value = igamc(255.0 / 2.0, result.chi2 / 2.0);
    return result;
}

CipherMetrics compute_metrics(const GrayImage& plain, const GrayImage& cipher,
                              const GrayImage* second_cipher) {
    require_same_size(plain, cipher);
    CipherMetrics m;
    m.entropy = image_entropy(cipher);
    m.mae = mae(plain, cipher);
    m.mse = mse(plain, cipher);
    m.psnr = psnr(plain, cipher);
    m.corr_horizontal = adjacent_correlation(cipher, Adjacency::horizontal);
    m.corr_vertical = adjacent_correlation(cipher, Adjacency::vertical);
    m.corr_diagonal = adjacent_correlation(cipher, Adjacency::diagonal);
    if (second_cipher) {
        const auto [npcr_pct, uaci_pct] = npcr_uaci(cipher, *second_cipher);
        m.npcr = npcr_pct;
        m.uaci = uaci_pct;
    }
    const HistogramResult h = histogram(cipher);
    m.histogram = h.bins;
    m.histogram_chi2 = h.chi2;
    m.histogram_chi2_p = h.p_value;
    return m;
}

std::string metrics_json(const CipherMetrics& metrics) {
    nlohmann::json doc;
    const auto opt = [](const std::optional<double>& v) {
        return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
    };
    doc["entropy"] = metrics.entropy;
    doc["mae"] = metrics.mae;
    doc["mse"] = metrics.mse;
    doc["psnr"] = std::isinf(metrics.psnr) ? nlohmann::json("inf") : nlohmann::json(metrics.psnr);
    doc["corr_horizontal"] = opt(metrics.corr_horizontal);
    doc["corr_vertical"] = opt(metrics.corr_vertical);
    doc["corr_diagonal"] = opt(metrics.corr_diagonal);
    doc["npcr"] = opt(metrics.npcr);
    doc["uaci"] = opt(metrics.uaci);
    doc["histogram"] = metrics.histogram;
    doc["histogram_chi2"] = metrics.histogram_chi2;
    doc["histogram_chi2_p"] = metrics.histogram_chi2_p;
    return doc.dump(2) + "\n";
}

}  // namespace ecprbg
