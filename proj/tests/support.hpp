#pragma once

// Shared fixtures for the test binaries: the two reference curves, a
// deterministic "photograph-like" image, and small bit-source helpers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ecprbg/bitstream.hpp"
#include "ecprbg/curve.hpp"
#include "ecprbg/field.hpp"
#include "ecprbg/imagecipher.hpp"
#include "ecprbg/prbg.hpp"

namespace ecprbg::testsupport {

/// E: y^2 = x^3 + x + 4 over F_29, the small worked-example curve.
/// 32 affine points, group order 33; (3, 11) generates a subgroup of order 11.
inline CurveParams f29_curve() {
    PrimeField field(29);
    return CurveParams(field, field.element(1), field.element(4));
}

inline GeneratorSpec f29_spec() {
    CurveParams curve = f29_curve();
    const PrimeField& field = curve.field();
    return GeneratorSpec(curve, CurvePoint::affine(field.element(3), field.element(11)), 11);
}

/// E: y^2 = x^3 + 4x + 1 over F_503, the default generator curve.
/// Group order 516; (283, 315) has order 129.
inline CurveParams f503_curve() {
    PrimeField field(503);
    return CurveParams(field, field.element(4), field.element(1));
}

inline GeneratorSpec f503_spec() {
    CurveParams curve = f503_curve();
    const PrimeField& field = curve.field();
    return GeneratorSpec(curve, CurvePoint::affine(field.element(283), field.element(315)), 129);
}

inline GeneratorState make_state(std::string_view seed_bytes, unsigned trunc_bits = 128) {
    std::vector<std::uint8_t> seed(seed_bytes.begin(), seed_bytes.end());
    return GeneratorState(f503_spec(), seed, trunc_bits);
}

/// Parses a '0'/'1' literal (other characters rejected by from_ascii).
inline BitStream bits(std::string_view literal) {
    return BitStream::from_ascii(std::string(literal));
}

inline BitStream repeat_bits(std::string_view pattern, std::size_t times) {
    std::string s;
    s.reserve(pattern.size() * times);
    for (std::size_t i = 0; i < times; ++i) s.append(pattern);
    return bits(s);
}

inline BitStream constant_stream(int bit, std::size_t n) {
    BitStream s;
    for (std::size_t i = 0; i < n; ++i) s.append_bit(bit);
    return s;
}

inline BitStream alternating_stream(std::size_t n) {
    BitStream s;
    for (std::size_t i = 0; i < n; ++i) s.append_bit(static_cast<int>(i & 1));
    return s;
}

/// Mersenne-twister bit source, used where the tests need a generic
/// good-quality stream that is not the generator under test.
inline BitStream mt_stream(std::uint64_t seed, std::size_t n_bits) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> bytes((n_bits + 7) / 8);
    std::size_t i = 0;
    while (i < bytes.size()) {
        std::uint64_t word = rng();
        for (int k = 0; k < 8 && i < bytes.size(); ++k) {
            bytes[i++] = static_cast<std::uint8_t>(word >> (56 - 8 * k));
        }
    }
    return BitStream::from_bytes(bytes, n_bits);
}

/// Bits of the maximal-length LFSR with connection polynomial
/// 1 + x + x^4 (s_i = s_{i-1} xor s_{i-4}), period 15. Its linear
/// complexity is 4 by construction, which pins down Berlekamp-Massey.
inline std::vector<std::uint8_t> lfsr4_bits(std::size_t n) {
    std::vector<std::uint8_t> s{0, 0, 0, 1};
    s.reserve(n < 4 ? 4 : n);
    while (s.size() < n) {
        std::size_t i = s.size();
        s.push_back(static_cast<std::uint8_t>(s[i - 1] ^ s[i - 4]));
    }
    s.resize(n);
    return s;
}

/// Deterministic synthetic photograph: smooth horizontal sine, vertical
/// ramp, mild uniform noise. Neighboring pixels correlate strongly
/// (> 0.85 in all directions), as a natural image's do.
inline GrayImage make_test_image(std::size_t width = 256, std::size_t height = 256) {
    GrayImage img;
    img.width = width;
    img.height = height;
    img.pixels.resize(width * height);
    std::mt19937 rng(0xC0FFEE);
    for (std::size_t y = 0; y < height; ++y) {
        for (std::size_t x = 0; x < width; ++x) {
            double base = 96.0 + 80.0 * std::sin(static_cast<double>(x) / 37.0) +
                          60.0 * (static_cast<double>(y) / static_cast<double>(height));
            int noise = static_cast<int>(rng() % 19) - 9;
            int v = static_cast<int>(std::lround(base)) + noise;
            img.pixels[y * width + x] = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
        }
    }
    return img;
}

}  // namespace ecprbg::testsupport
