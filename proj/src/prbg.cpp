#include "ecprbg/prbg.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace ecprbg {

namespace {

std::uint64_t digest_mod(const Sha256::Digest& d, std::uint64_t m) {
    std::uint64_t r = 0;  // Horner over big-endian bytes; m < 2^24 keeps this in range
    for (std::uint8_t byte : d) r = ((r << 8) | byte) % m;
    return r;
}

std::uint64_t nonzero_mod(std::uint64_t v, std::uint64_t m) {
    const std::uint64_t r = v % m;
    return r == 0 ? 1 : r;
}

}  // namespace

GeneratorState::GeneratorState(GeneratorSpec spec, std::span<const std::uint8_t> seed,
                               unsigned trunc_bits)
    : spec_(std::move(spec)), trunc_bits_(trunc_bits) {
    if (seed.empty()) throw std::invalid_argument("seed must be non-empty");
    if (trunc_bits_ < 1 || trunc_bits_ > 256)
        throw std::invalid_argument("trunc_bits must lie in [1, 256]");
    const Sha256::Digest seed_digest = Sha256::digest(seed);
    const std::uint64_t l = spec_.order();
    scalar_ = nonzero_mod(digest_mod(seed_digest, l), l);
    chain_.fill(0);
}

Sha256::Digest GeneratorState::step() {
    const CurvePoint point = scalar_mul(spec_.curve(), scalar_, spec_.generator());
    // scalar_ is in [1, l), so [s]G is never the identity.
    const std::uint64_t x = point.x().value();

    const std::uint64_t p = spec_.curve().field().modulus();
    const unsigned coord_bytes = (std::bit_width(p) + 7) / 8;
    std::uint8_t encoded[8];
    for (unsigned i = 0; i < coord_bytes; ++i)
        encoded[i] = std::uint8_t(x >> (8 * (coord_bytes - 1 - i)));

    Sha256 hasher;
    hasher.update(encoded, coord_bytes);
    hasher.update(chain_.data(), chain_.size());
    chain_ = hasher.finish();

    scalar_ = nonzero_mod(x, spec_.order());
    ++step_count_;
    return chain_;
}

BitStream GeneratorState::generate(std::size_t n_bits) {
    if (n_bits == 0) throw std::invalid_argument("bit count must be positive");
    BitStream out;
    while (out.size() < n_bits) {
        const Sha256::Digest d = step();
        const std::size_t take = std::min<std::size_t>(trunc_bits_, n_bits - out.size());
        const std::size_t base = 256 - trunc_bits_;
        for (std::size_t i = 0; i < take; ++i) {
            const std::size_t idx = base + i;
            out.append_bit((d[idx >> 3] >> (7 - (idx & 7))) & 1);
        }
    }
    return out;
}

}  // namespace ecprbg
