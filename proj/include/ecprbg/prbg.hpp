#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ecprbg/bitstream.hpp"
#include "ecprbg/curve.hpp"
#include "ecprbg/sha256.hpp"

namespace ecprbg {

/// Hash-chained generator walking the cyclic group <G>.
///
/// State is a scalar s in [1, l) and a running digest H. Each step moves
/// s to x([s]G) mod l (mapped to 1 when that is 0) and absorbs the x
/// coordinate into the chain: H <- SHA-256(BE(x) || H). Output bits are
/// the low-order trunc_bits of each chained digest.
class GeneratorState {
public:
    /// trunc_bits must lie in [1, 256]; the seed must be non-empty.
    /// The initial scalar is SHA-256(seed) reduced mod l (0 maps to 1).
    GeneratorState(GeneratorSpec spec, std::span<const std::uint8_t> seed,
                   unsigned trunc_bits = 128);

    const GeneratorSpec& spec() const noexcept { return spec_; }
    std::uint64_t scalar() const noexcept { return scalar_; }
    const Sha256::Digest& chain() const noexcept { return chain_; }
    unsigned trunc_bits() const noexcept { return trunc_bits_; }
    std::uint64_t step_count() const noexcept { return step_count_; }

    /// Advances the state one step and returns the new chained digest.
    Sha256::Digest step();

    /// Collects n_bits output bits, stepping as often as needed.
    /// The final digest window is truncated if n_bits is not a multiple
    /// of trunc_bits. Throws std::invalid_argument when n_bits is zero.
    BitStream generate(std::size_t n_bits);

private:
    GeneratorSpec spec_;
    std::uint64_t scalar_;
    Sha256::Digest chain_;
    unsigned trunc_bits_;
    std::uint64_t step_count_ = 0;
};

}  // namespace ecprbg
