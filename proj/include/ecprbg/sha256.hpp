#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ecprbg {

/// Streaming SHA-256 (FIPS 180-4).
class Sha256 {
public:
    static constexpr std::size_t kDigestSize = 32;
    using Digest = std::array<std::uint8_t, kDigestSize>;

    Sha256();

    void update(const void* data, std::size_t len);
    void update(std::span<const std::uint8_t> data) { update(data.data(), data.size()); }
    void update(std::string_view s) { update(s.data(), s.size()); }

    /// Pads, finalizes and returns the digest. The object must not be reused afterwards.
    Digest finish();

    static Digest digest(std::span<const std::uint8_t> data);
    static Digest digest(std::string_view s);

private:
    void compress(const std::uint8_t block[64]);

    std::array<std::uint32_t, 8> state_;
    std::uint64_t total_len_ = 0;
    std::array<std::uint8_t, 64> buffer_{};
    std::size_t buffer_len_ = 0;
};

std::string to_hex(std::span<const std::uint8_t> bytes);
/// Parses a hex string (even length, upper or lower case). Throws std::invalid_argument.
std::vector<std::uint8_t> from_hex(std::string_view hex);

}  // namespace ecprbg
