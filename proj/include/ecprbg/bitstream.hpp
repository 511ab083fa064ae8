#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ecprbg {

/// A bit sequence packed MSB-first into bytes. Bit 0 is the high bit of byte 0.
class BitStream {
public:
    BitStream() = default;

    std::size_t size() const noexcept { return n_bits_; }
    bool empty() const noexcept { return n_bits_ == 0; }

    void append_bit(int bit);
    /// Appends the top `count` bits of each byte run in order; count <= 8*data.size().
    void append_bits(const std::uint8_t* data, std::size_t count);

    int bit(std::size_t i) const;

    /// One byte per bit, values 0/1.
    std::vector<std::uint8_t> unpack() const;

    /// Packed bytes; trailing slack bits of the last byte are zero.
    const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }

    /// Rebuilds from packed bytes, masking any slack bits past n_bits.
    static BitStream from_bytes(std::vector<std::uint8_t> bytes, std::size_t n_bits);

    /// '0'/'1' text, 64 digits per line, trailing newline when non-empty.
    std::string to_ascii() const;
    /// Parses '0'/'1' digits; whitespace is skipped, anything else throws.
    static BitStream from_ascii(std::string_view text);

    bool operator==(const BitStream&) const noexcept = default;

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t n_bits_ = 0;
};

}  // namespace ecprbg
