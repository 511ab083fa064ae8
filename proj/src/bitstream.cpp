#include "ecprbg/bitstream.hpp"

#include <cctype>
#include <stdexcept>

namespace ecprbg {

void BitStream::append_bit(int bit) {
    if ((n_bits_ & 7) == 0) bytes_.push_back(0);
    if (bit) bytes_.back() |= std::uint8_t(0x80u >> (n_bits_ & 7));
    ++n_bits_;
}

void BitStream::append_bits(const std::uint8_t* data, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i)
        append_bit((data[i >> 3] >> (7 - (i & 7))) & 1);
}

int BitStream::bit(std::size_t i) const {
    if (i >= n_bits_) throw std::out_of_range("bit index " + std::to_string(i) +
                                              " out of range for " + std::to_string(n_bits_) + " bits");
    return (bytes_[i >> 3] >> (7 - (i & 7))) & 1;
}

std::vector<std::uint8_t> BitStream::unpack() const {
    std::vector<std::uint8_t> out(n_bits_);
    for (std::size_t i = 0; i < n_bits_; ++i)
        out[i] = std::uint8_t((bytes_[i >> 3] >> (7 - (i & 7))) & 1);
    return out;
}

BitStream BitStream::from_bytes(std::vector<std::uint8_t> bytes, std::size_t n_bits) {
    if (n_bits > bytes.size() * 8)
        throw std::invalid_argument("bit count exceeds the supplied bytes");
    bytes.resize((n_bits + 7) / 8);
    if (n_bits & 7) bytes.back() &= std::uint8_t(0xFFu << (8 - (n_bits & 7)));
    BitStream s;
    s.bytes_ = std::move(bytes);
    s.n_bits_ = n_bits;
    return s;
}

std::string BitStream::to_ascii() const {
    std::string out;
    out.reserve(n_bits_ + n_bits_ / 64 + 1);
    for (std::size_t i = 0; i < n_bits_; ++i) {
        out.push_back(bit(i) ? '1' : '0');
        if ((i + 1) % 64 == 0) out.push_back('\n');
    }
    if (!out.empty() && out.back() != '\n') out.push_back('\n');
    return out;
}

BitStream BitStream::from_ascii(std::string_view text) {
    BitStream s;
    for (char c : text) {
        if (c == '0' || c == '1')
            s.append_bit(c - '0');
        else if (!std::isspace(static_cast<unsigned char>(c)))
            throw std::invalid_argument(std::string("unexpected character '") + c +
                                        "' in bit text");
    }
    return s;
}

}  // namespace ecprbg
