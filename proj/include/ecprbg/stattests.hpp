#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ecprbg/bitstream.hpp"

namespace ecprbg {

/// Rejection threshold shared by every test; p >= 0.01 passes.
inline constexpr double kSignificance = 0.01;

/// Raised when a stream is shorter than a test's documented minimum.
class StreamTooShortError : public std::invalid_argument {
public:
    StreamTooShortError(std::string_view test_name, std::size_t minimum, std::size_t actual);

    std::size_t minimum() const noexcept { return minimum_; }
    std::size_t actual() const noexcept { return actual_; }

private:
    std::size_t minimum_;
    std::size_t actual_;
};

struct TestResult {
    std::string test_name;
    double p_value = 0.0;
    bool passed = false;     // p_value >= kSignificance and not skipped
    bool skipped = false;    // set by run_battery when a length precondition failed
    std::string skip_reason;
    std::map<std::string, double> parameters;
};

/// Monobit frequency: p = erfc(|sum(2e-1)| / sqrt(2n)). Minimum n = 1.
TestResult frequency_test(const BitStream& stream);

/// Within-block one-proportions, chi^2 over floor(n/m) blocks. Minimum n = m.
TestResult block_frequency_test(const BitStream& stream, std::size_t m);

/// Total run count against its normal approximation. Minimum n = 2.
/// When |pi - 1/2| >= 2/sqrt(n) the statistic is meaningless; the result
/// reports p = 0 with parameter gate_failed = 1.
TestResult runs_test(const BitStream& stream);

/// Longest run of ones per block against tabulated category probabilities.
/// Block size 8 / 128 / 10^4 chosen from n. Minimum n = 128.
TestResult longest_run_test(const BitStream& stream);

enum class CusumDirection { forward, reverse };

/// Maximum excursion of the +/-1 random walk (reverse walks the stream
/// backwards). Minimum n = 1.
TestResult cumulative_sums_test(const BitStream& stream, CusumDirection direction);

/// Peak count of the discrete Fourier transform below the 95% threshold.
/// Minimum n = 10.
TestResult dft_spectral_test(const BitStream& stream);

/// Ranks of floor(n/1024) consecutive 32x32 GF(2) matrices against the
/// full/deficient/rest distribution. Minimum n = 38912 (38 matrices).
TestResult rank_test(const BitStream& stream);

/// Overlapping m- and (m-1)-pattern uniformity; returns the two p-values
/// (first and second generalized serial statistic). 1 <= m <= 20, minimum n = m.
std::array<TestResult, 2> serial_test(const BitStream& stream, unsigned m);

/// Match of observed m vs m+1 pattern entropy rate against ln 2.
/// 1 <= m <= 16, minimum n = m + 1.
TestResult approximate_entropy_test(const BitStream& stream, unsigned m);

/// Non-overlapping occurrence counts of one template across n_blocks equal
/// blocks. template_bits is a '0'/'1' string; minimum n = n_blocks * length.
TestResult nonoverlapping_template_test(const BitStream& stream, std::string_view template_bits,
                                        std::size_t n_blocks = 8);

/// Berlekamp-Massey linear complexity of each M-bit block against the
/// theoretical mean, seven categories. Minimum n = block_length.
TestResult linear_complexity_test(const BitStream& stream, std::size_t block_length);

/// Length of the shortest LFSR generating `bits` (values 0/1).
std::size_t berlekamp_massey(std::span<const std::uint8_t> bits);

/// |X_k| for k in [0, n/2) of the +/-1-mapped stream, as used by
/// dft_spectral_test. Exposed so the transform can be verified directly.
std::vector<double> spectral_magnitudes(const BitStream& stream);

struct BatteryConfig {
    std::size_t block_frequency_m = 100;
    unsigned serial_m = 16;
    unsigned approximate_entropy_m = 10;
    std::string template_bits = "000000001";
    std::size_t template_blocks = 8;
    std::size_t linear_complexity_block = 500;
};

struct BatteryReport {
    std::size_t stream_length = 0;
    std::vector<TestResult> results;
    bool all_passed = false;

    /// Battery tests that are deliberately out of scope.
    static const std::vector<std::string>& not_implemented();
};

/// Runs every implemented test with the given parameters. A stream shorter
/// than a test's minimum yields a skipped entry (passed = false, reason set)
/// rather than an error. Deterministic: same stream and config, same report.
BatteryReport run_battery(const BitStream& stream, const BatteryConfig& config = {});

/// Human-readable table: one line per test with p-value and verdict.
std::string report_text(const BatteryReport& report);
/// JSON document with stable key order.
std::string report_json(const BatteryReport& report);

}  // namespace ecprbg
