#include "ecprbg/stattests.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "ecprbg/special_functions.hpp"
#include "json.hpp"

namespace ecprbg {

namespace {

using Params = std::map<std::string, double>;

TestResult make_result(std::string name, double p, Params params) {
    TestResult r;
    r.test_name = std::move(name);
    r.p_value = p;
    r.passed = p >= kSignificance;
    r.parameters = std::move(params);
    return r;
}

void require_length(const char* name, std::size_t minimum, std::size_t actual) {
    if (actual < minimum) throw StreamTooShortError(name, minimum, actual);
}

// Overlapping m-pattern counts with wraparound: every one of the n cyclic
// windows contributes, so counts sum to n.
std::vector<std::uint64_t> pattern_counts(const std::vector<std::uint8_t>& e, unsigned m) {
    const std::size_t n = e.size();
    std::vector<std::uint64_t> counts(std::size_t(1) << m, 0);
    const std::uint32_t mask = m == 32 ? ~0u : (1u << m) - 1;
    std::uint32_t w = 0;
    for (unsigned i = 0; i + 1 < m; ++i) w = (w << 1) | e[i];
    for (std::size_t i = 0; i < n; ++i) {
        w = ((w << 1) | e[(i + m - 1) % n]) & mask;
        ++counts[w];
    }
    return counts;
}

// counts for length m-1 from counts for length m: merge last-bit siblings.
std::vector<std::uint64_t> fold_counts(const std::vector<std::uint64_t>& counts) {
    std::vector<std::uint64_t> out(counts.size() / 2);
    for (std::size_t v = 0; v < out.size(); ++v) out[v] = counts[2 * v] + counts[2 * v + 1];
    return out;
}

double psi_squared(const std::vector<std::uint64_t>& counts, std::size_t n) {
    double ss = 0.0;
    for (std::uint64_t c : counts) ss += double(c) * double(c);
    return ss * double(counts.size()) / double(n) - double(n);
}

// ---- discrete Fourier transform -----------------------------------------

using Cplx = std::complex<double>;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 with a full twiddle table (exact angles, no recurrence drift).
void fft_pow2(std::vector<Cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n < 2) return;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    std::vector<Cplx> table(n / 2);
    const double sign = inverse ? 2.0 : -2.0;
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double ang = sign * std::numbers::pi * double(k) / double(n);
        table[k] = Cplx(std::cos(ang), std::sin(ang));
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const Cplx u = a[i + j];
                const Cplx v = a[i + j + len / 2] * table[j * stride];
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
            }
        }
    }
    if (inverse)
        for (Cplx& v : a) v /= double(n);
}

// Chirp-z for arbitrary n. Angles use j^2 mod 2n so they stay well inside
// one period even for j near 2^20.
std::vector<Cplx> dft_bluestein(const std::vector<Cplx>& x) {
    const std::size_t n = x.size();
    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;
    std::vector<Cplx> chirp(n), a(m, Cplx{}), b(m, Cplx{});
    b[0] = Cplx(1.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const std::uint64_t sq = std::uint64_t(j) * j % (2 * n);
        const double ang = -std::numbers::pi * double(sq) / double(n);
        chirp[j] = Cplx(std::cos(ang), std::sin(ang));
        a[j] = x[j] * chirp[j];
        b[j] = std::conj(chirp[j]);
        if (j != 0) b[m - j] = b[j];
    }
    fft_pow2(a, false);
    fft_pow2(b, false);
    for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
    fft_pow2(a, true);
    std::vector<Cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) out[k] = chirp[k] * a[k];
    return out;
}

std::vector<Cplx> dft_direct(const std::vector<Cplx>& x) {
    const std::size_t n = x.size();
    std::vector<Cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Cplx acc{};
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t r = j * k % n;
            const double ang = -2.0 * std::numbers::pi * double(r) / double(n);
            acc += x[j] * Cplx(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

// ---- GF(2) matrix rank ----------------------------------------------------

int rank32(std::array<std::uint32_t, 32>& rows) {
    int rank = 0;
    for (int col = 31; col >= 0 && rank < 32; --col) {
        const std::uint32_t bit = 1u << col;
        int pivot = -1;
        for (int r = rank; r < 32; ++r)
            if (rows[std::size_t(r)] & bit) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[std::size_t(pivot)], rows[std::size_t(rank)]);
        for (int r = 0; r < 32; ++r)
            if (r != rank && (rows[std::size_t(r)] & bit)) rows[std::size_t(r)] ^= rows[std::size_t(rank)];
        ++rank;
    }
    return rank;
}

// P(rank = r) for a random 32x32 binary matrix, exact product form.
double rank_probability(int r) {
    double p = std::pow(2.0, double(r) * (64.0 - double(r)) - 1024.0);
    for (int i = 0; i < r; ++i) {
        const double f = 1.0 - std::ldexp(1.0, i - 32);
        p *= f * f / (1.0 - std::ldexp(1.0, i - r));
    }
    return p;
}

}  // namespace

StreamTooShortError::StreamTooShortError(std::string_view test_name, std::size_t minimum,
                                         std::size_t actual)
    : std::invalid_argument(std::string(test_name) + " requires at least " +
                            std::to_string(minimum) + " bits, got " + std::to_string(actual)),
      minimum_(minimum),
      actual_(actual) {}

TestResult frequency_test(const BitStream& stream) {
    require_length("frequency", 1, stream.size());
    const std::size_t n = stream.size();
    long long sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum += stream.bit(i) ? 1 : -1;
    const double s_obs = std::fabs(double(sum)) / std::sqrt(double(n));
    const double p = std::erfc(s_obs / std::numbers::sqrt2);
    return make_result("frequency", p, {{"n", double(n)}, {"partial_sum", double(sum)}});
}

TestResult block_frequency_test(const BitStream& stream, std::size_t m) {
    if (m == 0) throw std::invalid_argument("block size must be positive");
    require_length("block_frequency", m, stream.size());
    const std::size_t n = stream.size();
    const std::size_t blocks = n / m;
    double chi2 = 0.0;
    for (std::size_t j = 0; j < blocks; ++j) {
        std::size_t ones = 0;
        for (std::size_t i = 0; i < m; ++i) ones += std::size_t(stream.bit(j * m + i));
        const double d = double(ones) / double(m) - 0.5;
        chi2 += d * d;
    }
    chi2 *= 4.0 * double(m);
    const double p = igamc(double(blocks) / 2.0, chi2 / 2.0);
    return make_result("block_frequency", p,
                       {{"n", double(n)}, {"m", double(m)}, {"blocks", double(blocks)}, {"chi2", chi2}});
}

TestResult runs_test(const BitStream& stream) {
    require_length("runs", 2, stream.size());
    const std::size_t n = stream.size();
    std::size_t ones = 0;
    for (std::size_t i = 0; i < n; ++i) ones += std::size_t(stream.bit(i));
    const double pi = double(ones) / double(n);
    const double tau = 2.0 / std::sqrt(double(n));
    Params params{{"n", double(n)}, {"pi", pi}, {"tau", tau}};
    if (std::fabs(pi - 0.5) >= tau) {
        params["gate_failed"] = 1.0;
        TestResult r = make_result("runs", 0.0, std::move(params));
        return r;
    }
    std::size_t v_obs = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) v_obs += std::size_t(stream.bit(i) != stream.bit(i + 1));
    // The sqrt(2) of the half-normal statistic is already part of the
    // denominator here, so erfc takes the ratio directly.
    const double num = std::fabs(double(v_obs) - 2.0 * double(n) * pi * (1.0 - pi));
    const double den = 2.0 * std::sqrt(2.0 * double(n)) * pi * (1.0 - pi);
    const double p = std::erfc(num / den);
    params["v_obs"] = double(v_obs);
    return make_result("runs", p, std::move(params));
}

TestResult longest_run_test(const BitStream& stream) {
    require_length("longest_run", 128, stream.size());
    const std::size_t n = stream.size();

    std::size_t M;
    int lo, hi;  // category bounds: runs <= lo map to bin 0, >= hi to the last
    std::vector<double> pi;
    if (n < 6272) {
        M = 8, lo = 1, hi = 4;
        pi = {0.2148, 0.3672, 0.2305, 0.1875};
    } else if (n < 750000) {
        M = 128, lo = 4, hi = 9;
        pi = {0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124};
    } else {
        M = 10000, lo = 10, hi = 16;
        pi = {0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727};
    }
    const int K = int(pi.size()) - 1;
    const std::size_t blocks = n / M;

    std::vector<std::size_t> nu(pi.size(), 0);
    for (std::size_t j = 0; j < blocks; ++j) {
        int longest = 0, run = 0;
        for (std::size_t i = 0; i < M; ++i) {
            if (stream.bit(j * M + i)) {
                ++run;
                longest = std::max(longest, run);
            } else {
                run = 0;
            }
        }
        ++nu[std::size_t(std::clamp(longest, lo, hi) - lo)];
    }

    double chi2 = 0.0;
    Params params{{"n", double(n)}, {"block_length", double(M)}, {"blocks", double(blocks)}};
    for (std::size_t i = 0; i < pi.size(); ++i) {
        const double expect = double(blocks) * pi[i];
        const double d = double(nu[i]) - expect;
        chi2 += d * d / expect;
        params["nu_" + std::to_string(i)] = double(nu[i]);
    }
    params["chi2"] = chi2;
    const double p = igamc(double(K) / 2.0, chi2 / 2.0);
    return make_result("longest_run", p, std::move(params));
}

TestResult cumulative_sums_test(const BitStream& stream, CusumDirection direction) {
    require_length("cumulative_sums", 1, stream.size());
    const std::size_t n = stream.size();
    const bool reverse = direction == CusumDirection::reverse;
    long long s = 0, z = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t idx = reverse ? n - 1 - i : i;
        s += stream.bit(idx) ? 1 : -1;
        z = std::max(z, std::llabs(s));
    }
    // Integer bound arithmetic below follows the reference suite exactly
    // (truncating division in both stages).
    const long long q = (long long)(n) / z;
    const double zf = double(z), sqn = std::sqrt(double(n));
    double sum1 = 0.0;
    for (long long k = (-q + 1) / 4; k <= (q - 1) / 4; ++k) {
        sum1 += normal_cdf(double(4 * k + 1) * zf / sqn);
        sum1 -= normal_cdf(double(4 * k - 1) * zf / sqn);
    }
    double sum2 = 0.0;
    for (long long k = (-q - 3) / 4; k <= (q - 1) / 4; ++k) {
        sum2 += normal_cdf(double(4 * k + 3) * zf / sqn);
        sum2 -= normal_cdf(double(4 * k + 1) * zf / sqn);
    }
    const double p = std::clamp(1.0 - sum1 + sum2, 0.0, 1.0);
    return make_result(reverse ? "cumulative_sums_reverse" : "cumulative_sums_forward", p,
                       {{"n", double(n)}, {"z", double(z)}, {"reverse", reverse ? 1.0 : 0.0}});
}

std::vector<double> spectral_magnitudes(const BitStream& stream) {
    const std::size_t n = stream.size();
    std::vector<Cplx> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = Cplx(stream.bit(i) ? 1.0 : -1.0, 0.0);
    std::vector<Cplx> X;
    if (is_pow2(n)) {
        fft_pow2(x, false);
        X = std::move(x);
    } else if (n <= 4096) {
        X = dft_direct(x);
    } else {
        X = dft_bluestein(x);
    }
    std::vector<double> mods(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) mods[k] = std::abs(X[k]);
    return mods;
}

TestResult dft_spectral_test(const BitStream& stream) {
    require_length("dft_spectral", 10, stream.size());
    const std::size_t n = stream.size();
    const std::vector<double> mods = spectral_magnitudes(stream);
    const double threshold = std::sqrt(std::log(1.0 / 0.05) * double(n));
    const double n0 = 0.95 * double(n) / 2.0;
    double n1 = 0.0;
    for (double v : mods) n1 += v < threshold ? 1.0 : 0.0;
    const double d = (n1 - n0) / std::sqrt(double(n) * 0.95 * 0.05 / 4.0);
    const double p = std::erfc(std::fabs(d) / std::numbers::sqrt2);
    return make_result("dft_spectral", p,
                       {{"n", double(n)},
                        {"threshold", threshold},
                        {"n0", n0},
                        {"n1", n1},
                        {"d", d}});
}

TestResult rank_test(const BitStream& stream) {
    require_length("rank", 38 * 32 * 32, stream.size());
    const std::size_t n = stream.size();
    const std::size_t blocks = n / (32 * 32);

    std::size_t f32 = 0, f31 = 0;
    for (std::size_t j = 0; j < blocks; ++j) {
        std::array<std::uint32_t, 32> rows{};
        for (std::size_t r = 0; r < 32; ++r)
            for (std::size_t c = 0; c < 32; ++c)
                if (stream.bit(j * 1024 + r * 32 + c)) rows[r] |= 1u << (31 - c);
        const int rank = rank32(rows);
        if (rank == 32)
            ++f32;
        else if (rank == 31)
            ++f31;
    }
    const std::size_t frest = blocks - f32 - f31;

    const double p32 = rank_probability(32);
    const double p31 = rank_probability(31);
    const double prest = 1.0 - p32 - p31;
    const double N = double(blocks);
    double chi2 = 0.0;
    chi2 += (double(f32) - N * p32) * (double(f32) - N * p32) / (N * p32);
    chi2 += (double(f31) - N * p31) * (double(f31) - N * p31) / (N * p31);
    chi2 += (double(frest) - N * prest) * (double(frest) - N * prest) / (N * prest);
    const double p = igamc(1.0, chi2 / 2.0);
    return make_result("rank", p,
                       {{"n", double(n)},
                        {"matrices", N},
                        {"f_32", double(f32)},
                        {"f_31", double(f31)},
                        {"f_rest", double(frest)},
                        {"chi2", chi2}});
}

std::array<TestResult, 2> serial_test(const BitStream& stream, unsigned m) {
    if (m < 1 || m > 20) throw std::invalid_argument("serial pattern length must lie in [1, 20]");
    require_length("serial", m, stream.size());
    const std::size_t n = stream.size();
    const std::vector<std::uint8_t> e = stream.unpack();

    const std::vector<std::uint64_t> counts_m = pattern_counts(e, m);
    const double psi_m = psi_squared(counts_m, n);
    double psi_m1 = 0.0, psi_m2 = 0.0;
    if (m >= 2) {
        const std::vector<std::uint64_t> c1 = fold_counts(counts_m);
        psi_m1 = psi_squared(c1, n);
        if (m >= 3) psi_m2 = psi_squared(fold_counts(c1), n);
    }
    const double del1 = std::max(psi_m - psi_m1, 0.0);
    const double del2 = std::max(psi_m - 2.0 * psi_m1 + psi_m2, 0.0);
    const double p1 = igamc(std::ldexp(1.0, int(m) - 2), del1 / 2.0);
    const double p2 = igamc(std::ldexp(1.0, int(m) - 3), del2 / 2.0);
    return {make_result("serial_p1", p1,
                        {{"n", double(n)}, {"m", double(m)}, {"delta_psi2", del1}}),
            make_result("serial_p2", p2,
                        {{"n", double(n)}, {"m", double(m)}, {"delta2_psi2", del2}})};
}

TestResult approximate_entropy_test(const BitStream& stream, unsigned m) {
    if (m < 1 || m > 16)
        throw std::invalid_argument("approximate entropy block length must lie in [1, 16]");
    require_length("approximate_entropy", m + 1, stream.size());
    const std::size_t n = stream.size();
    const std::vector<std::uint8_t> e = stream.unpack();

    const auto phi = [&](unsigned mm) {
        const std::vector<std::uint64_t> counts = pattern_counts(e, mm);
        double acc = 0.0;
        for (std::uint64_t c : counts)
            if (c != 0) {
                const double f = double(c) / double(n);
                acc += f * std::log(f);
            }
        return acc;
    };
    const double apen = phi(m) - phi(m + 1);
    const double chi2 = std::max(2.0 * double(n) * (std::numbers::ln2 - apen), 0.0);
    const double p = igamc(std::ldexp(1.0, int(m) - 1), chi2 / 2.0);
    return make_result("approximate_entropy", p,
                       {{"n", double(n)}, {"m", double(m)}, {"apen", apen}, {"chi2", chi2}});
}

TestResult nonoverlapping_template_test(const BitStream& stream, std::string_view template_bits,
                                        std::size_t n_blocks) {
    if (template_bits.empty() || template_bits.size() > 31)
        throw std::invalid_argument("template length must lie in [1, 31]");
    std::vector<std::uint8_t> tpl(template_bits.size());
    for (std::size_t i = 0; i < template_bits.size(); ++i) {
        if (template_bits[i] != '0' && template_bits[i] != '1')
            throw std::invalid_argument("template must consist of '0' and '1' characters");
        tpl[i] = std::uint8_t(template_bits[i] - '0');
    }
    if (n_blocks == 0) throw std::invalid_argument("block count must be positive");
    const std::size_t m = tpl.size();
    require_length("nonoverlapping_template", n_blocks * m, stream.size());

    const std::size_t n = stream.size();
    const std::size_t M = n / n_blocks;
    const std::vector<std::uint8_t> e = stream.unpack();

    const double mu = double(M - m + 1) / std::ldexp(1.0, int(m));
    const double sigma2 =
        double(M) * (std::ldexp(1.0, -int(m)) - double(2 * m - 1) * std::ldexp(1.0, -2 * int(m)));

    Params params{{"n", double(n)},     {"m", double(m)}, {"blocks", double(n_blocks)},
                  {"block_length", double(M)}, {"mu", mu},       {"sigma2", sigma2}};
    double chi2 = 0.0;
    for (std::size_t j = 0; j < n_blocks; ++j) {
        const std::uint8_t* block = e.data() + j * M;
        std::size_t w = 0;
        std::size_t i = 0;
        while (i + m <= M) {
            bool match = true;
            for (std::size_t k = 0; k < m; ++k)
                if (block[i + k] != tpl[k]) {
                    match = false;
                    break;
                }
            if (match) {
                ++w;
                i += m;
            } else {
                ++i;
            }
        }
        chi2 += (double(w) - mu) * (double(w) - mu) / sigma2;
        params["W_" + std::to_string(j + 1)] = double(w);
    }
    params["chi2"] = chi2;
    const double p = igamc(double(n_blocks) / 2.0, chi2 / 2.0);
    return make_result("nonoverlapping_template", p, std::move(params));
}

std::size_t berlekamp_massey(std::span<const std::uint8_t> bits) {
    const std::size_t n = bits.size();
    std::vector<std::uint8_t> b(n + 1, 0), c(n + 1, 0), t;
    b[0] = c[0] = 1;
    std::size_t L = 0;
    long long last = -1;  // index of the last length change
    for (std::size_t N = 0; N < n; ++N) {
        std::uint8_t d = bits[N] & 1;
        for (std::size_t i = 1; i <= L; ++i) d ^= std::uint8_t(c[i] & bits[N - i]);
        if (!d) continue;
        t = c;
        const std::size_t shift = std::size_t((long long)(N)-last);
        for (std::size_t i = 0; i + shift <= n; ++i) c[i + shift] ^= b[i];
        if (2 * L <= N) {
            L = N + 1 - L;
            last = (long long)(N);
            b = std::move(t);
        }
    }
    return L;
}

TestResult linear_complexity_test(const BitStream& stream, std::size_t block_length) {
    if (block_length == 0) throw std::invalid_argument("block length must be positive");
    require_length("linear_complexity", block_length, stream.size());
    const std::size_t n = stream.size();
    const std::size_t M = block_length;
    const std::size_t blocks = n / M;
    const std::vector<std::uint8_t> e = stream.unpack();

    const double sign_m1 = (M % 2 == 0) ? -1.0 : 1.0;  // (-1)^(M+1)
    const double mu =
        double(M) / 2.0 + (9.0 + sign_m1) / 36.0 - (double(M) / 3.0 + 2.0 / 9.0) / std::pow(2.0, double(M));
    const double sign_m = (M % 2 == 0) ? 1.0 : -1.0;  // (-1)^M

    static const double pi_cat[7] = {0.010417, 0.03125, 0.125, 0.5, 0.25, 0.0625, 0.020833};
    std::size_t nu[7] = {0, 0, 0, 0, 0, 0, 0};
    for (std::size_t j = 0; j < blocks; ++j) {
        const std::size_t L = berlekamp_massey({e.data() + j * M, M});
        const double T = sign_m * (double(L) - mu) + 2.0 / 9.0;
        int cat;
        if (T <= -2.5)
            cat = 0;
        else if (T <= -1.5)
            cat = 1;
        else if (T <= -0.5)
            cat = 2;
        else if (T <= 0.5)
            cat = 3;
        else if (T <= 1.5)
            cat = 4;
        else if (T <= 2.5)
            cat = 5;
        else
            cat = 6;
        ++nu[cat];
    }

    double chi2 = 0.0;
    Params params{{"n", double(n)}, {"block_length", double(M)}, {"blocks", double(blocks)}, {"mu", mu}};
    for (int i = 0; i < 7; ++i) {
        const double expect = double(blocks) * pi_cat[i];
        const double d = double(nu[i]) - expect;
        chi2 += d * d / expect;
        params["nu_" + std::to_string(i)] = double(nu[i]);
    }
    params["chi2"] = chi2;
    const double p = igamc(3.0, chi2 / 2.0);
    return make_result("linear_complexity", p, std::move(params));
}

const std::vector<std::string>& BatteryReport::not_implemented() {
    static const std::vector<std::string> names = {
        "universal", "lempel_ziv_complexity", "overlapping_templates", "random_excursions",
        "random_excursions_variant"};
    return names;
}

BatteryReport run_battery(const BitStream& stream, const BatteryConfig& config) {
    BatteryReport report;
    report.stream_length = stream.size();

    const auto add = [&report](const char* name, auto&& fn) {
        try {
            report.results.push_back(fn());
        } catch (const StreamTooShortError& err) {
            TestResult r;
            r.test_name = name;
            r.skipped = true;
            r.skip_reason = err.what();
            report.results.push_back(std::move(r));
        }
    };

    add("block_frequency", [&] { return block_frequency_test(stream, config.block_frequency_m); });
    add("frequency", [&] { return frequency_test(stream); });
    add("cumulative_sums_forward",
        [&] { return cumulative_sums_test(stream, CusumDirection::forward); });
    add("cumulative_sums_reverse",
        [&] { return cumulative_sums_test(stream, CusumDirection::reverse); });
    add("longest_run", [&] { return longest_run_test(stream); });
    add("dft_spectral", [&] { return dft_spectral_test(stream); });
    add("rank", [&] { return rank_test(stream); });
    add("nonoverlapping_template", [&] {
        return nonoverlapping_template_test(stream, config.template_bits, config.template_blocks);
    });
    add("approximate_entropy",
        [&] { return approximate_entropy_test(stream, config.approximate_entropy_m); });
    try {
        auto pair = serial_test(stream, config.serial_m);
        report.results.push_back(std::move(pair[0]));
        report.results.push_back(std::move(pair[1]));
    } catch (const StreamTooShortError& err) {
        for (const char* name : {"serial_p1", "serial_p2"}) {
            TestResult r;
            r.test_name = name;
            r.skipped = true;
            r.skip_reason = err.what();
            report.results.push_back(std::move(r));
        }
    }
    add("runs", [&] { return runs_test(stream); });
    add("linear_complexity",
        [&] { return linear_complexity_test(stream, config.linear_complexity_block); });

    report.all_passed = std::all_of(report.results.begin(), report.results.end(),
                                    [](const TestResult& r) { return r.passed; });
    return report;
}

std::string report_text(const BatteryReport& report) {
    std::ostringstream out;
    out << "randomness battery over " << report.stream_length << " bits\n";
    out << std::left << std::setw(26) << "test" << std::right << std::setw(10) << "p-value"
        << "  verdict\n";
    std::size_t passed = 0;
    for (const TestResult& r : report.results) {
        out << std::left << std::setw(26) << r.test_name << std::right;
        if (r.skipped) {
            out << std::setw(10) << "-" << "  SKIP (" << r.skip_reason << ")\n";
            continue;
        }
        out << std::setw(10) << std::fixed << std::setprecision(6) << r.p_value
            << (r.passed ? "  PASS" : "  FAIL");
        passed += std::size_t(r.passed);
        bool first = true;
        for (const auto& [key, value] : r.parameters) {
            out << (first ? "  [" : ", ") << key << "=" << std::defaultfloat
                << std::setprecision(10) << value << std::setprecision(6);
            first = false;
        }
        if (!first) out << "]";
        out << "\n";
    }
    out << "overall: " << (report.all_passed ? "PASS" : "FAIL") << " (" << passed << "/"
        << report.results.size() << " tests passed)\n";
    out << "not implemented:";
    for (const std::string& name : BatteryReport::not_implemented()) out << " " << name;
    out << "\n";
    return out.str();
}

std::string report_json(const BatteryReport& report) {
    nlohmann::json doc;
    doc["stream_length"] = report.stream_length;
    doc["significance"] = kSignificance;
    doc["all_passed"] = report.all_passed;
    doc["not_implemented"] = BatteryReport::not_implemented();
    nlohmann::json results = nlohmann::json::array();
    for (const TestResult& r : report.results) {
        nlohmann::json item;
        item["name"] = r.test_name;
        item["p_value"] = r.p_value;
        item["passed"] = r.passed;
        item["skipped"] = r.skipped;
        item["skip_reason"] = r.skip_reason;
        item["parameters"] = r.parameters;
        results.push_back(std::move(item));
    }
    doc["results"] = std::move(results);
    return doc.dump(2) + "\n";
}

}  // namespace ecprbg
