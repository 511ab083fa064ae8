#include "ecprbg/field.hpp"

#include <string>

namespace ecprbg {

namespace {

using u128 = unsigned __int128;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return std::uint64_t(u128(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

void require_same_field(const FieldElement& u, const FieldElement& v) {
    if (u.modulus() != v.modulus())
        throw std::invalid_argument("field elements have different moduli: " +
                                    std::to_string(u.modulus()) + " vs " +
                                    std::to_string(v.modulus()));
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This witness set is deterministic for all n < 2^64.
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
    if (p <= 3)
        throw std::invalid_argument("field modulus must exceed 3");
    if (p >= kMaxModulus)
        throw std::invalid_argument("field modulus must be below 2^62");
    if (!is_prime_u64(p))
        throw std::invalid_argument("field modulus " + std::to_string(p) + " is not prime");
}

FieldElement PrimeField::element(std::uint64_t value) const noexcept {
    return FieldElement(value % p_, p_);
}

FieldElement PrimeField::element_from_signed(std::int64_t value) const noexcept {
    const std::int64_t m = std::int64_t(p_);
    std::int64_t r = value % m;
    if (r < 0) r += m;
    return FieldElement(std::uint64_t(r), p_);
}

FieldElement operator+(const FieldElement& u, const FieldElement& v) {
    require_same_field(u, v);
    std::uint64_t s = u.value_ + v.value_;  // no overflow: both < 2^62
    if (s >= u.p_) s -= u.p_;
    return FieldElement(s, u.p_);
}

FieldElement operator-(const FieldElement& u, const FieldElement& v) {
    require_same_field(u, v);
    std::uint64_t d = u.value_ >= v.value_ ? u.value_ - v.value_ : u.value_ + u.p_ - v.value_;
    return FieldElement(d, u.p_);
}

FieldElement operator*(const FieldElement& u, const FieldElement& v) {
    require_same_field(u, v);
    return FieldElement(mulmod(u.value_, v.value_, u.p_), u.p_);
}

FieldElement operator-(const FieldElement& u) {
    return FieldElement(u.value_ == 0 ? 0 : u.p_ - u.value_, u.p_);
}

FieldElement neg(const FieldElement& u) { return -u; }

FieldElement inv(const FieldElement& u) {
    if (u.is_zero()) throw NonInvertibleError("cannot invert zero");
    // Extended Euclid on (p, u); coefficients stay within int64 since p < 2^62.
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = std::int64_t(u.p_), new_r = std::int64_t(u.value_);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) t += std::int64_t(u.p_);
    return FieldElement(std::uint64_t(t), u.p_);
}

FieldElement pow(const FieldElement& u, std::uint64_t e) {
    return FieldElement(powmod(u.value_, e, u.p_), u.p_);
}

bool is_quadratic_residue(const FieldElement& u) {
    if (u.is_zero()) return true;
    return powmod(u.value(), (u.modulus() - 1) / 2, u.modulus()) == 1;
}

}  // namespace ecprbg
