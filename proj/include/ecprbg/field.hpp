#pragma once

#include <cstdint>
#include <stdexcept>

namespace ecprbg {

/// Thrown by inv() when the argument is the zero element.
class NonInvertibleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime_u64(std::uint64_t n);

class FieldElement;

/// The prime field F_p, 3 < p < 2^62. Primality is verified at construction.
class PrimeField {
public:
    static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

    explicit PrimeField(std::uint64_t p);

    std::uint64_t modulus() const noexcept { return p_; }

    /// Canonical element from any machine word (reduced mod p).
    FieldElement element(std::uint64_t value) const noexcept;
    FieldElement element_from_signed(std::int64_t value) const noexcept;

    bool operator==(const PrimeField&) const noexcept = default;

private:
    std::uint64_t p_;
};

/// A canonical residue in [0, p). Carries its modulus; mixing moduli throws.
class FieldElement {
public:
    std::uint64_t value() const noexcept { return value_; }
    std::uint64_t modulus() const noexcept { return p_; }

    bool is_zero() const noexcept { return value_ == 0; }
    bool operator==(const FieldElement&) const noexcept = default;

    friend FieldElement operator+(const FieldElement& u, const FieldElement& v);
    friend FieldElement operator-(const FieldElement& u, const FieldElement& v);
    friend FieldElement operator*(const FieldElement& u, const FieldElement& v);
    friend FieldElement operator-(const FieldElement& u);
    friend FieldElement inv(const FieldElement& u);
    friend FieldElement pow(const FieldElement& u, std::uint64_t e);

private:
    friend class PrimeField;
    FieldElement(std::uint64_t value, std::uint64_t p) : value_(value), p_(p) {}

    std::uint64_t value_;
    std::uint64_t p_;
};

FieldElement neg(const FieldElement& u);
/// Multiplicative inverse by extended Euclid. Throws NonInvertibleError on zero.
FieldElement inv(const FieldElement& u);
/// u^e with pow(u, 0) = 1.
FieldElement pow(const FieldElement& u, std::uint64_t e);
/// Euler criterion; true iff some y satisfies y^2 = u (zero counts).
bool is_quadratic_residue(const FieldElement& u);

}  // namespace ecprbg
