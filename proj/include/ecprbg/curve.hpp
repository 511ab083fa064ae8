#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ecprbg/field.hpp"

namespace ecprbg {

/// Short Weierstrass curve y^2 = x^3 + a*x + b over F_p.
/// Construction rejects singular curves (4a^3 + 27b^2 = 0).
class CurveParams {
public:
    CurveParams(PrimeField field, FieldElement a, FieldElement b);

    const PrimeField& field() const noexcept { return field_; }
    const FieldElement& a() const noexcept { return a_; }
    const FieldElement& b() const noexcept { return b_; }

    bool operator==(const CurveParams&) const noexcept = default;

private:
    PrimeField field_;
    FieldElement a_;
    FieldElement b_;
};

/// Affine point or the point at infinity (the group identity).
class CurvePoint {
public:
    static CurvePoint infinity() noexcept { return CurvePoint(); }
    static CurvePoint affine(FieldElement x, FieldElement y) {
        return CurvePoint(std::move(x), std::move(y));
    }

    bool is_infinity() const noexcept { return !coords_.has_value(); }

    /// Coordinate access throws std::logic_error at infinity.
    const FieldElement& x() const;
    const FieldElement& y() const;

    bool operator==(const CurvePoint&) const noexcept = default;

private:
    CurvePoint() = default;
    CurvePoint(FieldElement x, FieldElement y) : coords_(std::in_place, std::move(x), std::move(y)) {}

    std::optional<std::pair<FieldElement, FieldElement>> coords_;
};

bool is_on_curve(const CurveParams& curve, const CurvePoint& point);

/// Chord-and-tangent group law. Operands must lie on the curve
/// (checked; throws std::invalid_argument otherwise).
CurvePoint add(const CurveParams& curve, const CurvePoint& p, const CurvePoint& q);
CurvePoint double_point(const CurveParams& curve, const CurvePoint& p);
CurvePoint negate(const CurveParams& curve, const CurvePoint& p);

/// Left-to-right double-and-add; [0]P is the identity.
CurvePoint scalar_mul(const CurveParams& curve, std::uint64_t k, const CurvePoint& p);

/// All points of E(F_p) by direct sweep: affine points ordered by (x, y),
/// the identity appended last. Requires p <= 2^20.
std::vector<CurvePoint> enumerate_points(const CurveParams& curve);

/// Number of points including the identity. Requires p <= 2^20.
std::uint64_t curve_order(const CurveParams& curve);

/// Smallest n >= 1 with [n]P the identity, by iterated addition. Requires p <= 2^20.
std::uint64_t point_order(const CurveParams& curve, const CurvePoint& p);

/// A base point G of verified order l, the data a generator stream runs on.
/// Construction checks G is affine and on the curve, that [l]G is the
/// identity and [k]G is not for 0 < k < l. The check walks l steps, so
/// l is capped at 2^24.
class GeneratorSpec {
public:
    static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 24;

    GeneratorSpec(CurveParams curve, CurvePoint generator, std::uint64_t order);

    const CurveParams& curve() const noexcept { return curve_; }
    const CurvePoint& generator() const noexcept { return generator_; }
    std::uint64_t order() const noexcept { return order_; }

    bool operator==(const GeneratorSpec&) const noexcept = default;

private:
    CurveParams curve_;
    CurvePoint generator_;
    std::uint64_t order_;
};

}  // namespace ecprbg
