#include "ecprbg/curve.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace ecprbg {

namespace {

// Group law on points already known to be on the curve.
CurvePoint add_unchecked(const CurveParams& curve, const CurvePoint& p, const CurvePoint& q);

CurvePoint double_unchecked(const CurveParams& curve, const CurvePoint& p) {
    if (p.is_infinity()) return p;
    if (p.y().is_zero()) return CurvePoint::infinity();  // vertical tangent
    const PrimeField& f = curve.field();
    const FieldElement three = f.element(3);
    const FieldElement two = f.element(2);
    const FieldElement lambda = (three * p.x() * p.x() + curve.a()) * inv(two * p.y());
    const FieldElement x3 = lambda * lambda - p.x() - p.x();
    const FieldElement y3 = lambda * (p.x() - x3) - p.y();
    return CurvePoint::affine(x3, y3);
}

CurvePoint add_unchecked(const CurveParams& curve, const CurvePoint& p, const CurvePoint& q) {
    if (p.is_infinity()) return q;
    if (q.is_infinity()) return p;
    if (p.x() == q.x()) {
        if (p.y() == q.y()) return double_unchecked(curve, p);
        return CurvePoint::infinity();  // q = -p
    }
    const FieldElement lambda = (q.y() - p.y()) * inv(q.x() - p.x());
    const FieldElement x3 = lambda * lambda - p.x() - q.x();
    const FieldElement y3 = lambda * (p.x() - x3) - p.y();
    return CurvePoint::affine(x3, y3);
}

void require_on_curve(const CurveParams& curve, const CurvePoint& p, const char* role) {
    if (!is_on_curve(curve, p))
        throw std::invalid_argument(std::string(role) + " is not on the curve");
}

void require_enumerable(const CurveParams& curve, const char* what) {
    if (curve.field().modulus() > (std::uint64_t{1} << 20))
        throw std::invalid_argument(std::string(what) + " requires p <= 2^20, got p = " +
                                    std::to_string(curve.field().modulus()));
}

}  // namespace

CurveParams::CurveParams(PrimeField field, FieldElement a, FieldElement b)
    : field_(field), a_(std::move(a)), b_(std::move(b)) {
    if (a_.modulus() != field_.modulus() || b_.modulus() != field_.modulus())
        throw std::invalid_argument("curve coefficients must come from the given field");
    const FieldElement four = field_.element(4);
    const FieldElement twenty_seven = field_.element(27);
    const FieldElement discriminant = four * a_ * a_ * a_ + twenty_seven * b_ * b_;
    if (discriminant.is_zero())
        throw std::invalid_argument("curve is singular: 4a^3 + 27b^2 = 0");
}

const FieldElement& CurvePoint::x() const {
    if (!coords_) throw std::logic_error("point at infinity has no x coordinate");
    return coords_->first;
}

const FieldElement& CurvePoint::y() const {
    if (!coords_) throw std::logic_error("point at infinity has no y coordinate");
    return coords_->second;
}

bool is_on_curve(const CurveParams& curve, const CurvePoint& point) {
    if (point.is_infinity()) return true;
    if (point.x().modulus() != curve.field().modulus()) return false;
    const FieldElement lhs = point.y() * point.y();
    const FieldElement rhs = point.x() * point.x() * point.x() + curve.a() * point.x() + curve.b();
    return lhs == rhs;
}

CurvePoint add(const CurveParams& curve, const CurvePoint& p, const CurvePoint& q) {
    require_on_curve(curve, p, "left operand");
    require_on_curve(curve, q, "right operand");
    return add_unchecked(curve, p, q);
}

CurvePoint double_point(const CurveParams& curve, const CurvePoint& p) {
    require_on_curve(curve, p, "operand");
    return double_unchecked(curve, p);
}

CurvePoint negate(const CurveParams& curve, const CurvePoint& p) {
    require_on_curve(curve, p, "operand");
    if (p.is_infinity()) return p;
    return CurvePoint::affine(p.x(), -p.y());
}

CurvePoint scalar_mul(const CurveParams& curve, std::uint64_t k, const CurvePoint& p) {
    require_on_curve(curve, p, "operand");
    CurvePoint acc = CurvePoint::infinity();
    if (k == 0 || p.is_infinity()) return acc;
    int bit = 63 - std::countl_zero(k);
    for (; bit >= 0; --bit) {
        acc = double_unchecked(curve, acc);
        if ((k >> bit) & 1) acc = add_unchecked(curve, acc, p);
    }
    return acc;
}

std::vector<CurvePoint> enumerate_points(const CurveParams& curve) {
    require_enumerable(curve, "point enumeration");
    const PrimeField& f = curve.field();
    const std::uint64_t p = f.modulus();

    // sqrt_of[v] lists every y with y^2 = v; built in one O(p) sweep.
    std::vector<std::vector<std::uint64_t>> sqrt_of(p);
    for (std::uint64_t y = 0; y < p; ++y) {
        const std::uint64_t v = std::uint64_t((unsigned __int128)(y) * y % p);
        sqrt_of[v].push_back(y);
    }

    std::vector<CurvePoint> points;
    for (std::uint64_t xv = 0; xv < p; ++xv) {
        const FieldElement x = f.element(xv);
        const FieldElement rhs = x * x * x + curve.a() * x + curve.b();
        for (std::uint64_t yv : sqrt_of[rhs.value()])
            points.push_back(CurvePoint::affine(x, f.element(yv)));
    }
    std::sort(points.begin(), points.end(), [](const CurvePoint& l, const CurvePoint& r) {
        return l.x().value() != r.x().value() ? l.x().value() < r.x().value()
                                              : l.y().value() < r.y().value();
    });
    points.push_back(CurvePoint::infinity());
    return points;
}

std::uint64_t curve_order(const CurveParams& curve) {
    require_enumerable(curve, "curve order");
    const PrimeField& f = curve.field();
    const std::uint64_t p = f.modulus();
    std::uint64_t count = 1;  // the identity
    for (std::uint64_t xv = 0; xv < p; ++xv) {
        const FieldElement x = f.element(xv);
        const FieldElement rhs = x * x * x + curve.a() * x + curve.b();
        if (rhs.is_zero())
            count += 1;
        else if (is_quadratic_residue(rhs))
            count += 2;
    }
    return count;
}

std::uint64_t point_order(const CurveParams& curve, const CurvePoint& p) {
    require_on_curve(curve, p, "operand");
    require_enumerable(curve, "point order");
    if (p.is_infinity()) return 1;
    std::uint64_t n = 1;
    CurvePoint acc = p;
    while (!acc.is_infinity()) {
        acc = add_unchecked(curve, acc, p);
        ++n;
    }
    return n;
}

GeneratorSpec::GeneratorSpec(CurveParams curve, CurvePoint generator, std::uint64_t order)
    : curve_(std::move(curve)), generator_(std::move(generator)), order_(order) {
    if (generator_.is_infinity())
        throw std::invalid_argument("generator must be an affine point");
    if (!is_on_curve(curve_, generator_))
        throw std::invalid_argument("generator is not on the curve");
    if (order_ == 0)
        throw std::invalid_argument("generator order must be positive");
    if (order_ > kMaxOrder)
        throw std::invalid_argument("generator order exceeds the 2^24 verification cap");
    // Walk [k]G for k = 2..l; every intermediate must be a proper point and [l]G the identity.
    CurvePoint acc = generator_;
    for (std::uint64_t k = 2; k <= order_; ++k) {
        acc = add_unchecked(curve_, acc, generator_);
        if (acc.is_infinity() && k != order_)
            throw std::invalid_argument("generator order is not " + std::to_string(order_) +
                                        ": [" + std::to_string(k) + "]G is already the identity");
    }
    if (!acc.is_infinity())
        throw std::invalid_argument("generator order is not " + std::to_string(order_) +
                                    ": [l]G is not the identity");
}

}  // namespace ecprbg
