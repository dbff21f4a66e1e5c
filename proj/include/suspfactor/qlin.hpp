#pragma once

#include "suspfactor/rational.hpp"

#include <array>
#include <string>

namespace suspfactor {

// Element of the Q-vector space spanned by (1, sqrt5, sqrt2, sqrt3).
//
// Those four reals are linearly independent over Q, so representation is
// unique and equality is coefficientwise — no numerics involved. Ordering is
// decided through rational interval enclosures that are refined until the
// sign of the difference separates; refinement terminates because a nonzero
// element of the space is bounded away from zero.
//
// Every quantity the library computes with (rotation numbers, tile lengths,
// ceiling values, flow times) lives in this space, which is what makes the
// whole pipeline exact.
class QLin {
public:
    static constexpr int kBasis = 4;  // 1, sqrt5, sqrt2, sqrt3

    QLin() = default;                         // zero
    explicit QLin(Rational rational_part);    // q0 * 1
    QLin(Rational q0, Rational q1, Rational q2, Rational q3);

    static QLin zero() { return QLin(); }
    static QLin one() { return QLin(Rational(1)); }
    static QLin sqrt5() { return QLin(0, 1, 0, 0); }
    static QLin sqrt2() { return QLin(0, 0, 1, 0); }
    static QLin sqrt3() { return QLin(0, 0, 0, 1); }
    static QLin half() { return QLin(Rational(1, 2)); }

    const Rational& coeff(int i) const { return c_.at(static_cast<size_t>(i)); }
    const std::array<Rational, kBasis>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;  // surd coefficients all zero
    bool is_integer() const;

    QLin operator+(const QLin& o) const;
    QLin operator-(const QLin& o) const;
    QLin operator-() const;
    QLin& operator+=(const QLin& o);
    QLin& operator-=(const QLin& o);
    QLin scaled(const Rational& k) const;  // scalar multiple; the space is not a ring

    bool operator==(const QLin& o) const { return c_ == o.c_; }
    bool operator!=(const QLin& o) const { return c_ != o.c_; }

    // Exact three-way comparison. <,<=,>,>= are derived from it.
    enum class Order { Less, Equal, Greater };
    Order compare(const QLin& o) const;
    bool operator<(const QLin& o) const { return compare(o) == Order::Less; }
    bool operator>(const QLin& o) const { return compare(o) == Order::Greater; }
    bool operator<=(const QLin& o) const { return compare(o) != Order::Greater; }
    bool operator>=(const QLin& o) const { return compare(o) != Order::Less; }

    // Rational interval [lo, hi] containing the value, with hi - lo <= width.
    // pre: width > 0 (throws std::invalid_argument otherwise).
    struct Enclosure {
        Rational lo, hi;
    };
    Enclosure enclose(const Rational& width) const;

    Int floor() const;
    QLin frac() const;  // *this - floor(), in [0, 1)

    double approx() const;     // midpoint of a 1e-12 enclosure; diagnostics only
    std::string str() const;   // human-readable, e.g. "-1/2 + 1/2*sqrt5"

private:
    std::array<Rational, kBasis> c_{};
};

inline QLin operator*(const QLin& v, const Rational& k) { return v.scaled(k); }
inline QLin operator*(const Rational& k, const QLin& v) { return v.scaled(k); }

// Starting enclosure width for sign resolution in compare(); each failed
// round squares it. Default 1/1000000; overridable (e.g. from the
// SUSPFACTOR_PRECISION environment variable). Values outside (0, 1/2] are
// clamped into range.
void set_compare_start_width(const Rational& width);
Rational compare_start_width();

}  // namespace suspfactor
