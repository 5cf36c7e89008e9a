#ifndef G2CAL_SCALAR_HPP
#define G2CAL_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <iosfwd>
#include <string>

#include "g2cal/errors.hpp"

namespace g2cal {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact element of Q or of one quadratic extension Q(sqrt(m)),
/// stored as a + b*sqrt(m) with m square-free and m = 0 meaning plain Q.
/// Values are normalized so that b = 0 implies m = 0, and m in {0,1}
/// collapses to the rational part. Mixing two different nonzero
/// extensions throws IncompatibleExtension.
class Scalar {
public:
    Scalar() : a_(0), b_(0), m_(0) {}
    Scalar(int v) : a_(v), b_(0), m_(0) {}
    Scalar(long v) : a_(v), b_(0), m_(0) {}
    Scalar(const Rational& a) : a_(a), b_(0), m_(0) {}
    Scalar(Rational a, Rational b, int m);

    /// sqrt(m) as a Scalar; m must be a non-negative square-free integer.
    static Scalar sqrt_of(int m);

    const Rational& rat() const { return a_; }
    const Rational& surd() const { return b_; }
    int extension() const { return m_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    /// Exact sign (-1, 0, +1) of a + b*sqrt(m).
    int sign() const;

    Scalar operator-() const { return Scalar(-a_, -b_, m_); }
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
    friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
    friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
    friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

    friend bool operator==(const Scalar& x, const Scalar& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.m_ == y.m_);
    }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    Scalar inverse() const;

    double to_double() const;

    /// "p/q" or "p/q+r/s*sqrt(m)" with no spaces; round-trips through parse().
    std::string to_string() const;
    static Scalar parse(const std::string& text);

private:
    Rational a_, b_;
    int m_;

    void normalize();
    static int merged_extension(const Scalar& x, const Scalar& y);
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

bool is_square_free(int m);

}  // namespace g2cal

#endif
