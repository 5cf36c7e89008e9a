#include "g2cal/scalar.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>

namespace g2cal {

bool is_square_free(int m) {
    if (m < 0) return false;
    if (m < 2) return true;
    for (int d = 2; d * d <= m; ++d)
        if (m % (d * d) == 0) return false;
    return true;
}

Scalar::Scalar(Rational a, Rational b, int m) : a_(std::move(a)), b_(std::move(b)), m_(m) {
    if (!is_square_free(m_))
        throw Error("extension modulus " + std::to_string(m_) + " is not square-free");
    normalize();
}

Scalar Scalar::sqrt_of(int m) { return Scalar(Rational(0), Rational(1), m); }

void Scalar::normalize() {
    if (m_ == 1) {
        a_ += b_;
        b_ = 0;
    }
    if (m_ == 0) b_ = 0;
    if (b_ == 0) m_ = 0;
}

int Scalar::merged_extension(const Scalar& x, const Scalar& y) {
    if (x.m_ == 0) return y.m_;
    if (y.m_ == 0 || x.m_ == y.m_) return x.m_;
    throw IncompatibleExtension("cannot mix sqrt(" + std::to_string(x.m_) + ") with sqrt(" +
                                std::to_string(y.m_) + ")");
}

Scalar& Scalar::operator+=(const Scalar& o) {
    m_ = merged_extension(*this, o);
    a_ += o.a_;
    b_ += o.b_;
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    m_ = merged_extension(*this, o);
    a_ -= o.a_;
    b_ -= o.b_;
    normalize();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    int m = merged_extension(*this, o);
    Rational a = a_ * o.a_ + b_ * o.b_ * m;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    m_ = m;
    normalize();
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZero("division by zero scalar");
    if (b_ == 0) return Scalar(Rational(1) / a_);
    // 1/(a+b*sqrt(m)) = (a-b*sqrt(m))/(a^2-b^2 m); nonzero since m is not a square
    Rational norm = a_ * a_ - b_ * b_ * m_;
    return Scalar(a_ / norm, -b_ / norm, m_);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

int Scalar::sign() const {
    int sa = a_.sign();
    int sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare |a|^2 against |b|^2 m
    Rational d = a_ * a_ - b_ * b_ * m_;
    int sd = d.sign();
    return sd == 0 ? 0 : (sd > 0 ? sa : sb);
}

double Scalar::to_double() const {
    double x = a_.convert_to<double>();
    if (b_ != 0) x += b_.convert_to<double>() * std::sqrt(static_cast<double>(m_));
    return x;
}

namespace {

std::string rat_to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

}  // namespace

std::string Scalar::to_string() const {
    if (b_ == 0) return rat_to_string(a_);
    std::string surd;
    if (b_ == 1)
        surd = "sqrt(" + std::to_string(m_) + ")";
    else if (b_ == -1)
        surd = "-sqrt(" + std::to_string(m_) + ")";
    else
        surd = rat_to_string(b_) + "*sqrt(" + std::to_string(m_) + ")";
    if (a_ == 0) return surd;
    if (b_ > 0) return rat_to_string(a_) + "+" + surd;
    return rat_to_string(a_) + surd;  // surd already carries the minus
}

Scalar Scalar::parse(const std::string& text) {
    // Delegated to the seqparse grammar; kept here so the scalar module owns
    // its round-trip contract.
    extern Scalar parse_scalar_literal(const std::string&);
    return parse_scalar_literal(text);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace g2cal
