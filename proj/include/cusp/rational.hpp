#ifndef CUSP_RATIONAL_HPP
#define CUSP_RATIONAL_HPP

#include <stdexcept>
#include <string>

#include "cusp/bigint.hpp"

namespace cusp {

// Exact rational number, always in lowest terms with positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }
    explicit Rational(const BigInt &n) : num_(n), den_(1) {}

    // Parses "n", "-n" or "n/d".
    static Rational parse(const std::string &s);

    const BigInt &num() const { return num_; }
    const BigInt &den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_integer() const { return den_.is_one(); }
    int sign() const { return num_.sign(); }

    Rational operator-() const;
    Rational operator+(const Rational &o) const;
    Rational operator-(const Rational &o) const;
    Rational operator*(const Rational &o) const;
    Rational operator/(const Rational &o) const;
    Rational &operator+=(const Rational &o) { *this = *this + o; return *this; }
    Rational &operator-=(const Rational &o) { *this = *this - o; return *this; }
    Rational &operator*=(const Rational &o) { *this = *this * o; return *this; }

    bool operator==(const Rational &o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational &o) const { return !(*this == o); }
    bool operator<(const Rational &o) const { return (num_ * o.den_) < (o.num_ * den_); }
    bool operator<=(const Rational &o) const { return !(o < *this); }
    bool operator>(const Rational &o) const { return o < *this; }
    bool operator>=(const Rational &o) const { return !(*this < o); }

    // True iff *this is the square of a rational.
    bool is_square() const;

    std::string str() const;

private:
    BigInt num_, den_;
    void normalize();
};

inline void Rational::normalize() {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    if (num_.is_zero()) { den_ = BigInt(1); return; }
    if (den_.is_negative()) { num_ = -num_; den_ = -den_; }
    BigInt g = BigInt::gcd(num_, den_);
    if (!g.is_one()) { num_ = num_ / g; den_ = den_ / g; }
}

inline Rational Rational::parse(const std::string &s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s), BigInt(1));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

inline Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

inline Rational Rational::operator+(const Rational &o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

inline Rational Rational::operator-(const Rational &o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

inline Rational Rational::operator*(const Rational &o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
}

inline Rational Rational::operator/(const Rational &o) const {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
}

inline bool Rational::is_square() const {
    if (sign() < 0) return false;
    BigInt rn, rd;
    return num_.perfect_square(rn) && den_.perfect_square(rd);
}

inline std::string Rational::str() const {
    if (den_.is_one()) return num_.str();
    return num_.str() + "/" + den_.str();
}

} // namespace cusp

#endif
