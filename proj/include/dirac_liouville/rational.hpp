#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace dirac_liouville {

using BigInt = mpz_class;

/// Exact rational number over arbitrary-precision integers.
///
/// Canonical form is maintained after every operation: the denominator is
/// positive and coprime to the numerator; zero is stored as 0/1.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long value) : num_(value), den_(1) {}
    Rational(BigInt value) : num_(std::move(value)), den_(1) {}
    Rational(BigInt numerator, BigInt denominator)
        : num_(std::move(numerator)), den_(std::move(denominator)) {
        if (den_ == 0) throw std::domain_error("Rational: zero denominator");
        canonicalize();
    }

    const BigInt& num() const noexcept { return num_; }
    const BigInt& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_ == 0; }
    bool is_integer() const noexcept { return den_ == 1; }
    int sign() const { return sgn(num_); }

    Rational operator-() const {
        Rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    Rational reciprocal() const {
        if (is_zero()) throw std::domain_error("Rational: reciprocal of zero");
        return Rational(den_, num_);
    }

    // Canonical form makes fieldwise comparison exact.
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.num_ * b.den_, b.num_ * a.den_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string to_string() const {
        std::string s = num_.get_str();
        if (den_ != 1) s += "/" + den_.get_str();
        return s;
    }

private:
    void canonicalize() {
        if (num_ == 0) {
            den_ = 1;
            return;
        }
        if (sgn(den_) < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g;
        mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_;
    BigInt den_;
};

inline Rational abs(const Rational& q) { return q.sign() < 0 ? -q : q; }

/// Exact square root in Q: engaged iff q >= 0 and both numerator and
/// denominator are perfect squares. The returned root is >= 0.
inline std::optional<Rational> rational_sqrt(const Rational& q) {
    if (q.sign() < 0) return std::nullopt;
    if (q.is_zero()) return Rational(0);
    if (!mpz_perfect_square_p(q.num().get_mpz_t())) return std::nullopt;
    if (!mpz_perfect_square_p(q.den().get_mpz_t())) return std::nullopt;
    BigInt rn, rd;
    mpz_sqrt(rn.get_mpz_t(), q.num().get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), q.den().get_mpz_t());
    return Rational(std::move(rn), std::move(rd));
}

/// Engaged with n iff q equals a nonnegative integer n.
inline std::optional<BigInt> as_nonneg_int(const Rational& q) {
    if (!q.is_integer() || q.sign() < 0) return std::nullopt;
    return q.num();
}

}  // namespace dirac_liouville
