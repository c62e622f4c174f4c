#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "dirac_liouville/rational.hpp"

namespace dirac_liouville {

/// Element of Q(i): re + im*i with exact rational parts. All scalar
/// quantities of the solver (potential coefficients, mass, energy) live here.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long value) : re_(value) {}
    GaussianRational(Rational real) : re_(std::move(real)) {}
    GaussianRational(Rational real, Rational imag) : re_(std::move(real)), im_(std::move(imag)) {}

    static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }

    const Rational& re() const noexcept { return re_; }
    const Rational& im() const noexcept { return im_; }

    bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const noexcept { return im_.is_zero(); }

    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }
    GaussianRational conjugate() const { return GaussianRational(re_, -im_); }

    /// re^2 + im^2, the field norm down to Q.
    Rational norm() const { return re_ * re_ + im_ * im_; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return GaussianRational(a.re_ * b.re_ - a.im_ * b.im_,
                                a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        if (b.is_zero()) throw std::domain_error("GaussianRational: division by zero");
        Rational n = b.norm();
        return GaussianRational((a.re_ * b.re_ + a.im_ * b.im_) / n,
                                (a.im_ * b.re_ - a.re_ * b.im_) / n);
    }

    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
    GaussianRational& operator/=(const GaussianRational& b) { return *this = *this / b; }

    GaussianRational reciprocal() const { return GaussianRational(1) / *this; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Canonical scalar text, compatible with the expression grammar:
    /// "0", "3/2", "i", "-i", "2*i", "-2+i", "1/2-3*i".
    std::string to_string() const {
        if (is_zero()) return "0";
        if (im_.is_zero()) return re_.to_string();
        std::string imag = imag_unit_string(im_);
        if (re_.is_zero()) return imag;
        std::string s = re_.to_string();
        if (im_.sign() > 0) {
            s += "+" + imag;
        } else {
            s += imag;  // imag already carries the minus
        }
        return s;
    }

private:
    static std::string imag_unit_string(const Rational& q) {
        if (q == Rational(1)) return "i";
        if (q == Rational(-1)) return "-i";
        return q.to_string() + "*i";
    }

    Rational re_;
    Rational im_;
};

/// Exact square root in Q(i) if one exists, canonical branch: re > 0, or
/// re = 0 and im >= 0. Existence reduces to perfect-square tests on the norm.
inline std::optional<GaussianRational> try_sqrt(const GaussianRational& c) {
    if (c.is_zero()) return GaussianRational();
    const Rational& real = c.re();
    const Rational& imag = c.im();
    if (imag.is_zero()) {
        if (real.sign() > 0) {
            if (auto a = rational_sqrt(real)) return GaussianRational(*a);
            return std::nullopt;
        }
        // real < 0: the root, if any, is purely imaginary.
        if (auto b = rational_sqrt(-real)) return GaussianRational(Rational(0), *b);
        return std::nullopt;
    }
    // (a + b i)^2 = c forces a^2 = (re + |c|)/2 and b = im/(2a).
    auto t = rational_sqrt(c.norm());
    if (!t) return std::nullopt;
    Rational a_squared = (real + *t) / Rational(2);
    auto a = rational_sqrt(a_squared);
    if (!a || a->is_zero()) return std::nullopt;
    Rational b = imag / (Rational(2) * *a);
    return GaussianRational(*a, b);
}

/// Engaged iff q is a real nonnegative integer.
inline std::optional<BigInt> as_nonneg_int(const GaussianRational& q) {
    if (!q.is_real()) return std::nullopt;
    return as_nonneg_int(q.re());
}

}  // namespace dirac_liouville
