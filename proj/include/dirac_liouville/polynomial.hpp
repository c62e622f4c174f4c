#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dirac_liouville/errors.hpp"
#include "dirac_liouville/gaussian_rational.hpp"

namespace dirac_liouville {

/// Dense polynomial in x over Q(i). Coefficients are indexed by power and the
/// representation never carries a zero leading coefficient; the zero
/// polynomial is the empty coefficient list and its degree is disengaged.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(long constant) : Polynomial(GaussianRational(constant)) {}
    Polynomial(GaussianRational constant) {
        if (!constant.is_zero()) coeffs_.push_back(std::move(constant));
    }

    static Polynomial from_coefficients(std::vector<GaussianRational> coeffs) {
        Polynomial p;
        p.coeffs_ = std::move(coeffs);
        p.trim();
        return p;
    }

    static Polynomial monomial(GaussianRational coeff, std::size_t power) {
        Polynomial p;
        if (!coeff.is_zero()) {
            p.coeffs_.assign(power + 1, GaussianRational());
            p.coeffs_[power] = std::move(coeff);
        }
        return p;
    }

    static Polynomial variable() { return monomial(GaussianRational(1), 1); }

    bool is_zero() const noexcept { return coeffs_.empty(); }

    /// Disengaged for the zero polynomial; the sentinel never enters degree
    /// arithmetic.
    std::optional<std::size_t> degree() const {
        if (coeffs_.empty()) return std::nullopt;
        return coeffs_.size() - 1;
    }

    GaussianRational coeff(std::size_t power) const {
        if (power >= coeffs_.size()) return GaussianRational();
        return coeffs_[power];
    }

    GaussianRational leading_coefficient() const {
        if (coeffs_.empty()) return GaussianRational();
        return coeffs_.back();
    }

    bool is_monic() const {
        return !coeffs_.empty() && coeffs_.back() == GaussianRational(1);
    }

    bool is_constant() const noexcept { return coeffs_.size() <= 1; }

    const std::vector<GaussianRational>& coefficients() const noexcept { return coeffs_; }

    Polynomial operator-() const {
        Polynomial p = *this;
        for (auto& c : p.coeffs_) c = -c;
        return p;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        Polynomial p;
        p.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t k = 0; k < p.coeffs_.size(); ++k) p.coeffs_[k] = a.coeff(k) + b.coeff(k);
        p.trim();
        return p;
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        Polynomial p;
        p.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, GaussianRational());
        for (std::size_t j = 0; j < a.coeffs_.size(); ++j) {
            if (a.coeffs_[j].is_zero()) continue;
            for (std::size_t k = 0; k < b.coeffs_.size(); ++k)
                p.coeffs_[j + k] += a.coeffs_[j] * b.coeffs_[k];
        }
        p.trim();
        return p;
    }

    friend Polynomial operator*(const GaussianRational& s, const Polynomial& a) {
        if (s.is_zero()) return Polynomial();
        Polynomial p = a;
        for (auto& c : p.coeffs_) c = s * c;
        return p;
    }
    friend Polynomial operator*(const Polynomial& a, const GaussianRational& s) { return s * a; }

    Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
    Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
    Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }

    /// Exact (quotient, remainder) with deg(remainder) < deg(divisor).
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const {
        if (divisor.is_zero()) throw std::domain_error("Polynomial: division by zero polynomial");
        Polynomial quotient;
        Polynomial remainder = *this;
        const std::size_t dn = divisor.coeffs_.size();
        if (coeffs_.size() >= dn) {
            quotient.coeffs_.assign(coeffs_.size() - dn + 1, GaussianRational());
            const GaussianRational& lead = divisor.coeffs_.back();
            while (!remainder.is_zero() && remainder.coeffs_.size() >= dn) {
                std::size_t shift = remainder.coeffs_.size() - dn;
                GaussianRational factor = remainder.coeffs_.back() / lead;
                quotient.coeffs_[shift] = factor;
                // subtract factor * x^shift * divisor
                for (std::size_t k = 0; k < dn; ++k)
                    remainder.coeffs_[shift + k] -= factor * divisor.coeffs_[k];
                remainder.trim();
            }
            quotient.trim();
        }
        return {std::move(quotient), std::move(remainder)};
    }

    Polynomial derivative() const {
        Polynomial p;
        if (coeffs_.size() <= 1) return p;
        p.coeffs_.resize(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k)
            p.coeffs_[k - 1] = GaussianRational(Rational(BigInt(k))) * coeffs_[k];
        p.trim();
        return p;
    }

    /// Term-by-term antiderivative with integration constant 0.
    Polynomial antiderivative() const {
        Polynomial p;
        if (is_zero()) return p;
        p.coeffs_.assign(coeffs_.size() + 1, GaussianRational());
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            p.coeffs_[k + 1] = coeffs_[k] / GaussianRational(Rational(BigInt(k + 1)));
        p.trim();
        return p;
    }

    GaussianRational eval(const GaussianRational& at) const {
        GaussianRational acc;
        for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * at + coeffs_[k];
        return acc;
    }

    /// Substitution x -> inner(x), evaluated by Horner over polynomials.
    Polynomial compose(const Polynomial& inner) const {
        Polynomial acc;
        for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * inner + Polynomial(coeffs_[k]);
        return acc;
    }

    /// Canonical descending-power text, e.g. "x^3 - 1/2*x + 2", "i*x", "0".
    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        bool first = true;
        for (std::size_t k = coeffs_.size(); k-- > 0;) {
            const GaussianRational& c = coeffs_[k];
            if (c.is_zero()) continue;
            int sign = !c.re().is_zero() ? c.re().sign() : c.im().sign();
            GaussianRational mag = sign < 0 ? -c : c;
            std::string term = term_string(mag, k);
            if (first) {
                out = (sign < 0 ? "-" : "") + term;
                first = false;
            } else {
                out += (sign < 0 ? " - " : " + ") + term;
            }
        }
        return out;
    }

private:
    static std::string term_string(const GaussianRational& mag, std::size_t power) {
        bool mixed = !mag.re().is_zero() && !mag.im().is_zero();
        if (power == 0) return mixed ? "(" + mag.to_string() + ")" : mag.to_string();
        std::string x = power == 1 ? "x" : "x^" + std::to_string(power);
        if (mag == GaussianRational(1)) return x;
        if (mixed) return "(" + mag.to_string() + ")*" + x;
        return mag.to_string() + "*" + x;
    }

    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }

    std::vector<GaussianRational> coeffs_;
};

inline Polynomial power(const Polynomial& base, unsigned long exponent) {
    Polynomial acc(1);
    Polynomial sq = base;
    while (exponent > 0) {
        if (exponent & 1UL) acc *= sq;
        exponent >>= 1UL;
        if (exponent > 0) sq *= sq;
    }
    return acc;
}

/// Polynomial part of the Laurent expansion of sqrt(r) at infinity.
///
/// For deg(r) = 2*nu >= 2 with a leading coefficient that is a square in
/// Q(i), returns the unique s of degree nu with deg(r - s^2) <= nu - 1 whose
/// leading coefficient is the canonical square root. Coefficients are found
/// top-down, each from one linear equation in one unknown.
inline Polynomial asymptotic_sqrt(const Polynomial& r) {
    auto deg = r.degree();
    if (!deg || *deg < 2)
        throw DegreeTooSmallError("asymptotic_sqrt: degree below 2");
    if (*deg % 2 != 0)
        throw OddDegreeError("asymptotic_sqrt: odd degree has no polynomial square root part");
    std::size_t nu = *deg / 2;
    auto lead = try_sqrt(r.leading_coefficient());
    if (!lead)
        throw FieldExtensionError(
            "asymptotic_sqrt: leading coefficient is not a square in Q(i)");
    std::vector<GaussianRational> s(nu + 1);
    s[nu] = *lead;
    GaussianRational two_lead = GaussianRational(2) * s[nu];
    for (std::size_t t = 1; t <= nu; ++t) {
        GaussianRational inner;
        for (std::size_t j = nu - t + 1; j + 1 <= nu; ++j) {
            std::size_t k = 2 * nu - t - j;
            if (k > nu - 1 || k < nu - t + 1) continue;
            inner += s[j] * s[k];
        }
        s[nu - t] = (r.coeff(2 * nu - t) - inner) / two_lead;
    }
    return Polynomial::from_coefficients(std::move(s));
}

}  // namespace dirac_liouville
