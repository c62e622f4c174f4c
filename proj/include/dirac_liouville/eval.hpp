#pragma once

#include <gmp.h>
#include <mpfr.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dirac_liouville/errors.hpp"
#include "dirac_liouville/solution.hpp"

namespace dirac_liouville {

struct EvalOptions {
    unsigned digits_cap = 1000;
};

/// A complex value as two fixed-point decimal strings: the exact value
/// truncated toward zero to the requested number of fractional digits.
struct ComplexDecimal {
    std::string real;
    std::string imag;
};

namespace detail_eval {

class Real {
public:
    explicit Real(mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(Real&& other) noexcept {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_swap(v_, other.v_);
    }
    Real& operator=(Real&& other) noexcept {
        mpfr_swap(v_, other.v_);
        return *this;
    }
    Real(const Real&) = delete;
    Real& operator=(const Real&) = delete;
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() noexcept { return v_; }
    mpfr_srcptr get() const noexcept { return v_; }

private:
    mpfr_t v_;
};

constexpr mpfr_prec_t kRadiusPrec = 64;

/// Center-radius enclosure: the true value lies in [center - radius,
/// center + radius]. Radius updates always round up.
struct Ball {
    Real center;
    Real radius;
    bool ok = true;

    explicit Ball(mpfr_prec_t prec) : center(prec), radius(kRadiusPrec) {}
};

inline void add_center_ulp(Ball& b) {
    Real tmp(kRadiusPrec);
    mpfr_abs(tmp.get(), b.center.get(), MPFR_RNDU);
    mpfr_mul_2si(tmp.get(), tmp.get(), 1 - static_cast<long>(mpfr_get_prec(b.center.get())),
                 MPFR_RNDU);
    mpfr_add(b.radius.get(), b.radius.get(), tmp.get(), MPFR_RNDU);
}

inline Ball ball_from_rational(const Rational& q, mpfr_prec_t prec) {
    Ball b(prec);
    mpq_t tmp;
    mpq_init(tmp);
    mpq_set_num(tmp, q.num().get_mpz_t());
    mpq_set_den(tmp, q.den().get_mpz_t());
    int ternary = mpfr_set_q(b.center.get(), tmp, MPFR_RNDN);
    mpq_clear(tmp);
    if (ternary != 0) add_center_ulp(b);
    return b;
}

inline Ball ball_add(const Ball& a, const Ball& b, mpfr_prec_t prec) {
    Ball out(prec);
    out.ok = a.ok && b.ok;
    mpfr_add(out.center.get(), a.center.get(), b.center.get(), MPFR_RNDN);
    mpfr_add(out.radius.get(), a.radius.get(), b.radius.get(), MPFR_RNDU);
    add_center_ulp(out);
    return out;
}

inline Ball ball_neg(Ball a) {
    mpfr_neg(a.center.get(), a.center.get(), MPFR_RNDN);
    return a;
}

inline Ball ball_mul(const Ball& a, const Ball& b, mpfr_prec_t prec) {
    Ball out(prec);
    out.ok = a.ok && b.ok;
    mpfr_mul(out.center.get(), a.center.get(), b.center.get(), MPFR_RNDN);
    Real t1(kRadiusPrec), t2(kRadiusPrec);
    mpfr_abs(t1.get(), a.center.get(), MPFR_RNDU);
    mpfr_mul(t1.get(), t1.get(), b.radius.get(), MPFR_RNDU);
    mpfr_abs(t2.get(), b.center.get(), MPFR_RNDU);
    mpfr_mul(t2.get(), t2.get(), a.radius.get(), MPFR_RNDU);
    mpfr_add(t1.get(), t1.get(), t2.get(), MPFR_RNDU);
    mpfr_mul(t2.get(), a.radius.get(), b.radius.get(), MPFR_RNDU);
    mpfr_add(t1.get(), t1.get(), t2.get(), MPFR_RNDU);
    mpfr_set(out.radius.get(), t1.get(), MPFR_RNDU);
    add_center_ulp(out);
    return out;
}

inline Ball ball_sub(const Ball& a, const Ball& b, mpfr_prec_t prec) {
    Ball nb(mpfr_get_prec(b.center.get()));
    nb.ok = b.ok;
    mpfr_neg(nb.center.get(), b.center.get(), MPFR_RNDN);
    mpfr_set(nb.radius.get(), b.radius.get(), MPFR_RNDU);
    return ball_add(a, nb, prec);
}

/// exp of an enclosure; requires the radius to be small (retry at higher
/// precision otherwise): |exp(x) - exp(c)| <= exp(c) (e^r - 1).
inline Ball ball_exp(const Ball& a, mpfr_prec_t prec) {
    Ball out(prec);
    out.ok = a.ok;
    Real quarter(kRadiusPrec);
    mpfr_set_d(quarter.get(), 0.25, MPFR_RNDN);
    if (mpfr_cmp(a.radius.get(), quarter.get()) > 0) {
        out.ok = false;
        return out;
    }
    // beyond this the decimal expansion runs to billions of digits
    if (mpfr_cmpabs_ui(a.center.get(), 1UL << 24) > 0)
        throw std::domain_error("eval_solution: exponent magnitude too large to evaluate");
    mpfr_exp(out.center.get(), a.center.get(), MPFR_RNDN);
    if (!mpfr_number_p(out.center.get())) {
        out.ok = false;
        return out;
    }
    Real grow(kRadiusPrec);
    mpfr_expm1(grow.get(), a.radius.get(), MPFR_RNDU);
    Real mag(kRadiusPrec);
    mpfr_abs(mag.get(), out.center.get(), MPFR_RNDU);
    mpfr_mul(grow.get(), grow.get(), mag.get(), MPFR_RNDU);
    // cover the center's own rounding before scaling by e^r - 1
    mpfr_mul_2si(mag.get(), mag.get(), 1 - static_cast<long>(prec), MPFR_RNDU);
    mpfr_add(out.radius.get(), grow.get(), mag.get(), MPFR_RNDU);
    return out;
}

/// sin/cos of an enclosure, Lipschitz constant 1.
inline Ball ball_sin(const Ball& a, mpfr_prec_t prec, bool cosine) {
    Ball out(prec);
    out.ok = a.ok;
    if (cosine)
        mpfr_cos(out.center.get(), a.center.get(), MPFR_RNDN);
    else
        mpfr_sin(out.center.get(), a.center.get(), MPFR_RNDN);
    mpfr_set(out.radius.get(), a.radius.get(), MPFR_RNDU);
    add_center_ulp(out);
    return out;
}

/// sqrt of an enclosure known to be strictly positive.
inline Ball ball_sqrt(const Ball& a, mpfr_prec_t prec) {
    Ball out(prec);
    out.ok = a.ok;
    if (!out.ok) return out;
    Real lo(prec);
    mpfr_sub(lo.get(), a.center.get(), a.radius.get(), MPFR_RNDD);
    if (mpfr_sgn(lo.get()) <= 0) {
        out.ok = false;
        return out;
    }
    mpfr_sqrt(out.center.get(), a.center.get(), MPFR_RNDN);
    Real denom(kRadiusPrec);
    mpfr_sqrt(denom.get(), lo.get(), MPFR_RNDD);
    mpfr_mul_2si(denom.get(), denom.get(), 1, MPFR_RNDD);
    mpfr_div(denom.get(), a.radius.get(), denom.get(), MPFR_RNDU);
    mpfr_set(out.radius.get(), denom.get(), MPFR_RNDU);
    add_center_ulp(out);
    return out;
}

inline Ball ball_div(const Ball& a, const Ball& b, mpfr_prec_t prec) {
    Ball out(prec);
    out.ok = a.ok && b.ok;
    if (!out.ok) return out;
    Real lo(kRadiusPrec);
    mpfr_abs(lo.get(), b.center.get(), MPFR_RNDD);
    mpfr_sub(lo.get(), lo.get(), b.radius.get(), MPFR_RNDD);
    if (mpfr_sgn(lo.get()) <= 0) {
        out.ok = false;
        return out;
    }
    mpfr_div(out.center.get(), a.center.get(), b.center.get(), MPFR_RNDN);
    // |a/b - c| <= (r_a + |c| r_b) / (|b| - r_b)
    Real num(kRadiusPrec);
    mpfr_abs(num.get(), out.center.get(), MPFR_RNDU);
    mpfr_mul(num.get(), num.get(), b.radius.get(), MPFR_RNDU);
    mpfr_add(num.get(), num.get(), a.radius.get(), MPFR_RNDU);
    mpfr_div(num.get(), num.get(), lo.get(), MPFR_RNDU);
    mpfr_set(out.radius.get(), num.get(), MPFR_RNDU);
    add_center_ulp(out);
    return out;
}

inline std::string format_fixed(const BigInt& scaled, unsigned digits) {
    bool negative = sgn(scaled) < 0;
    BigInt magnitude = negative ? BigInt(-scaled) : scaled;
    std::string s = magnitude.get_str();
    if (s.size() < digits + 1) s.insert(s.begin(), digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    return negative && scaled != 0 ? "-" + s : s;
}

/// Exact truncation of a rational to fixed-point decimal digits.
inline std::string exact_decimal(const Rational& q, unsigned digits) {
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    BigInt t;
    BigInt scaled_num = q.num() * scale;
    mpz_tdiv_q(t.get_mpz_t(), scaled_num.get_mpz_t(), q.den().get_mpz_t());
    return format_fixed(t, digits);
}

/// Engaged iff every value in the enclosure truncates to the same
/// fixed-point string.
inline std::optional<std::string> truncate_ball(const Ball& b, unsigned digits) {
    if (!b.ok) return std::nullopt;
    mpfr_prec_t prec = mpfr_get_prec(b.center.get()) + 64;
    Real lo(prec), hi(prec);
    mpfr_sub(lo.get(), b.center.get(), b.radius.get(), MPFR_RNDD);
    mpfr_add(hi.get(), b.center.get(), b.radius.get(), MPFR_RNDU);
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
    mpfr_mul_z(lo.get(), lo.get(), scale.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(hi.get(), hi.get(), scale.get_mpz_t(), MPFR_RNDU);
    BigInt zlo, zhi;
    mpfr_get_z(zlo.get_mpz_t(), lo.get(), MPFR_RNDZ);
    mpfr_get_z(zhi.get_mpz_t(), hi.get(), MPFR_RNDZ);
    if (zlo != zhi) return std::nullopt;
    return format_fixed(zlo, digits);
}

struct ExactExponentArgs {
    GaussianRational prefactor_value;  // G
    Rational exp_real;                 // A: value = G e^{A + iB}
    Rational exp_imag;                 // B
};

inline ComplexDecimal evaluate_exact_exponent(const ExactExponentArgs& args, unsigned digits) {
    const Rational& gr = args.prefactor_value.re();
    const Rational& gi = args.prefactor_value.im();
    for (mpfr_prec_t prec = 96 + mpfr_prec_t(digits) * 4; prec <= (mpfr_prec_t(1) << 24);
         prec *= 2) {
        Ball a = ball_from_rational(args.exp_real, prec);
        Ball b = ball_from_rational(args.exp_imag, prec);
        Ball ea = ball_exp(a, prec);
        Ball cb = ball_sin(b, prec, true);
        Ball sb = ball_sin(b, prec, false);
        Ball br = ball_from_rational(gr, prec);
        Ball bi = ball_from_rational(gi, prec);
        Ball re = ball_mul(ea, ball_sub(ball_mul(br, cb, prec), ball_mul(bi, sb, prec), prec),
                           prec);
        Ball im = ball_mul(ea, ball_add(ball_mul(br, sb, prec), ball_mul(bi, cb, prec), prec),
                           prec);
        auto re_str = truncate_ball(re, digits);
        auto im_str = truncate_ball(im, digits);
        if (re_str && im_str) return {*re_str, *im_str};
    }
    throw std::runtime_error("eval_solution: evaluation did not stabilize");
}

/// exp(sign*sqrt(c)*x0) when sqrt(c) lies outside Q(i).
inline ComplexDecimal evaluate_sqrt_exponent(const GaussianRational& c, int sign,
                                             const Rational& at, unsigned digits) {
    Rational x0 = sign < 0 ? -at : at;
    for (mpfr_prec_t prec = 96 + mpfr_prec_t(digits) * 4; prec <= (mpfr_prec_t(1) << 24);
         prec *= 2) {
        Ball a(prec), b(prec);
        if (c.im().is_zero()) {
            if (c.re().sign() > 0) {
                a = ball_mul(ball_sqrt(ball_from_rational(c.re(), prec), prec),
                             ball_from_rational(x0, prec), prec);
            } else {
                b = ball_mul(ball_sqrt(ball_from_rational(-c.re(), prec), prec),
                             ball_from_rational(x0, prec), prec);
            }
        } else {
            Ball norm_root = ball_sqrt(ball_from_rational(c.norm(), prec), prec);
            Ball half = ball_from_rational(Rational(1, 2), prec);
            Ball re_part = ball_from_rational(c.re(), prec);
            Ball u = ball_sqrt(ball_mul(ball_add(re_part, norm_root, prec), half, prec), prec);
            Ball two_u = ball_add(u, u, prec);
            Ball v = ball_div(ball_from_rational(c.im(), prec), two_u, prec);
            Ball x0_ball = ball_from_rational(x0, prec);
            a = ball_mul(u, x0_ball, prec);
            b = ball_mul(v, x0_ball, prec);
        }
        Ball ea = ball_exp(a, prec);
        Ball re = ball_mul(ea, ball_sin(b, prec, true), prec);
        Ball im = ball_mul(ea, ball_sin(b, prec, false), prec);
        auto re_str = truncate_ball(re, digits);
        auto im_str = truncate_ball(im, digits);
        if (re_str && im_str) return {*re_str, *im_str};
    }
    throw std::runtime_error("eval_solution: evaluation did not stabilize");
}

inline ComplexDecimal exact_complex(const GaussianRational& value, unsigned digits) {
    return {exact_decimal(value.re(), digits), exact_decimal(value.im(), digits)};
}

}  // namespace detail_eval

/// Evaluate a solution at a rational point to `digits` correct fixed-point
/// decimal digits (truncated toward zero, so already-reported digits never
/// change as `digits` grows). One entry per basis function the form denotes:
/// a single value for PolyExp and ExpSqrtConst, the pair {1, x0} for the
/// affine basis. Quadrature forms are rejected.
inline std::vector<ComplexDecimal> eval_solution(const SolutionForm& sol, const Rational& at,
                                                 unsigned digits,
                                                 const EvalOptions& options = {}) {
    if (digits == 0 || digits > options.digits_cap)
        throw std::domain_error("eval_solution: digits must lie in [1, " +
                                std::to_string(options.digits_cap) + "]");
    using namespace detail_eval;
    if (const PolyExp* form = std::get_if<PolyExp>(&sol)) {
        GaussianRational x0(at);
        GaussianRational g = form->prefactor.eval(x0);
        if (g.is_zero()) return {exact_complex(GaussianRational(), digits)};
        GaussianRational w = form->omega.antiderivative().eval(x0);
        if (w.is_zero()) return {exact_complex(g, digits)};
        return {evaluate_exact_exponent({g, w.re(), w.im()}, digits)};
    }
    if (const ExpSqrtConst* form = std::get_if<ExpSqrtConst>(&sol)) {
        if (at.is_zero() || form->c.is_zero())
            return {exact_complex(GaussianRational(1), digits)};
        if (auto root = try_sqrt(form->c)) {
            GaussianRational w = (form->sign < 0 ? -*root : *root) * GaussianRational(at);
            return {evaluate_exact_exponent({GaussianRational(1), w.re(), w.im()}, digits)};
        }
        return {evaluate_sqrt_exponent(form->c, form->sign, at, digits)};
    }
    if (std::get_if<AffineBasis>(&sol)) {
        return {exact_complex(GaussianRational(1), digits),
                exact_complex(GaussianRational(at), digits)};
    }
    throw UnverifiableFormError("eval_solution: quadrature solutions cannot be evaluated");
}

}  // namespace dirac_liouville
