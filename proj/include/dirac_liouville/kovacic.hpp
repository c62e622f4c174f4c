#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "dirac_liouville/dirac.hpp"
#include "dirac_liouville/errors.hpp"
#include "dirac_liouville/linear.hpp"
#include "dirac_liouville/polynomial.hpp"
#include "dirac_liouville/solution.hpp"
#include "dirac_liouville/verify.hpp"

namespace dirac_liouville {

/// Expansion data at the only singular point (infinity) for Case 1 of
/// Kovacic's algorithm applied to f'' = r f with polynomial r of even
/// degree 2*nu.
struct Case1Data {
    Polynomial sqrt_part;         // [sqrt(r)] at infinity, degree nu
    std::size_t nu = 0;           // deg(r) / 2
    GaussianRational lead;        // leading coefficient of sqrt_part, nonzero
    GaussianRational subleading;  // coefficient of x^{nu-1} in r - sqrt_part^2
};

/// A retained Case-1 candidate: omega = sign * sqrt_part with candidate
/// prefactor degree (sign*subleading/lead - nu)/2, a nonnegative integer.
struct OmegaCandidate {
    int sign = 1;
    Polynomial omega;
    Rational degree_value;
    std::size_t degree = 0;
};

enum class CandidateReject { NotNonnegativeInteger, DegreeTooLarge, NoMonicPrefactor };

inline std::string to_string(CandidateReject reject) {
    switch (reject) {
        case CandidateReject::NotNonnegativeInteger:
            return "candidate degree is not a nonnegative integer";
        case CandidateReject::DegreeTooLarge:
            return "candidate degree exceeds the configured limit";
        case CandidateReject::NoMonicPrefactor:
            return "no monic prefactor of the candidate degree satisfies the equation";
    }
    return "unknown";
}

struct CandidateFailure {
    int sign = 1;
    GaussianRational degree_value;
    CandidateReject reject = CandidateReject::NotNonnegativeInteger;
    /// For a degree-0 candidate the whole constraint polynomial
    /// omega' + omega^2 - r, whose vanishing is what failed.
    std::optional<Polynomial> forced_residual;
};

/// Why Kovacic Cases 2 and 3 (and, for odd degree, Case 1) cannot apply to a
/// polynomial coefficient.
struct CaseExclusion {
    std::size_t degree = 0;
    long order_at_infinity = 0;  // equals -degree for a polynomial
    bool case1_possible = false;
    std::string case1;
    std::string case2;
    std::string case3;
};

inline CaseExclusion case_exclusion(const Polynomial& coefficient) {
    auto deg = coefficient.degree();
    if (!deg || *deg == 0)
        throw NotApplicableError(
            "case_exclusion: constant coefficients are handled directly, not by case analysis");
    CaseExclusion ex;
    ex.degree = *deg;
    ex.order_at_infinity = -static_cast<long>(*deg);
    std::string ord = std::to_string(ex.order_at_infinity);
    ex.case2 =
        "excluded: the coefficient is a polynomial, so it has no finite pole of order 2 or of "
        "odd order greater than 2";
    ex.case3 = "excluded: order at infinity " + ord + " is below the required minimum 2";
    ex.case1_possible = (*deg % 2 == 0);
    ex.case1 = ex.case1_possible
                   ? "possible: no finite poles and even order " + ord + " at infinity"
                   : "excluded: order at infinity " + ord + " is odd and negative";
    return ex;
}

inline Case1Data compute_case1_data(const Polynomial& coefficient) {
    auto deg = coefficient.degree();
    if (!deg || *deg < 2 || *deg % 2 != 0)
        throw std::invalid_argument("compute_case1_data: needs even degree >= 2");
    Case1Data data;
    data.sqrt_part = asymptotic_sqrt(coefficient);
    data.nu = *deg / 2;
    data.lead = data.sqrt_part.leading_coefficient();
    Polynomial diff = coefficient - data.sqrt_part * data.sqrt_part;
    data.subleading = diff.coeff(data.nu - 1);
    return data;
}

namespace detail {

inline GaussianRational candidate_degree_value(const Case1Data& data, int sign) {
    GaussianRational ratio = data.subleading / data.lead;
    GaussianRational signed_ratio = sign < 0 ? -ratio : ratio;
    return (signed_ratio - GaussianRational(static_cast<long>(data.nu))) /
           GaussianRational(2);
}

}  // namespace detail

/// Both sign candidates, filtered down to those whose degree is a
/// nonnegative integer. An empty result means Case 1 fails.
inline std::vector<OmegaCandidate> degree_candidates(const Case1Data& data) {
    std::vector<OmegaCandidate> retained;
    for (int sign : {1, -1}) {
        GaussianRational d = detail::candidate_degree_value(data, sign);
        auto n = as_nonneg_int(d);
        if (!n || !mpz_fits_ulong_p(n->get_mpz_t())) continue;
        OmegaCandidate c;
        c.sign = sign;
        c.omega = sign < 0 ? -data.sqrt_part : data.sqrt_part;
        c.degree_value = d.re();
        c.degree = static_cast<std::size_t>(n->get_ui());
        retained.push_back(std::move(c));
    }
    return retained;
}

/// Monic P of exactly the given degree with
///   P'' + 2 omega P' + (omega' + omega^2 - coefficient) P = 0
/// identically, found by exact elimination on the coefficient equations with
/// the top coefficient pinned to 1. Disengaged when the linear system is
/// inconsistent.
inline std::optional<Polynomial> monic_prefactor(const Polynomial& omega, std::size_t degree,
                                                 const Polynomial& coefficient) {
    Polynomial constraint = omega.derivative() + omega * omega - coefficient;
    auto apply = [&](const Polynomial& p) {
        return p.derivative().derivative() + GaussianRational(2) * omega * p.derivative() +
               constraint * p;
    };
    std::vector<Polynomial> images(degree + 1);
    std::size_t rows = 0;
    for (std::size_t j = 0; j <= degree; ++j) {
        images[j] = apply(Polynomial::monomial(GaussianRational(1), j));
        if (auto d = images[j].degree()) rows = std::max(rows, *d + 1);
    }
    std::vector<std::vector<GaussianRational>> matrix(rows,
                                                      std::vector<GaussianRational>(degree));
    std::vector<GaussianRational> rhs(rows);
    for (std::size_t row = 0; row < rows; ++row) {
        for (std::size_t j = 0; j < degree; ++j) matrix[row][j] = images[j].coeff(row);
        rhs[row] = -images[degree].coeff(row);
    }
    auto lower = solve_linear(std::move(matrix), std::move(rhs));
    if (!lower) return std::nullopt;
    std::vector<GaussianRational> coeffs = std::move(*lower);
    coeffs.push_back(GaussianRational(1));
    Polynomial p = Polynomial::from_coefficients(std::move(coeffs));
    if (!residual(coefficient, PolyExp{p, omega}).is_zero()) return std::nullopt;
    return p;
}

struct Solvable {
    std::vector<SolutionForm> solutions;                 // nonempty
    std::vector<std::optional<Polynomial>> residuals;    // disengaged for quadrature forms
};

struct NotSolvable {
    std::optional<CaseExclusion> exclusion;
    std::vector<CandidateFailure> failures;
};

using Verdict = std::variant<Solvable, NotSolvable>;

inline bool is_solvable(const Verdict& v) { return std::holds_alternative<Solvable>(v); }

struct SolveOptions {
    std::size_t max_prefactor_degree = 5000;
};

/// Decide Liouvillian solvability of f'' = coefficient * f for a polynomial
/// coefficient and emit solutions with exact certificates.
///
/// Zero coefficient: the affine basis {1, x}. Nonzero constant c: the pair
/// exp(+-sqrt(c) x), Liouvillian through an algebraic extension even when c
/// is not a square in Q(i). Odd degree: no Kovacic case applies. Even degree
/// >= 2: Case 1 with both sign candidates; every emitted solution is checked
/// to have identically zero residual before it leaves this function.
inline Verdict solve(const Polynomial& coefficient, const SolveOptions& options = {}) {
    Solvable out;
    auto emit = [&](SolutionForm form) {
        Polynomial res = residual(coefficient, form);
        if (!res.is_zero())
            throw std::logic_error("solve: emitted solution has a nonzero residual");
        out.solutions.push_back(std::move(form));
        out.residuals.push_back(std::move(res));
    };
    auto deg = coefficient.degree();
    if (!deg) {
        emit(AffineBasis{});
        return out;
    }
    if (*deg == 0) {
        GaussianRational c = coefficient.coeff(0);
        emit(ExpSqrtConst{c, 1});
        emit(ExpSqrtConst{c, -1});
        return out;
    }
    CaseExclusion exclusion = case_exclusion(coefficient);
    if (*deg % 2 != 0) return NotSolvable{exclusion, {}};

    Case1Data data;
    try {
        data = compute_case1_data(coefficient);
    } catch (const FieldExtensionError& e) {
        throw FieldExtensionError(std::string(e.what()) +
                                  "; Case-1 verdict undecided over Q(i)");
    }
    std::vector<CandidateFailure> failures;
    for (int sign : {1, -1}) {
        GaussianRational d = detail::candidate_degree_value(data, sign);
        auto n = as_nonneg_int(d);
        if (!n) {
            failures.push_back({sign, d, CandidateReject::NotNonnegativeInteger, {}});
            continue;
        }
        if (!mpz_fits_ulong_p(n->get_mpz_t()) ||
            n->get_ui() > options.max_prefactor_degree) {
            failures.push_back({sign, d, CandidateReject::DegreeTooLarge, {}});
            continue;
        }
        std::size_t degree = static_cast<std::size_t>(n->get_ui());
        Polynomial omega = sign < 0 ? -data.sqrt_part : data.sqrt_part;
        auto prefactor = monic_prefactor(omega, degree, coefficient);
        if (!prefactor) {
            CandidateFailure f{sign, d, CandidateReject::NoMonicPrefactor, {}};
            if (degree == 0)
                f.forced_residual = omega.derivative() + omega * omega - coefficient;
            failures.push_back(std::move(f));
            continue;
        }
        emit(PolyExp{std::move(*prefactor), std::move(omega)});
    }
    if (out.solutions.empty()) return NotSolvable{exclusion, std::move(failures)};
    SecondByQuadrature second{std::get<PolyExp>(out.solutions.front())};
    out.solutions.push_back(std::move(second));
    out.residuals.push_back(std::nullopt);
    return out;
}

/// Closed-form classification of the solvable parameter sets, without
/// running the algorithm. Disengaged when the parameters fall outside the
/// regime the classification addresses (candidate index a negative integer,
/// reachable over Q(i)); there the solver verdict is authoritative.
struct TheoremVerdict {
    std::optional<bool> solvable;
    std::string reason;
};

inline TheoremVerdict classify_detail(const DiracProblem& problem) {
    auto deg = problem.potential.degree();
    std::size_t n = deg ? *deg : 0;
    if (n == 0)
        return {true,
                "degree 0: constant-coefficient equation (standard Dirac), always Liouvillian"};
    bool scalar = problem.coupling == Coupling::Scalar;
    if (n == 1) {
        GaussianRational lambda = problem.potential.leading_coefficient();
        GaussianRational index =
            scalar ? problem.energy * problem.energy / (GaussianRational(2) * lambda)
                   : -GaussianRational::i() * problem.mass * problem.mass /
                         (GaussianRational(2) * lambda);
        std::string name = scalar ? "E^2/(2*lambda)" : "-i*m^2/(2*lambda)";
        if (as_nonneg_int(index))
            return {true, "degree 1 with oscillator index " + name + " = " +
                              index.to_string() + ", a nonnegative integer (Hermite family; "
                              "index 0 gives the closed-form exponential)"};
        if (as_nonneg_int(-index))
            return {std::nullopt,
                    "degree 1 with oscillator index " + name + " = " + index.to_string() +
                        ", a negative integer: outside the regime the classification "
                        "addresses; the solver verdict is authoritative"};
        return {false, "degree 1 with oscillator index " + name + " = " + index.to_string() +
                           ", not an integer"};
    }
    if (scalar) {
        if (problem.energy.is_zero())
            return {true, "degree > 1 with E = 0: solution exp(Int (m+V) dx)"};
        return {false, "degree > 1 with E != 0 (scalar coupling) is never Liouvillian"};
    }
    if (problem.mass.is_zero())
        return {true, "degree > 1 with m = 0: solution exp(i Int (E+V) dx)"};
    return {false, "degree > 1 with m != 0 (vector coupling) is never Liouvillian"};
}

inline std::optional<bool> classify_by_theorem(const DiracProblem& problem) {
    return classify_detail(problem).solvable;
}

}  // namespace dirac_liouville
