#pragma once

#include <string>
#include <variant>

#include "dirac_liouville/gaussian_rational.hpp"
#include "dirac_liouville/polynomial.hpp"

namespace dirac_liouville {

/// prefactor(x) * exp(Integral omega dx). Solver emissions keep the
/// prefactor monic; completed spinor components may carry any prefactor.
struct PolyExp {
    Polynomial prefactor;
    Polynomial omega;

    friend bool operator==(const PolyExp&, const PolyExp&) = default;
};

/// exp(sign * sqrt(c) * x); sqrt(c) may lie outside Q(i) (algebraic step of
/// a Liouvillian tower).
struct ExpSqrtConst {
    GaussianRational c;
    int sign = 1;

    friend bool operator==(const ExpSqrtConst&, const ExpSqrtConst&) = default;
};

/// The basis {1, x}, the full solution space of f'' = 0.
struct AffineBasis {
    friend bool operator==(const AffineBasis&, const AffineBasis&) = default;
};

/// base * Integral(base^-2 dx), the reduction-of-order second solution,
/// deliberately left unevaluated.
struct SecondByQuadrature {
    PolyExp base;

    friend bool operator==(const SecondByQuadrature&, const SecondByQuadrature&) = default;
};

using SolutionForm = std::variant<PolyExp, ExpSqrtConst, AffineBasis, SecondByQuadrature>;

/// Textual form "P * exp(W)" with W the explicit antiderivative of omega;
/// re-parseable by the solution grammar whenever all data lies in Q(i).
inline std::string to_string(const PolyExp& sol) {
    Polynomial w = sol.omega.antiderivative();
    if (w.is_zero()) return sol.prefactor.to_string();
    std::string exp_part = "exp(" + w.to_string() + ")";
    if (sol.prefactor == Polynomial(1)) return exp_part;
    std::size_t terms = 0;
    for (const auto& c : sol.prefactor.coefficients())
        if (!c.is_zero()) ++terms;
    std::string p = sol.prefactor.to_string();
    if (terms > 1) p = "(" + p + ")";
    return p + " * " + exp_part;
}

inline std::string to_string(const ExpSqrtConst& sol) {
    std::string sign = sol.sign < 0 ? "-" : "";
    if (auto root = try_sqrt(sol.c)) {
        GaussianRational w = sol.sign < 0 ? -*root : *root;
        return to_string(PolyExp{Polynomial(1), Polynomial(w)});
    }
    std::string c = sol.c.to_string();
    return "exp(" + sign + "sqrt(" + c + ")*x)";
}

inline std::string to_string(const AffineBasis&) { return "{1, x}"; }

inline std::string to_string(const SecondByQuadrature& sol) {
    std::string base = to_string(sol.base);
    return "(" + base + ") * Integral((" + base + ")^(-2) dx)";
}

inline std::string to_string(const SolutionForm& sol) {
    return std::visit([](const auto& s) { return to_string(s); }, sol);
}

}  // namespace dirac_liouville
