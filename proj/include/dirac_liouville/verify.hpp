#pragma once

#include <variant>

#include "dirac_liouville/dirac.hpp"
#include "dirac_liouville/errors.hpp"
#include "dirac_liouville/polynomial.hpp"
#include "dirac_liouville/solution.hpp"

namespace dirac_liouville {

/// Exact residual of a candidate solution of f'' = coefficient * f, reduced
/// to its polynomial factor:
///  - PolyExp: P'' + 2 omega P' + (omega' + omega^2 - coefficient) P, the
///    polynomial multiplying exp(Int omega) in f'' - coefficient*f;
///  - ExpSqrtConst{c}: the constant polynomial c - coefficient;
///  - AffineBasis: the coefficient itself (f'' vanishes on {1, x}).
/// The solution passes exactly when the residual is the zero polynomial.
inline Polynomial residual(const Polynomial& coefficient, const SolutionForm& sol) {
    if (const PolyExp* form = std::get_if<PolyExp>(&sol)) {
        const Polynomial& p = form->prefactor;
        const Polynomial& omega = form->omega;
        return p.derivative().derivative() + GaussianRational(2) * omega * p.derivative() +
               (omega.derivative() + omega * omega - coefficient) * p;
    }
    if (const ExpSqrtConst* form = std::get_if<ExpSqrtConst>(&sol)) {
        return Polynomial(form->c) - coefficient;
    }
    if (std::get_if<AffineBasis>(&sol)) {
        return coefficient;
    }
    throw UnverifiableFormError("residual: quadrature solutions cannot be verified symbolically");
}

struct ResidualCertificate {
    Polynomial coefficient;
    SolutionForm solution;
    Polynomial residual_poly;

    bool pass() const { return residual_poly.is_zero(); }
};

inline ResidualCertificate certify(const Polynomial& coefficient, const SolutionForm& sol) {
    return {coefficient, sol, residual(coefficient, sol)};
}

/// Exact check of a spinor pair against the first-order system. Both
/// residuals are reduced to polynomial factors; the pair passes iff both
/// vanish identically.
struct SpinorCertificate {
    Polynomial first_equation;
    Polynomial second_equation;

    bool pass() const { return first_equation.is_zero() && second_equation.is_zero(); }
};

inline SpinorCertificate verify_spinor(const DiracProblem& problem, const SolutionForm& psi1,
                                       const SolutionForm& psi2) {
    const PolyExp* f1 = std::get_if<PolyExp>(&psi1);
    const PolyExp* f2 = std::get_if<PolyExp>(&psi2);
    if (!f1 || !f2)
        throw UnverifiableFormError(
            "verify_spinor: both components must be polynomial-times-exponential");
    const GaussianRational i = GaussianRational::i();
    bool degenerate = degenerate_coupling(problem);
    if (!degenerate && !(f1->omega == f2->omega))
        throw MixedExponentialsError(
            "verify_spinor: components carry different exponent integrands and the coupling "
            "does not decouple");
    SpinorCertificate cert;
    if (problem.coupling == Coupling::Scalar) {
        Polynomial u = problem.potential + Polynomial(problem.mass);
        // psi1' = U psi1 - E psi2 ; psi2' = -U psi2 + E psi1
        cert.first_equation = f1->prefactor.derivative() + f1->omega * f1->prefactor -
                              u * f1->prefactor;
        cert.second_equation = f2->prefactor.derivative() + f2->omega * f2->prefactor +
                               u * f2->prefactor;
        if (!degenerate) {
            cert.first_equation += Polynomial(problem.energy) * f2->prefactor;
            cert.second_equation -= Polynomial(problem.energy) * f1->prefactor;
        }
    } else {
        Polynomial u = problem.potential + Polynomial(problem.energy);
        // psi1' = i U psi1 - i m psi2 ; psi2' = -i U psi2 + i m psi1
        cert.first_equation = f1->prefactor.derivative() + f1->omega * f1->prefactor -
                              i * u * f1->prefactor;
        cert.second_equation = f2->prefactor.derivative() + f2->omega * f2->prefactor +
                               i * u * f2->prefactor;
        if (!degenerate) {
            cert.first_equation += Polynomial(i * problem.mass) * f2->prefactor;
            cert.second_equation -= Polynomial(i * problem.mass) * f1->prefactor;
        }
    }
    return cert;
}

}  // namespace dirac_liouville
