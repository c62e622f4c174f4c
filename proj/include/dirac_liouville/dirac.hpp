#pragma once

#include <stdexcept>
#include <string>

#include "dirac_liouville/errors.hpp"
#include "dirac_liouville/polynomial.hpp"
#include "dirac_liouville/solution.hpp"

namespace dirac_liouville {

enum class Coupling { Scalar, Vector };

inline std::string to_string(Coupling c) { return c == Coupling::Scalar ? "scalar" : "vector"; }

/// A stationary one-dimensional Dirac problem: polynomial potential,
/// mass, energy, coupling type, and the spinor component whose second-order
/// equation is under study.
struct DiracProblem {
    Polynomial potential;
    GaussianRational mass;
    GaussianRational energy;
    Coupling coupling = Coupling::Scalar;
    int component = 1;

    friend bool operator==(const DiracProblem&, const DiracProblem&) = default;
};

/// Second-order normal form f'' = coefficient * f, with the shifted
/// potential and a provenance record of how the coefficient was assembled.
struct ReducedODE {
    Polynomial coefficient;
    Polynomial shifted_potential;  // m + V (scalar) or V + E (vector)
    Coupling coupling = Coupling::Scalar;
    int component = 1;
    int derivative_sign = 1;  // sign of the U' (scalar) or i*U' (vector) term
};

namespace detail {
inline void check_component(int component) {
    if (component != 1 && component != 2)
        throw std::invalid_argument("component must be 1 or 2");
}
}  // namespace detail

/// Scalar coupling: the second-order coefficient uses the energy only
/// through its square, so that parameter is taken directly.
inline Polynomial scalar_reduction(const Polynomial& potential, const GaussianRational& mass,
                                   const GaussianRational& energy_squared, int component = 1) {
    detail::check_component(component);
    Polynomial u = potential + Polynomial(mass);
    Polynomial r = u * u - Polynomial(energy_squared);
    Polynomial du = u.derivative();
    return component == 1 ? r + du : r - du;
}

/// Vector coupling: the mass enters only through its square.
inline Polynomial vector_reduction(const Polynomial& potential, const GaussianRational& energy,
                                   const GaussianRational& mass_squared, int component = 1) {
    detail::check_component(component);
    Polynomial u = potential + Polynomial(energy);
    Polynomial r = Polynomial(mass_squared) - u * u;
    Polynomial i_du = GaussianRational::i() * u.derivative();
    return component == 1 ? r + i_du : r - i_du;
}

inline ReducedODE reduce(const DiracProblem& problem) {
    detail::check_component(problem.component);
    ReducedODE ode;
    ode.coupling = problem.coupling;
    ode.component = problem.component;
    ode.derivative_sign = problem.component == 1 ? 1 : -1;
    if (problem.coupling == Coupling::Scalar) {
        ode.shifted_potential = problem.potential + Polynomial(problem.mass);
        ode.coefficient = scalar_reduction(problem.potential, problem.mass,
                                           problem.energy * problem.energy, problem.component);
    } else {
        ode.shifted_potential = problem.potential + Polynomial(problem.energy);
        ode.coefficient = vector_reduction(problem.potential, problem.energy,
                                           problem.mass * problem.mass, problem.component);
    }
    return ode;
}

/// The parameter substitution V -> -i V, E -> -i m, m -> i E that carries a
/// vector-coupling problem to a scalar-coupling one: plugging the mapped
/// parameters into the vector reduction reproduces the scalar reduction of
/// the original parameters.
inline DiracProblem vector_to_scalar_map(const DiracProblem& problem) {
    if (problem.coupling != Coupling::Vector)
        throw WrongCouplingError("vector_to_scalar_map: problem is not vector-coupled");
    DiracProblem mapped;
    mapped.potential = -GaussianRational::i() * problem.potential;
    mapped.mass = GaussianRational::i() * problem.energy;
    mapped.energy = -GaussianRational::i() * problem.mass;
    mapped.coupling = Coupling::Scalar;
    mapped.component = problem.component;
    return mapped;
}

/// True when the first-order system decouples: E = 0 for scalar coupling,
/// m = 0 for vector coupling.
inline bool degenerate_coupling(const DiracProblem& problem) {
    return problem.coupling == Coupling::Scalar ? problem.energy.is_zero()
                                                : problem.mass.is_zero();
}

/// Reconstruct the other spinor component from a solution of
/// problem.component's second-order equation, via the first-order system.
///
/// In the degenerate case the system decouples and the returned component is
/// its own closed form exp(-Int U) (scalar) or exp(-i Int U) (vector), with
/// the sign mirrored when the input solves component 2.
inline SolutionForm complete_spinor(const DiracProblem& problem, const SolutionForm& psi) {
    detail::check_component(problem.component);
    Polynomial u = problem.coupling == Coupling::Scalar
                       ? problem.potential + Polynomial(problem.mass)
                       : problem.potential + Polynomial(problem.energy);
    const GaussianRational i = GaussianRational::i();
    if (degenerate_coupling(problem)) {
        Polynomial own = problem.coupling == Coupling::Scalar ? u : i * u;
        // component 1 integrates +own, component 2 integrates -own
        Polynomial other = problem.component == 1 ? -own : own;
        return PolyExp{Polynomial(1), other};
    }
    const PolyExp* form = std::get_if<PolyExp>(&psi);
    if (!form)
        throw UnverifiableFormError(
            "complete_spinor: needs a polynomial-times-exponential solution");
    const Polynomial& p = form->prefactor;
    const Polynomial& omega = form->omega;
    Polynomial dp = p.derivative();
    Polynomial other;
    if (problem.coupling == Coupling::Scalar) {
        GaussianRational inv_e = problem.energy.reciprocal();
        other = problem.component == 1 ? ((u - omega) * p - dp) * inv_e
                                       : ((u + omega) * p + dp) * inv_e;
    } else {
        GaussianRational inv_m = problem.mass.reciprocal();
        other = problem.component == 1 ? ((u + i * omega) * p + i * dp) * inv_m
                                       : ((u - i * omega) * p - i * dp) * inv_m;
    }
    return PolyExp{other, omega};
}

}  // namespace dirac_liouville
