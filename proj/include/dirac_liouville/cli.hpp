#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "json.hpp"

#include "dirac_liouville/dirac.hpp"
#include "dirac_liouville/errors.hpp"
#include "dirac_liouville/eval.hpp"
#include "dirac_liouville/kovacic.hpp"
#include "dirac_liouville/parse.hpp"
#include "dirac_liouville/polynomial.hpp"
#include "dirac_liouville/verify.hpp"

namespace dirac_liouville::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitSolvable = 0;
inline constexpr int kExitNotSolvable = 10;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

inline constexpr const char* kSchema = "dirac-liouville/1";

/// One record per invocation: schema version, command echo, verdict or value
/// payload, certificates, and timing. All exact values are serialized as
/// strings; the only numeric fields are small integers.
struct CommandResult {
    int exit_code = kExitSolvable;
    Json record;
    std::string text;
};

struct ProblemFlags {
    std::string coupling = "scalar";
    std::string potential;
    std::string mass = "0";
    std::string energy = "0";
    int component = 1;
};

struct SweepFlags {
    std::string degrees = "2..4";
    std::string coeff_set = "-1,1";
    std::string masses = "0";
    std::string energies = "0";
    std::string couplings = "scalar,vector";
    unsigned jobs = 1;
    std::uint64_t seed = 12345;
};

struct HermiteFlags {
    std::string lambda = "1";
    std::string mass = "0";
    unsigned kmax = 10;
};

struct VerifyFlags {
    std::string psi;
    ProblemFlags problem;
};

struct EvalFlags {
    std::string psi;
    std::string at = "0";
    unsigned digits = 10;
};

namespace detail_cli {

inline Coupling parse_coupling(const std::string& text) {
    if (text == "scalar") return Coupling::Scalar;
    if (text == "vector") return Coupling::Vector;
    throw std::invalid_argument("coupling must be 'scalar' or 'vector', got '" + text + "'");
}

inline DiracProblem parse_problem(const ProblemFlags& flags) {
    DiracProblem problem;
    problem.coupling = parse_coupling(flags.coupling);
    problem.potential = parse_polynomial(flags.potential);
    problem.mass = parse_scalar(flags.mass);
    problem.energy = parse_scalar(flags.energy);
    if (flags.component != 1 && flags.component != 2)
        throw std::invalid_argument("component must be 1 or 2");
    problem.component = flags.component;
    return problem;
}

inline Json problem_json(const DiracProblem& problem) {
    return Json{{"coupling", to_string(problem.coupling)},
                {"potential", problem.potential.to_string()},
                {"mass", problem.mass.to_string()},
                {"energy", problem.energy.to_string()},
                {"component", problem.component}};
}

inline Json solution_json(const SolutionForm& sol, int component,
                          const std::optional<Polynomial>& residual_poly) {
    Json j;
    if (const PolyExp* p = std::get_if<PolyExp>(&sol)) {
        j["form"] = "poly_exp";
        j["component"] = component;
        j["P"] = p->prefactor.to_string();
        j["W"] = p->omega.antiderivative().to_string();
    } else if (const ExpSqrtConst* e = std::get_if<ExpSqrtConst>(&sol)) {
        j["form"] = "exp_sqrt";
        j["component"] = component;
        j["c"] = e->c.to_string();
        j["sign"] = e->sign < 0 ? "-" : "+";
    } else if (std::get_if<AffineBasis>(&sol)) {
        j["form"] = "affine_basis";
        j["component"] = component;
        j["basis"] = Json::array({"1", "x"});
    } else if (const SecondByQuadrature* q = std::get_if<SecondByQuadrature>(&sol)) {
        j["form"] = "second_by_quadrature";
        j["component"] = component;
        j["base"] = Json{{"P", q->base.prefactor.to_string()},
                         {"W", q->base.omega.antiderivative().to_string()}};
    }
    j["text"] = to_string(sol);
    if (residual_poly) j["residual"] = residual_poly->to_string();
    return j;
}

inline Json exclusion_json(const CaseExclusion& ex) {
    return Json{{"degree", static_cast<std::int64_t>(ex.degree)},
                {"order_at_infinity", ex.order_at_infinity},
                {"case1", ex.case1},
                {"case2", ex.case2},
                {"case3", ex.case3}};
}

inline Json failures_json(const std::vector<CandidateFailure>& failures) {
    Json arr = Json::array();
    for (const auto& f : failures) {
        Json j{{"sign", f.sign < 0 ? "-" : "+"},
               {"candidate_degree", f.degree_value.to_string()},
               {"reason", to_string(f.reject)}};
        if (f.forced_residual) j["residual"] = f.forced_residual->to_string();
        arr.push_back(std::move(j));
    }
    return arr;
}

inline Json theorem_json(const TheoremVerdict& verdict) {
    std::string text = !verdict.solvable ? "indeterminate"
                       : *verdict.solvable ? "solvable"
                                           : "not_solvable";
    return Json{{"verdict", text}, {"reason", verdict.reason}};
}

inline std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream stream(text);
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

template <typename Body>
CommandResult run_command(const std::string& command, Body&& body) {
    CommandResult result;
    result.record["schema"] = kSchema;
    result.record["command"] = command;
    auto start = std::chrono::steady_clock::now();
    try {
        body(result);
    } catch (const ParseError& e) {
        result.exit_code = kExitUsage;
        result.record["error"] = Json{{"kind", "parse"},
                                      {"message", e.what()},
                                      {"offset", static_cast<std::int64_t>(e.position().offset)},
                                      {"line", static_cast<std::int64_t>(e.position().line)},
                                      {"column", static_cast<std::int64_t>(e.position().column)}};
        result.text = std::string("error: ") + e.what();
    } catch (const FieldExtensionError& e) {
        // cannot arise from a Dirac-derived coefficient
        result.exit_code = kExitInternal;
        result.record["error"] = Json{{"kind", "internal"}, {"message", e.what()}};
        result.text = std::string("internal error: ") + e.what();
    } catch (const std::domain_error& e) {
        result.exit_code = kExitUsage;
        result.record["error"] = Json{{"kind", "usage"}, {"message", e.what()}};
        result.text = std::string("error: ") + e.what();
    } catch (const std::invalid_argument& e) {
        result.exit_code = kExitUsage;
        result.record["error"] = Json{{"kind", "usage"}, {"message", e.what()}};
        result.text = std::string("error: ") + e.what();
    } catch (const std::exception& e) {
        result.exit_code = kExitInternal;
        result.record["error"] = Json{{"kind", "internal"}, {"message", e.what()}};
        result.text = std::string("internal error: ") + e.what();
    }
    auto elapsed = std::chrono::steady_clock::now() - start;
    result.record["ms"] = static_cast<std::int64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count());
    return result;
}

/// The canonical spinor pair for a solvable problem, when one is expressible:
/// the first poly-exp solver emission completed through the first-order
/// system, or the decoupled closed forms in the degenerate case.
inline std::optional<std::pair<SolutionForm, SolutionForm>> spinor_pair(
    const DiracProblem& problem, const Solvable& solvable) {
    if (degenerate_coupling(problem)) {
        Polynomial u = problem.coupling == Coupling::Scalar
                           ? problem.potential + Polynomial(problem.mass)
                           : problem.potential + Polynomial(problem.energy);
        Polynomial own = problem.coupling == Coupling::Scalar ? u : GaussianRational::i() * u;
        if (problem.component == 2) own = -own;
        SolutionForm psi_own = PolyExp{Polynomial(1), own};
        SolutionForm psi_other = complete_spinor(problem, psi_own);
        return problem.component == 1 ? std::make_pair(psi_own, psi_other)
                                      : std::make_pair(psi_other, psi_own);
    }
    for (const auto& sol : solvable.solutions) {
        if (!std::holds_alternative<PolyExp>(sol)) continue;
        SolutionForm other = complete_spinor(problem, sol);
        return problem.component == 1 ? std::make_pair(sol, other)
                                      : std::make_pair(other, sol);
    }
    return std::nullopt;
}

}  // namespace detail_cli

inline CommandResult cmd_solve(const ProblemFlags& flags) {
    using namespace detail_cli;
    return run_command("solve", [&](CommandResult& result) {
        DiracProblem problem = parse_problem(flags);
        result.record["input"] = problem_json(problem);
        ReducedODE ode = reduce(problem);
        result.record["reduction"] =
            Json{{"u", ode.shifted_potential.to_string()},
                 {"r", ode.coefficient.to_string()},
                 {"derivative_sign", ode.derivative_sign}};
        Verdict verdict = solve(ode.coefficient);
        TheoremVerdict predicted = classify_detail(problem);
        std::ostringstream text;
        text << "coupling " << to_string(problem.coupling) << ", component "
             << problem.component << "\n";
        text << "reduced equation: f'' = (" << ode.coefficient.to_string() << ") f\n";
        if (const Solvable* s = std::get_if<Solvable>(&verdict)) {
            result.exit_code = kExitSolvable;
            result.record["verdict"] = "solvable";
            Json solutions = Json::array();
            text << "verdict: SOLVABLE\n";
            for (std::size_t k = 0; k < s->solutions.size(); ++k) {
                solutions.push_back(
                    solution_json(s->solutions[k], problem.component, s->residuals[k]));
                text << "  solution: " << to_string(s->solutions[k]);
                if (s->residuals[k]) text << "   [residual " << s->residuals[k]->to_string() << "]";
                text << "\n";
            }
            result.record["solutions"] = std::move(solutions);
            if (auto pair = spinor_pair(problem, *s)) {
                SpinorCertificate cert = verify_spinor(problem, pair->first, pair->second);
                if (!cert.pass())
                    throw std::logic_error("completed spinor pair failed verification");
                result.record["spinor"] =
                    Json{{"psi1", to_string(pair->first)},
                         {"psi2", to_string(pair->second)},
                         {"residual1", cert.first_equation.to_string()},
                         {"residual2", cert.second_equation.to_string()}};
                text << "spinor pair:\n  psi1 = " << to_string(pair->first)
                     << "\n  psi2 = " << to_string(pair->second) << "\n";
            } else {
                result.record["spinor"] = Json{{"note", "no polynomial-times-exponential "
                                                        "component; pair not emitted"}};
            }
        } else {
            const NotSolvable& ns = std::get<NotSolvable>(verdict);
            result.exit_code = kExitNotSolvable;
            result.record["verdict"] = "not_solvable";
            Json certs;
            if (ns.exclusion) certs["case_exclusion"] = exclusion_json(*ns.exclusion);
            certs["candidates"] = failures_json(ns.failures);
            result.record["certificates"] = std::move(certs);
            text << "verdict: NOT SOLVABLE\n";
            if (ns.exclusion) {
                text << "  case 1: " << ns.exclusion->case1 << "\n";
                text << "  case 2: " << ns.exclusion->case2 << "\n";
                text << "  case 3: " << ns.exclusion->case3 << "\n";
            }
            for (const auto& f : ns.failures) {
                text << "  candidate sign " << (f.sign < 0 ? "-" : "+") << ", degree "
                     << f.degree_value.to_string() << ": " << to_string(f.reject);
                if (f.forced_residual)
                    text << " (residual " << f.forced_residual->to_string() << ")";
                text << "\n";
            }
        }
        bool engine_solvable = is_solvable(verdict);
        if (predicted.solvable && *predicted.solvable != engine_solvable)
            throw std::logic_error("solver verdict disagrees with the classification");
        result.record["theorem"] = theorem_json(predicted);
        text << "theorem check: " << result.record["theorem"]["verdict"].get<std::string>()
             << " (" << predicted.reason << ")";
        result.text = text.str();
    });
}

inline CommandResult cmd_classify(const ProblemFlags& flags) {
    using namespace detail_cli;
    return run_command("classify", [&](CommandResult& result) {
        DiracProblem problem = parse_problem(flags);
        result.record["input"] = problem_json(problem);
        TheoremVerdict verdict = classify_detail(problem);
        result.record["theorem"] = theorem_json(verdict);
        result.exit_code =
            !verdict.solvable ? kExitSolvable
                              : (*verdict.solvable ? kExitSolvable : kExitNotSolvable);
        std::string v = result.record["theorem"]["verdict"].get<std::string>();
        result.text = "classification: " + v + "\nreason: " + verdict.reason;
    });
}

inline CommandResult cmd_hermite(const HermiteFlags& flags) {
    using namespace detail_cli;
    return run_command("hermite", [&](CommandResult& result) {
        GaussianRational lambda = parse_scalar(flags.lambda);
        if (lambda.is_zero()) throw std::invalid_argument("lambda must be nonzero");
        GaussianRational mass = parse_scalar(flags.mass);
        result.record["input"] = Json{{"lambda", lambda.to_string()},
                                      {"mass", mass.to_string()},
                                      {"kmax", static_cast<std::int64_t>(flags.kmax)}};
        Polynomial v = Polynomial::monomial(lambda, 1);
        Json rows = Json::array();
        std::ostringstream text;
        text << "  k | E^2        | deg P | P\n";
        for (unsigned k = 1; k <= flags.kmax; ++k) {
            GaussianRational e2 = GaussianRational(Rational(2L * k)) * lambda;
            Polynomial r = scalar_reduction(v, mass, e2);
            Verdict verdict = solve(r);
            const Solvable* s = std::get_if<Solvable>(&verdict);
            if (!s) throw std::logic_error("oscillator family member not solvable");
            const PolyExp* sol = nullptr;
            for (const auto& form : s->solutions)
                if ((sol = std::get_if<PolyExp>(&form))) break;
            if (!sol || sol->prefactor.degree() != k - 1 || !sol->prefactor.is_monic())
                throw std::logic_error("oscillator prefactor has unexpected shape");
            rows.push_back(Json{{"k", static_cast<std::int64_t>(k)},
                                {"e_squared", e2.to_string()},
                                {"p_degree", static_cast<std::int64_t>(k - 1)},
                                {"P", sol->prefactor.to_string()},
                                {"W", sol->omega.antiderivative().to_string()}});
            std::string e2_text = e2.to_string();
            e2_text.resize(std::max<std::size_t>(e2_text.size(), 10), ' ');
            std::string k_text = std::to_string(k);
            k_text.insert(k_text.begin(), 3 - std::min<std::size_t>(3, k_text.size()), ' ');
            text << k_text << " | " << e2_text << " | " << (k - 1) << "     | "
                 << sol->prefactor.to_string() << "\n";
        }
        result.record["rows"] = std::move(rows);
        result.record["verdict"] = "solvable";
        result.exit_code = kExitSolvable;
        result.text = text.str();
    });
}

inline CommandResult cmd_verify(const VerifyFlags& flags) {
    using namespace detail_cli;
    return run_command("verify", [&](CommandResult& result) {
        DiracProblem problem = parse_problem(flags.problem);
        ParsedSolution parsed = parse_solution(flags.psi);
        PolyExp candidate{parsed.prefactor, parsed.exponent.derivative()};
        result.record["input"] = problem_json(problem);
        result.record["input"]["psi"] = flags.psi;
        ReducedODE ode = reduce(problem);
        Polynomial res = residual(ode.coefficient, candidate);
        bool pass = res.is_zero();
        result.record["verdict"] = pass ? "pass" : "fail";
        result.record["residual"] = res.to_string();
        result.record["r"] = ode.coefficient.to_string();
        result.exit_code = pass ? kExitSolvable : kExitNotSolvable;
        result.text = std::string(pass ? "pass" : "fail") +
                      ": residual = " + res.to_string();
    });
}

inline CommandResult cmd_eval(const EvalFlags& flags) {
    using namespace detail_cli;
    return run_command("eval", [&](CommandResult& result) {
        ParsedSolution parsed = parse_solution(flags.psi);
        GaussianRational at = parse_scalar(flags.at);
        if (!at.is_real())
            throw std::invalid_argument("evaluation point must be a real rational");
        PolyExp form{parsed.prefactor, parsed.exponent.derivative()};
        result.record["input"] = Json{{"psi", flags.psi},
                                      {"at", at.re().to_string()},
                                      {"digits", static_cast<std::int64_t>(flags.digits)}};
        auto values = eval_solution(form, at.re(), flags.digits);
        Json arr = Json::array();
        std::ostringstream text;
        for (const auto& value : values) {
            arr.push_back(Json{{"re", value.real}, {"im", value.imag}});
            text << value.real;
            if (value.imag.find_first_not_of("0.") != std::string::npos)
                text << " + " << value.imag << "*i";
            text << "\n";
        }
        result.record["values"] = std::move(arr);
        result.exit_code = kExitSolvable;
        std::string s = text.str();
        if (!s.empty() && s.back() == '\n') s.pop_back();
        result.text = s;
    });
}

namespace detail_cli {

struct SweepCell {
    DiracProblem problem;  // component 1; component 2 derived
};

struct SweepOutcome {
    bool solvable1 = false;
    bool solvable2 = false;
    std::optional<bool> predicted;
};

inline SweepOutcome run_cell(const SweepCell& cell) {
    SweepOutcome outcome;
    DiracProblem p1 = cell.problem;
    p1.component = 1;
    DiracProblem p2 = cell.problem;
    p2.component = 2;
    outcome.solvable1 = is_solvable(solve(reduce(p1).coefficient));
    outcome.solvable2 = is_solvable(solve(reduce(p2).coefficient));
    outcome.predicted = classify_by_theorem(p1);
    return outcome;
}

}  // namespace detail_cli

inline CommandResult cmd_sweep(const SweepFlags& flags) {
    using namespace detail_cli;
    return run_command("sweep", [&](CommandResult& result) {
        auto range_sep = flags.degrees.find("..");
        std::size_t deg_lo = 0, deg_hi = 0;
        try {
            if (range_sep == std::string::npos) {
                deg_lo = deg_hi = std::stoul(flags.degrees);
            } else {
                deg_lo = std::stoul(flags.degrees.substr(0, range_sep));
                deg_hi = std::stoul(flags.degrees.substr(range_sep + 2));
            }
        } catch (const std::exception&) {
            throw std::invalid_argument("--degrees expects 'a..b' or a single integer");
        }
        if (deg_hi > 64) throw std::invalid_argument("--degrees limit is 64");
        std::vector<GaussianRational> coeffs, masses, energies;
        for (const auto& s : split_list(flags.coeff_set)) coeffs.push_back(parse_scalar(s));
        for (const auto& s : split_list(flags.masses)) masses.push_back(parse_scalar(s));
        for (const auto& s : split_list(flags.energies)) energies.push_back(parse_scalar(s));
        std::vector<Coupling> couplings;
        for (const auto& s : split_list(flags.couplings)) couplings.push_back(parse_coupling(s));
        unsigned jobs = flags.jobs == 0 ? 1 : flags.jobs;

        result.record["input"] = Json{{"degrees", flags.degrees},
                                      {"coeff_set", flags.coeff_set},
                                      {"masses", flags.masses},
                                      {"energies", flags.energies},
                                      {"couplings", flags.couplings},
                                      {"jobs", static_cast<std::int64_t>(jobs)},
                                      {"seed", static_cast<std::int64_t>(flags.seed)}};

        // the grid is generated up front, single-threaded, so results do not
        // depend on the number of jobs
        std::mt19937_64 gen(flags.seed);
        std::vector<SweepCell> cells;
        for (std::size_t deg = deg_lo; deg <= deg_hi; ++deg) {
            for (const auto& lead : coeffs) {
                if (deg >= 1 && lead.is_zero()) continue;
                Polynomial v = Polynomial::monomial(lead, deg);
                if (deg >= 1) {
                    std::size_t position = gen() % deg;
                    const GaussianRational& extra = coeffs[gen() % coeffs.size()];
                    v += Polynomial::monomial(extra, position);
                }
                for (const auto& m : masses)
                    for (const auto& e : energies)
                        for (Coupling c : couplings)
                            cells.push_back(SweepCell{DiracProblem{v, m, e, c, 1}});
            }
        }
        if (cells.empty()) throw std::invalid_argument("sweep grid is empty");

        std::vector<SweepOutcome> outcomes(cells.size());
        if (jobs <= 1) {
            for (std::size_t k = 0; k < cells.size(); ++k) outcomes[k] = run_cell(cells[k]);
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> workers;
            for (unsigned w = 0; w < jobs; ++w) {
                workers.emplace_back([&] {
                    for (;;) {
                        std::size_t k = next.fetch_add(1);
                        if (k >= cells.size()) return;
                        outcomes[k] = run_cell(cells[k]);
                    }
                });
            }
            for (auto& worker : workers) worker.join();
        }

        std::size_t solvable = 0, not_solvable = 0, indeterminate = 0;
        std::size_t disagreements = 0, component_mismatches = 0;
        Json cell_array = Json::array();
        for (std::size_t k = 0; k < cells.size(); ++k) {
            const SweepOutcome& o = outcomes[k];
            const DiracProblem& p = cells[k].problem;
            (o.solvable1 ? solvable : not_solvable) += 1;
            bool agree = true;
            if (!o.predicted) {
                ++indeterminate;
            } else if (*o.predicted != o.solvable1) {
                ++disagreements;
                agree = false;
            }
            if (o.solvable1 != o.solvable2) {
                ++component_mismatches;
                agree = false;
            }
            cell_array.push_back(
                Json{{"potential", p.potential.to_string()},
                     {"mass", p.mass.to_string()},
                     {"energy", p.energy.to_string()},
                     {"coupling", to_string(p.coupling)},
                     {"component1", o.solvable1 ? "solvable" : "not_solvable"},
                     {"component2", o.solvable2 ? "solvable" : "not_solvable"},
                     {"theorem", !o.predicted ? "indeterminate"
                                              : (*o.predicted ? "solvable" : "not_solvable")},
                     {"agree", agree}});
        }
        result.record["cells"] = std::move(cell_array);
        result.record["summary"] =
            Json{{"cells", static_cast<std::int64_t>(cells.size())},
                 {"solvable", static_cast<std::int64_t>(solvable)},
                 {"not_solvable", static_cast<std::int64_t>(not_solvable)},
                 {"indeterminate", static_cast<std::int64_t>(indeterminate)},
                 {"theorem_disagreements", static_cast<std::int64_t>(disagreements)},
                 {"component_mismatches", static_cast<std::int64_t>(component_mismatches)}};
        std::ostringstream text;
        text << "cells: " << cells.size() << ", solvable: " << solvable
             << ", not solvable: " << not_solvable << ", indeterminate: " << indeterminate
             << "\n";
        text << "theorem disagreements: " << disagreements
             << ", component mismatches: " << component_mismatches;
        result.text = text.str();
        result.exit_code =
            (disagreements > 0 || component_mismatches > 0) ? kExitInternal : kExitSolvable;
    });
}

}  // namespace dirac_liouville::cli
