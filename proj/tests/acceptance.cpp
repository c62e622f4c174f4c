// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "dirac_liouville/cli.hpp"
#include "dirac_liouville/dirac.hpp"
#include "dirac_liouville/eval.hpp"
#include "dirac_liouville/kovacic.hpp"
#include "dirac_liouville/parse.hpp"
#include "dirac_liouville/verify.hpp"
#include "testutil.hpp"

using namespace dirac_liouville;

namespace {

int failures = 0;

void report(int criterion, const std::string& description, bool pass,
            const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion,
                description.c_str(), detail.c_str());
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct SweepRecord {
    cli::Json record;
    double seconds = 0;
    bool ok = false;
};

SweepRecord run_theorem_sweep() {
    cli::SweepFlags flags;
    flags.degrees = "2..5";
    flags.coeff_set = "-2,-1,1,2";
    flags.masses = "0,1,3/2";
    flags.energies = "0,1,5/2";
    flags.couplings = "scalar,vector";
    flags.jobs = 4;
    flags.seed = 20240601;
    auto start = std::chrono::steady_clock::now();
    cli::CommandResult result = cli::cmd_sweep(flags);
    SweepRecord out;
    out.seconds = seconds_since(start);
    out.record = result.record;
    out.ok = result.exit_code == 0;
    return out;
}

void criterion_1_and_6(const SweepRecord& sweep) {
    bool pass = sweep.ok;
    std::string detail;
    long cells = 0, disagreements = -1, mismatches = -1;
    if (pass) {
        const cli::Json& summary = sweep.record["summary"];
        cells = summary["cells"].get<long>();
        disagreements = summary["theorem_disagreements"].get<long>();
        mismatches = summary["component_mismatches"].get<long>();
        pass = cells == 4 * 4 * 3 * 3 * 2 && disagreements == 0 &&
               summary["indeterminate"].get<long>() == 0;
        // every cell must match the expected closed-form condition exactly
        for (const auto& cell : sweep.record["cells"]) {
            bool scalar = cell["coupling"] == "scalar";
            bool expected = scalar ? cell["energy"] == "0" : cell["mass"] == "0";
            bool solved = cell["component1"] == "solvable";
            if (solved != expected || cell["theorem"] == "indeterminate") pass = false;
        }
        pass = pass && sweep.seconds < 60.0;
    }
    detail = "cells " + std::to_string(cells) + ", disagreements " +
             std::to_string(disagreements) + ", " + std::to_string(sweep.seconds) + " s";
    report(1, "theorem sweep over degrees 2..5, both couplings", pass, detail);

    bool pass6 = sweep.ok && mismatches == 0;
    report(6, "component-1 and component-2 verdicts agree on every sweep cell", pass6,
           "mismatches " + std::to_string(mismatches));
}

void criterion_2() {
    auto start = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail;
    Polynomial v = Polynomial::variable();  // lambda = 1
    for (long k = 1; k <= 20 && pass; ++k) {
        Polynomial r = scalar_reduction(v, GaussianRational(), GaussianRational(2 * k));
        Verdict verdict = solve(r);
        const Solvable* s = std::get_if<Solvable>(&verdict);
        if (!s) {
            pass = false;
            detail = "k = " + std::to_string(k) + " not solvable";
            break;
        }
        const PolyExp* sol = nullptr;
        for (const auto& form : s->solutions)
            if ((sol = std::get_if<PolyExp>(&form))) break;
        Polynomial oracle = testutil::monic_hermite(static_cast<unsigned>(k - 1));
        if (!sol || !sol->prefactor.is_monic() ||
            sol->prefactor.degree() != std::size_t(k - 1) ||
            !(sol->prefactor == oracle) ||
            !residual(r, *sol).is_zero()) {
            pass = false;
            detail = "k = " + std::to_string(k) + " mismatch against the recurrence oracle";
        }
    }
    double secs = seconds_since(start);
    pass = pass && secs < 5.0;
    if (detail.empty()) detail = "k = 1..20 equal the monic Hermite oracle, " +
                                 std::to_string(secs) + " s";
    report(2, "Dirac oscillator family (lambda = 1, m = 0)", pass, detail);
}

void criterion_3() {
    auto start = std::chrono::steady_clock::now();
    bool pass = true;
    std::string detail = "q in {1/2, 3/2, 7/3} all rejected with non-integer degrees";
    Polynomial v = Polynomial::variable();
    for (const Rational& q : {Rational(1, 2), Rational(3, 2), Rational(7, 3)}) {
        GaussianRational e2(Rational(2) * q);  // E^2 = 2 lambda q with lambda = 1
        Verdict verdict = solve(scalar_reduction(v, GaussianRational(), e2));
        const NotSolvable* ns = std::get_if<NotSolvable>(&verdict);
        if (!ns || ns->failures.size() != 2) {
            pass = false;
            detail = "q = " + q.to_string() + ": expected two candidate failures";
            break;
        }
        for (const auto& f : ns->failures) {
            if (f.reject != CandidateReject::NotNonnegativeInteger ||
                as_nonneg_int(f.degree_value)) {
                pass = false;
                detail = "q = " + q.to_string() + ": unexpected certificate";
            }
        }
    }
    double secs = seconds_since(start);
    pass = pass && secs < 5.0;
    report(3, "quantization sharpness at fractional indices", pass, detail);
}

void criterion_4() {
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 gen(0xACC4);
    bool pass = true;
    std::string detail;
    for (int n = 0; n < 200 && pass; ++n) {
        std::size_t deg = n % 8 + 1;
        Polynomial v = testutil::random_polynomial(gen, deg);
        bool scalar = n % 2 == 0;
        DiracProblem problem;
        if (scalar) {
            problem = DiracProblem{v, testutil::random_gaussian(gen), GaussianRational(),
                                   Coupling::Scalar, 1};
        } else {
            problem = DiracProblem{v, GaussianRational(), testutil::random_gaussian(gen),
                                   Coupling::Vector, 1};
        }
        ReducedODE ode = reduce(problem);
        Polynomial expected_omega = scalar
                                        ? problem.potential + Polynomial(problem.mass)
                                        : GaussianRational::i() *
                                              (problem.potential + Polynomial(problem.energy));
        Verdict verdict = solve(ode.coefficient);
        const Solvable* s = std::get_if<Solvable>(&verdict);
        const PolyExp* emitted = nullptr;
        if (s)
            for (const auto& form : s->solutions)
                if ((emitted = std::get_if<PolyExp>(&form))) break;
        if (!emitted || !(emitted->prefactor == Polynomial(1)) ||
            !(emitted->omega == expected_omega)) {
            pass = false;
            detail = "emitted solution is not the expected closed form (case " +
                     std::to_string(n) + ")";
            break;
        }
        SolutionForm psi2 = complete_spinor(problem, *emitted);
        if (!verify_spinor(problem, *emitted, psi2).pass()) {
            pass = false;
            detail = "spinor pair failed the first-order check (case " + std::to_string(n) + ")";
        }
    }
    double secs = seconds_since(start);
    pass = pass && secs < 30.0;
    if (detail.empty())
        detail = "200 random potentials, exact matches, " + std::to_string(secs) + " s";
    report(4, "closed-form special solutions at E = 0 (scalar) and m = 0 (vector)", pass,
           detail);
}

void criterion_5() {
    std::mt19937_64 gen(0xACC5);
    bool pass = true;
    std::string detail = "200 random instances, exact polynomial identity";
    for (int n = 0; n < 200 && pass; ++n) {
        Polynomial v = testutil::random_polynomial_up_to(gen, 8);
        GaussianRational m = testutil::random_gaussian(gen);
        GaussianRational e = testutil::random_gaussian(gen);
        int component = n % 2 + 1;
        DiracProblem vec{v, m, e, Coupling::Vector, component};
        DiracProblem mapped = vector_to_scalar_map(vec);
        DiracProblem substituted{mapped.potential, mapped.mass, mapped.energy, Coupling::Vector,
                                 component};
        DiracProblem scalar{v, m, e, Coupling::Scalar, component};
        if (!(reduce(substituted).coefficient == reduce(scalar).coefficient)) {
            pass = false;
            detail = "identity failed at case " + std::to_string(n);
        }
    }
    report(5, "correspondence identity between the couplings", pass, detail);
}

void criterion_7() {
    bool pass = true;
    std::string detail = "odd-degree exclusions and constant coefficients";
    for (const char* text : {"x", "x^3 + 1"}) {
        Verdict verdict = solve(parse_polynomial(text));
        const NotSolvable* ns = std::get_if<NotSolvable>(&verdict);
        if (!ns || !ns->exclusion || ns->exclusion->case1_possible ||
            ns->exclusion->order_at_infinity >= 0 ||
            ns->exclusion->order_at_infinity % 2 == 0) {
            pass = false;
            detail = std::string("missing odd-order exclusion for r = ") + text;
        }
    }
    std::mt19937_64 gen(0xACC7);
    for (int n = 0; n < 25 && pass; ++n) {
        GaussianRational c = n == 0 ? GaussianRational(2)  // not a square in Q(i)
                                    : testutil::random_nonzero_gaussian(gen);
        Verdict verdict = solve(Polynomial(c));
        const Solvable* s = std::get_if<Solvable>(&verdict);
        if (!s || s->solutions.size() != 2 ||
            !std::holds_alternative<ExpSqrtConst>(s->solutions[0])) {
            pass = false;
            detail = "constant coefficient " + c.to_string() + " not reported solvable";
        }
    }
    report(7, "case exclusion and constant-coefficient solvability", pass, detail);
}

void criterion_8() {
    std::mt19937_64 gen(0xACC8);
    bool pass = true;
    std::string detail;
    // round-trip property
    for (int n = 0; n < 1000 && pass; ++n) {
        Polynomial p = testutil::random_polynomial_up_to(gen, 12);
        try {
            if (!(parse_polynomial(p.to_string()) == p)) {
                pass = false;
                detail = "round trip failed for " + p.to_string();
            }
        } catch (const ParseError& e) {
            pass = false;
            detail = "canonical text rejected: " + p.to_string() + " — " + e.what();
        }
    }
    // fuzz corpus: half grammar-biased, half raw bytes
    const std::string biased = "0123456789ix+-*/^() .e";
    std::uniform_int_distribution<std::size_t> len(0, 64);
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<std::size_t> pick(0, biased.size() - 1);
    int parsed = 0;
    for (int n = 0; n < 10000 && pass; ++n) {
        std::string input;
        std::size_t m = len(gen);
        for (std::size_t k = 0; k < m; ++k)
            input += n % 2 == 0 ? biased[pick(gen)] : static_cast<char>(byte(gen));
        try {
            Polynomial p = parse_polynomial(input);
            ++parsed;
            if (!(parse_polynomial(p.to_string()) == p)) {
                pass = false;
                detail = "silent wrong parse for input: " + input;
            }
        } catch (const ParseError& e) {
            if (e.position().offset > input.size()) {
                pass = false;
                detail = "error position out of range for input of length " +
                         std::to_string(input.size());
            }
        } catch (...) {
            pass = false;
            detail = "non-parse exception escaped on fuzzed input";
        }
    }
    if (detail.empty())
        detail = "1000 round trips, 10000 fuzz inputs (" + std::to_string(parsed) +
                 " parsed and re-checked)";
    report(8, "parser round-trip and fuzz robustness", pass, detail);
}

}  // namespace

int main() {
    SweepRecord sweep = run_theorem_sweep();
    criterion_1_and_6(sweep);
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_7();
    criterion_8();
    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", failures);
    return 1;
}
