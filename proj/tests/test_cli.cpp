#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "dirac_liouville/dirac_liouville.hpp"

using namespace dirac_liouville;
using namespace dirac_liouville::cli;

namespace {

ProblemFlags scalar_problem(const char* potential, const char* mass, const char* energy,
                            int component = 1) {
    ProblemFlags f;
    f.coupling = "scalar";
    f.potential = potential;
    f.mass = mass;
    f.energy = energy;
    f.component = component;
    return f;
}

Json strip_ms(Json j) {
    j.erase("ms");
    return j;
}

}  // namespace

TEST_CASE("solve: closed form with reciprocal spinor", "[cli]") {
    CommandResult r = cmd_solve(scalar_problem("x^2", "1", "0"));
    CHECK(r.exit_code == kExitSolvable);
    CHECK(r.record["schema"] == kSchema);
    CHECK(r.record["verdict"] == "solvable");
    CHECK(r.record["solutions"][0]["P"] == "1");
    CHECK(r.record["solutions"][0]["W"] == "1/3*x^3 + x");
    CHECK(r.record["solutions"][0]["residual"] == "0");
    CHECK(r.record["spinor"]["psi1"] == "exp(1/3*x^3 + x)");
    CHECK(r.record["spinor"]["psi2"] == "exp(-1/3*x^3 - x)");
    CHECK(r.record["theorem"]["verdict"] == "solvable");
}

TEST_CASE("solve: not solvable with certificates", "[cli]") {
    CommandResult r = cmd_solve(scalar_problem("x^2", "0", "1"));
    CHECK(r.exit_code == kExitNotSolvable);
    CHECK(r.record["verdict"] == "not_solvable");
    const Json& candidates = r.record["certificates"]["candidates"];
    REQUIRE(candidates.size() == 2);
    bool found_forced = false;
    for (const auto& c : candidates) {
        if (c.contains("residual")) {
            found_forced = true;
            CHECK(c["residual"] == "1");  // E^2 = 1
            CHECK(c["candidate_degree"] == "0");
        }
    }
    CHECK(found_forced);
    CHECK(r.record["certificates"]["case_exclusion"]["order_at_infinity"] == -4);
}

TEST_CASE("solve: oscillator member with polynomial prefactor", "[cli]") {
    CommandResult r = cmd_solve(scalar_problem("x", "0", "2"));
    CHECK(r.exit_code == kExitSolvable);
    CHECK(r.record["solutions"][0]["P"] == "x");
    CHECK(r.record["spinor"]["residual1"] == "0");
    CHECK(r.record["spinor"]["residual2"] == "0");
}

TEST_CASE("solve: component 2", "[cli]") {
    CommandResult r = cmd_solve(scalar_problem("x^3", "1/2", "0", 2));
    CHECK(r.exit_code == kExitSolvable);
    CHECK(r.record["solutions"][0]["component"] == 2);
    // component 2 at E = 0 integrates -U
    CHECK(r.record["spinor"]["psi2"] == "exp(-1/4*x^4 - 1/2*x)");
    CHECK(r.record["spinor"]["psi1"] == "exp(1/4*x^4 + 1/2*x)");
}

TEST_CASE("solve: constant potential forms", "[cli]") {
    // nonzero constant coefficient: exponential pair, no poly-exp spinor pair
    CommandResult r = cmd_solve(scalar_problem("3", "1", "1"));
    CHECK(r.exit_code == kExitSolvable);
    CHECK(r.record["solutions"][0]["form"] == "exp_sqrt");
    CHECK(r.record["solutions"][0]["c"] == "15");
    CHECK(r.record["spinor"].contains("note"));

    // U^2 = E^2 makes the coefficient vanish: affine basis
    CommandResult ra = cmd_solve(scalar_problem("0", "1", "1"));
    CHECK(ra.exit_code == kExitSolvable);
    CHECK(ra.record["solutions"][0]["form"] == "affine_basis");

    // degenerate constant case still emits the reciprocal pair
    CommandResult rd = cmd_solve(scalar_problem("2", "1", "0"));
    CHECK(rd.exit_code == kExitSolvable);
    CHECK(rd.record["spinor"]["psi1"] == "exp(3*x)");
    CHECK(rd.record["spinor"]["psi2"] == "exp(-3*x)");
}

TEST_CASE("solve: parse failures exit with code 2", "[cli]") {
    CommandResult r = cmd_solve(scalar_problem("1/x", "0", "0"));
    CHECK(r.exit_code == kExitUsage);
    CHECK(r.record["error"]["kind"] == "parse");
    CHECK(r.record["error"]["offset"] == 2);

    CommandResult bad_coupling = cmd_solve([] {
        ProblemFlags f;
        f.coupling = "tensor";
        f.potential = "x";
        return f;
    }());
    CHECK(bad_coupling.exit_code == kExitUsage);
}

TEST_CASE("exit codes do not depend on formatting", "[cli]") {
    // the same record backs both output formats; only main() chooses what to
    // print, so the code is a function of the verdict alone
    CommandResult solvable = cmd_solve(scalar_problem("x^2", "1", "0"));
    CommandResult not_solvable = cmd_solve(scalar_problem("x^2", "0", "1"));
    CHECK(solvable.exit_code == 0);
    CHECK(not_solvable.exit_code == 10);
    CHECK_FALSE(solvable.text.empty());
    CHECK_FALSE(solvable.record.empty());
}

TEST_CASE("classify", "[cli]") {
    ProblemFlags f = scalar_problem("x^5", "0", "7");
    CommandResult r = cmd_classify(f);
    CHECK(r.exit_code == kExitNotSolvable);
    CHECK(r.record["theorem"]["verdict"] == "not_solvable");
    std::string reason = r.record["theorem"]["reason"].get<std::string>();
    CHECK(reason.find("degree > 1") != std::string::npos);

    // indeterminate regime: negative integer index over Q(i)
    ProblemFlags odd = scalar_problem("1/4*x", "0", "i");
    CommandResult ri = cmd_classify(odd);
    CHECK(ri.exit_code == kExitSolvable);
    CHECK(ri.record["theorem"]["verdict"] == "indeterminate");
}

TEST_CASE("hermite table", "[cli]") {
    HermiteFlags f;
    f.lambda = "1";
    f.mass = "0";
    f.kmax = 3;
    CommandResult r = cmd_hermite(f);
    CHECK(r.exit_code == kExitSolvable);
    REQUIRE(r.record["rows"].size() == 3);
    CHECK(r.record["rows"][0]["P"] == "1");
    CHECK(r.record["rows"][1]["P"] == "x");
    CHECK(r.record["rows"][2]["P"] == "x^2 - 1/2");
    CHECK(r.record["rows"][2]["e_squared"] == "6");

    // shifted mass translates the prefactors: P_k(x) -> P_k(x + m/lambda)
    HermiteFlags shifted = f;
    shifted.mass = "1";
    CommandResult rs = cmd_hermite(shifted);
    CHECK(rs.record["rows"][2]["P"] == "x^2 + 2*x + 1/2");

    HermiteFlags base;
    base.lambda = "2";
    base.mass = "0";
    base.kmax = 6;
    HermiteFlags moved = base;
    moved.mass = "3/2";
    CommandResult r0 = cmd_hermite(base);
    CommandResult rm = cmd_hermite(moved);
    Polynomial shift = Polynomial::variable() +
                       Polynomial(GaussianRational(Rational(3, 4)));  // x + m/lambda
    for (unsigned k = 0; k < 6; ++k) {
        Polynomial p0 = parse_polynomial(r0.record["rows"][k]["P"].get<std::string>());
        Polynomial pm = parse_polynomial(rm.record["rows"][k]["P"].get<std::string>());
        CHECK(pm == p0.compose(shift));
    }

    HermiteFlags empty = f;
    empty.kmax = 0;
    CommandResult re = cmd_hermite(empty);
    CHECK(re.exit_code == kExitSolvable);
    CHECK(re.record["rows"].empty());

    HermiteFlags bad = f;
    bad.lambda = "0";
    CHECK(cmd_hermite(bad).exit_code == kExitUsage);
}

TEST_CASE("verify command", "[cli]") {
    VerifyFlags f;
    f.psi = "exp(x + x^3/3)";
    f.problem = scalar_problem("x^2", "1", "0");
    CommandResult r = cmd_verify(f);
    CHECK(r.exit_code == kExitSolvable);
    CHECK(r.record["verdict"] == "pass");
    CHECK(r.record["residual"] == "0");

    VerifyFlags wrong = f;
    wrong.problem = scalar_problem("x^2", "1", "1");
    CommandResult rw = cmd_verify(wrong);
    CHECK(rw.exit_code == kExitNotSolvable);
    CHECK(rw.record["verdict"] == "fail");
    CHECK(rw.record["residual"] == "1");  // E^2

    VerifyFlags garbled = f;
    garbled.psi = "exp(";
    CHECK(cmd_verify(garbled).exit_code == kExitUsage);
}

TEST_CASE("eval command", "[cli]") {
    EvalFlags f;
    f.psi = "exp(-x^2/2)";
    f.at = "0";
    f.digits = 10;
    CommandResult r = cmd_eval(f);
    CHECK(r.exit_code == kExitSolvable);
    CHECK(r.record["values"][0]["re"] == "1.0000000000");
    CHECK(r.text == "1.0000000000");

    EvalFlags complex_point = f;
    complex_point.at = "i";
    CHECK(cmd_eval(complex_point).exit_code == kExitUsage);

    EvalFlags too_many = f;
    too_many.digits = 5000;
    CHECK(cmd_eval(too_many).exit_code == kExitUsage);
}

TEST_CASE("sweep examples", "[cli]") {
    SweepFlags f;
    f.degrees = "2..4";
    f.coeff_set = "-1,1";
    f.masses = "0,1";
    f.energies = "0,1";
    f.couplings = "scalar";
    CommandResult r = cmd_sweep(f);
    CHECK(r.exit_code == kExitSolvable);
    const Json& summary = r.record["summary"];
    CHECK(summary["cells"] == 3 * 2 * 2 * 2);
    CHECK(summary["theorem_disagreements"] == 0);
    CHECK(summary["component_mismatches"] == 0);
    // solvable exactly when E = 0: half of the cells
    CHECK(summary["solvable"] == 12);
    CHECK(summary["not_solvable"] == 12);

    SweepFlags linear;
    linear.degrees = "1..1";
    linear.coeff_set = "1";
    linear.masses = "0";
    linear.energies = "0,2";
    linear.couplings = "scalar";
    CommandResult rl = cmd_sweep(linear);
    CHECK(rl.exit_code == kExitSolvable);
    CHECK(rl.record["summary"]["solvable"] == 2);  // k = 0 and k = 2

    SweepFlags constant;
    constant.degrees = "0..0";
    constant.coeff_set = "-2,3";
    constant.masses = "0,1";
    constant.energies = "0,5/2";
    constant.couplings = "scalar,vector";
    CommandResult rc = cmd_sweep(constant);
    CHECK(rc.exit_code == kExitSolvable);
    CHECK(rc.record["summary"]["solvable"] == rc.record["summary"]["cells"]);

    SweepFlags empty;
    empty.coeff_set = "";
    CHECK(cmd_sweep(empty).exit_code == kExitUsage);
}

TEST_CASE("sweep is deterministic across job counts", "[cli]") {
    SweepFlags f;
    f.degrees = "2..3";
    f.coeff_set = "-1,1,2";
    f.masses = "0,1";
    f.energies = "0,1";
    f.couplings = "scalar,vector";
    f.seed = 777;
    f.jobs = 1;
    CommandResult one = cmd_sweep(f);
    f.jobs = 4;
    CommandResult four = cmd_sweep(f);
    Json a = strip_ms(one.record);
    Json b = strip_ms(four.record);
    a["input"].erase("jobs");
    b["input"].erase("jobs");
    CHECK(a == b);
}

TEST_CASE("json output round-trips byte-identically", "[cli]") {
    for (const CommandResult& r :
         {cmd_solve(scalar_problem("x^2", "1", "0")),
          cmd_solve(scalar_problem("x^2", "0", "1")),
          cmd_classify(scalar_problem("x^5", "0", "7")),
          cmd_eval(EvalFlags{"exp(-x^2/2)", "1", 12})}) {
        std::string emitted = r.record.dump();
        CHECK(Json::parse(emitted).dump() == emitted);
    }
}
