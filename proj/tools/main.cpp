#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "dirac_liouville/cli.hpp"

namespace dlc = dirac_liouville::cli;

namespace {

int emit(const dlc::CommandResult& result, const std::string& format) {
    if (format == "json")
        std::cout << result.record.dump() << "\n";
    else
        std::cout << result.text << "\n";
    if (result.record.contains("error"))
        std::cerr << "dirac-liouville: " << result.record["error"]["message"].get<std::string>()
                  << "\n";
    return result.exit_code;
}

void add_format_flag(CLI::App* cmd, std::string& format) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
}

void add_problem_flags(CLI::App* cmd, dlc::ProblemFlags& flags, bool with_component) {
    cmd->add_option("--coupling", flags.coupling, "coupling type: scalar or vector")
        ->capture_default_str();
    cmd->add_option("--potential", flags.potential, "polynomial potential V(x), e.g. \"x^2 - 1/2\"")
        ->required();
    cmd->add_option("--mass", flags.mass, "mass m, exact scalar over Q(i)")->capture_default_str();
    cmd->add_option("--energy", flags.energy, "energy E, exact scalar over Q(i)")
        ->capture_default_str();
    if (with_component)
        cmd->add_option("--component", flags.component, "spinor component, 1 or 2")
            ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact Liouvillian-solvability decisions for the one-dimensional Dirac equation "
        "with polynomial potentials"};
    app.require_subcommand(1);
    int exit_code = 0;

    auto* solve_cmd = app.add_subcommand("solve", "reduce, decide solvability, emit solutions");
    dlc::ProblemFlags solve_flags;
    std::string solve_format = "text";
    add_problem_flags(solve_cmd, solve_flags, true);
    add_format_flag(solve_cmd, solve_format);
    solve_cmd->callback(
        [&] { exit_code = emit(dlc::cmd_solve(solve_flags), solve_format); });

    auto* classify_cmd =
        app.add_subcommand("classify", "classification without running the algorithm");
    dlc::ProblemFlags classify_flags;
    std::string classify_format = "text";
    add_problem_flags(classify_cmd, classify_flags, false);
    add_format_flag(classify_cmd, classify_format);
    classify_cmd->callback(
        [&] { exit_code = emit(dlc::cmd_classify(classify_flags), classify_format); });

    auto* sweep_cmd =
        app.add_subcommand("sweep", "grid sweep cross-checking solver and classification");
    dlc::SweepFlags sweep_flags;
    std::string sweep_format = "text";
    sweep_cmd->add_option("--degrees", sweep_flags.degrees, "degree range a..b")
        ->capture_default_str();
    sweep_cmd->add_option("--coeff-set", sweep_flags.coeff_set, "comma list of coefficients")
        ->capture_default_str();
    sweep_cmd->add_option("--masses", sweep_flags.masses, "comma list of masses")
        ->capture_default_str();
    sweep_cmd->add_option("--energies", sweep_flags.energies, "comma list of energies")
        ->capture_default_str();
    sweep_cmd->add_option("--couplings", sweep_flags.couplings, "comma list of couplings")
        ->capture_default_str();
    sweep_cmd->add_option("--jobs", sweep_flags.jobs, "worker threads")->capture_default_str();
    sweep_cmd->add_option("--seed", sweep_flags.seed, "seed for the random lower-order term")
        ->capture_default_str();
    add_format_flag(sweep_cmd, sweep_format);
    sweep_cmd->callback(
        [&] { exit_code = emit(dlc::cmd_sweep(sweep_flags), sweep_format); });

    auto* hermite_cmd = app.add_subcommand(
        "hermite", "oscillator family: linear potential at quantized energies");
    dlc::HermiteFlags hermite_flags;
    std::string hermite_format = "text";
    hermite_cmd->add_option("--lambda", hermite_flags.lambda, "slope of the linear potential")
        ->capture_default_str();
    hermite_cmd->add_option("--mass", hermite_flags.mass, "mass m")->capture_default_str();
    hermite_cmd->add_option("--kmax", hermite_flags.kmax, "rows: k = 1..kmax")
        ->capture_default_str();
    add_format_flag(hermite_cmd, hermite_format);
    hermite_cmd->callback(
        [&] { exit_code = emit(dlc::cmd_hermite(hermite_flags), hermite_format); });

    auto* verify_cmd =
        app.add_subcommand("verify", "check a solution expression against a problem");
    dlc::VerifyFlags verify_flags;
    std::string verify_format = "text";
    verify_cmd
        ->add_option("--psi", verify_flags.psi, "solution expression \"P * exp(W)\"")
        ->required();
    add_problem_flags(verify_cmd, verify_flags.problem, true);
    add_format_flag(verify_cmd, verify_format);
    verify_cmd->callback(
        [&] { exit_code = emit(dlc::cmd_verify(verify_flags), verify_format); });

    auto* eval_cmd = app.add_subcommand("eval", "evaluate a solution expression numerically");
    dlc::EvalFlags eval_flags;
    std::string eval_format = "text";
    eval_cmd->add_option("--psi", eval_flags.psi, "solution expression \"P * exp(W)\"")
        ->required();
    eval_cmd->add_option("--at", eval_flags.at, "evaluation point, a rational")
        ->capture_default_str();
    eval_cmd->add_option("--digits", eval_flags.digits, "fractional decimal digits")
        ->capture_default_str();
    add_format_flag(eval_cmd, eval_format);
    eval_cmd->callback([&] { exit_code = emit(dlc::cmd_eval(eval_flags), eval_format); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : dlc::kExitUsage;
    }
    return exit_code;
}
