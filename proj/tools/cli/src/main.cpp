#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ccsim_cli/commands.hpp"

namespace {

using namespace ccsim;
using namespace ccsim::cli;

void add_common(CLI::App* sub, CommonOptions& o, double& tol)
{
    sub->add_option("--tol", tol, "resonance tolerance for the effective-Hamiltonian derivation");
    sub->add_option("--jobs", o.jobs, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    sub->add_option("--output", o.output, "write the CSV (or hspec) here instead of stdout");
    sub->add_option("--golden", o.golden, "compare the CSV with this file");
    sub->add_flag("--bless", o.bless, "rewrite the --golden file from this run");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"ccsim: charge-conjugation gates in trapped-ion and cavity models"};
    app.require_subcommand(1);

    CommonOptions options;
    double tol = -1.0;
    std::string config;
    std::string hspec_path;
    std::string param;
    std::string grid;
    std::vector<std::string> project;
    bool allow_unpaired = false;

    auto* run = app.add_subcommand("run", "run the configured checks and write a CSV report");
    run->add_option("config", config, "scenario .ini")->required();
    add_common(run, options, tol);

    auto* verify = app.add_subcommand("verify", "algebraic and pulse checks, printed as a table");
    verify->add_option("config", config, "scenario .ini")->required();
    add_common(verify, options, tol);

    auto* derive = app.add_subcommand("derive", "derive the effective Hamiltonian of an .hspec file");
    derive->add_option("hspec", hspec_path, "Hamiltonian spec")->required();
    derive->add_option("--project", project, "qubit=g|e, project that qubit (repeatable)");
    derive->add_flag("--allow-unpaired", allow_unpaired, "accept terms without a conjugate partner");
    add_common(derive, options, tol);

    auto* scan = app.add_subcommand("scan", "sweep a parameter and compare full vs effective dynamics");
    scan->add_option("config", config, "scenario .ini")->required();
    scan->add_option("--param", param, "ratio, delta or a [model]/[james]/[evolve] key")->required();
    scan->add_option("--grid", grid, "comma-separated values")->required();
    add_common(scan, options, tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    if (run->count("--tol") + verify->count("--tol") + derive->count("--tol") + scan->count("--tol") > 0)
        options.tol = tol;

    if (*run)
        return cmd_run(config, options, std::cout, std::cerr);
    if (*verify)
        return cmd_verify(config, options, std::cout, std::cerr);
    if (*scan)
        return cmd_scan(config, param, grid, options, std::cout, std::cerr);

    DeriveOptions d;
    d.allow_unpaired = allow_unpaired;
    for (const auto& p : project) {
        const auto eq = p.find('=');
        const std::string state = eq == std::string::npos ? "" : p.substr(eq + 1);
        if (eq == std::string::npos || (state != "g" && state != "e")) {
            std::cerr << "config error: --project expects qubit=g or qubit=e, got '" << p << "'\n";
            return kConfigError;
        }
        d.project.emplace_back(p.substr(0, eq), state == "g" ? QubitState::Ground : QubitState::Excited);
    }
    return cmd_derive(hspec_path, options, d, std::cout, std::cerr);
}
