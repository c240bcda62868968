#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "sharpfr/cli.hpp"

int main(int argc, char** argv) {
    using namespace sharpfr::cli;
    CLI::App app{"Numerical certificates for sharp extension and Strichartz constants"};
    app.require_subcommand(1, 1);

    RunConfig config;
    std::string format = "json";
    int d_min = 0, d_max = 0, d = 0, m_max = 0, k_max = 0, ell_max = 0;
    double r_max = 0.0;

    const std::map<Command, std::string> help{
        {Command::SphereTables, "c0 and (p-1)c_k / (p-1)b_k tables for the sphere"},
        {Command::SphereVerify, "coefficient gap certificates for the sphere"},
        {Command::SchrodVerify, "c_m < 1 certificates for the paraboloid"},
        {Command::WaveAudit, "cone constants and per-mode coercivity audit"},
        {Command::PenroseCheck, "conformal compactification checks"},
        {Command::DeficitDemo, "lens model and finite-difference variation checks"},
        {Command::All, "every command with its defaults"},
    };
    for (const auto& [c, text] : help) {
        auto* sub = app.add_subcommand(std::string(to_string(c)), text);
        sub->callback([&config, c] { config.command = c; });
        sub->add_option("--d-min", d_min, "smallest dimension");
        sub->add_option("--d-max", d_max, "largest dimension");
        sub->add_option("--d", d, "single dimension");
        sub->add_option("--tol", config.tol, "quadrature tolerance")->capture_default_str();
        sub->add_option("--r-max", r_max, "truncation radius (sphere) or grid extent (penrose)");
        sub->add_option("--m-max", m_max, "largest Laguerre mode");
        sub->add_option("--k-max", k_max, "largest k checked by quadrature");
        sub->add_option("--ell-max", ell_max, "largest spherical harmonic degree");
        sub->add_option("--format", format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_option("--output", config.output, "output directory (default $SHARPFR_OUTPUT_DIR or .)");
        sub->add_option("--jobs", config.jobs, "worker threads")->capture_default_str();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    auto* sub = app.get_subcommands().front();
    auto given = [sub](const char* name) { return sub->count(name) > 0; };
    if (given("--d-min")) config.d_min = d_min;
    if (given("--d-max")) config.d_max = d_max;
    if (given("--d")) config.d = d;
    if (given("--r-max")) config.r_max = r_max;
    if (given("--m-max")) config.m_max = m_max;
    if (given("--k-max")) config.k_max = k_max;
    if (given("--ell-max")) config.ell_max = ell_max;
    config.format = format == "csv" ? Format::Csv : Format::Json;

    return run(config, std::cout, std::cerr);
}
