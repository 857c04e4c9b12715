#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "ingham/cli.hpp"

int main(int argc, char** argv) {
    using namespace ingham::cli;

    CLI::App app{"Discrete Ingham/Haraux inequalities: frame constants and observability reports"};
    app.set_version_flag("--version", version());
    app.require_subcommand(1, 1);

    RunConfig config;
    std::string format = "json";
    const std::map<std::string, std::string> help{
        {"gaps", "validate and classify an exponent sequence"},
        {"kernel", "certify window-kernel constants"},
        {"poisson", "both sides of the Poisson summation identity"},
        {"frame", "frame constants of the sampled Gram pencil"},
        {"haraux", "extended frame constants with one added exponent"},
        {"string", "observability of coupled strings"},
        {"beam", "observability of coupled beams"},
        {"scan", "parameter sweeps and continuum-limit tables"},
    };
    for (const auto& [name, description] : help) {
        auto* sub = app.add_subcommand(name, description);
        sub->add_option("-i,--input", config.input_path, "JSON config file, - for stdin")->envname("INGHAM_INPUT");
        sub->add_option("-o,--output", config.output_path, "report file, - for stdout")->envname("INGHAM_OUTPUT");
        sub->add_option("--tol", config.tol, "acceptance tolerance")->envname("INGHAM_TOL")->check(CLI::PositiveNumber);
        sub->add_option("--seed", config.seed, "seed of the random generator")->envname("INGHAM_SEED");
        sub->add_option("--format", format, "report format")
            ->envname("INGHAM_FORMAT")
            ->check(CLI::IsMember({"json", "csv"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_structural;
    }
    config.command = *parse_command(app.get_subcommands().front()->get_name());
    config.format = *parse_format(format);
    return run(config);
}
