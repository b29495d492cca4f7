#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kkwave/propagators.hpp"
#include "kkwave/scenarios.hpp"

namespace {

std::vector<double> parse_factors(const std::string& csv, const char* what) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        const auto comma = csv.find(',', pos);
        const std::string cell =
            csv.substr(pos, comma == std::string::npos ? csv.npos : comma - pos);
        try {
            out.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw kkwave::ConfigError(std::string("bad ") + what + " list: " + csv);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D wave-packet scattering toolkit"};
    app.require_subcommand(1);

    std::string scenario_name, out_dir;
    std::vector<std::string> overrides;
    auto* scen = app.add_subcommand("scenario", "run a named preset");
    scen->add_option("name", scenario_name, "fig1|fig3|fig4|averaging|appendixB")
        ->required();
    scen->add_option("--out", out_dir, "output directory");
    scen->add_option("--set", overrides, "key=value overrides");

    std::string config_path;
    auto* run = app.add_subcommand("run", "execute a config file");
    run->add_option("config", config_path, "config file (key = value lines)")
        ->required();
    run->add_option("--out", out_dir, "output directory override");
    run->add_option("--set", overrides, "key=value overrides");

    std::string dt_factors = "1,2,4", n_factors;
    auto* sweep = app.add_subcommand("sweep", "dt / n refinement study");
    sweep->add_option("config", config_path, "base config file")->required();
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_option("--set", overrides, "key=value overrides");
    sweep->add_option("--dt-factors", dt_factors, "comma list of dt multipliers");
    sweep->add_option("--n-factors", n_factors, "comma list of grid divisors");

    CLI11_PARSE(app, argc, argv);

    try {
        if (scen->parsed()) {
            kkwave::run_scenario(scenario_name, overrides, out_dir);
        } else {
            kkwave::RunConfig config = kkwave::parse_config_file(config_path);
            kkwave::apply_overrides(config, overrides);
            if (!out_dir.empty()) config.out_dir = out_dir;
            if (run->parsed()) {
                kkwave::run_config(config);
            } else {
                kkwave::convergence_sweep(
                    config, parse_factors(dt_factors, "dt-factor"),
                    n_factors.empty() ? std::vector<double>{}
                                      : parse_factors(n_factors, "n-factor"),
                    out_dir.empty() ? config.out_dir : out_dir);
            }
        }
    } catch (const kkwave::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const kkwave::ConvergenceError& e) {
        std::fprintf(stderr, "convergence failure: %s (try dt = %g)\n", e.what(),
                     e.suggested_dt);
        return 3;
    } catch (const kkwave::DomainGuardError& e) {
        std::fprintf(stderr, "domain guard: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
