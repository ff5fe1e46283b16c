#include "isores/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

bool write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
    return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized resolvents of finite-dimensional isometric operators"};
    std::string scenario_path;
    std::string command;
    std::vector<double> arc;
    std::vector<double> zeta;
    std::size_t samples = 9;
    std::size_t grid = 0;
    std::uint64_t seed = 0;
    std::string out_path;

    app.add_option("scenario", scenario_path, "Scenario JSON file")->required();
    app.add_option("command", command, "defect | resolvent | gap-scan | verify")
        ->required()
        ->check(CLI::IsMember({"defect", "resolvent", "gap-scan", "verify"}));
    app.add_option("--arc", arc, "Open arc t1 t2 (radians)")->expected(2);
    app.add_option("--samples", samples, "Arc samples")->check(CLI::PositiveNumber);
    app.add_option("--zeta", zeta, "Evaluation point re im")->expected(2);
    app.add_option("--grid", grid, "Angles per ring for the resolvent grid")->check(CLI::PositiveNumber);
    app.add_option("--seed", seed, "Seed for randomized checks");
    app.add_option("--out", out_path, "Write the JSON report here (CSV goes to <out>.csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return isores::kExitInput;
    }

    isores::CommandOptions opts;
    opts.samples = samples;
    opts.seed = seed;
    if (!arc.empty()) opts.arc = isores::Arc{arc[0], arc[1]};
    if (!zeta.empty()) opts.zeta = isores::Complex{zeta[0], zeta[1]};
    if (grid > 0) opts.grid = grid;

    isores::CommandOutput result;
    try {
        const isores::Scenario scenario = isores::load_scenario(scenario_path);
        result = isores::run_command(scenario, command, opts);
    } catch (const isores::InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return isores::kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return isores::kExitInput;
    }

    const std::string json = result.report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << json;
        if (!result.csv.empty()) std::cout << '\n' << result.csv;
    } else {
        if (!write_file(out_path, json) || (!result.csv.empty() && !write_file(out_path + ".csv", result.csv))) {
            std::cerr << "error: cannot write " << out_path << '\n';
            return isores::kExitInput;
        }
    }
    return result.exit_code;
}
