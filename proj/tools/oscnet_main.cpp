#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "oscnet/scenario/scenario.hpp"

namespace {

using oscnet::scenario::json;

std::string default_out_dir() {
    if (const char* env = std::getenv("OSCNET_OUT")) return env;
    return "out";
}

int cmd_run(const std::string& target, std::optional<std::uint64_t> seed,
            const std::string& out_dir) {
    json config;
    const bool is_file =
        target.find('/') != std::string::npos ||
        (target.size() > 5 && target.substr(target.size() - 5) == ".json");
    if (is_file) config = oscnet::scenario::load_config_file(target);
    else config = oscnet::scenario::builtin_config(target);
    if (seed) config["seed"] = *seed;

    auto result = oscnet::scenario::run_scenario(config);
    oscnet::scenario::write_artifacts(result, out_dir);
    std::printf("%s\n", result.summary.dump(2).c_str());
    std::printf("artifacts: %s/%s/\n", out_dir.c_str(), result.name.c_str());
    if (result.summary.contains("runs"))
        for (auto& [scheme, run] : result.summary["runs"].items())
            if (run.contains("diverged") && run["diverged"].get<bool>()) return 2;
    return 0;
}

int cmd_list() {
    for (const auto& [name, description] : oscnet::scenario::list_scenarios())
        std::printf("%-26s %s\n", name.c_str(), description.c_str());
    return 0;
}

int cmd_sweep(const std::string& name, std::optional<double> from, std::optional<double> to,
              std::optional<double> resolution, std::optional<std::uint64_t> seed,
              const std::string& out_dir) {
    json config = oscnet::scenario::builtin_config(name);
    if (!config.contains("from"))
        throw std::invalid_argument(name + " is not a sweep scenario");
    if (from) config["from"] = *from;
    if (to) config["to"] = *to;
    if (resolution) config["resolution"] = *resolution;
    if (seed) config["seed"] = *seed;
    auto result = oscnet::scenario::run_scenario(config);
    oscnet::scenario::write_artifacts(result, out_dir);
    std::printf("%s\n", result.summary.dump(2).c_str());
    std::printf("artifacts: %s/%s/\n", out_dir.c_str(), result.name.c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Networked-oscillator control simulation suite"};
    app.require_subcommand(1);

    std::string target, out_dir = default_out_dir();
    std::optional<std::uint64_t> seed;
    std::optional<double> from, to, resolution;

    auto* run = app.add_subcommand("run", "run a built-in scenario or a config/manifest file");
    run->add_option("name", target, "scenario name or config path")->required();
    run->add_option("--seed", seed, "override the run seed");
    run->add_option("--out", out_dir, "output directory (default: $OSCNET_OUT or ./out)");

    auto* list = app.add_subcommand("list", "list built-in scenarios");

    auto* sweep = app.add_subcommand("sweep", "run a sweep scenario with range overrides");
    sweep->add_option("name", target, "sweep scenario name")->required();
    sweep->add_option("--from", from, "range start");
    sweep->add_option("--to", to, "range end");
    sweep->add_option("--resolution", resolution, "parameter step");
    sweep->add_option("--seed", seed, "override the run seed");
    sweep->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(target, seed, out_dir);
        if (list->parsed()) return cmd_list();
        if (sweep->parsed()) return cmd_sweep(target, from, to, resolution, seed, out_dir);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
