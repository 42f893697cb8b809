#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mpbandit/error.hpp"
#include "mpbandit/experiment/config.hpp"
#include "mpbandit/experiment/runner.hpp"

namespace {

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> replicas;
    std::optional<std::size_t> workers;
    std::optional<std::string> out;
};

void add_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "JSON experiment config")->check(CLI::ExistingFile);
    sub->add_option("--seed", f.seed, "RNG seed (overrides BANDIT_SEED and the config)");
    sub->add_option("--replicas", f.replicas, "number of independent replicas")->check(CLI::PositiveNumber);
    sub->add_option("--out", f.out, "output directory");
    sub->add_option("--workers", f.workers, "replicas run concurrently")->check(CLI::PositiveNumber);
}

int run(const std::string& subcommand, const Flags& f) {
    using namespace mpbandit::experiment;
    const json user = f.config.empty() ? json::object() : load_json_file(f.config);
    Overrides o;
    o.seed = f.seed;
    o.replicas = f.replicas;
    o.workers = f.workers;
    o.output_dir = f.out;
    const json cfg = resolve_config(user, kind_for_subcommand(subcommand), o);
    const RunResult res = run_experiment(cfg);
    std::cout << res.summary.dump(2) << '\n';
    std::cerr << "wrote " << res.files.size() << " files to " << cfg.at("output_dir").get<std::string>() << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variable-play multi-armed bandit experiments"};
    app.require_subcommand(1);

    Flags flags;
    for (const char* name : {"bounds", "simulate-single", "simulate-game", "compare", "ingest", "sweep"}) {
        add_flags(app.add_subcommand(name, std::string("run a ") + name + " experiment"), flags);
    }
    CLI11_PARSE(app, argc, argv);

    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        return run(sub, flags);
    } catch (const mpbandit::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
