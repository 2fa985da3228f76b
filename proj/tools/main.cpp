// Experiment runner for cascade-based black-box optimization.
//
//   shac run --config <file> [--seed-override S ...]
//   shac compare <dir> [<dir> ...]
//   shac analyze <dir> --medians | --hamming [--shortlist K]

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shac/experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"SHAC: parallel black-box optimization via classifier cascades"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::uint64_t> seed_override;
    auto* run = app.add_subcommand("run", "execute a run configuration across its seeds");
    run->add_option("--config", config_path, "run configuration file")->required();
    run->add_option("--seed-override", seed_override, "replace the config's seed list");

    std::vector<std::string> compare_dirs;
    auto* compare = app.add_subcommand("compare", "tabulate aggregates from run directories");
    compare->add_option("dirs", compare_dirs, "run output directories")->required();

    std::string analyze_dir;
    bool want_medians = false;
    bool want_hamming = false;
    std::size_t shortlist_size = 50;
    auto* analyze = app.add_subcommand("analyze", "derive CSV reports from a run directory");
    analyze->add_option("dir", analyze_dir, "run output directory")->required();
    analyze->add_flag("--medians", want_medians, "write per-batch median CSVs");
    analyze->add_flag("--hamming", want_hamming, "write pairwise hamming histogram CSVs");
    analyze->add_option("--shortlist", shortlist_size, "shortlist size for --hamming")
        ->default_val(50);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            shac::RunConfig config = shac::load_run_config(config_path);
            if (!seed_override.empty()) {
                config.seeds = seed_override;
            }
            shac::run_experiment(config);
            std::cout << shac::compare_table({config.output_dir});
        } else if (compare->parsed()) {
            std::vector<std::filesystem::path> dirs(compare_dirs.begin(), compare_dirs.end());
            std::cout << shac::compare_table(dirs);
        } else if (analyze->parsed()) {
            if (!want_medians && !want_hamming) {
                std::cerr << "analyze: pass --medians and/or --hamming\n";
                return 1;
            }
            if (want_medians) {
                shac::analyze_medians(analyze_dir);
            }
            if (want_hamming) {
                shac::analyze_hamming(analyze_dir, shortlist_size);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
