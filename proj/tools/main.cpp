#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sublime/config.hpp"
#include "sublime/pipeline.hpp"
#include "sublime/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"sublime: benchmark subsampling and fidelity toolkit"};
    app.set_version_flag("--version", std::string(sublime::kToolVersion));
    app.require_subcommand(1);

    std::string config_path;
    std::string out_override;
    std::string review_url_override;
    unsigned jobs_override = 0;
    bool with_winrate = false;
    bool mr_mode = false;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "run configuration (JSON)")->required();
        sub->add_option("--out", out_override, "output directory override");
        sub->add_option("--jobs", jobs_override, "worker threads (default from config)");
        sub->add_option("--review-url", review_url_override,
                        "review endpoint override (redundancy)");
    };

    CLI::App* profile = app.add_subcommand("profile", "per-sample quality/readability metrics");
    add_common(profile);
    CLI::App* sample = app.add_subcommand("sample", "build subset plans");
    add_common(sample);
    CLI::App* curve = app.add_subcommand("curve", "fidelity curves and adaptive report");
    add_common(curve);
    curve->add_flag("--winrate", with_winrate, "also aggregate win-rates across benchmarks");
    CLI::App* winrate = app.add_subcommand("winrate", "cross-benchmark win-rate aggregation");
    add_common(winrate);
    CLI::App* redundancy =
        app.add_subcommand("redundancy", "cross-benchmark redundancy funnel and match rate");
    add_common(redundancy);
    redundancy->add_flag("--mr", mr_mode, "SuperSubset-filtered sampling and MR-vs-M record");

    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        sublime::RunConfig cfg = sublime::RunConfig::load(config_path);
        if (!out_override.empty()) cfg.out_dir = out_override;
        if (jobs_override > 0) cfg.jobs = jobs_override;
        if (!review_url_override.empty()) cfg.redundancy.review_url = review_url_override;

        if (command == "profile")
            sublime::pipeline::run_profile(cfg);
        else if (command == "sample")
            sublime::pipeline::run_sample(cfg);
        else if (command == "curve")
            sublime::pipeline::run_curve(cfg, with_winrate);
        else if (command == "winrate")
            sublime::pipeline::run_winrate(cfg);
        else if (command == "redundancy")
            sublime::pipeline::run_redundancy(cfg, mr_mode);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "sublime " << command << ": " << e.what() << '\n';
        return sublime::pipeline::exit_code_for(e, command);
    }
}
