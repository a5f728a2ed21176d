// phontrim: trim aligned cognate sets, infer correspondence patterns and
// measure dataset regularity.
//
// Exit codes: 0 success, 2 input/parse error, 3 configuration error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phontrim/phontrim.hpp"

namespace {

constexpr int exit_input_error = 2;
constexpr int exit_config_error = 3;

struct TrimFlags {
    std::string strategy = "none";
    double gap_threshold = 0.5;
    std::string skeleton = "CV";
};

struct RegularityFlags {
    std::size_t pattern_threshold = 3;
    double cognate_threshold = 0.75;
};

void add_trim_flags(CLI::App* cmd, TrimFlags& flags, bool with_strategy = true) {
    if (with_strategy) {
        cmd->add_option("--strategy", flags.strategy, "Trimming strategy")
            ->check(CLI::IsMember({"none", "core", "gap"}))
            ->capture_default_str();
    }
    cmd->add_option("--gap-threshold", flags.gap_threshold, "Minimum gap proportion of a trimming candidate")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--skeleton", flags.skeleton, "Sites to preserve, as a string over {C,V}")
        ->capture_default_str();
}

void add_regularity_flags(CLI::App* cmd, RegularityFlags& flags) {
    cmd->add_option("--pattern-threshold", flags.pattern_threshold, "Minimum sites of a regular pattern")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--cognate-threshold", flags.cognate_threshold,
                    "Minimum share of regular sites in a regular cognate set")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
}

phontrim::Wordlist load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw phontrim::Error(phontrim::ErrorKind::Io, "cannot open " + path);
    return phontrim::parse_wordlist(in, {}, path);
}

// Writes to `path`, or stdout for "-".
template <typename Fn>
void emit(const std::string& path, Fn&& fn) {
    if (path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw phontrim::Error(phontrim::ErrorKind::Io, "cannot write " + path);
    fn(out);
    if (!out) throw phontrim::Error(phontrim::ErrorKind::Io, "failed writing " + path);
}

phontrim::ExperimentConfig make_config(const TrimFlags& t, const RegularityFlags& r) {
    phontrim::ExperimentConfig config;
    config.trim.strategy = phontrim::parse_strategy(t.strategy);
    config.trim.gap_threshold = t.gap_threshold;
    config.trim.skeleton = phontrim::Skeleton::parse(t.skeleton);
    config.regularity.pattern_threshold = r.pattern_threshold;
    config.regularity.cognate_threshold = r.cognate_threshold;
    config.validate();
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trim phonetic alignments and measure the regularity of sound correspondences"};
    app.require_subcommand(1);

    std::string input;
    std::string output = "-";
    TrimFlags trim_flags;
    RegularityFlags reg_flags;

    auto* trim_cmd = app.add_subcommand("trim", "Trim every cognate set and write the annotated wordlist");
    trim_cmd->add_option("--input", input, "Tab-separated wordlist")->required();
    add_trim_flags(trim_cmd, trim_flags);
    trim_cmd->add_option("--output", output, "Output path ('-' for stdout)")->capture_default_str();

    std::string export_path;
    std::string distribution_path;
    auto* patterns_cmd = app.add_subcommand("patterns", "Infer correspondence patterns from the surviving sites");
    patterns_cmd->add_option("--input", input, "Tab-separated wordlist")->required();
    add_trim_flags(patterns_cmd, trim_flags);
    patterns_cmd->add_option("--export", export_path, "Pattern table output path")->required();
    patterns_cmd->add_option("--distribution", distribution_path, "Pattern-size distribution output path");

    std::string report_format = "tsv";
    auto* analyze_cmd = app.add_subcommand("analyze", "Regularity report for one strategy");
    analyze_cmd->add_option("--input", input, "Tab-separated wordlist")->required();
    add_trim_flags(analyze_cmd, trim_flags);
    add_regularity_flags(analyze_cmd, reg_flags);
    analyze_cmd->add_option("--report", report_format, "Report format")
        ->check(CLI::IsMember({"tsv", "json"}))
        ->capture_default_str();
    analyze_cmd->add_option("--output", output, "Output path ('-' for stdout)")->capture_default_str();

    std::vector<std::string> strategies{"none", "core", "gap"};
    std::size_t iterations = 100;
    std::uint64_t seed = 42;
    std::size_t threads = 1;
    auto* compare_cmd = app.add_subcommand("compare", "Compare strategies against the random-deletion baseline");
    compare_cmd->add_option("--input", input, "Tab-separated wordlist")->required();
    compare_cmd->add_option("--strategies", strategies, "Comma-separated strategies")
        ->delimiter(',')
        ->check(CLI::IsMember({"none", "core", "gap"}))
        ->capture_default_str();
    compare_cmd->add_option("--random-iterations", iterations, "Random-baseline iterations")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    compare_cmd->add_option("--seed", seed, "Base seed of the random baseline")->capture_default_str();
    compare_cmd->add_option("--threads", threads, "Worker threads for random iterations")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_trim_flags(compare_cmd, trim_flags, false);
    add_regularity_flags(compare_cmd, reg_flags);
    compare_cmd->add_option("--report", report_format, "Report format")
        ->check(CLI::IsMember({"tsv", "json"}))
        ->capture_default_str();
    compare_cmd->add_option("--output", output, "Output path ('-' for stdout)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config_error;
    }

    try {
        auto config = make_config(trim_flags, reg_flags);
        if (*trim_cmd) {
            const auto wl = load(input);
            const auto trims = phontrim::trim_all(wl, config.trim, config.cv_map);
            emit(output, [&](std::ostream& out) { phontrim::write_wordlist(out, wl, trims); });
        } else if (*patterns_cmd) {
            const auto wl = load(input);
            const auto result = phontrim::run_pipeline(wl, config.trim.strategy, config);
            emit(export_path, [&](std::ostream& out) {
                phontrim::write_patterns(out, result.assignment, wl.doculects());
            });
            if (!distribution_path.empty()) {
                const std::vector<phontrim::LabeledAssignment> labeled{
                    {std::string(phontrim::to_string(config.trim.strategy)), &result.assignment}};
                const auto rows = phontrim::export_distribution(labeled);
                emit(distribution_path, [&](std::ostream& out) { phontrim::write_distribution(out, rows); });
            }
        } else if (*analyze_cmd) {
            const auto wl = load(input);
            const auto result = phontrim::run_pipeline(wl, config.trim.strategy, config);
            emit(output, [&](std::ostream& out) {
                if (report_format == "json") {
                    out << phontrim::to_json(result.report).dump(2) << '\n';
                } else {
                    phontrim::write_report_tsv(out, result.report);
                }
            });
        } else if (*compare_cmd) {
            config.strategies.clear();
            for (const auto& s : strategies) config.strategies.push_back(phontrim::parse_strategy(s));
            config.random_iterations = iterations;
            config.base_seed = seed;
            config.threads = threads;
            config.validate();
            const auto wl = load(input);
            const auto report = phontrim::compare(wl, config);
            emit(output, [&](std::ostream& out) {
                if (report_format == "json") {
                    out << phontrim::to_json(report).dump(2) << '\n';
                } else {
                    phontrim::write_comparison_tsv(out, report);
                }
            });
        }
    } catch (const phontrim::Error& e) {
        std::cerr << "phontrim: " << e.what() << '\n';
        return e.kind() == phontrim::ErrorKind::InvalidConfig ? exit_config_error : exit_input_error;
    } catch (const std::exception& e) {
        std::cerr << "phontrim: " << e.what() << '\n';
        return exit_input_error;
    }
    return 0;
}
