#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "phontrim/corrpat.hpp"
#include "phontrim/random.hpp"
#include "phontrim/regularity.hpp"
#include "phontrim/trimming.hpp"
#include "phontrim/wordlist.hpp"

namespace phontrim {

struct ExperimentConfig {
    TrimConfig trim{};
    RegularityConfig regularity{};
    InferenceOptions inference{};
    CvMap cv_map = CvMap::defaults();
    std::size_t random_iterations = 100;
    std::uint64_t base_seed = 42;
    std::vector<Strategy> strategies{Strategy::None, Strategy::CoreOriented, Strategy::GapOriented};
    std::size_t threads = 1;  // worker threads for random iterations

    void validate() const {
        trim.validate();
        regularity.validate();
        if (strategies.empty()) throw Error(ErrorKind::InvalidConfig, "no strategies selected");
        if (threads == 0) throw Error(ErrorKind::InvalidConfig, "threads must be >= 1");
    }
};

struct PipelineResult {
    TrimMap trims;
    PatternAssignment assignment;
    RegularityReport report;
};

inline TrimConfig with_strategy(TrimConfig config, Strategy strategy) {
    config.strategy = strategy;
    return config;
}

// Trims every non-singleton set; sets lacking the skeleton come back flagged
// as excluded.
inline TrimMap trim_all(const Wordlist& wl, const TrimConfig& config, const CvMap& cv_map) {
    TrimMap trims;
    for (const auto& cogid : wl.cogids()) {
        if (wl.is_singleton(cogid)) continue;
        trims.emplace(cogid, trim(matrix_for(wl, cogid), config, cv_map));
    }
    return trims;
}

inline PipelineResult evaluate(const Wordlist& wl, TrimMap trims, Strategy strategy, const ExperimentConfig& config) {
    PipelineResult out;
    out.trims = std::move(trims);
    const auto sites = extract_sites(wl, out.trims);
    out.assignment = infer_patterns(sites, config.inference);
    out.report = report(wl, out.trims, out.assignment, config.regularity);
    out.report.strategy = std::string(to_string(strategy));
    return out;
}

inline PipelineResult run_pipeline(const Wordlist& wl, Strategy strategy, const ExperimentConfig& config) {
    config.validate();
    return evaluate(wl, trim_all(wl, with_strategy(config.trim, strategy), config.cv_map), strategy, config);
}

struct RandomBaseline {
    Strategy strategy = Strategy::None;
    double targeted_p = 0.0;
    double targeted_w = 0.0;
    std::vector<double> iteration_p;
    std::vector<double> iteration_w;
    double mean_p = 0.0;
    double mean_w = 0.0;
    double exceed_fraction = 0.0;

    bool operator==(const RandomBaseline&) const = default;
};

// Share of iterations whose W strictly exceeds the targeted W.
inline double exceed_fraction(std::span<const double> iteration_w, double targeted_w) {
    if (iteration_w.empty()) return 0.0;
    const auto n = std::count_if(iteration_w.begin(), iteration_w.end(), [&](double w) { return w > targeted_w; });
    return static_cast<double>(n) / static_cast<double>(iteration_w.size());
}

namespace detail {

// Runs task(i) for i in [0, count) on up to `threads` workers. Results must
// be written to per-index slots, so the outcome is independent of scheduling.
template <typename Task>
void parallel_for(std::size_t count, std::size_t threads, Task&& task) {
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> workers;
        for (std::size_t t = 0; t < threads; ++t) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        task(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

inline RandomBaseline run_random_baseline(const Wordlist& wl, Strategy strategy, const ExperimentConfig& config,
                                          const PipelineResult& targeted) {
    if (strategy == Strategy::None) {
        throw Error(ErrorKind::InvalidConfig, "the random baseline mirrors core or gap trimming only");
    }
    config.validate();
    RandomBaseline out;
    out.strategy = strategy;
    out.targeted_p = targeted.report.p_regular_patterns;
    out.targeted_w = targeted.report.w_regular_words;
    const std::size_t n = config.random_iterations;
    out.iteration_p.assign(n, 0.0);
    out.iteration_w.assign(n, 0.0);
    const auto trim_config = with_strategy(config.trim, strategy);

    std::vector<AlignmentMatrix> matrices;
    for (const auto& [cogid, result] : targeted.trims) matrices.push_back(matrix_for(wl, cogid));

    detail::parallel_for(n, config.threads, [&](std::size_t i) {
        auto rng = make_stream(config.base_seed, i);
        TrimMap trims;
        std::size_t m = 0;
        for (const auto& [cogid, reference] : targeted.trims) {
            const auto& matrix = matrices[m++];
            trims.emplace(cogid, reference.excluded
                                     ? reference
                                     : trim_random(matrix, reference, trim_config, config.cv_map, rng));
        }
        const auto result = evaluate(wl, std::move(trims), strategy, config);
        out.iteration_p[i] = result.report.p_regular_patterns;
        out.iteration_w[i] = result.report.w_regular_words;
    });

    if (n > 0) {
        out.mean_p = std::accumulate(out.iteration_p.begin(), out.iteration_p.end(), 0.0) / static_cast<double>(n);
        out.mean_w = std::accumulate(out.iteration_w.begin(), out.iteration_w.end(), 0.0) / static_cast<double>(n);
    }
    out.exceed_fraction = exceed_fraction(out.iteration_w, out.targeted_w);
    return out;
}

inline RandomBaseline run_random_baseline(const Wordlist& wl, Strategy strategy, const ExperimentConfig& config) {
    if (config.random_iterations < 1) throw Error(ErrorKind::InvalidConfig, "random iterations must be >= 1");
    return run_random_baseline(wl, strategy, config, run_pipeline(wl, strategy, config));
}

struct DistributionRow {
    std::string strategy;
    std::size_t rank = 0;  // 1-based
    std::size_t size = 0;

    bool operator==(const DistributionRow&) const = default;
};

using LabeledAssignment = std::pair<std::string, const PatternAssignment*>;

inline std::vector<DistributionRow> export_distribution(std::span<const LabeledAssignment> assignments) {
    std::vector<DistributionRow> rows;
    for (const auto& [label, assignment] : assignments) {
        std::size_t rank = 0;
        for (auto size : pattern_sizes(*assignment)) rows.push_back({label, ++rank, size});
    }
    return rows;
}

inline void write_distribution(std::ostream& out, std::span<const DistributionRow> rows) {
    out << "STRATEGY\tRANK\tSIZE\n";
    for (const auto& r : rows) out << r.strategy << '\t' << r.rank << '\t' << r.size << '\n';
}

struct ComparisonReport {
    std::vector<RegularityReport> reports;
    std::vector<RandomBaseline> baselines;
    std::size_t random_iterations = 0;
    std::uint64_t base_seed = 0;
};

// Targeted reports for every configured strategy, plus a random baseline for
// each trimming strategy. Zero random iterations skips the baselines.
inline ComparisonReport compare(const Wordlist& wl, const ExperimentConfig& config) {
    config.validate();
    ComparisonReport out;
    out.random_iterations = config.random_iterations;
    out.base_seed = config.base_seed;
    for (auto strategy : config.strategies) {
        auto targeted = run_pipeline(wl, strategy, config);
        out.reports.push_back(targeted.report);
        if (strategy != Strategy::None && config.random_iterations > 0) {
            out.baselines.push_back(run_random_baseline(wl, strategy, config, targeted));
        }
    }
    return out;
}

inline void write_comparison_tsv(std::ostream& out, const ComparisonReport& c) {
    out << join(report_tsv_columns(), "\t") << '\n';
    for (const auto& r : c.reports) out << join(report_tsv_fields(r), "\t") << '\n';
    if (c.baselines.empty()) return;
    out << '\n' << "STRATEGY\tITERATIONS\tSEED\tTARGETED_W\tMEAN_P\tMEAN_W\tEXCEED_FRACTION\n";
    for (const auto& b : c.baselines) {
        out << to_string(b.strategy) << "/random\t" << b.iteration_w.size() << '\t' << c.base_seed << '\t'
            << format_double(b.targeted_w) << '\t' << format_double(b.mean_p) << '\t' << format_double(b.mean_w)
            << '\t' << format_double(b.exceed_fraction) << '\n';
    }
}

inline nlohmann::ordered_json to_json(const ComparisonReport& c) {
    nlohmann::ordered_json j;
    j["base_seed"] = c.base_seed;
    j["random_iterations"] = c.random_iterations;
    j["reports"] = nlohmann::ordered_json::array();
    for (const auto& r : c.reports) j["reports"].push_back(to_json(r));
    j["random"] = nlohmann::ordered_json::array();
    for (const auto& b : c.baselines) {
        nlohmann::ordered_json e;
        e["strategy"] = std::string(to_string(b.strategy));
        e["targeted_p"] = b.targeted_p;
        e["targeted_w"] = b.targeted_w;
        e["mean_p"] = b.mean_p;
        e["mean_w"] = b.mean_w;
        e["exceed_fraction"] = b.exceed_fraction;
        e["iteration_p"] = b.iteration_p;
        e["iteration_w"] = b.iteration_w;
        j["random"].push_back(std::move(e));
    }
    return j;
}

}  // namespace phontrim
